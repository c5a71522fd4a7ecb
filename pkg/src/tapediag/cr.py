"""The positive calculus of relations: syntax, semantics, encoding, decision.

Expressions are single-sorted (one sort ``A``). Inclusion is decided by
encoding both sides as tapes ``A -> A`` and comparing their 1x1 normal
forms in the cartesian-bicategory order. When inclusion fails, a small
counterexample model is searched for with a vectorised evaluator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import circuit as C
from . import tape as T
from .matrix import Mode, to_matrix
from .order import em_leq
from .rel import FiniteRelation, Interpretation, ModelError
from .signature import Generator, MonSignature

SORT = "A"
WORD = (SORT,)


class CrSyntaxError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)


@dataclass(frozen=True)
class Rel:
    name: str


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Seq:
    left: "CrExpr"
    right: "CrExpr"


@dataclass(frozen=True)
class Union:
    left: "CrExpr"
    right: "CrExpr"


@dataclass(frozen=True)
class Inter:
    left: "CrExpr"
    right: "CrExpr"


@dataclass(frozen=True)
class Op:
    arg: "CrExpr"


CrExpr = Rel | One | Top | Bot | Seq | Union | Inter | Op


def cr_signature(names) -> MonSignature:
    return MonSignature(WORD, tuple(Generator(n, WORD, WORD) for n in sorted(set(names))), True)


def symbols(e: CrExpr) -> set[str]:
    match e:
        case Rel(n):
            return {n}
        case Seq(a, b) | Union(a, b) | Inter(a, b):
            return symbols(a) | symbols(b)
        case Op(a):
            return symbols(a)
    return set()


def size(e: CrExpr) -> int:
    """Number of operators (constants count as zero)."""
    match e:
        case Seq(a, b) | Union(a, b) | Inter(a, b):
            return 1 + size(a) + size(b)
        case Op(a):
            return 1 + size(a)
    return 0


def show(e: CrExpr) -> str:
    def go(x, prec):
        match x:
            case Rel(n):
                return n
            case One():
                return "id"
            case Top():
                return "top"
            case Bot():
                return "bot"
            case Union(a, b):
                s = f"{go(a, 0)} | {go(b, 1)}"
                return f"({s})" if prec > 0 else s
            case Inter(a, b):
                s = f"{go(a, 1)} & {go(b, 2)}"
                return f"({s})" if prec > 1 else s
            case Seq(a, b):
                s = f"{go(a, 2)} ; {go(b, 3)}"
                return f"({s})" if prec > 2 else s
            case Op(a):
                return f"{go(a, 3)}~"
        raise TypeError(x)

    return go(e, 0)


# -- parsing ---------------------------------------------------------------------------

_TOKENS = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[;&|~()]))")
_KEYWORDS = {"id": One(), "top": Top(), "bot": Bot()}


def parse_cr(text: str, sig: MonSignature | None = None) -> CrExpr:
    """Precedence, tightest first: postfix ``~``, ``;``, ``&``, ``|``; binaries associate left."""
    toks: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKENS.match(text, pos)
        if not m:
            raise CrSyntaxError(f"unexpected character {text[pos:].lstrip()[0]!r}", pos)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    i = 0

    def peek():
        return toks[i]

    def take(value=None):
        nonlocal i
        tok = toks[i]
        if value is not None and tok[1] != value:
            raise CrSyntaxError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok[2])
        i += 1
        return tok

    def binary(sub, symbol, ctor):
        def parse():
            left = sub()
            while peek()[1] == symbol:
                take()
                left = ctor(left, sub())
            return left

        return parse

    def postfix():
        e = atom()
        while peek()[1] == "~":
            take()
            e = Op(e)
        return e

    def atom():
        kind, val, at = take()
        if val == "(":
            e = union()
            take(")")
            return e
        if kind == "ident":
            if val in _KEYWORDS:
                return _KEYWORDS[val]
            if sig is not None:
                if val not in sig:
                    raise CrSyntaxError(f"undeclared relation symbol {val!r}", at)
                g = sig.generator(val)
                if (g.arity, g.coarity) != (WORD, WORD) or len(sig.sorts) != 1:
                    raise CrSyntaxError(f"relation symbol {val!r} must have type A -> A on a single sort", at)
            return Rel(val)
        raise CrSyntaxError(f"unexpected {val or 'end of input'!r}", at)

    seq_ = binary(postfix, ";", Seq)
    inter = binary(seq_, "&", Inter)
    union = binary(inter, "|", Union)
    e = union()
    if peek()[0] != "eof":
        raise CrSyntaxError(f"unexpected {peek()[1]!r}", peek()[2])
    return e


# -- semantics -------------------------------------------------------------------------


def _eval_bool(e: CrExpr, rels: dict[str, np.ndarray], n: int) -> np.ndarray:
    """Evaluate on a batch: every relation is a boolean array of shape (batch, n, n)."""
    batch = next(iter(rels.values())).shape[0] if rels else 1
    match e:
        case Rel(name):
            try:
                return rels[name]
            except KeyError:
                raise ModelError(f"relation symbol {name!r} is not interpreted") from None
        case One():
            return np.broadcast_to(np.eye(n, dtype=bool), (batch, n, n))
        case Top():
            return np.ones((batch, n, n), dtype=bool)
        case Bot():
            return np.zeros((batch, n, n), dtype=bool)
        case Union(a, b):
            return _eval_bool(a, rels, n) | _eval_bool(b, rels, n)
        case Inter(a, b):
            return _eval_bool(a, rels, n) & _eval_bool(b, rels, n)
        case Seq(a, b):
            x = _eval_bool(a, rels, n).astype(np.uint8)
            y = _eval_bool(b, rels, n).astype(np.uint8)
            return np.matmul(x, y) > 0
        case Op(a):
            return np.swapaxes(_eval_bool(a, rels, n), 1, 2)
    raise TypeError(e)


def _as_matrix(pairs, n: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=bool)
    for (x,), (y,) in pairs:
        m[x, y] = True
    return m


def eval_cr(e: CrExpr, interp: Interpretation) -> FiniteRelation:
    """Direct set-theoretic semantics, tagged like the tape semantics of ``A -> A``."""
    return eval_cr_many(e, [interp])[0]


def eval_cr_many(e: CrExpr, interps) -> list[FiniteRelation]:
    """``eval_cr`` over several interpretations sharing one carrier size, in one vectorised pass."""
    interps = list(interps)
    sizes = {i.carrier.get(SORT) for i in interps}
    if None in sizes:
        raise ModelError(f"no carrier for sort {SORT!r}")
    if len(sizes) != 1:
        raise ModelError("interpretations must share the carrier size")
    (n,) = sizes
    rels = {}
    for name in symbols(e):
        if any(name not in i.relations for i in interps):
            raise ModelError(f"relation symbol {name!r} is not interpreted")
        rels[name] = np.stack([_as_matrix(i.relations[name], n) for i in interps])
    out = _eval_bool(e, rels, n)
    if out.shape[0] != len(interps):
        out = np.broadcast_to(out[:1], (len(interps), n, n))
    return [
        FiniteRelation((WORD,), (WORD,), frozenset(((0, (int(x),)), (0, (int(y),))) for x, y in zip(*np.nonzero(m))))
        for m in out
    ]


# -- encoding ------------------------------------------------------------------------


def _gen(name: str) -> C.Gen:
    return C.Gen(Generator(name, WORD, WORD))


def encode(e: CrExpr) -> T.Tape:
    """Tape ``A -> A`` with the same relational meaning as ``e``."""
    match e:
        case Rel(name):
            return T.Lift(_gen(name))
        case One():
            return T.Lift(C.Id(SORT))
        case Bot():
            return T.zero((WORD,), (WORD,))
        case Top():
            return T.Lift(C.top(WORD, WORD))
        case Union(a, b):
            return T.sum_tapes(encode(a), encode(b))
        case Inter(a, b):
            return T.seq_all([T.Lift(C.Copier(SORT)), T.tensor(encode(a), encode(b)), T.Lift(C.Cocopier(SORT))])
        case Seq(a, b):
            return T.seq(encode(a), encode(b))
        case Op(a):
            return encode_op(encode(a))
    raise TypeError(e)


def encode_op(t: T.Tape) -> T.Tape:
    """Converse of a monomial tape: transpose every disjunct of its normal form."""
    p, q = T.tape_type(t)
    entry = to_matrix(t, Mode.CB).entries[0][0]
    return T.sum_all([T.Lift(C.transpose(c)) for c in entry], q, p)


def encode_op_literal(t: T.Tape) -> T.Tape:
    """Converse by bending the tape's wires with lifted cups and caps."""
    (u,), (v,) = T.tape_type(t)
    return T.seq_all(
        [
            T.Lift(C.tensor(C.id_word(v), C.cup(u))),
            T.tensor_all([T.IdMon(v), t, T.IdMon(u)]),
            T.Lift(C.tensor(C.cap(v), C.id_word(u))),
        ]
    )


# -- decision ------------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    holds: bool
    counterexample: Interpretation | None = None
    lhs: CrExpr | None = None
    rhs: CrExpr | None = None

    def __bool__(self) -> bool:
        return self.holds


def _assignments(k: int, n: int, budget: int, rng: np.random.Generator, chunk: int = 8192) -> Iterator[np.ndarray]:
    """Batches of shape (b, k, n, n); exhaustive in bitmask order below ``budget``, else sampled."""
    if k == 0:
        yield np.zeros((1, 0, n, n), dtype=bool)
        return
    bits = k * n * n
    if bits < 63 and (1 << bits) < budget:
        total = 1 << bits
        weights = np.arange(bits, dtype=np.int64)
        for start in range(0, total, chunk):
            masks = np.arange(start, min(total, start + chunk), dtype=np.int64)
            flat = (masks[:, None] >> weights[None, :]) & 1
            yield flat.astype(bool).reshape(-1, k, n, n)
    else:
        done = 0
        while done < budget:
            b = min(chunk, budget - done)
            yield rng.random((b, k, n, n)) < 0.5
            done += b


def find_counterexample(
    e1: CrExpr, e2: CrExpr, budget: int = 1 << 16, seed: int = 0, max_carrier: int = 3
) -> Interpretation | None:
    """Smallest-carrier model where ``e1`` is not included in ``e2``, if one is met."""
    names = sorted(symbols(e1) | symbols(e2))
    rng = np.random.default_rng(seed)
    for n in range(1, max_carrier + 1):
        for batch in _assignments(len(names), n, budget, rng):
            rels = {name: batch[:, k] for k, name in enumerate(names)}
            lhs = _eval_bool(e1, rels, n)
            rhs = _eval_bool(e2, rels, n)
            bad = (lhs & ~rhs).reshape(lhs.shape[0], -1).any(axis=1)
            if bad.any():
                b = int(np.argmax(bad))
                relations = {
                    name: frozenset(((int(x),), (int(y),)) for x, y in zip(*np.nonzero(batch[b, k])))
                    for k, name in enumerate(names)
                }
                return Interpretation({SORT: n}, relations)
            if not names:
                break
    return None


def holds_on_all(e1: CrExpr, e2: CrExpr, n: int, budget: int = 1 << 16, seed: int = 0) -> bool:
    """True when no model with carrier size ``n`` (from the enumeration) separates the sides."""
    names = sorted(symbols(e1) | symbols(e2))
    rng = np.random.default_rng(seed)
    for batch in _assignments(len(names), n, budget, rng):
        rels = {name: batch[:, k] for k, name in enumerate(names)}
        lhs = _eval_bool(e1, rels, n)
        rhs = _eval_bool(e2, rels, n)
        if (lhs & ~rhs).any():
            return False
        if not names:
            break
    return True


def decide_leq(e1: CrExpr, e2: CrExpr, budget: int = 1 << 16, seed: int = 0, search: bool = True) -> Verdict:
    m1 = to_matrix(encode(e1), Mode.CB)
    m2 = to_matrix(encode(e2), Mode.CB)
    assert m1.shape == m2.shape == (1, 1)
    if em_leq(m1.entries[0][0], m2.entries[0][0], Mode.CB):
        return Verdict(True, None, e1, e2)
    cex = find_counterexample(e1, e2, budget, seed) if search else None
    return Verdict(False, cex, e1, e2)


def decide_equiv(e1: CrExpr, e2: CrExpr, budget: int = 1 << 16, seed: int = 0) -> Verdict:
    forward = decide_leq(e1, e2, budget, seed)
    if not forward:
        return forward
    backward = decide_leq(e2, e1, budget, seed)
    if not backward:
        return Verdict(False, backward.counterexample, e1, e2)
    return Verdict(True, None, e1, e2)
