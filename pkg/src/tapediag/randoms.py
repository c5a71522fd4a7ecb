"""Seeded random generators for property checks.

Everything takes an explicit :class:`random.Random`, so a seed reproduces a run.
"""

from __future__ import annotations

import random

from . import circuit as C
from . import cr
from . import tape as T
from .matrix import Mode, TapeMatrix, build
from .signature import Generator, MonSignature, Monomial, Polynomial

SORTS = ("A", "B", "C")

TEST_SIGNATURE = MonSignature(
    SORTS,
    (
        Generator("f", ("A",), ("B",)),
        Generator("g", ("B",), ("A",)),
        Generator("h", ("A", "B"), ("C",)),
        Generator("k", ("C",), ("A", "B")),
        Generator("u", (), ("A",)),
        Generator("v", ("C",), ()),
        Generator("r", ("A",), ("A",)),
    ),
    True,
)

REL_SIGNATURE = MonSignature(("A",), (Generator("R", ("A",), ("A",)), Generator("S", ("A",), ("A",))), True)


def random_mono(rng: random.Random, sorts=SORTS, max_len: int = 3) -> Monomial:
    return tuple(rng.choice(sorts) for _ in range(rng.randint(0, max_len)))


def random_poly(rng: random.Random, sorts=SORTS, max_len: int = 3, max_mono: int = 2) -> Polynomial:
    return tuple(random_mono(rng, sorts, max_mono) for _ in range(rng.randint(0, max_len)))


# -- circuits -----------------------------------------------------------------------


def _layer(rng: random.Random, w: Monomial, sig: MonSignature, frobenius: bool) -> C.Circuit | None:
    """One random step out of ``w``: a generator, a crossing or a Frobenius node, padded by identities."""
    options = []
    for g in sig.generators:
        n = len(g.arity)
        for k in range(len(w) - n + 1):
            if w[k : k + n] == g.arity:
                options.append((k, n, C.Gen(g)))
    for k in range(len(w) - 1):
        options.append((k, 2, C.Sym(w[k], w[k + 1])))
    if frobenius:
        for k, a in enumerate(w):
            options.append((k, 1, C.Copier(a)))
            options.append((k, 1, C.Discharger(a)))
            if k + 1 < len(w) and w[k + 1] == a:
                options.append((k, 2, C.Cocopier(a)))
        for k in range(len(w) + 1):
            options.append((k, 0, C.Codischarger(rng.choice(sig.sorts))))
    if not options:
        return None
    k, n, box = rng.choice(options)
    return C.tensor_all([C.id_word(w[:k]), box, C.id_word(w[k + n :])])


def random_circuit(
    rng: random.Random,
    dom: Monomial,
    sig: MonSignature = TEST_SIGNATURE,
    layers: int = 3,
    frobenius: bool = False,
    max_width: int = 4,
) -> C.Circuit:
    """A circuit out of ``dom``; its codomain is whatever the layers produce."""
    c = C.id_word(dom)
    w = dom
    for _ in range(rng.randint(0, layers)):
        step = _layer(rng, w, sig, frobenius)
        if step is None:
            break
        cod = C.circuit_type(step)[1]
        if len(cod) > max_width:
            continue
        c, w = C.seq(c, step), cod
    return c


def random_circuit_between(
    rng: random.Random, dom: Monomial, cod: Monomial, sig: MonSignature = REL_SIGNATURE, layers: int = 4
) -> C.Circuit:
    """A Frobenius circuit ``dom -> cod`` over a single-sorted signature: random layers, then glue to ``cod``."""
    (a,) = sig.sorts
    c = random_circuit(rng, dom, sig, layers, frobenius=True)
    w = C.circuit_type(c)[1]
    if not w:
        c = C.seq(c, C.Codischarger(a))
        w = (a,)
    while len(w) > 1:
        c = C.seq(c, C.tensor(C.Cocopier(a), C.id_word(w[2:])))
        w = w[1:]
    return C.seq(c, _spread(a, len(cod)))


def _spread(a: str, n: int) -> C.Circuit:
    if n == 0:
        return C.Discharger(a)
    c = C.Id(a)
    for k in range(1, n):
        c = C.seq(c, C.tensor(C.Copier(a), C.id_word((a,) * (k - 1))))
    return c


def weaken(rng: random.Random, c: C.Circuit) -> C.Circuit:
    """Replace some generator occurrences by the total relation, giving a circuit above ``c``."""
    match c:
        case C.Gen(g):
            return C.top(g.arity, g.coarity) if rng.random() < 0.5 else c
        case C.Seq(f, g):
            return C.Seq(weaken(rng, f), weaken(rng, g))
        case C.Tensor(f, g):
            return C.Tensor(weaken(rng, f), weaken(rng, g))
    return c


# -- tapes --------------------------------------------------------------------------


def random_tape(
    rng: random.Random,
    dom: Polynomial,
    size: int = 6,
    sig: MonSignature = TEST_SIGNATURE,
    frobenius: bool = False,
) -> T.Tape:
    """A tape out of ``dom``. It has at most ``size`` constructors unless ``dom`` itself needs more."""
    t, _ = _tape(rng, dom, max(size, _min_cost(dom)), sig, frobenius)
    return t


def _min_cost(p: Polynomial) -> int:
    """Fewest constructors of a tape out of ``p`` (pairs of monomials share one SymPlus)."""
    return max(1, 2 * ((len(p) + 1) // 2) - 1)


def _tape(rng, p: Polynomial, budget: int, sig, frobenius) -> tuple[T.Tape, int]:
    """Returns a tape out of ``p`` and its constructor count, which never exceeds ``budget``."""
    choices = []
    if len(p) <= 2:
        choices.append("atom")
    if budget >= _min_cost(p) + 2:
        choices += ["seq", "seq"]
    splits = [k for k in range(1, len(p)) if 1 + _min_cost(p[:k]) + _min_cost(p[k:]) <= budget]
    if splits:
        choices += ["oplus", "oplus"]
    if len(p) <= 1 and budget >= 3:
        choices.append("grow")
    kind = rng.choice(choices)
    if kind == "seq":
        t1, n1 = _tape(rng, p, rng.randint(_min_cost(p), budget - 2), sig, frobenius)
        mid = T.tape_type(t1)[1]
        rest = budget - n1 - 1
        if rest < _min_cost(mid):
            return t1, n1
        t2, n2 = _tape(rng, mid, rest, sig, frobenius)
        return T.Seq(t1, t2), n1 + n2 + 1
    if kind == "oplus":
        k = rng.choice(splits)
        need = _min_cost(p[k:])
        t1, n1 = _tape(rng, p[:k], budget - 1 - need, sig, frobenius)
        t2, n2 = _tape(rng, p[k:], budget - 1 - n1, sig, frobenius)
        return T.Oplus(t1, t2), n1 + n2 + 1
    if kind == "grow":
        # stack a cobang next to a monomial (or zero) domain
        t1, n1 = _tape(rng, p, budget - 2, sig, frobenius)
        parts = [t1, T.Cobang(random_mono(rng, sig.sorts, 2))]
        if rng.random() < 0.5:
            parts.reverse()
        return T.Oplus(*parts), n1 + 2
    return _atom(rng, p, sig, frobenius), 1


def _atom(rng, p: Polynomial, sig, frobenius) -> T.Tape:
    if len(p) == 0:
        return rng.choice([T.IdZero(), T.Cobang(random_mono(rng, sig.sorts, 2))])
    if len(p) == 1:
        (u,) = p
        return rng.choice(
            [
                T.IdMon(u),
                T.Diag(u),
                T.Bang(u),
                T.Lift(random_circuit(rng, u, sig, frobenius=frobenius)),
                T.Lift(random_circuit(rng, u, sig, frobenius=frobenius)),
            ]
        )
    u, v = p
    return rng.choice([T.SymPlus(u, v), T.Codiag(u)] if u == v else [T.SymPlus(u, v)])


def constructors(t: T.Tape) -> int:
    match t:
        case T.Seq(f, g) | T.Oplus(f, g):
            return 1 + constructors(f) + constructors(g)
    return 1


# -- matrices -----------------------------------------------------------------------


def random_matrix(
    rng: random.Random,
    dom: Polynomial | None = None,
    cod: Polynomial | None = None,
    mode: Mode = Mode.MULTISET,
    max_entry: int = 2,
) -> TapeMatrix:
    """A matrix whose circuits are fresh boxes (new generators) of the right types."""
    dom = random_poly(rng) if dom is None else dom
    cod = random_poly(rng) if cod is None else cod
    counter = iter(range(1 << 30))

    def cells(j, i):
        out = []
        for _ in range(rng.randint(0, max_entry)):
            if out and rng.random() < 0.25:
                out.append(out[-1])  # repeated circuit, exercises multiplicities
            else:
                out.append(C.Gen(Generator(f"b{next(counter)}", dom[i], cod[j])))
        return out

    return build(dom, cod, cells, mode)


# -- relation calculus --------------------------------------------------------------


def random_cr(rng: random.Random, ops: int = 4, names=("R", "S", "T")) -> cr.CrExpr:
    """An expression with exactly ``ops`` operators."""
    if ops == 0:
        r = rng.random()
        if r < 0.75:
            return cr.Rel(rng.choice(names))
        return rng.choice([cr.One(), cr.Top(), cr.Bot()])
    kind = rng.choice(["seq", "union", "inter", "op"])
    if kind == "op":
        return cr.Op(random_cr(rng, ops - 1, names))
    k = rng.randint(0, ops - 1)
    a, b = random_cr(rng, k, names), random_cr(rng, ops - 1 - k, names)
    return {"seq": cr.Seq, "union": cr.Union, "inter": cr.Inter}[kind](a, b)


def all_cr(ops: int, names=("R", "S"), constants: bool = True):
    """Every expression with at most ``ops`` operators, as a generator."""
    leaves = [cr.Rel(n) for n in names] + ([cr.One(), cr.Top(), cr.Bot()] if constants else [])
    table: list[list] = [leaves]
    for k in range(1, ops + 1):
        level = [cr.Op(e) for e in table[k - 1]]
        for left in range(k):
            for a in table[left]:
                for b in table[k - 1 - left]:
                    level.extend([cr.Seq(a, b), cr.Union(a, b), cr.Inter(a, b)])
        table.append(level)
    for level in table:
        yield from level
