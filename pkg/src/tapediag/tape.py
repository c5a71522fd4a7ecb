"""Tape diagrams: terms, typing and the derived rig structure.

Tapes are never quotiented syntactically. The constructions here (symmetries
and (co)diagonals on polynomials, distributors, whiskerings, the tensor of
tapes) produce plain terms; questions of equality and order are answered
through the matrix normal form in :mod:`tapediag.matrix`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from . import circuit as C
from .circuit import _Term
from .signature import Monomial, Polynomial, poly_product, poly_str


class TapeTypeError(TypeError):
    pass


@dataclass(frozen=True, eq=True)
class IdMon(_Term):
    word: Monomial
    __hash__ = _Term.__hash__


@dataclass(frozen=True, eq=True)
class IdZero(_Term):
    __hash__ = _Term.__hash__


@dataclass(frozen=True, eq=True)
class Lift(_Term):
    circuit: C.Circuit
    __hash__ = _Term.__hash__


@dataclass(frozen=True, eq=True)
class SymPlus(_Term):
    u: Monomial
    v: Monomial
    __hash__ = _Term.__hash__


@dataclass(frozen=True, eq=True)
class Seq(_Term):
    first: "Tape"
    second: "Tape"
    __hash__ = _Term.__hash__


@dataclass(frozen=True, eq=True)
class Oplus(_Term):
    top: "Tape"
    bottom: "Tape"
    __hash__ = _Term.__hash__


@dataclass(frozen=True, eq=True)
class Bang(_Term):
    word: Monomial
    __hash__ = _Term.__hash__


@dataclass(frozen=True, eq=True)
class Diag(_Term):
    word: Monomial
    __hash__ = _Term.__hash__


@dataclass(frozen=True, eq=True)
class Cobang(_Term):
    word: Monomial
    __hash__ = _Term.__hash__


@dataclass(frozen=True, eq=True)
class Codiag(_Term):
    word: Monomial
    __hash__ = _Term.__hash__


Tape = IdMon | IdZero | Lift | SymPlus | Seq | Oplus | Bang | Diag | Cobang | Codiag


@lru_cache(maxsize=None)
def tape_type(t: Tape) -> tuple[Polynomial, Polynomial]:
    match t:
        case IdMon(u):
            return (u,), (u,)
        case IdZero():
            return (), ()
        case Lift(c):
            try:
                u, v = C.circuit_type(c)
            except C.CircuitTypeError as exc:
                raise TapeTypeError(f"ill-typed circuit inside tape: {exc}") from None
            return (u,), (v,)
        case SymPlus(u, v):
            return (u, v), (v, u)
        case Seq(f, g):
            p, q = tape_type(f)
            q2, r = tape_type(g)
            if q != q2:
                raise TapeTypeError(f"cannot compose {poly_str(p)} -> {poly_str(q)} with {poly_str(q2)} -> {poly_str(r)}")
            return p, r
        case Oplus(f, g):
            p1, q1 = tape_type(f)
            p2, q2 = tape_type(g)
            return p1 + p2, q1 + q2
        case Bang(u):
            return (u,), ()
        case Diag(u):
            return (u,), (u, u)
        case Cobang(u):
            return (), (u,)
        case Codiag(u):
            return (u, u), (u,)
    raise TapeTypeError(f"not a tape: {t!r}")


def type_check_tape(t: Tape, sig=None) -> tuple[Polynomial, Polynomial]:
    """Domain and codomain polynomials; with ``sig``, inner circuits are checked against it."""
    if sig is not None:
        for c in lifted_circuits(t):
            try:
                C.type_check_circuit(c, sig)
            except C.CircuitTypeError as exc:
                raise TapeTypeError(str(exc)) from None
    return tape_type(t)


def lifted_circuits(t: Tape) -> list[C.Circuit]:
    match t:
        case Lift(c):
            return [c]
        case Seq(f, g) | Oplus(f, g):
            return lifted_circuits(f) + lifted_circuits(g)
    return []


def generators_of_tape(t: Tape) -> set:
    out = set()
    for c in lifted_circuits(t):
        out |= C.generators_of(c)
    return out


# -- basic combinators --------------------------------------------------------------


def is_identity(t: Tape) -> bool:
    """Syntactically a stack of identities."""
    match t:
        case IdMon() | IdZero():
            return True
        case Oplus(f, g):
            return is_identity(f) and is_identity(g)
    return False


def seq(f: Tape, g: Tape) -> Tape:
    """Composite that drops syntactic identities."""
    if tape_type(f)[1] != tape_type(g)[0]:
        tape_type(Seq(f, g))
    if is_identity(f):
        return g
    if is_identity(g):
        return f
    return Seq(f, g)


def oplus(f: Tape, g: Tape) -> Tape:
    if f == IdZero():
        return g
    if g == IdZero():
        return f
    return Oplus(f, g)


def seq_all(ts: Iterable[Tape]) -> Tape:
    ts = list(ts)
    out = ts[0]
    for t in ts[1:]:
        out = seq(out, t)
    return out


def oplus_all(ts: Iterable[Tape]) -> Tape:
    out: Tape = IdZero()
    for t in ts:
        out = oplus(out, t)
    return out


def id_poly(p: Polynomial) -> Tape:
    return oplus_all(IdMon(u) for u in p)


def bang_poly(p: Polynomial) -> Tape:
    return oplus_all(Bang(u) for u in p)


def cobang_poly(p: Polynomial) -> Tape:
    return oplus_all(Cobang(u) for u in p)


def sym_plus_poly(p: Polynomial, q: Polynomial) -> Tape:
    """``P (+) Q -> Q (+) P`` from monomial crossings."""
    if not p or not q:
        return id_poly(p + q)
    if len(p) == 1:
        u = p[0]
        if len(q) == 1:
            return SymPlus(u, q[0])
        return seq(oplus(SymPlus(u, q[0]), id_poly(q[1:])), oplus(IdMon(q[0]), sym_plus_poly(p, q[1:])))
    return seq(oplus(IdMon(p[0]), sym_plus_poly(p[1:], q)), oplus(sym_plus_poly(p[:1], q), id_poly(p[1:])))


def diag_poly(p: Polynomial) -> Tape:
    """``P -> P (+) P``: monomial diagonals, then regroup the copies."""
    if not p:
        return IdZero()
    if len(p) == 1:
        return Diag(p[0])
    u, rest = p[0], p[1:]
    return seq(
        oplus(Diag(u), diag_poly(rest)),
        oplus_all([IdMon(u), sym_plus_poly((u,), rest), id_poly(rest)]),
    )


def codiag_poly(p: Polynomial) -> Tape:
    if not p:
        return IdZero()
    if len(p) == 1:
        return Codiag(p[0])
    u, rest = p[0], p[1:]
    return seq(
        oplus_all([IdMon(u), sym_plus_poly(rest, (u,)), id_poly(rest)]),
        oplus(Codiag(u), codiag_poly(rest)),
    )


def gen_diag(p: Polynomial, m: int) -> Tape:
    """Generalised diagonal ``P -> P (+) ... (+) P`` with m copies."""
    if m == 0:
        return bang_poly(p)
    if m == 1:
        return id_poly(p)
    return seq(diag_poly(p), oplus(id_poly(p), gen_diag(p, m - 1)))


def gen_codiag(p: Polynomial, n: int) -> Tape:
    """Generalised codiagonal ``P (+) ... (+) P -> P`` with n copies."""
    if n == 0:
        return cobang_poly(p)
    if n == 1:
        return id_poly(p)
    return seq(oplus(id_poly(p), gen_codiag(p, n - 1)), codiag_poly(p))


def sum_tapes(t1: Tape, t2: Tape) -> Tape:
    """``t1 + t2``: diagonal, both branches side by side, codiagonal."""
    ty1, ty2 = tape_type(t1), tape_type(t2)
    if ty1 != ty2:
        raise TapeTypeError("summands have different types")
    p, q = ty1
    return seq_all([diag_poly(p), Oplus(t1, t2), codiag_poly(q)])


def zero(p: Polynomial, q: Polynomial) -> Tape:
    return seq(bang_poly(p), cobang_poly(q))


def sum_all(ts: Iterable[Tape], p: Polynomial, q: Polynomial) -> Tape:
    ts = list(ts)
    if not ts:
        return zero(p, q)
    out = ts[0]
    for t in ts[1:]:
        out = sum_tapes(out, t)
    return out


# -- distributors and the tensor symmetry --------------------------------------------


def left_distributor(p: Polynomial, q: Polynomial, r: Polynomial) -> Tape:
    """``P (Q (+) R) -> PQ (+) PR``."""
    if not p:
        return IdZero()
    u, rest = (p[0],), p[1:]
    return seq(
        oplus(id_poly(poly_product(u, q + r)), left_distributor(rest, q, r)),
        oplus_all(
            [
                id_poly(poly_product(u, q)),
                sym_plus_poly(poly_product(u, r), poly_product(rest, q)),
                id_poly(poly_product(rest, r)),
            ]
        ),
    )


def inv_left_distributor(p: Polynomial, q: Polynomial, r: Polynomial) -> Tape:
    """``PQ (+) PR -> P (Q (+) R)``, the first construction run backwards."""
    if not p:
        return IdZero()
    u, rest = (p[0],), p[1:]
    return seq(
        oplus_all(
            [
                id_poly(poly_product(u, q)),
                sym_plus_poly(poly_product(rest, q), poly_product(u, r)),
                id_poly(poly_product(rest, r)),
            ]
        ),
        oplus(id_poly(poly_product(u, q + r)), inv_left_distributor(rest, q, r)),
    )


def tensor_symmetry(p: Polynomial, q: Polynomial) -> Tape:
    """``PQ -> QP`` built from distributors and lifted word symmetries."""
    if not q:
        return IdZero()
    v, rest = q[0], q[1:]
    return seq(
        left_distributor(p, (v,), rest),
        oplus(oplus_all(Lift(C.sym_word(u, v)) for u in p), tensor_symmetry(p, rest)),
    )


# -- whiskering -------------------------------------------------------------------


def _whisker_left_mono(u: Monomial, t: Tape) -> Tape:
    match t:
        case IdZero():
            return t
        case IdMon(v):
            return IdMon(u + v)
        case Lift(c):
            return Lift(C.tensor(C.id_word(u), c))
        case SymPlus(v, w):
            return SymPlus(u + v, u + w)
        case Diag(v):
            return Diag(u + v)
        case Bang(v):
            return Bang(u + v)
        case Codiag(v):
            return Codiag(u + v)
        case Cobang(v):
            return Cobang(u + v)
        case Seq(f, g):
            return Seq(_whisker_left_mono(u, f), _whisker_left_mono(u, g))
        case Oplus(f, g):
            return Oplus(_whisker_left_mono(u, f), _whisker_left_mono(u, g))
    raise TypeError(t)


def _whisker_right_mono(u: Monomial, t: Tape) -> Tape:
    match t:
        case IdZero():
            return t
        case IdMon(v):
            return IdMon(v + u)
        case Lift(c):
            return Lift(C.tensor(c, C.id_word(u)))
        case SymPlus(v, w):
            return SymPlus(v + u, w + u)
        case Diag(v):
            return Diag(v + u)
        case Bang(v):
            return Bang(v + u)
        case Codiag(v):
            return Codiag(v + u)
        case Cobang(v):
            return Cobang(v + u)
        case Seq(f, g):
            return Seq(_whisker_right_mono(u, f), _whisker_right_mono(u, g))
        case Oplus(f, g):
            return Oplus(_whisker_right_mono(u, f), _whisker_right_mono(u, g))
    raise TypeError(t)


def whisker_left(s: Polynomial, t: Tape) -> Tape:
    """``L_S(t) : SP -> SQ``; stacks one monomial whiskering per summand of S."""
    if len(s) == 1:
        return _whisker_left_mono(s[0], t)
    return oplus_all(_whisker_left_mono(w, t) for w in s)


def whisker_right(s: Polynomial, t: Tape) -> Tape:
    """``R_S(t) : PS -> QS``; for sums of monomials, conjugated by left distributors."""
    if not s:
        return IdZero()
    if len(s) == 1:
        return _whisker_right_mono(s[0], t)
    p, q = tape_type(t)
    w, rest = (s[0],), s[1:]
    return seq_all(
        [
            left_distributor(p, w, rest),
            oplus(_whisker_right_mono(s[0], t), whisker_right(rest, t)),
            inv_left_distributor(q, w, rest),
        ]
    )


def tensor(t1: Tape, t2: Tape) -> Tape:
    """``t1 (x) t2 = L_{P1}(t2) ; R_{Q2}(t1)``."""
    p1, _ = tape_type(t1)
    _, q2 = tape_type(t2)
    return seq(whisker_left(p1, t2), whisker_right(q2, t1))


def tensor_all(ts: Iterable[Tape]) -> Tape:
    out: Tape = IdMon(())
    for t in ts:
        out = tensor(out, t)
    return out


# -- cartesian structure on polynomials ------------------------------------------------


def copier_poly(p: Polynomial) -> Tape:
    """``P -> PP``."""
    if not p:
        return IdZero()
    u, rest = p[0], p[1:]
    return oplus_all(
        [
            Lift(C.word_copier(u)),
            cobang_poly(poly_product((u,), rest)),
            seq(
                oplus(cobang_poly(poly_product(rest, (u,))), copier_poly(rest)),
                inv_left_distributor(rest, (u,), rest),
            ),
        ]
    )


def discharger_poly(p: Polynomial) -> Tape:
    """``P -> 1``."""
    if not p:
        return Cobang(())
    u, rest = p[0], p[1:]
    return seq(oplus(Lift(C.word_discharger(u)), discharger_poly(rest)), Codiag(()))


def cocopier_poly(p: Polynomial) -> Tape:
    """``PP -> P``."""
    if not p:
        return IdZero()
    u, rest = p[0], p[1:]
    return oplus_all(
        [
            Lift(C.word_cocopier(u)),
            bang_poly(poly_product((u,), rest)),
            seq(
                left_distributor(rest, (u,), rest),
                oplus(bang_poly(poly_product(rest, (u,))), cocopier_poly(rest)),
            ),
        ]
    )


def codischarger_poly(p: Polynomial) -> Tape:
    """``1 -> P``."""
    if not p:
        return Bang(())
    u, rest = p[0], p[1:]
    return seq(Diag(()), oplus(Lift(C.word_codischarger(u)), codischarger_poly(rest)))


# -- injections and projections ----------------------------------------------------------


def injection(p: Polynomial, i: int) -> Tape:
    """``U_i -> P`` (0-based), cobangs around an identity."""
    return oplus_all([Cobang(u) for u in p[:i]] + [IdMon(p[i])] + [Cobang(u) for u in p[i + 1 :]])


def projection(q: Polynomial, j: int) -> Tape:
    """``Q -> V_j`` (0-based)."""
    return oplus_all([Bang(v) for v in q[:j]] + [IdMon(q[j])] + [Bang(v) for v in q[j + 1 :]])


# -- printing ---------------------------------------------------------------------


def _word(u: Monomial) -> str:
    return " ".join(u)


def show(t: Tape) -> str:
    """Render in the textual tape syntax accepted by :mod:`tapediag.syntax`."""

    def go(x, prec):
        match x:
            case IdMon(u):
                return f"idm({_word(u)})"
            case IdZero():
                return "id0"
            case Lift(c):
                return f"[{C.show(c)}]"
            case SymPlus(u, v):
                return f"symp({_word(u)},{_word(v)})"
            case Diag(u):
                return f"diag({_word(u)})"
            case Bang(u):
                return f"bang({_word(u)})"
            case Codiag(u):
                return f"codiag({_word(u)})"
            case Cobang(u):
                return f"cobang({_word(u)})"
            case Seq(f, g):
                s = f"{go(f, 0)} ; {go(g, 0)}"
                return f"({s})" if prec > 0 else s
            case Oplus(f, g):
                s = f"{go(f, 2)} (+) {go(g, 2)}"
                return f"({s})" if prec > 2 else s
        raise TypeError(x)

    return go(t, 0)


def describe_type(t: Tape) -> str:
    p, q = tape_type(t)
    return f"{poly_str(p)} -> {poly_str(q)}"

