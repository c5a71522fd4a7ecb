"""Circuits: terms of the free symmetric strict monoidal category.

Circuits are the inner layer of tape diagrams. Equality in the free
symmetric monoidal category is decided by isomorphism of interfaced
hypergraphs; with the per-sort Frobenius generators switched on, circuits
live in the free cartesian bicategory and are compared by hypergraph
homomorphism instead (see :mod:`tapediag.hypergraph`).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .signature import Generator, MonSignature, Monomial, mono_str


class CircuitTypeError(TypeError):
    pass


class _Term:
    """Mixin caching the structural hash of deep immutable trees."""

    __slots__ = ()

    def __hash__(self):
        try:
            return self.__dict__["_h"]
        except KeyError:
            h = hash((type(self).__name__,) + tuple(getattr(self, f) for f in self.__dataclass_fields__))
            self.__dict__["_h"] = h
            return h


@dataclass(frozen=True, eq=True)
class Id(_Term):
    sort: str
    __hash__ = _Term.__hash__


@dataclass(frozen=True, eq=True)
class IdUnit(_Term):
    __hash__ = _Term.__hash__


@dataclass(frozen=True, eq=True)
class Gen(_Term):
    gen: Generator
    __hash__ = _Term.__hash__


@dataclass(frozen=True, eq=True)
class Sym(_Term):
    a: str
    b: str
    __hash__ = _Term.__hash__


@dataclass(frozen=True, eq=True)
class Seq(_Term):
    first: "Circuit"
    second: "Circuit"
    __hash__ = _Term.__hash__


@dataclass(frozen=True, eq=True)
class Tensor(_Term):
    left: "Circuit"
    right: "Circuit"
    __hash__ = _Term.__hash__


@dataclass(frozen=True, eq=True)
class Copier(_Term):
    sort: str
    __hash__ = _Term.__hash__


@dataclass(frozen=True, eq=True)
class Discharger(_Term):
    sort: str
    __hash__ = _Term.__hash__


@dataclass(frozen=True, eq=True)
class Cocopier(_Term):
    sort: str
    __hash__ = _Term.__hash__


@dataclass(frozen=True, eq=True)
class Codischarger(_Term):
    sort: str
    __hash__ = _Term.__hash__


Circuit = Id | IdUnit | Gen | Sym | Seq | Tensor | Copier | Discharger | Cocopier | Codischarger
FROBENIUS_NODES = (Copier, Discharger, Cocopier, Codischarger)


# -- typing --------------------------------------------------------------------


@lru_cache(maxsize=None)
def circuit_type(c: Circuit) -> tuple[Monomial, Monomial]:
    """Domain and codomain words of ``c``; raises on ill-typed composition."""
    match c:
        case Id(a):
            return (a,), (a,)
        case IdUnit():
            return (), ()
        case Gen(g):
            return g.arity, g.coarity
        case Sym(a, b):
            return (a, b), (b, a)
        case Seq(f, g):
            x, y = circuit_type(f)
            y2, z = circuit_type(g)
            if y != y2:
                raise CircuitTypeError(
                    f"cannot compose {mono_str(x)} -> {mono_str(y)} with {mono_str(y2)} -> {mono_str(z)}"
                )
            return x, z
        case Tensor(f, g):
            x1, y1 = circuit_type(f)
            x2, y2 = circuit_type(g)
            return x1 + x2, y1 + y2
        case Copier(a):
            return (a,), (a, a)
        case Discharger(a):
            return (a,), ()
        case Cocopier(a):
            return (a, a), (a,)
        case Codischarger(a):
            return (), (a,)
    raise CircuitTypeError(f"not a circuit: {c!r}")


def uses_frobenius(c: Circuit) -> bool:
    match c:
        case Copier() | Discharger() | Cocopier() | Codischarger():
            return True
        case Seq(f, g) | Tensor(f, g):
            return uses_frobenius(f) or uses_frobenius(g)
    return False


def generators_of(c: Circuit) -> set[Generator]:
    match c:
        case Gen(g):
            return {g}
        case Seq(f, g) | Tensor(f, g):
            return generators_of(f) | generators_of(g)
    return set()


def type_check_circuit(c: Circuit, sig: MonSignature) -> tuple[Monomial, Monomial]:
    """Type ``c`` against ``sig``: generators must be declared, sorts known."""

    def walk(t):
        match t:
            case Gen(g):
                if g.name not in sig or sig.generator(g.name) != g:
                    raise CircuitTypeError(f"unknown generator {g.name!r}")
            case Id(a) | Copier(a) | Discharger(a) | Cocopier(a) | Codischarger(a):
                if a not in sig.sorts:
                    raise CircuitTypeError(f"unknown sort {a!r}")
                if isinstance(t, FROBENIUS_NODES) and not sig.frobenius_enabled:
                    raise CircuitTypeError(f"{type(t).__name__} needs a Frobenius-enabled signature")
            case Sym(a, b):
                for s in (a, b):
                    if s not in sig.sorts:
                        raise CircuitTypeError(f"unknown sort {s!r}")
            case Seq(f, g) | Tensor(f, g):
                walk(f)
                walk(g)

    walk(c)
    return circuit_type(c)


# -- smart constructors ----------------------------------------------------------


@lru_cache(maxsize=None)
def is_identity(c: Circuit) -> bool:
    """True for terms built only from identities (syntactically trivial)."""
    match c:
        case Id() | IdUnit():
            return True
        case Tensor(f, g) | Seq(f, g):
            return is_identity(f) and is_identity(g)
    return False


def id_word(u: Monomial) -> Circuit:
    if not u:
        return IdUnit()
    out: Circuit = Id(u[-1])
    for a in reversed(u[:-1]):
        out = Tensor(Id(a), out)
    return out


def seq(f: Circuit, g: Circuit) -> Circuit:
    """``f ; g`` dropping syntactic identities (typing is still enforced)."""
    if circuit_type(f)[1] != circuit_type(g)[0]:
        circuit_type(Seq(f, g))
    if is_identity(f):
        return g
    if is_identity(g):
        return f
    return Seq(f, g)


def tensor(f: Circuit, g: Circuit) -> Circuit:
    if f == IdUnit():
        return g
    if g == IdUnit():
        return f
    return Tensor(f, g)


def seq_all(cs) -> Circuit:
    cs = list(cs)
    out = cs[0]
    for c in cs[1:]:
        out = seq(out, c)
    return out


def tensor_all(cs) -> Circuit:
    out: Circuit = IdUnit()
    for c in cs:
        out = tensor(out, c)
    return out


def sym_word(u: Monomial, v: Monomial) -> Circuit:
    """The symmetry ``UV -> VU`` built from sort-level crossings."""
    if not u or not v:
        return id_word(u + v)
    if len(u) == 1:
        a = u[0]
        if len(v) == 1:
            return Sym(a, v[0])
        # sigma_{A, B V'} = (sigma_{A,B} * id_V') ; (id_B * sigma_{A,V'})
        return seq(tensor(Sym(a, v[0]), id_word(v[1:])), tensor(Id(v[0]), sym_word((a,), v[1:])))
    # sigma_{A U', V} = (id_A * sigma_{U',V}) ; (sigma_{A,V} * id_U')
    return seq(tensor(Id(u[0]), sym_word(u[1:], v)), tensor(sym_word((u[0],), v), id_word(u[1:])))


def word_copier(u: Monomial) -> Circuit:
    """``U -> UU``: for ``U = A U'``, (copy_A * copy_U') ; (id_A * sigma_{A,U'} * id_U')."""
    if not u:
        return IdUnit()
    if len(u) == 1:
        return Copier(u[0])
    a, rest = u[0], u[1:]
    return seq(
        tensor(Copier(a), word_copier(rest)),
        tensor_all([Id(a), sym_word((a,), rest), id_word(rest)]),
    )


def word_cocopier(u: Monomial) -> Circuit:
    """``UU -> U``, mirror image of :func:`word_copier`."""
    if not u:
        return IdUnit()
    if len(u) == 1:
        return Cocopier(u[0])
    a, rest = u[0], u[1:]
    return seq(
        tensor_all([Id(a), sym_word(rest, (a,)), id_word(rest)]),
        tensor(Cocopier(a), word_cocopier(rest)),
    )


def word_discharger(u: Monomial) -> Circuit:
    return tensor_all([Discharger(a) for a in u])


def word_codischarger(u: Monomial) -> Circuit:
    return tensor_all([Codischarger(a) for a in u])


def cup(u: Monomial) -> Circuit:
    """``1 -> UU``."""
    return seq(word_codischarger(u), word_copier(u))


def cap(u: Monomial) -> Circuit:
    """``UU -> 1``."""
    return seq(word_cocopier(u), word_discharger(u))


def transpose(c: Circuit) -> Circuit:
    """The converse ``V -> U`` of ``c : U -> V``, bending wires with cups and caps."""
    u, v = circuit_type(c)
    return seq_all(
        [
            tensor(id_word(v), cup(u)),
            tensor_all([id_word(v), c, id_word(u)]),
            tensor(cap(v), id_word(u)),
        ]
    )


def top(u: Monomial, v: Monomial) -> Circuit:
    """The total relation ``U -> V``: discharge then codischarge."""
    return seq(word_discharger(u), word_codischarger(v))


# -- printing ------------------------------------------------------------------


def show(c: Circuit) -> str:
    """Render in the textual circuit syntax accepted by :mod:`tapediag.syntax`."""

    def go(t, prec):
        match t:
            case Id(a):
                return f"id({a})"
            case IdUnit():
                return "id1"
            case Gen(g):
                return g.name
            case Sym(a, b):
                return f"sym({a},{b})"
            case Copier(a):
                return f"cp({a})"
            case Discharger(a):
                return f"dc({a})"
            case Cocopier(a):
                return f"cocp({a})"
            case Codischarger(a):
                return f"codc({a})"
            case Seq(f, g):
                s = f"{go(f, 0)} ; {go(g, 0)}"
                return f"({s})" if prec > 0 else s
            case Tensor(f, g):
                s = f"{go(f, 1)} * {go(g, 1)}"
                return f"({s})" if prec > 1 else s
        raise TypeError(t)

    return go(c, 0)


# -- equality and order ------------------------------------------------------------


def _same_type(c: Circuit, d: Circuit) -> None:
    tc, td = circuit_type(c), circuit_type(d)
    if tc != td:
        raise CircuitTypeError(
            f"circuits have different types: {mono_str(tc[0])} -> {mono_str(tc[1])}"
            f" and {mono_str(td[0])} -> {mono_str(td[1])}"
        )


def circuits_equal(c: Circuit, d: Circuit, frobenius: bool = False) -> bool:
    """Equality as string diagrams (isomorphism), or in the free cartesian bicategory."""
    from .hypergraph import canonical_key

    _same_type(c, d)
    if frobenius:
        return cb_leq(c, d) and cb_leq(d, c)
    return canonical_key(c) == canonical_key(d)


def cb_leq(c: Circuit, d: Circuit) -> bool:
    """``c <= d`` in the free cartesian bicategory: a homomorphism from G(d) to G(c)."""
    _same_type(c, d)
    return _cb_leq_cached(c, d)


@lru_cache(maxsize=262144)
def _cb_leq_cached(c: Circuit, d: Circuit) -> bool:
    from .hypergraph import find_homomorphism, to_hypergraph

    return find_homomorphism(to_hypergraph(d), to_hypergraph(c)) is not None
