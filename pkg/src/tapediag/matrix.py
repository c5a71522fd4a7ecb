"""Matrix normal form of tapes.

A tape ``(+)_i U_i -> (+)_j V_j`` is sent to an m x n matrix whose (j, i)
entry collects the circuits ``U_i -> V_j`` met along the paths of the tape.
Entries are multisets in the plain category, sets once ``+`` is idempotent,
and antichains of maximal circuits (finite generators of a downset) in the
cartesian-bicategory setting.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from functools import lru_cache

from . import circuit as C
from . import tape as T
from .hypergraph import canonical_key
from .signature import Monomial, Polynomial, mono_str, poly_product


class Mode(enum.Enum):
    MULTISET = "multiset"
    SET = "set"
    CB = "cb"

    @classmethod
    def parse(cls, value: "Mode | str") -> "Mode":
        return value if isinstance(value, Mode) else cls(value.lower())


class MatrixError(ValueError):
    pass


def _key_order(c: C.Circuit):
    return (canonical_key(c), C.show(c))


def canonicalize(circuits, mode: Mode) -> tuple[C.Circuit, ...]:
    """Canonical ordering (and, outside MULTISET, deduplication) of an entry."""
    ordered = sorted(circuits, key=_key_order)
    if mode is Mode.MULTISET:
        return tuple(ordered)
    unique, seen = [], set()
    for c in ordered:
        k = canonical_key(c)
        if k not in seen:
            seen.add(k)
            unique.append(c)
    if mode is Mode.SET:
        return tuple(unique)
    # CB: keep cb_leq-maximal elements; among equivalent ones, the first in key order
    keep = []
    for i, c in enumerate(unique):
        dominated = False
        for j, d in enumerate(unique):
            if i != j and C.cb_leq(c, d) and (j < i or not C.cb_leq(d, c)):
                dominated = True
                break
        if not dominated:
            keep.append(c)
    return tuple(keep)


@dataclass(frozen=True, eq=False)
class MonomialEntry:
    dom: Monomial
    cod: Monomial
    circuits: tuple[C.Circuit, ...]

    @property
    def keys(self):
        return tuple(canonical_key(c) for c in self.circuits)

    def __eq__(self, other):
        if not isinstance(other, MonomialEntry):
            return NotImplemented
        return (self.dom, self.cod, self.keys) == (other.dom, other.cod, other.keys)

    def __hash__(self):
        return hash((self.dom, self.cod, self.keys))

    def __len__(self):
        return len(self.circuits)

    def __iter__(self):
        return iter(self.circuits)

    def __str__(self):
        return "{" + ", ".join(C.show(c) for c in self.circuits) + "}"


def make_entry(dom: Monomial, cod: Monomial, circuits, mode: Mode) -> MonomialEntry:
    return MonomialEntry(dom, cod, canonicalize(circuits, mode))


@dataclass(frozen=True)
class TapeMatrix:
    dom: Polynomial
    cod: Polynomial
    entries: tuple[tuple[MonomialEntry, ...], ...]  # entries[j][i], row j = cod index
    mode: Mode = Mode.MULTISET

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.cod), len(self.dom)

    def __getitem__(self, ji) -> MonomialEntry:
        j, i = ji
        return self.entries[j][i]

    def __str__(self):
        return pretty(self)


def build(dom: Polynomial, cod: Polynomial, cells, mode: Mode) -> TapeMatrix:
    """``cells(j, i)`` yields the raw circuits of entry (j, i)."""
    return TapeMatrix(
        dom,
        cod,
        tuple(tuple(make_entry(dom[i], cod[j], cells(j, i), mode) for i in range(len(dom))) for j in range(len(cod))),
        mode,
    )


def identity(p: Polynomial, mode: Mode = Mode.MULTISET) -> TapeMatrix:
    return build(p, p, lambda j, i: [C.id_word(p[i])] if i == j else [], mode)


def zero_matrix(p: Polynomial, q: Polynomial, mode: Mode = Mode.MULTISET) -> TapeMatrix:
    return build(p, q, lambda j, i: [], mode)


def mat_compose(m: TapeMatrix, n: TapeMatrix) -> TapeMatrix:
    """Diagrammatic composite ``m ; n`` (first m, then n)."""
    if m.cod != n.dom:
        raise MatrixError("middle polynomials differ")
    mode = _mode(m, n)

    def cells(j, i):
        out = []
        for k in range(len(m.cod)):
            for a in m.entries[k][i]:
                for b in n.entries[j][k]:
                    out.append(C.seq(a, b))
        return out

    return build(m.dom, n.cod, cells, mode)


def mat_oplus(m: TapeMatrix, n: TapeMatrix) -> TapeMatrix:
    mode = _mode(m, n)
    dm, cm = len(m.dom), len(m.cod)

    def cells(j, i):
        if j < cm and i < dm:
            return list(m.entries[j][i])
        if j >= cm and i >= dm:
            return list(n.entries[j - cm][i - dm])
        return []

    return build(m.dom + n.dom, m.cod + n.cod, cells, mode)


def mat_kron(m: TapeMatrix, n: TapeMatrix) -> TapeMatrix:
    """Kronecker product; row and column indices are i-major like the polynomial product."""
    mode = _mode(m, n)
    nd, nc = len(n.dom), len(n.cod)

    def cells(row, col):
        i2, j2 = divmod(row, nc)
        i1, j1 = divmod(col, nd)
        return [C.tensor(a, b) for a in m.entries[i2][i1] for b in n.entries[j2][j1]]

    return build(poly_product(m.dom, n.dom), poly_product(m.cod, n.cod), cells, mode)


def mat_sum(m: TapeMatrix, n: TapeMatrix) -> TapeMatrix:
    if (m.dom, m.cod) != (n.dom, n.cod):
        raise MatrixError("summands have different types")
    return build(m.dom, m.cod, lambda j, i: list(m.entries[j][i]) + list(n.entries[j][i]), _mode(m, n))


def with_mode(m: TapeMatrix, mode: Mode) -> TapeMatrix:
    return build(m.dom, m.cod, lambda j, i: list(m.entries[j][i]), mode)


def _mode(m: TapeMatrix, n: TapeMatrix) -> Mode:
    if m.mode is not n.mode:
        raise MatrixError(f"mode mismatch: {m.mode.value} vs {n.mode.value}")
    return m.mode


# -- the functors F and G ----------------------------------------------------------------


@lru_cache(maxsize=65536)
def to_matrix(t: T.Tape, mode: Mode | str = Mode.MULTISET) -> TapeMatrix:
    """The isomorphism F from tapes to matrices, by structural recursion."""
    mode = Mode.parse(mode)
    match t:
        case T.IdMon(u):
            return build((u,), (u,), lambda j, i: [C.id_word(u)], mode)
        case T.IdZero():
            return build((), (), None, mode)
        case T.Lift(c):
            C.circuit_type(c)
            u, v = C.circuit_type(c)
            return build((u,), (v,), lambda j, i: [c], mode)
        case T.SymPlus(u, v):
            return build((u, v), (v, u), lambda j, i: [C.id_word((u, v)[i])] if i != j else [], mode)
        case T.Diag(u):
            return build((u,), (u, u), lambda j, i: [C.id_word(u)], mode)
        case T.Codiag(u):
            return build((u, u), (u,), lambda j, i: [C.id_word(u)], mode)
        case T.Bang(u):
            return build((u,), (), None, mode)
        case T.Cobang(u):
            return build((), (u,), None, mode)
        case T.Seq(f, g):
            return mat_compose(to_matrix(f, mode), to_matrix(g, mode))
        case T.Oplus(f, g):
            return mat_oplus(to_matrix(f, mode), to_matrix(g, mode))
    raise T.TapeTypeError(f"not a tape: {t!r}")


def from_matrix(m: TapeMatrix) -> T.Tape:
    """The inverse functor G: generalised diagonals, summed boxes, generalised codiagonal."""
    n_cols, n_rows = len(m.dom), len(m.cod)
    spread = T.oplus_all(T.gen_diag((u,), n_rows) for u in m.dom)
    boxes = T.oplus_all(
        T.sum_all([T.Lift(a) for a in m.entries[j][i]], (m.dom[i],), (m.cod[j],))
        for i in range(n_cols)
        for j in range(n_rows)
    )
    gather = T.gen_codiag(m.cod, n_cols)
    return T.seq_all([spread, boxes, gather])


def entry(t: T.Tape, j: int, i: int, mode: Mode | str = Mode.MULTISET) -> MonomialEntry:
    """Entry (j, i), 1-based, computed as injection ; t ; projection."""
    p, q = T.tape_type(t)
    if not (1 <= i <= len(p) and 1 <= j <= len(q)):
        raise IndexError(f"entry ({j},{i}) out of range for a {len(q)}x{len(p)} matrix")
    probe = T.seq_all([T.injection(p, i - 1), t, T.projection(q, j - 1)])
    return to_matrix(probe, Mode.parse(mode)).entries[0][0]


def matrices_equal(m: TapeMatrix, n: TapeMatrix) -> bool:
    """Structural equality, except in CB mode where entries are compared up to equivalence."""
    if m.mode is Mode.CB or n.mode is Mode.CB:
        from .order import matrix_leq

        return matrix_leq(m, n) and matrix_leq(n, m)
    return m == n


# -- output ------------------------------------------------------------------------------


def pretty(m: TapeMatrix) -> str:
    rows, cols = m.shape
    header = [""] + [mono_str(u) for u in m.dom]
    table = [header]
    for j in range(rows):
        table.append([mono_str(m.cod[j])] + [str(m.entries[j][i]) for i in range(cols)])
    widths = [max(len(r[k]) for r in table) for k in range(len(header))]
    lines = [f"{rows}x{cols} matrix ({m.mode.value})"]
    for r in table:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
    return "\n".join(lines)


def to_json(m: TapeMatrix) -> str:
    return json.dumps(
        {
            "mode": m.mode.value,
            "dom": [list(u) for u in m.dom],
            "cod": [list(v) for v in m.cod],
            "entries": [[[C.show(c) for c in e] for e in row] for row in m.entries],
        },
        indent=2,
    )
