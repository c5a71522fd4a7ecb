"""Egli-Milner order on matrix entries and the induced order on tapes."""

from __future__ import annotations

from . import circuit as C
from . import tape as T
from .matrix import MatrixError, Mode, MonomialEntry, TapeMatrix, to_matrix

__all__ = ["Mode", "em_leq", "matrix_leq", "tape_leq", "tape_equiv"]


def _base_leq(mode: Mode):
    if mode is Mode.CB:
        return C.cb_leq
    return lambda c, d: C.circuits_equal(c, d)


def em_leq(e1: MonomialEntry, e2: MonomialEntry, mode: Mode | str) -> bool:
    """Every circuit of ``e1`` lies below some circuit of ``e2``."""
    mode = Mode.parse(mode)
    if mode is Mode.MULTISET:
        raise MatrixError("the plain tape category carries no order; use tape_equiv")
    if (e1.dom, e1.cod) != (e2.dom, e2.cod):
        raise MatrixError("entries have different types")
    leq = _base_leq(mode)
    return all(any(leq(c, d) for d in e2.circuits) for c in e1.circuits)


def matrix_leq(m: TapeMatrix, n: TapeMatrix, mode: Mode | str | None = None) -> bool:
    mode = Mode.parse(mode) if mode is not None else m.mode
    if (m.dom, m.cod) != (n.dom, n.cod):
        raise MatrixError("matrices have different types")
    rows, cols = m.shape
    return all(em_leq(m.entries[j][i], n.entries[j][i], mode) for j in range(rows) for i in range(cols))


def _check_types(t: T.Tape, s: T.Tape) -> None:
    if T.tape_type(t) != T.tape_type(s):
        raise T.TapeTypeError(f"tapes have different types: {T.describe_type(t)} and {T.describe_type(s)}")


def tape_leq(t: T.Tape, s: T.Tape, mode: Mode | str = Mode.SET) -> bool:
    mode = Mode.parse(mode)
    _check_types(t, s)
    return matrix_leq(to_matrix(t, mode), to_matrix(s, mode), mode)


def tape_equiv(t: T.Tape, s: T.Tape, mode: Mode | str = Mode.MULTISET) -> bool:
    mode = Mode.parse(mode)
    _check_types(t, s)
    if mode is Mode.MULTISET:
        return to_matrix(t, mode) == to_matrix(s, mode)
    return tape_leq(t, s, mode) and tape_leq(s, t, mode)
