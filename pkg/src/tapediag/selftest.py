"""Catalogues of laws and seeded property suites.

Each law is a function ``rng -> (lhs, rhs)``; the suites normalise both sides
and compare. The same catalogues back the test-suite and ``tapediag selftest``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from . import circuit as C
from . import cr
from . import tape as T
from .matrix import Mode, from_matrix, mat_compose, mat_kron, mat_oplus, to_matrix
from .order import tape_equiv, tape_leq
from .randoms import (
    REL_SIGNATURE,
    random_circuit,
    random_circuit_between,
    random_cr,
    random_matrix,
    random_mono,
    random_poly,
    random_tape,
    weaken,
)
from .rel import eval_circuit, random_interpretation
from .signature import poly_product

Law = Callable[[random.Random], tuple[T.Tape, T.Tape]]


def _poly(rng):
    return random_poly(rng, max_len=3, max_mono=2)


def _small(rng):
    """A polynomial kept short so that products stay desk sized."""
    return random_poly(rng, max_len=2, max_mono=1)


def _tape(rng, p=None):
    return random_tape(rng, _poly(rng) if p is None else p)


# -- whiskering algebra ---------------------------------------------------------------

L, R = T.whisker_left, T.whisker_right


def _w1(rng):
    s, p = _poly(rng), _poly(rng)
    if rng.random() < 0.5:
        return L(s, T.id_poly(p)), T.id_poly(poly_product(s, p))
    return R(s, T.id_poly(p)), T.id_poly(poly_product(p, s))


def _w2(rng):
    s, t = _small(rng), _tape(rng)
    u = _tape(rng, T.tape_type(t)[1])
    w = L if rng.random() < 0.5 else R
    return w(s, T.seq(t, u)), T.seq(w(s, t), w(s, u))


def _w3(rng):
    t = _tape(rng)
    w = L if rng.random() < 0.5 else R
    return w(((),), t), t


def _w4(rng):
    t = _tape(rng)
    w = L if rng.random() < 0.5 else R
    return w((), t), T.IdZero()


def _w5(rng):
    s, t1, t2 = _small(rng), _tape(rng), _tape(rng)
    (p1, q1), (p2, q2) = T.tape_type(t1), T.tape_type(t2)
    if rng.random() < 0.5:
        return L(s, T.Oplus(t1, t2)), T.seq_all(
            [T.left_distributor(s, p1, p2), T.oplus(L(s, t1), L(s, t2)), T.inv_left_distributor(s, q1, q2)]
        )
    return R(s, T.Oplus(t1, t2)), T.oplus(R(s, t1), R(s, t2))


def _w6(rng):
    s, u, t = _small(rng), _small(rng), _tape(rng)
    p, q = T.tape_type(t)
    if rng.random() < 0.5:
        return L(s + u, t), T.oplus(L(s, t), L(u, t))
    return R(s + u, t), T.seq_all(
        [T.left_distributor(p, s, u), T.oplus(R(s, t), R(u, t)), T.inv_left_distributor(q, s, u)]
    )


def _w7(rng):
    t1, t2 = _tape(rng), _tape(rng)
    (p1, q1), (p2, q2) = T.tape_type(t1), T.tape_type(t2)
    return T.seq(L(p1, t2), R(q2, t1)), T.seq(R(p2, t1), L(q1, t2))


def _w8(rng):
    s, u = _poly(rng), random_mono(rng)
    us = poly_product((u,), s)
    if rng.random() < 0.5:
        return R(s, T.Diag(u)), T.diag_poly(us)
    return R(s, T.Codiag(u)), T.codiag_poly(us)


def _w9(rng):
    s, u = _poly(rng), random_mono(rng)
    us = poly_product((u,), s)
    if rng.random() < 0.5:
        return R(s, T.Bang(u)), T.bang_poly(us)
    return R(s, T.Cobang(u)), T.cobang_poly(us)


def _w10(rng):
    s, p, q = _small(rng), _poly(rng), _poly(rng)
    return R(s, T.sym_plus_poly(p, q)), T.sym_plus_poly(poly_product(p, s), poly_product(q, s))


def _w11(rng):
    p, q, s = _small(rng), _small(rng), _small(rng)
    return T.tensor_symmetry(poly_product(p, q), s), T.seq(
        L(p, T.tensor_symmetry(q, s)), R(q, T.tensor_symmetry(p, s))
    )


def _w12(rng):
    s, t = _small(rng), _tape(rng)
    p, q = T.tape_type(t)
    return T.seq(R(s, t), T.tensor_symmetry(q, s)), T.seq(T.tensor_symmetry(p, s), L(s, t))


def _w13(rng):
    s, u, t = _small(rng), _small(rng), _tape(rng)
    return L(s, R(u, t)), R(u, L(s, t))


def _w14(rng):
    s, u, t = _small(rng), _small(rng), _tape(rng)
    return L(poly_product(s, u), t), L(s, L(u, t))


def _w15(rng):
    s, u, t = _small(rng), _small(rng), _tape(rng)
    return R(poly_product(u, s), t), R(s, R(u, t))


def _w16(rng):
    s, p, q, r = _small(rng), _small(rng), _small(rng), _small(rng)
    return R(s, T.left_distributor(p, q, r)), T.left_distributor(p, poly_product(q, s), poly_product(r, s))


def _w17(rng):
    s, p, q, r = _small(rng), _small(rng), _small(rng), _small(rng)
    return L(s, T.left_distributor(p, q, r)), T.seq(
        T.left_distributor(poly_product(s, p), q, r),
        T.inv_left_distributor(s, poly_product(p, q), poly_product(p, r)),
    )


WHISKERING_LAWS: dict[str, Law] = {f"W{k}": f for k, f in enumerate(
    [_w1, _w2, _w3, _w4, _w5, _w6, _w7, _w8, _w9, _w10, _w11, _w12, _w13, _w14, _w15, _w16, _w17], start=1
)}


# -- plain tape axioms ---------------------------------------------------------------


def _word(rng):
    return random_mono(rng, max_len=3)


def _box(rng, u):
    return T.Lift(random_circuit(rng, u))


def _sym_inv(rng):
    u, v = _word(rng), _word(rng)
    return T.seq(T.SymPlus(u, v), T.SymPlus(v, u)), T.id_poly((u, v))


def _sym_nat(rng):
    u, v = _word(rng), _word(rng)
    a, b = _box(rng, u), _box(rng, v)
    (_, ua), (_, vb) = T.tape_type(a), T.tape_type(b)
    return T.seq(T.Oplus(a, b), T.SymPlus(ua[0], vb[0])), T.seq(T.SymPlus(u, v), T.Oplus(b, a))


def _diag_as(rng):
    u = _word(rng)
    return T.seq(T.Diag(u), T.Oplus(T.Diag(u), T.IdMon(u))), T.seq(T.Diag(u), T.Oplus(T.IdMon(u), T.Diag(u)))


def _diag_un(rng):
    u = _word(rng)
    return T.seq(T.Diag(u), T.Oplus(T.IdMon(u), T.Bang(u))), T.IdMon(u)


def _diag_co(rng):
    u = _word(rng)
    return T.seq(T.Diag(u), T.SymPlus(u, u)), T.Diag(u)


def _codiag_as(rng):
    u = _word(rng)
    return T.seq(T.Oplus(T.Codiag(u), T.IdMon(u)), T.Codiag(u)), T.seq(T.Oplus(T.IdMon(u), T.Codiag(u)), T.Codiag(u))


def _codiag_un(rng):
    u = _word(rng)
    return T.seq(T.Oplus(T.IdMon(u), T.Cobang(u)), T.Codiag(u)), T.IdMon(u)


def _codiag_co(rng):
    u = _word(rng)
    return T.seq(T.SymPlus(u, u), T.Codiag(u)), T.Codiag(u)


def _bi(rng):
    u = _word(rng)
    rhs = T.seq_all(
        [
            T.Oplus(T.Diag(u), T.Diag(u)),
            T.oplus_all([T.IdMon(u), T.SymPlus(u, u), T.IdMon(u)]),
            T.Oplus(T.Codiag(u), T.Codiag(u)),
        ]
    )
    return T.seq(T.Codiag(u), T.Diag(u)), rhs


def _bo(rng):
    u = _word(rng)
    return T.seq(T.Cobang(u), T.Bang(u)), T.IdZero()


def _diag_bi(rng):
    u = _word(rng)
    return T.seq(T.Cobang(u), T.Diag(u)), T.Oplus(T.Cobang(u), T.Cobang(u))


def _codiag_bi(rng):
    u = _word(rng)
    return T.seq(T.Codiag(u), T.Bang(u)), T.Oplus(T.Bang(u), T.Bang(u))


def _diag_nat(rng):
    u = _word(rng)
    a = _box(rng, u)
    (v,) = T.tape_type(a)[1]
    return T.seq(a, T.Diag(v)), T.seq(T.Diag(u), T.Oplus(a, a))


def _bang_nat(rng):
    u = _word(rng)
    a = _box(rng, u)
    (v,) = T.tape_type(a)[1]
    return T.seq(a, T.Bang(v)), T.Bang(u)


def _codiag_nat(rng):
    u = _word(rng)
    a = _box(rng, u)
    (v,) = T.tape_type(a)[1]
    return T.seq(T.Codiag(u), a), T.seq(T.Oplus(a, a), T.Codiag(v))


def _cobang_nat(rng):
    u = _word(rng)
    a = _box(rng, u)
    (v,) = T.tape_type(a)[1]
    return T.seq(T.Cobang(u), a), T.Cobang(v)


TAPE_AXIOMS: dict[str, Law] = {
    "symp-inv": _sym_inv,
    "symp-nat": _sym_nat,
    "diag-as": _diag_as,
    "diag-un": _diag_un,
    "diag-co": _diag_co,
    "codiag-as": _codiag_as,
    "codiag-un": _codiag_un,
    "codiag-co": _codiag_co,
    "bi": _bi,
    "bo": _bo,
    "diag-bi": _diag_bi,
    "codiag-bi": _codiag_bi,
    "diag-nat": _diag_nat,
    "bang-nat": _bang_nat,
    "codiag-nat": _codiag_nat,
    "cobang-nat": _cobang_nat,
}


# -- order axioms (lhs <= rhs) ----------------------------------------------------------

ADJOINTNESS_AXIOMS: dict[str, Law] = {
    "cobang-bang": lambda rng: (T.IdZero(), T.seq(T.Cobang(u := _word(rng)), T.Bang(u))),
    "bang-cobang": lambda rng: (T.seq(T.Bang(u := _word(rng)), T.Cobang(u)), T.IdMon(u)),
    "codiag-diag": lambda rng: (T.id_poly(((u := _word(rng)), u)), T.seq(T.Codiag(u), T.Diag(u))),
    "diag-codiag": lambda rng: (T.seq(T.Diag(u := _word(rng)), T.Codiag(u)), T.IdMon(u)),
}


# -- cartesian bicategory axioms on circuits ------------------------------------------

_A = "A"
_RG = C.Gen(REL_SIGNATURE.generator("R"))
_ID, _ID2 = C.Id(_A), C.id_word((_A, _A))
_CP, _DC, _COCP, _CODC = C.Copier(_A), C.Discharger(_A), C.Cocopier(_A), C.Codischarger(_A)
_SW = C.Sym(_A, _A)


def _t(*cs):
    return C.tensor_all(cs)


CB_EQUALITIES: dict[str, tuple[C.Circuit, C.Circuit]] = {
    "sym-inv": (C.seq(_SW, _SW), _ID2),
    "sym-nat": (C.seq(_t(_RG, _ID), _SW), C.seq(_SW, _t(_ID, _RG))),
    "cp-as": (C.seq(_CP, _t(_CP, _ID)), C.seq(_CP, _t(_ID, _CP))),
    "cp-un": (C.seq(_CP, _t(_DC, _ID)), _ID),
    "cp-co": (C.seq(_CP, _SW), _CP),
    "cocp-as": (C.seq(_t(_COCP, _ID), _COCP), C.seq(_t(_ID, _COCP), _COCP)),
    "cocp-un": (C.seq(_t(_CODC, _ID), _COCP), _ID),
    "cocp-co": (C.seq(_SW, _COCP), _COCP),
    "S": (C.seq(_CP, _COCP), _ID),
    "F-left": (C.seq(_t(_CP, _ID), _t(_ID, _COCP)), C.seq(_COCP, _CP)),
    "F-right": (C.seq(_t(_ID, _CP), _t(_COCP, _ID)), C.seq(_COCP, _CP)),
}

CB_INEQUALITIES: dict[str, tuple[C.Circuit, C.Circuit]] = {
    "cp-nat": (C.seq(_RG, _CP), C.seq(_CP, _t(_RG, _RG))),
    "dc-nat": (C.seq(_RG, _DC), _DC),
    "codc-dc": (C.seq(_CODC, _DC), C.IdUnit()),
    "dc-codc": (_ID, C.seq(_DC, _CODC)),
    "cocp-cp": (C.seq(_COCP, _CP), _ID2),
    "cp-cocp": (_ID, C.seq(_CP, _COCP)),
}


# -- suites -------------------------------------------------------------------------


@dataclass
class SuiteResult:
    name: str
    passed: int
    total: int
    seconds: float
    failures: list

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def line(self) -> str:
        return f"{self.name}: {'ok' if self.ok else 'FAIL'} {self.passed}/{self.total}"


def run_laws(name: str, laws: dict[str, Law], cases: int, seed: int, check) -> SuiteResult:
    """``check(lhs, rhs)`` on ``cases`` instances of every law; one RNG stream per law."""
    start, passed, total, failures = time.perf_counter(), 0, 0, []
    for law_name, law in laws.items():
        rng = random.Random(f"{seed}:{name}:{law_name}")
        for _ in range(cases):
            lhs, rhs = law(rng)
            total += 1
            if check(lhs, rhs):
                passed += 1
            else:
                failures.append((law_name, T.show(lhs), T.show(rhs)))
    return SuiteResult(name, passed, total, time.perf_counter() - start, failures)


def _matrix_equal(mode=Mode.MULTISET):
    return lambda a, b: T.tape_type(a) == T.tape_type(b) and to_matrix(a, mode) == to_matrix(b, mode)


def whiskering_suite(cases: int = 200, seed: int = 0) -> SuiteResult:
    return run_laws("whiskering", WHISKERING_LAWS, cases, seed, _matrix_equal())


def tape_axiom_suite(cases: int = 50, seed: int = 0) -> SuiteResult:
    return run_laws("tape-axioms", TAPE_AXIOMS, cases, seed, _matrix_equal())


def adjointness_suite(cases: int = 50, seed: int = 0, mode: Mode = Mode.SET) -> SuiteResult:
    return run_laws("adjointness", ADJOINTNESS_AXIOMS, cases, seed, lambda a, b: tape_leq(a, b, mode))


def _cases(name, seed, cases, body) -> SuiteResult:
    rng = random.Random(f"{seed}:{name}")
    start, passed, failures = time.perf_counter(), 0, []
    for k in range(cases):
        ok = body(rng)
        passed += bool(ok)
        if not ok:
            failures.append(k)
    return SuiteResult(name, passed, cases, time.perf_counter() - start, failures)


def matrix_roundtrip_suite(cases: int = 200, seed: int = 0) -> SuiteResult:
    def body(rng):
        m = random_matrix(rng)
        t = _tape(rng)
        return to_matrix(from_matrix(m)) == m and to_matrix(from_matrix(to_matrix(t))) == to_matrix(t)

    return _cases("matrix-roundtrip", seed, cases, body)


def kronecker_suite(cases: int = 200, seed: int = 0) -> SuiteResult:
    def body(rng):
        t, s = _tape(rng), _tape(rng)
        return to_matrix(T.tensor(t, s)) == mat_kron(to_matrix(t), to_matrix(s))

    return _cases("kronecker", seed, cases, body)


def functoriality_suite(cases: int = 200, seed: int = 0) -> SuiteResult:
    def body(rng):
        t = _tape(rng)
        s = _tape(rng, T.tape_type(t)[1])
        u = _tape(rng)
        return to_matrix(T.Seq(t, s)) == mat_compose(to_matrix(t), to_matrix(s)) and to_matrix(
            T.Oplus(t, u)
        ) == mat_oplus(to_matrix(t), to_matrix(u))

    return _cases("functoriality", seed, cases, body)


def cb_soundness_suite(cases: int = 1000, seed: int = 0) -> SuiteResult:
    """cb_leq(c, d) must imply inclusion of the relations on sampled models."""

    def body(rng):
        c = random_circuit_between(rng, (_A,), (_A,))
        d = weaken(rng, c) if rng.random() < 0.5 else random_circuit_between(rng, (_A,), (_A,))
        if rng.random() < 0.5:
            c, d = d, c
        interp = random_interpretation(REL_SIGNATURE.generators, [_A], rng, max_carrier=3)
        return not C.cb_leq(c, d) or eval_circuit(c, interp) <= eval_circuit(d, interp)

    return _cases("cb-soundness", seed, cases, body)


def cr_suite(cases: int = 100, seed: int = 0) -> SuiteResult:
    def body(rng):
        e = random_cr(rng, rng.randint(0, 6))
        return (
            cr.decide_leq(cr.Bot(), e, search=False).holds
            and cr.decide_leq(e, cr.Top(), search=False).holds
            and cr.decide_equiv(e, cr.Op(cr.Op(e))).holds
        )

    return _cases("cr-bounds", seed, cases, body)


def cr_soundness_suite(cases: int = 100, seed: int = 0) -> SuiteResult:
    def body(rng):
        e1, e2 = random_cr(rng, rng.randint(0, 5), ("R", "S")), random_cr(rng, rng.randint(0, 5), ("R", "S"))
        v = cr.decide_leq(e1, e2, search=False)
        return not v.holds or cr.holds_on_all(e1, e2, 2, seed=seed)

    return _cases("cr-soundness", seed, cases, body)


def set_mode_suite(cases: int = 100, seed: int = 0) -> SuiteResult:
    def body(rng):
        t = _tape(rng, (random_mono(rng),))
        twice = T.sum_tapes(t, t)
        return tape_equiv(twice, t, Mode.SET) and tape_equiv(twice, t, Mode.CB)

    return _cases("idempotent-sum", seed, cases, body)


SUITES = {
    "whiskering": whiskering_suite,
    "tape-axioms": tape_axiom_suite,
    "adjointness": adjointness_suite,
    "idempotent-sum": set_mode_suite,
    "matrix-roundtrip": matrix_roundtrip_suite,
    "kronecker": kronecker_suite,
    "functoriality": functoriality_suite,
    "cb-soundness": cb_soundness_suite,
    "cr-bounds": cr_suite,
    "cr-soundness": cr_soundness_suite,
}


def run_all(seed: int = 0, scale: float = 0.25, out=print) -> bool:
    """Run every suite with case counts scaled down by ``scale``; prints one line per suite."""
    ok = True
    for name, suite in SUITES.items():
        default = suite.__defaults__[0]
        result = suite(max(1, int(default * scale)), seed)
        out(result.line())
        ok &= result.ok
    return ok
