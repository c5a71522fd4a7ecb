import random

import pytest

from tapediag import circuit as C
from tapediag import tape as T
from tapediag.matrix import Mode, identity, to_matrix
from tapediag.order import tape_equiv, tape_leq
from tapediag.randoms import random_poly, random_tape
from tapediag.selftest import ADJOINTNESS_AXIOMS, tape_axiom_suite
from tapediag.signature import Generator

A, B, Cs = ("A",), ("B",), ("C",)
c = C.Gen(Generator("c", A, B))
d = C.Gen(Generator("d", A, B))


def mat_eq(t, s):
    return T.tape_type(t) == T.tape_type(s) and to_matrix(t) == to_matrix(s)


def test_typing():
    assert T.tape_type(T.Diag(A)) == ((A,), (A, A))
    assert T.tape_type(T.Bang(A)) == ((A,), ())
    assert T.tape_type(T.Seq(T.Diag(A), T.Oplus(T.Lift(c), T.Lift(d)))) == ((A,), (B, B))
    assert T.tape_type(T.Oplus(T.IdMon(("A", "B")), T.IdZero())) == ((("A", "B"),), (("A", "B"),))
    with pytest.raises(T.TapeTypeError):
        T.tape_type(T.Seq(T.Lift(c), T.Lift(c)))
    with pytest.raises(T.TapeTypeError):
        T.sum_tapes(T.Lift(c), T.IdMon(A))


def test_polynomial_structure():
    p = (("A", "B"), (), ("C",))
    assert T.id_poly(p) == T.Oplus(T.Oplus(T.IdMon(p[0]), T.IdMon(p[1])), T.IdMon(p[2]))
    assert T.diag_poly((A,)) == T.Diag(A)
    assert T.cobang_poly(()) == T.IdZero()
    abc = (A, B, Cs)
    assert T.tape_type(T.diag_poly(abc)) == (abc, abc + abc)
    assert to_matrix(T.diag_poly(abc)) == to_matrix(T.Seq(T.id_poly(abc), T.diag_poly(abc)))
    m = to_matrix(T.diag_poly(abc))
    for j in range(6):
        for i in range(3):
            assert len(m[j, i]) == (1 if j % 3 == i else 0)


def test_left_distributor():
    rng = random.Random(2)
    u = ("A", "B")
    q, r = random_poly(rng), random_poly(rng)
    assert to_matrix(T.left_distributor((u,), q, r)) == identity(T.tape_type(T.left_distributor((u,), q, r))[0])
    ab = (A, B)
    dl = T.left_distributor(ab, (Cs,), (("D",),))
    assert T.tape_type(dl) == ((("A", "C"), ("A", "D"), ("B", "C"), ("B", "D")), (("A", "C"), ("B", "C"), ("A", "D"), ("B", "D")))
    m = to_matrix(dl)
    assert [[len(m[j, i]) for i in range(4)] for j in range(4)] == [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    for _ in range(100):
        p, q, r = random_poly(rng), random_poly(rng), random_poly(rng)
        there = T.left_distributor(p, q, r)
        back = T.inv_left_distributor(p, q, r)
        assert to_matrix(T.seq(there, back)) == identity(T.tape_type(there)[0])
        assert to_matrix(T.seq(back, there)) == identity(T.tape_type(back)[0])


def test_tensor_symmetry():
    rng = random.Random(4)
    for _ in range(100):
        p, q = random_poly(rng), random_poly(rng)
        assert to_matrix(T.tensor_symmetry(p, ((),))) == identity(p)
        s = T.seq(T.tensor_symmetry(p, q), T.tensor_symmetry(q, p))
        assert T.tape_type(s)[0] == T.tape_type(s)[1]
        assert to_matrix(s) == identity(T.tape_type(s)[0])
    u, v = ("A", "B"), ("C",)
    assert mat_eq(T.tensor_symmetry((u,), (v,)), T.Lift(C.sym_word(u, v)))


def test_whiskering_examples():
    rng = random.Random(9)
    for _ in range(50):
        t = random_tape(rng, random_poly(rng))
        assert T.whisker_right(((),), t) == t and mat_eq(T.whisker_left(((),), t), t)
        assert T.whisker_right((), t) == T.IdZero()
    u = ("C",)
    assert mat_eq(T.whisker_right((u,), T.Lift(c)), T.Lift(C.tensor(c, C.id_word(u))))
    assert mat_eq(T.whisker_left((u,), T.Lift(c)), T.Lift(C.tensor(C.id_word(u), c)))
    assert T.whisker_left((u,), T.Diag(A)) == T.Diag(("C", "A"))


def test_tensor_examples():
    e = C.Gen(Generator("e", Cs, A))
    assert mat_eq(T.tensor(T.Lift(c), T.Lift(e)), T.Lift(C.tensor(c, e)))
    rng = random.Random(6)
    for _ in range(50):
        t = random_tape(rng, random_poly(rng))
        assert mat_eq(T.tensor(t, T.id_poly(((),))), t)
        assert mat_eq(T.tensor(T.id_poly(((),)), t), t)


def test_tensor_functorial():
    rng = random.Random(8)
    for _ in range(200):
        t1 = random_tape(rng, random_poly(rng, max_len=2))
        t2 = random_tape(rng, T.tape_type(t1)[1], size=3)
        t3 = random_tape(rng, random_poly(rng, max_len=2))
        t4 = random_tape(rng, T.tape_type(t3)[1], size=3)
        lhs = T.tensor(T.seq(t1, t2), T.seq(t3, t4))
        rhs = T.seq(T.tensor(t1, t3), T.tensor(t2, t4))
        assert mat_eq(lhs, rhs)


def test_sum_and_zero():
    t = T.sum_tapes(T.Lift(c), T.sum_tapes(T.Lift(c), T.Lift(d)))
    assert [C.show(x) for x in to_matrix(t)[0, 0]] == ["c", "c", "d"]
    assert mat_eq(T.sum_tapes(T.Lift(c), T.zero((A,), (B,))), T.Lift(c))
    rng = random.Random(10)
    for _ in range(100):
        p = random_poly(rng)
        t1 = random_tape(rng, p)
        q = T.tape_type(t1)[1]
        t2 = random_tape(rng, p)
        if T.tape_type(t2)[1] != q:
            continue
        s = random_tape(rng, q)
        assert mat_eq(T.seq(T.sum_tapes(t1, t2), s), T.sum_tapes(T.seq(t1, s), T.seq(t2, s)))


def test_cartesian_structure_types():
    ab = (A, B)
    assert T.tape_type(T.copier_poly(ab)) == (ab, (("A", "A"), ("A", "B"), ("B", "A"), ("B", "B")))
    assert T.copier_poly(()) == T.IdZero()
    assert T.discharger_poly(()) == T.Cobang(())
    assert T.copier_poly((("A", "B"),)) == T.Lift(C.word_copier(("A", "B")))
    rng = random.Random(1)
    for _ in range(30):
        p = random_poly(rng, max_len=2)
        pp = T.tape_type(T.tensor(T.id_poly(p), T.id_poly(p)))[0]
        assert T.tape_type(T.cocopier_poly(p)) == (pp, p)
        assert T.tape_type(T.discharger_poly(p)) == (p, ((),))
        assert T.tape_type(T.codischarger_poly(p)) == (((),), p)
        # counit and special laws lifted to polynomials
        counit = T.seq(T.copier_poly(p), T.tensor(T.id_poly(p), T.discharger_poly(p)))
        special = T.seq(T.copier_poly(p), T.cocopier_poly(p))
        assert tape_equiv(counit, T.id_poly(p), Mode.CB)
        assert tape_equiv(special, T.id_poly(p), Mode.CB)


def test_tape_axioms():
    result = tape_axiom_suite(50, seed=1)
    assert result.ok, result.failures[:3]


@pytest.mark.parametrize("name", sorted(ADJOINTNESS_AXIOMS))
def test_whiskered_axiom_closure(name):
    rng = random.Random(name)
    law = ADJOINTNESS_AXIOMS[name]
    for _ in range(10):
        lhs, rhs = law(rng)
        for u in [(), A, ("A", "B"), ("C", "C")]:
            assert tape_leq(T.whisker_right((u,), lhs), T.whisker_right((u,), rhs), Mode.SET)


def test_show_roundtrip_shape():
    t = T.Seq(T.Diag(A), T.Oplus(T.Lift(c), T.Lift(d)))
    assert T.show(t) == "diag(A) ; [c] (+) [d]"
    assert T.describe_type(t) == "A -> B + B"


def test_injections_projections():
    p = (A, B, Cs)
    for i in range(3):
        m = to_matrix(T.injection(p, i))
        assert m.shape == (3, 1) and [len(m[j, 0]) for j in range(3)] == [int(j == i) for j in range(3)]
        m = to_matrix(T.projection(p, i))
        assert m.shape == (1, 3) and [len(m[0, j]) for j in range(3)] == [int(j == i) for j in range(3)]
