import random

import pytest

from tapediag import circuit as C
from tapediag.circuit import (
    CircuitTypeError,
    Cocopier,
    Codischarger,
    Copier,
    Discharger,
    Gen,
    Id,
    IdUnit,
    Seq,
    Sym,
    Tensor,
    cb_leq,
    circuit_type,
    circuits_equal,
    transpose,
    type_check_circuit,
    word_copier,
    word_discharger,
)
from tapediag.hypergraph import to_hypergraph
from tapediag.randoms import REL_SIGNATURE, TEST_SIGNATURE, random_circuit, random_circuit_between
from tapediag.signature import Generator, MonSignature

A = "A"
R = Gen(Generator("R", (A,), (A,)))
S = Gen(Generator("S", (A,), (A,)))
s_gen = Gen(Generator("s", ("A", "B"), ("C",)))


def test_typing_examples():
    assert circuit_type(Seq(R, S)) == ((A,), (A,))
    assert circuit_type(Tensor(Id(A), s_gen)) == (("A", "A", "B"), ("A", "C"))
    with pytest.raises(CircuitTypeError):
        circuit_type(Seq(R, s_gen))


def test_type_check_against_signature(sig):
    c = Seq(Gen(sig.generator("c")), Gen(sig.generator("d")))
    assert type_check_circuit(c, sig) == (("A",), ("C",))
    with pytest.raises(CircuitTypeError):
        type_check_circuit(Gen(Generator("zz", (A,), (A,))), sig)
    with pytest.raises(CircuitTypeError):
        type_check_circuit(Copier(A), sig)  # frobenius not enabled
    with pytest.raises(CircuitTypeError):
        type_check_circuit(Gen(Generator("c", ("B",), ("B",))), sig)  # same name, wrong type


def test_functoriality_of_tensor():
    f, g = R, S
    a = Seq(Tensor(f, Id(A)), Tensor(Id(A), g))
    b = Seq(Tensor(Id(A), g), Tensor(f, Id(A)))
    assert circuits_equal(a, b)
    assert circuits_equal(Tensor(f, g), a)


def test_label_mismatch():
    assert not circuits_equal(R, S)


def test_symmetry_involution():
    assert circuits_equal(Seq(Sym(A, A), Sym(A, A)), Tensor(Id(A), Id(A)))
    assert not circuits_equal(Sym(A, A), Tensor(Id(A), Id(A)))


def test_symmetric_monoidal_axioms_random():
    rng = random.Random(3)
    gens = TEST_SIGNATURE.generators
    for _ in range(200):
        f = random_circuit(rng, ("A", "B"))
        g = random_circuit(rng, circuit_type(f)[1])
        h = random_circuit(rng, circuit_type(g)[1])
        assert circuits_equal(Seq(Seq(f, g), h), Seq(f, Seq(g, h)))
        k = random_circuit(rng, ("C",))
        assert circuits_equal(Tensor(Tensor(f, g), k), Tensor(f, Tensor(g, k)))
        # interchange
        u, v = circuit_type(f)[1], circuit_type(k)[1]
        g2 = random_circuit(rng, u)
        k2 = random_circuit(rng, v)
        assert circuits_equal(Tensor(Seq(f, g2), Seq(k, k2)), Seq(Tensor(f, k), Tensor(g2, k2)))
        # naturality of the symmetry
        x, y = circuit_type(f)
        z, w = circuit_type(k)
        lhs = Seq(Tensor(f, k), C.sym_word(y, w))
        rhs = Seq(C.sym_word(x, z), Tensor(k, f))
        assert circuits_equal(lhs, rhs)
        assert circuits_equal(Seq(C.id_word(x), f), f)
    assert gens


def test_identity_unit():
    assert circuits_equal(Tensor(IdUnit(), R), R)
    assert circuit_type(IdUnit()) == ((), ())


def test_cb_leq_basic():
    assert cb_leq(Id(A), Seq(Discharger(A), Codischarger(A)))
    assert not cb_leq(Seq(Discharger(A), Codischarger(A)), Id(A))
    for c in (R, Seq(R, S), Seq(Copier(A), Seq(Tensor(R, S), Cocopier(A)))):
        assert cb_leq(c, c)


def test_intersection_below_each_side():
    inter = Seq(Copier(A), Seq(Tensor(R, S), Cocopier(A)))
    assert cb_leq(inter, R) and cb_leq(inter, S)
    assert not cb_leq(R, inter)


def test_cb_leq_preorder_random():
    rng = random.Random(11)
    for _ in range(200):
        a, b, c = (random_circuit_between(rng, (A,), (A,)) for _ in range(3))
        assert cb_leq(a, a)
        if cb_leq(a, b) and cb_leq(b, c):
            assert cb_leq(a, c)


def test_cb_equal_is_hom_equivalence():
    # R ; (R & R) is R ; R with a duplicated edge: not isomorphic, yet equal
    rr = Seq(Copier(A), Seq(Tensor(R, R), Cocopier(A)))
    assert circuits_equal(rr, R, frobenius=True)
    assert not circuits_equal(rr, R)


def test_type_mismatch_raises():
    with pytest.raises(CircuitTypeError):
        circuits_equal(R, Id("B"))
    with pytest.raises(CircuitTypeError):
        cb_leq(R, Copier(A))


def test_word_structures():
    assert word_copier(()) == IdUnit()
    assert word_discharger((A,)) == Discharger(A)
    hg = to_hypergraph(word_copier(("A", "B")))
    assert len(hg.left) == 2 and len(hg.right) == 4
    assert list(hg.right) == [hg.left[0], hg.left[1], hg.left[0], hg.left[1]]
    assert circuits_equal(C.word_cocopier(("A", "B")), transpose(word_copier(("A", "B"))), frobenius=True)


def test_transpose():
    assert circuits_equal(transpose(Id(A)), Id(A), frobenius=True)
    assert circuits_equal(transpose(transpose(R)), R, frobenius=True)
    rng = random.Random(5)
    from tapediag.hypergraph import isomorphic

    for _ in range(100):
        c = random_circuit(rng, ("A", "B"), TEST_SIGNATURE, frobenius=True)
        t = transpose(c)
        assert circuit_type(t) == circuit_type(c)[::-1]
        assert isomorphic(to_hypergraph(t), to_hypergraph(c).swap())


def test_show():
    c = Seq(Tensor(R, Id(A)), Sym(A, A))
    assert C.show(c) == "R * id(A) ; sym(A,A)"
    assert C.show(Tensor(Seq(R, S), Copier(A))) == "(R ; S) * cp(A)"


def test_single_sorted_generator_signature():
    assert isinstance(REL_SIGNATURE, MonSignature)
    assert REL_SIGNATURE.frobenius_enabled
