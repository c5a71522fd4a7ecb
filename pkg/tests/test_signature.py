import random

import pytest

from tapediag.matrix import to_matrix
from tapediag.signature import (
    Generator,
    MonSignature,
    RigSignature,
    SignatureError,
    expand_generator,
    parse_signature,
    poly_product,
    poly_sum,
    reduce_rig_signature,
)
from tapediag import circuit as C, tape as T


def test_parse_monoidal():
    sig = parse_signature("sort A; gen R : A -> A;")
    assert isinstance(sig, MonSignature)
    assert sig.sorts == ("A",)
    assert sig.generator("R") == Generator("R", ("A",), ("A",))


def test_empty_coarity():
    sig = parse_signature("sort A; gen f : A A -> ;")
    assert sig.generator("f").coarity == ()


def test_parse_rig():
    sig = parse_signature("sort A B C; gen s : A B + C -> A + B + C;")
    assert isinstance(sig, RigSignature)
    s = sig.generator("s")
    assert s.arity == (("A", "B"), ("C",))
    assert s.coarity == (("A",), ("B",), ("C",))


def test_comments_and_frobenius():
    sig = parse_signature("# relations\nsort A;  # one sort\nfrobenius;\ngen R : A -> A;\n")
    assert sig.frobenius_enabled


def test_zero_and_unit_types():
    sig = parse_signature("sort A; gen z : 0 -> A + A;")
    assert sig.generator("z").arity == ()
    sig = parse_signature("sort A; gen u : 1 -> A;")
    assert sig.generator("u").arity == ()


@pytest.mark.parametrize(
    "text, where",
    [
        ("sort A A;", (1, 8)),
        ("sort A; gen R : A -> A; gen R : A -> A;", (1, 29)),
        ("sort A;\ngen R : A -> B;", (2, 5)),
        ("sort A; gen R A -> A;", (1, 15)),
        ("sort A; gen R : A -> A", None),
        ("sort A; gen R : A $ A;", (1, 19)),
    ],
)
def test_errors(text, where):
    with pytest.raises(SignatureError) as info:
        parse_signature(text)
    if where is not None:
        assert (info.value.line, info.value.column) == where


def test_poly_product_examples():
    assert poly_product((("A",), ("B",)), (("C",), ("D",))) == (("A", "C"), ("A", "D"), ("B", "C"), ("B", "D"))
    p = (("A",), ())
    assert poly_product(p, p) == (("A", "A"), ("A",), ("A",), ())
    assert poly_product(p, ((),)) == p
    assert poly_product((), p) == ()
    assert poly_product(p, ()) == ()


def _rand_poly(rng):
    return tuple(tuple(rng.choice("ABC") for _ in range(rng.randint(0, 2))) for _ in range(rng.randint(0, 3)))


def test_poly_laws():
    rng = random.Random(7)
    for _ in range(1000):
        p, q, r = _rand_poly(rng), _rand_poly(rng), _rand_poly(rng)
        assert poly_product(poly_product(p, q), r) == poly_product(p, poly_product(q, r))
        assert poly_product(((),), p) == p == poly_product(p, ((),))
        assert poly_product(poly_sum(p, q), r) == poly_sum(poly_product(p, r), poly_product(q, r))
        if len(p) == 1:
            assert poly_product(p, poly_sum(q, r)) == poly_sum(poly_product(p, q), poly_product(p, r))


def test_reduction_six_generators():
    rs = parse_signature("sort A B C; gen s : A B + C -> A + B + C;")
    sig, table = reduce_rig_signature(rs)
    names = sorted(g.name for g in sig.generators)
    assert names == ["s__1_1", "s__1_2", "s__2_1", "s__2_2", "s__3_1", "s__3_2"]
    assert sig.generator("s__1_1") == Generator("s__1_1", ("A", "B"), ("A",))
    assert sig.generator("s__3_2") == Generator("s__3_2", ("C",), ("C",))
    assert table["s"][2][1].name == "s__3_2"


def test_reduction_degenerate():
    sig, table = reduce_rig_signature(parse_signature("sort A; gen s : A -> A + A; gen z : 0 -> A + A;"))
    assert table["z"] == [[], []]
    assert [g.name for g in sig.generators] == ["s__1_1", "s__2_1"]


def test_reduction_name_collision():
    rs = parse_signature("sort A; gen s : A -> A + A; gen s__1_1 : A -> A + A;")
    with pytest.raises(SignatureError):
        reduce_rig_signature(rs)


def test_expand_monomial_generator():
    rs = parse_signature("sort A B; gen s : A -> B; gen t : A -> B + B;")
    sig, table = reduce_rig_signature(rs)
    assert expand_generator(rs.generators[0], table) == T.Lift(C.Gen(sig.generator("s__1_1")))
    assert expand_generator(rs.generators[1], table) == T.Seq(
        T.Diag(("A",)), T.Oplus(T.Lift(C.Gen(sig.generator("t__1_1"))), T.Lift(C.Gen(sig.generator("t__2_1"))))
    )


def test_expand_entries_are_singletons():
    rs = parse_signature("sort A B C; gen s : A B + C -> A + B + C;")
    sig, table = reduce_rig_signature(rs)
    m = to_matrix(expand_generator(rs.generators[0], table))
    assert m.shape == (3, 2)
    for j in range(3):
        for i in range(2):
            assert m[j, i].circuits == (C.Gen(table["s"][j][i]),)
