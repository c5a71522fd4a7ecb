import random

import pytest

from tapediag import circuit as C
from tapediag import cr
from tapediag import tape as T
from tapediag.cr import Bot, Inter, One, Op, Rel, Seq, Top, Union
from tapediag.matrix import Mode, make_entry, to_matrix
from tapediag.order import tape_equiv
from tapediag.randoms import random_cr
from tapediag.rel import Interpretation, ModelError, eval_tape, random_interpretation
from tapediag.signature import parse_signature

R, S, Tt = Rel("R"), Rel("S"), Rel("T")
ALL = ("R", "S", "T")


def sample_model(rng, n=None):
    sig = cr.cr_signature(ALL)
    if n is None:
        return random_interpretation(sig.generators, ["A"], rng)
    return random_interpretation(sig.generators, ["A"], rng, max_carrier=n)


def test_parse_precedence():
    assert cr.parse_cr("R | (S & T)") == Union(R, Inter(S, Tt))
    assert cr.parse_cr("R ; S | T") == Union(Seq(R, S), Tt)
    assert cr.parse_cr("(R ; S)~") == Op(Seq(R, S))
    assert cr.parse_cr("R ; S~") == Seq(R, Op(S))
    assert cr.parse_cr("R & S ; T") == Inter(R, Seq(S, Tt))
    assert cr.parse_cr("R | S | T") == Union(Union(R, S), Tt)
    assert cr.parse_cr("id ; top | bot") == Union(Seq(One(), Top()), Bot())
    rng = random.Random(0)
    for _ in range(200):
        e = random_cr(rng, rng.randint(0, 8))
        assert cr.parse_cr(cr.show(e)) == e


def test_parse_errors():
    sig = parse_signature("sort A; frobenius; gen R : A -> A;")
    for text in ["", "R ;", "(R", "R S", "R + S", "~R"]:
        with pytest.raises(cr.CrSyntaxError):
            cr.parse_cr(text)
    with pytest.raises(cr.CrSyntaxError):
        cr.parse_cr("R ; Q", sig)
    bad = parse_signature("sort A B; gen R : A -> B;")
    with pytest.raises(cr.CrSyntaxError):
        cr.parse_cr("R", bad)
    assert cr.parse_cr("R ; R~", sig) == Seq(R, Op(R))


def test_constants():
    I = Interpretation({"A": 3}, {})
    pairs = lambda e: {(x, y) for (_, (x,)), (_, (y,)) in cr.eval_cr(e, I).pairs}
    assert pairs(One()) == {(x, x) for x in range(3)}
    assert pairs(Bot()) == set()
    assert pairs(Top()) == {(x, y) for x in range(3) for y in range(3)}
    with pytest.raises(ModelError):
        cr.eval_cr(R, I)


def test_semantics_agree_with_tapes():
    rng = random.Random(1)
    for _ in range(200):
        e = random_cr(rng, rng.randint(0, 6))
        I = sample_model(rng)
        assert cr.eval_cr(e, I) == eval_tape(cr.encode(e), I), cr.show(e)


def test_batched_evaluation():
    rng = random.Random(2)
    for _ in range(20):
        e = random_cr(rng, 5)
        models = [sample_model(rng, 2) for _ in range(8)]
        models = [m for m in models if m.carrier["A"] == models[0].carrier["A"]]
        assert cr.eval_cr_many(e, models) == [cr.eval_cr(e, m) for m in models]
    with pytest.raises(ModelError):
        cr.eval_cr_many(R, [Interpretation({"A": 1}, {"R": frozenset()}), Interpretation({"A": 2}, {"R": frozenset()})])


def test_encodings():
    m = to_matrix(cr.encode(cr.parse_cr("R | (S & T)")), Mode.CB)
    assert m.shape == (1, 1)
    g = cr._gen
    meet = C.seq(C.seq(C.Copier("A"), C.tensor(g("S"), g("T"))), C.Cocopier("A"))
    assert m[0, 0] == make_entry(("A",), ("A",), [g("R"), meet], Mode.CB)
    assert cr.encode(One()) == T.Lift(C.Id("A"))
    for e in [R, Seq(R, S), Inter(R, Op(S)), Union(R, Top())]:
        assert tape_equiv(cr.encode(Op(Op(e))), cr.encode(e), Mode.CB)


def test_converse_readings_agree():
    rng = random.Random(3)
    for _ in range(50):
        t = cr.encode(random_cr(rng, rng.randint(0, 4)))
        assert tape_equiv(cr.encode_op(t), cr.encode_op_literal(t), Mode.CB)


def test_decisions():
    p = cr.parse_cr
    assert cr.decide_equiv(p("R;(S|T)"), p("R;S | R;T"))
    assert cr.decide_leq(p("R;(S&T)"), p("(R;S)&(R;T)"))
    v = cr.decide_leq(p("(R;S)&(R;T)"), p("R;(S&T)"))
    assert not v and v.counterexample is not None and v.counterexample.carrier["A"] <= 3
    cex = v.counterexample
    assert not cr.eval_cr(p("(R;S)&(R;T)"), cex) <= cr.eval_cr(p("R;(S&T)"), cex)
    assert cr.decide_equiv(p("R | (R & S)"), R)
    assert cr.decide_equiv(p("(R;S)~"), p("S~;R~"))
    assert not cr.decide_leq(p("top"), p("id"))
    assert cr.decide_leq(p("R & S"), p("R"))
    assert not cr.decide_leq(p("R"), p("R & S"))


def test_decision_laws():
    rng = random.Random(4)
    for _ in range(100):
        e = random_cr(rng, rng.randint(0, 6))
        assert cr.decide_leq(Bot(), e, search=False)
        assert cr.decide_leq(e, Top(), search=False)
        assert cr.decide_equiv(Seq(One(), e), e)
        assert cr.decide_equiv(e, Op(Op(e)))
    for _ in range(100):
        e1, e2 = random_cr(rng, 3), random_cr(rng, 3)
        assert cr.decide_equiv(Op(Union(e1, e2)), Union(Op(e1), Op(e2)))


def test_always_one_by_one():
    rng = random.Random(5)
    for _ in range(100):
        e = random_cr(rng, rng.randint(0, 8))
        assert to_matrix(cr.encode(e), Mode.CB).shape == (1, 1)
        assert T.tape_type(cr.encode(e)) == ((("A",),), (("A",),))


def test_size_and_symbols():
    e = cr.parse_cr("(R ; S~) | top & T")
    assert cr.size(e) == 4
    assert cr.symbols(e) == {"R", "S", "T"}
    assert cr.holds_on_all(R, Union(R, S), 2)
    assert not cr.holds_on_all(Union(R, S), R, 2)
