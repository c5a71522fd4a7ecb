from tapediag.circuit import Cocopier, Codischarger, Copier, Discharger, Gen, Id, IdUnit, Seq, Sym, Tensor
from tapediag.hypergraph import canonical_key, find_homomorphism, isomorphic, to_dot, to_hypergraph
from tapediag.signature import Generator

A = "A"
R = Gen(Generator("R", (A,), (A,)))
S = Gen(Generator("S", (A,), (A,)))
T = Gen(Generator("T", (A,), (A,)))


def test_single_box():
    hg = to_hypergraph(R)
    assert hg.n_vertices == 2
    assert hg.edges == (("R", (0,), (1,)),)
    assert hg.left == (0,) and hg.right == (1,)


def test_intersection_graph():
    hg = to_hypergraph(Seq(Copier(A), Seq(Tensor(S, T), Cocopier(A))))
    assert hg.n_vertices == 2
    (v0,), (v1,) = hg.left, hg.right
    assert sorted(hg.edges) == [("S", (v0,), (v1,)), ("T", (v0,), (v1,))]


def test_special_frobenius_collapses():
    hg = to_hypergraph(Seq(Copier(A), Cocopier(A)))
    assert hg.n_vertices == 1 and not hg.edges
    assert hg.left == hg.right == (0,)
    assert isomorphic(hg, to_hypergraph(Id(A)))


def test_linearity_of_plain_circuits():
    c = Seq(Tensor(R, S), Sym(A, A))
    assert to_hypergraph(c).is_linear()
    assert not to_hypergraph(Copier(A)).is_linear()


def test_closed_and_floating_parts():
    hg = to_hypergraph(IdUnit())
    assert hg.n_vertices == 0 and hg.left == hg.right == ()
    loop = Seq(Codischarger(A), Seq(R, Discharger(A)))
    assert not isomorphic(to_hypergraph(loop), to_hypergraph(IdUnit()))
    two = Tensor(loop, loop)
    assert not isomorphic(to_hypergraph(two), to_hypergraph(loop))
    # floating components do not depend on where they are drawn
    assert canonical_key(Tensor(R, loop)) == canonical_key(Tensor(loop, R))


def test_canonical_key_ignores_term_shape():
    a = Seq(Seq(R, S), T)
    b = Seq(R, Seq(S, T))
    assert canonical_key(a) == canonical_key(b)
    assert canonical_key(Seq(R, S)) != canonical_key(Seq(S, R))


def test_homomorphism_fixes_interfaces():
    big = to_hypergraph(Seq(Copier(A), Seq(Tensor(R, S), Cocopier(A))))
    small = to_hypergraph(R)
    h = find_homomorphism(small, big)
    assert h is not None
    assert h[small.left[0]] == big.left[0] and h[small.right[0]] == big.right[0]
    assert find_homomorphism(big, small) is None


def test_port_order_matters():
    f = Gen(Generator("f", (A, A), (A,)))
    swapped = Seq(Sym(A, A), f)
    assert find_homomorphism(to_hypergraph(f), to_hypergraph(swapped)) is None


def test_dot():
    dot = to_dot(to_hypergraph(Seq(R, S)), "rs")
    assert dot.startswith('digraph "rs"')
    assert 'label="R"' in dot and 'label="S"' in dot
