"""Interfaced hypergraphs of circuits.

A circuit denotes a hypergraph whose vertices are wires and whose
hyperedges are generator boxes, together with ordered left and right
interfaces. Without Frobenius generators the translation is linear: each
vertex has exactly one producer and one consumer. The Frobenius generators
merge wires (copier, cocopier) or leave them dangling (discharger,
codischarger).

Two circuits are equal in the free symmetric monoidal category iff their
hypergraphs are isomorphic, and ``c <= d`` in the free cartesian bicategory
iff there is a homomorphism from the hypergraph of ``d`` to that of ``c``
fixing the interfaces.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

from .circuit import (
    Circuit,
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
    circuit_type,
    uses_frobenius,
)

Edge = tuple[str, tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class Hypergraph:
    sorts: tuple[str, ...]  # sort of each vertex, indexed by vertex id
    edges: tuple[Edge, ...]
    left: tuple[int, ...]
    right: tuple[int, ...]

    @property
    def n_vertices(self) -> int:
        return len(self.sorts)

    def swap(self) -> "Hypergraph":
        return Hypergraph(self.sorts, self.edges, self.right, self.left)

    def is_linear(self) -> bool:
        produced = [0] * self.n_vertices
        consumed = [0] * self.n_vertices
        for v in self.left:
            produced[v] += 1
        for v in self.right:
            consumed[v] += 1
        for _, src, tgt in self.edges:
            for v in src:
                consumed[v] += 1
            for v in tgt:
                produced[v] += 1
        return all(p == 1 for p in produced) and all(c == 1 for c in consumed)


class _Builder:
    def __init__(self):
        self.parent: list[int] = []
        self.sort: list[str] = []
        self.edges: list[tuple[str, list[int], list[int]]] = []

    def fresh(self, sort: str) -> int:
        self.parent.append(len(self.parent))
        self.sort.append(sort)
        return len(self.parent) - 1

    def find(self, v: int) -> int:
        while self.parent[v] != v:
            self.parent[v] = self.parent[self.parent[v]]
            v = self.parent[v]
        return v

    def union(self, a: int, b: int) -> int:
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)
        return min(a, b)

    def run(self, c: Circuit, inputs: list[int]) -> list[int]:
        match c:
            case Id():
                return inputs
            case IdUnit():
                return []
            case Sym():
                return [inputs[1], inputs[0]]
            case Gen(g):
                outs = [self.fresh(s) for s in g.coarity]
                self.edges.append((g.name, list(inputs), outs))
                return outs
            case Seq(f, g):
                return self.run(g, self.run(f, inputs))
            case Tensor(f, g):
                k = len(circuit_type(f)[0])
                return self.run(f, inputs[:k]) + self.run(g, inputs[k:])
            case Copier():
                return [inputs[0], inputs[0]]
            case Cocopier():
                return [self.union(inputs[0], inputs[1])]
            case Discharger():
                return []
            case Codischarger(a):
                return [self.fresh(a)]
        raise TypeError(f"not a circuit: {c!r}")


@lru_cache(maxsize=65536)
def to_hypergraph(c: Circuit) -> Hypergraph:
    """Compositional translation, quotiented by the wire merges and renumbered."""
    dom, _ = circuit_type(c)
    b = _Builder()
    left = [b.fresh(a) for a in dom]
    right = b.run(c, left)
    roots = sorted({b.find(v) for v in range(len(b.parent))})
    ren = {r: i for i, r in enumerate(roots)}

    def f(v):
        return ren[b.find(v)]

    hg = Hypergraph(
        tuple(b.sort[r] for r in roots),
        tuple((lab, tuple(map(f, s)), tuple(map(f, t))) for lab, s, t in b.edges),
        tuple(map(f, left)),
        tuple(map(f, right)),
    )
    if not uses_frobenius(c):
        assert hg.is_linear(), "plain circuit translated to a non-linear graph"
    return hg


# -- canonical form ----------------------------------------------------------------


def _relabel(sigs: list) -> list[int]:
    order = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [order[s] for s in sigs]


def _refine(colors: list[int], edges, incidence) -> list[int]:
    n_classes = len(set(colors))
    while True:
        esig = [(lab, tuple(colors[v] for v in s), tuple(colors[v] for v in t)) for lab, s, t in edges]
        vsig = [
            (colors[v], tuple(sorted((esig[e], side, k) for e, side, k in incidence[v])))
            for v in range(len(colors))
        ]
        new = _relabel(vsig)
        m = len(set(new))
        if m == n_classes:
            return new
        colors, n_classes = new, m


def _certificate(sorts, edges, left, right, colors, incidence):
    colors = _refine(colors, edges, incidence)
    cells = defaultdict(list)
    for v, col in enumerate(colors):
        cells[col].append(v)
    split = min((col for col, vs in cells.items() if len(vs) > 1), default=None)
    if split is None:
        ren = colors  # discrete: the colour is the canonical index
        return (
            tuple(sorts[v] for v in sorted(range(len(sorts)), key=ren.__getitem__)),
            tuple(sorted((lab, tuple(ren[v] for v in s), tuple(ren[v] for v in t)) for lab, s, t in edges)),
            tuple(ren[v] for v in left),
            tuple(ren[v] for v in right),
        )
    best = None
    for v in cells[split]:
        individual = [2 * c + (1 if (c == split and u != v) else 0) for u, c in enumerate(colors)]
        cert = _certificate(sorts, edges, left, right, individual, incidence)
        if best is None or cert < best:
            best = cert
    return best


def _incidence(n, edges):
    inc = [[] for _ in range(n)]
    for e, (_, s, t) in enumerate(edges):
        for k, v in enumerate(s):
            inc[v].append((e, 0, k))
        for k, v in enumerate(t):
            inc[v].append((e, 1, k))
    return inc


def _components(hg: Hypergraph) -> list[tuple[list[int], list[int]]]:
    parent = list(range(hg.n_vertices))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for _, s, t in hg.edges:
        vs = s + t
        for v in vs[1:]:
            parent[find(v)] = find(vs[0])
    anchor = {find(v) for v in hg.left + hg.right}
    groups: dict[int, tuple[list[int], list[int]]] = defaultdict(lambda: ([], []))
    for v in range(hg.n_vertices):
        groups[find(v)][0].append(v)
    for e, (_, s, t) in enumerate(hg.edges):
        if s + t:
            groups[find((s + t)[0])][1].append(e)
    closed = [e for e, (_, s, t) in enumerate(hg.edges) if not s and not t]
    out = [groups[r] for r in sorted(groups) if r not in anchor]
    anchored_v = [v for r in sorted(groups) if r in anchor for v in groups[r][0]]
    anchored_e = [e for r in sorted(groups) if r in anchor for e in groups[r][1]]
    return [(anchored_v, anchored_e + closed)] + out


def _sub_certificate(hg: Hypergraph, vs: list[int], es: list[int], with_interface: bool):
    idx = {v: i for i, v in enumerate(vs)}
    sorts = [hg.sorts[v] for v in vs]
    edges = [(hg.edges[e][0], tuple(idx[v] for v in hg.edges[e][1]), tuple(idx[v] for v in hg.edges[e][2])) for e in es]
    left = [idx[v] for v in hg.left] if with_interface else []
    right = [idx[v] for v in hg.right] if with_interface else []
    lpos, rpos = defaultdict(list), defaultdict(list)
    for k, v in enumerate(left):
        lpos[v].append(k)
    for k, v in enumerate(right):
        rpos[v].append(k)
    init = _relabel([(sorts[v], tuple(lpos[v]), tuple(rpos[v])) for v in range(len(vs))])
    init_sig = tuple(sorted(set(zip(init, sorts))))
    return (init_sig, _certificate(sorts, edges, left, right, init, _incidence(len(vs), edges)))


@lru_cache(maxsize=65536)
def canonical_form(hg: Hypergraph):
    """Isomorphism-invariant certificate of an interfaced hypergraph.

    Colour refinement seeded by interface positions, with individualisation
    of the first ambiguous cell. Components not reachable from the interface
    are certified separately and compared as a multiset, which keeps runs of
    identical floating pieces from blowing up the search.
    """
    comps = _components(hg)
    head = _sub_certificate(hg, comps[0][0], comps[0][1], True)
    floating = tuple(sorted(_sub_certificate(hg, vs, es, False) for vs, es in comps[1:]))
    return (head, floating)


def canonical_key(c: Circuit):
    return canonical_form(to_hypergraph(c))


def isomorphic(g: Hypergraph, h: Hypergraph) -> bool:
    return canonical_form(g) == canonical_form(h)


# -- homomorphisms -----------------------------------------------------------------


def find_homomorphism(src: Hypergraph, tgt: Hypergraph) -> dict[int, int] | None:
    """A label-, sort- and port-preserving map ``src -> tgt`` fixing interfaces, or None."""
    if len(src.left) != len(tgt.left) or len(src.right) != len(tgt.right):
        return None
    fixed: dict[int, int] = {}
    for a, b in list(zip(src.left, tgt.left)) + list(zip(src.right, tgt.right)):
        if fixed.setdefault(a, b) != b or src.sorts[a] != tgt.sorts[b]:
            return None

    by_label: dict[str, list[Edge]] = defaultdict(list)
    for e in tgt.edges:
        by_label[e[0]].append(e)
    if any(lab not in by_label for lab, _, _ in src.edges):
        return None
    # parallel copies of one edge impose the same constraint once
    pending = sorted(set(src.edges))

    def candidates(edge, assign):
        lab, s, t = edge
        out = []
        for _, s2, t2 in by_label[lab]:
            local = {}
            ok = True
            for a, b in zip(s + t, s2 + t2):
                want = assign.get(a, local.get(a))
                if want is None:
                    local[a] = b
                elif want != b:
                    ok = False
                    break
            if ok:
                out.append(local)
        return out

    def search(assign, remaining):
        if not remaining:
            return assign
        # most constrained edge first
        best_i, best_c = None, None
        for i, e in enumerate(remaining):
            cs = candidates(e, assign)
            if not cs:
                return None
            if best_c is None or len(cs) < len(best_c):
                best_i, best_c = i, cs
                if len(cs) == 1:
                    break
        rest = remaining[:best_i] + remaining[best_i + 1 :]
        for local in best_c:
            merged = dict(assign)
            merged.update(local)
            found = search(merged, rest)
            if found is not None:
                return found
        return None

    result = search(fixed, pending)
    if result is None:
        return None
    by_sort: dict[str, int] = {}
    for v, s in enumerate(tgt.sorts):
        by_sort.setdefault(s, v)
    for v in range(src.n_vertices):
        if v not in result:
            if src.sorts[v] not in by_sort:
                return None
            result[v] = by_sort[src.sorts[v]]
    return result


# -- DOT --------------------------------------------------------------------------


def to_dot(hg: Hypergraph, name: str = "circuit") -> str:
    """Graphviz rendering: wires as points, boxes as records, interfaces as ports."""
    lines = [f'digraph "{name}" {{', "  rankdir=LR;", "  node [fontname=Helvetica];"]
    for v, s in enumerate(hg.sorts):
        lines.append(f'  v{v} [shape=circle, width=0.25, label="", xlabel="{s}"];')
    for k, v in enumerate(hg.left):
        lines.append(f'  in{k} [shape=plaintext, label="{k}"];')
        lines.append(f"  in{k} -> v{v};")
    for k, v in enumerate(hg.right):
        lines.append(f'  out{k} [shape=plaintext, label="{k}"];')
        lines.append(f"  v{v} -> out{k};")
    for e, (lab, s, t) in enumerate(hg.edges):
        lines.append(f'  e{e} [shape=box, label="{lab}"];')
        for k, v in enumerate(s):
            lines.append(f'  v{v} -> e{e} [headlabel="{k}", arrowhead=none];')
        for k, v in enumerate(t):
            lines.append(f'  e{e} -> v{v} [taillabel="{k}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
