"""Finite relational semantics of circuits and tapes.

A monomial denotes the cartesian product of the carriers of its sorts and a
polynomial the disjoint union of its monomials. Elements of a disjoint union
are tagged tuples ``(i, xs)``: ``i`` is the index of the monomial and ``xs`` a
tuple of carrier elements.
"""

from __future__ import annotations

import itertools
import json
import random
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from . import circuit as C
from . import tape as T
from .signature import Generator, Monomial, Polynomial


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class Interpretation:
    carrier: dict[str, int]
    relations: dict[str, frozenset] = field(default_factory=dict)

    def elements(self, u: Monomial) -> list[tuple[int, ...]]:
        try:
            return list(itertools.product(*(range(self.carrier[a]) for a in u)))
        except KeyError as exc:
            raise ModelError(f"no carrier for sort {exc.args[0]!r}") from None

    def relation(self, g: Generator) -> frozenset:
        try:
            return self.relations[g.name]
        except KeyError:
            raise ModelError(f"generator {g.name!r} is not interpreted") from None

    def to_json(self) -> str:
        return json.dumps(
            {
                "carrier": dict(self.carrier),
                "relations": {k: sorted([list(x), list(y)] for x, y in v) for k, v in sorted(self.relations.items())},
            }
        )

    def __hash__(self):
        h = self.__dict__.get("_h")
        if h is None:
            h = hash((tuple(sorted(self.carrier.items())), tuple(sorted(self.relations.items()))))
            object.__setattr__(self, "_h", h)
        return h


def interpretation_from_json(text: str, generators=()) -> Interpretation:
    """Read ``{"carrier": {...}, "relations": {"R": [[[0],[1]], ...]}}``, checking arities."""
    try:
        data = json.loads(text)
        carrier = {str(k): int(v) for k, v in data["carrier"].items()}
        relations = {
            str(k): frozenset((tuple(int(a) for a in x), tuple(int(b) for b in y)) for x, y in pairs)
            for k, pairs in data.get("relations", {}).items()
        }
    except (ValueError, KeyError, TypeError) as exc:
        raise ModelError(f"malformed interpretation: {exc}") from None
    if any(n < 1 for n in carrier.values()):
        raise ModelError("carriers must be non-empty")
    for g in generators:
        if g.name not in relations:
            raise ModelError(f"generator {g.name!r} is not interpreted")
        for x, y in relations[g.name]:
            if len(x) != len(g.arity) or len(y) != len(g.coarity):
                raise ModelError(f"tuple length mismatch in relation {g.name!r}")
            for v, s in zip(x + y, g.arity + g.coarity):
                if s not in carrier:
                    raise ModelError(f"no carrier for sort {s!r}")
                if not 0 <= v < carrier[s]:
                    raise ModelError(f"value {v} outside the carrier of {s!r} in {g.name!r}")
    return Interpretation(carrier, relations)


@dataclass(frozen=True)
class FiniteRelation:
    dom: Polynomial
    cod: Polynomial
    pairs: frozenset

    def __le__(self, other: "FiniteRelation") -> bool:
        return self.pairs <= other.pairs

    def sorted_pairs(self):
        return sorted(self.pairs)


# -- relation algebra on sets of pairs ----------------------------------------------------


def compose(r, s) -> frozenset:
    succ = defaultdict(list)
    for y, z in s:
        succ[y].append(z)
    return frozenset((x, z) for x, y in r for z in succ.get(y, ()))


def diagonal(xs) -> frozenset:
    return frozenset((x, x) for x in xs)


# -- circuits ------------------------------------------------------------------------


@lru_cache(maxsize=1 << 18)
def eval_circuit(c: C.Circuit, interp: Interpretation) -> frozenset:
    """Relation between value tuples of the domain and codomain words."""
    match c:
        case C.Id(a):
            return frozenset(((x,), (x,)) for x in range(interp.carrier[a]))
        case C.IdUnit():
            return frozenset({((), ())})
        case C.Gen(g):
            return interp.relation(g)
        case C.Sym(a, b):
            return frozenset(((x, y), (y, x)) for x in range(interp.carrier[a]) for y in range(interp.carrier[b]))
        case C.Seq(f, g):
            return compose(eval_circuit(f, interp), eval_circuit(g, interp))
        case C.Tensor(f, g):
            r, s = eval_circuit(f, interp), eval_circuit(g, interp)
            return frozenset((x1 + x2, y1 + y2) for x1, y1 in r for x2, y2 in s)
        case C.Copier(a):
            return frozenset(((x,), (x, x)) for x in range(interp.carrier[a]))
        case C.Discharger(a):
            return frozenset(((x,), ()) for x in range(interp.carrier[a]))
        case C.Cocopier(a):
            return frozenset(((x, x), (x,)) for x in range(interp.carrier[a]))
        case C.Codischarger(a):
            return frozenset(((), (x,)) for x in range(interp.carrier[a]))
    raise TypeError(f"not a circuit: {c!r}")


# -- tapes ---------------------------------------------------------------------------


def _tagged(interp, p: Polynomial, i: int):
    return [(i, xs) for xs in interp.elements(p[i])]


@lru_cache(maxsize=1 << 18)
def _eval_tape(t: T.Tape, interp: Interpretation) -> frozenset:
    match t:
        case T.IdMon(u):
            return diagonal((0, xs) for xs in interp.elements(u))
        case T.IdZero():
            return frozenset()
        case T.Lift(c):
            return frozenset(((0, x), (0, y)) for x, y in eval_circuit(c, interp))
        case T.SymPlus(u, v):
            return frozenset(
                [((0, x), (1, x)) for x in interp.elements(u)] + [((1, y), (0, y)) for y in interp.elements(v)]
            )
        case T.Diag(u):
            return frozenset(((0, x), (k, x)) for x in interp.elements(u) for k in (0, 1))
        case T.Codiag(u):
            return frozenset(((k, x), (0, x)) for x in interp.elements(u) for k in (0, 1))
        case T.Bang() | T.Cobang():
            return frozenset()
        case T.Seq(f, g):
            return compose(_eval_tape(f, interp), _eval_tape(g, interp))
        case T.Oplus(f, g):
            pf, qf = T.tape_type(f)
            r = _eval_tape(f, interp)
            s = _eval_tape(g, interp)
            dp, dq = len(pf), len(qf)
            return r | frozenset(((i + dp, x), (j + dq, y)) for (i, x), (j, y) in s)
    raise TypeError(f"not a tape: {t!r}")


def eval_tape(t: T.Tape, interp: Interpretation) -> FiniteRelation:
    p, q = T.tape_type(t)
    return FiniteRelation(p, q, _eval_tape(t, interp))


# -- model search -----------------------------------------------------------------------


def _carrier_assignments(sorts: list[str], max_size: int) -> Iterator[dict[str, int]]:
    """Carrier sizes in ascending order of the largest size, then lexicographically."""
    for top in range(1, max_size + 1):
        for sizes in itertools.product(range(1, top + 1), repeat=len(sorts)):
            if max(sizes, default=top) == top:
                yield dict(zip(sorts, sizes))
        if not sorts:
            return


def interpretations(
    generators, sorts, carrier: dict[str, int], budget: int, rng: random.Random
) -> Iterator[Interpretation]:
    """All relation assignments on ``carrier`` (bitmask order) if there are fewer than ``budget``,
    otherwise ``budget`` uniformly sampled ones."""
    gens = sorted(generators, key=lambda g: g.name)
    base = Interpretation(carrier, {})
    universes = [[(x, y) for x in base.elements(g.arity) for y in base.elements(g.coarity)] for g in gens]
    bits = sum(len(u) for u in universes)

    def decode(mask: int) -> Interpretation:
        rels, shift = {}, 0
        for g, univ in zip(gens, universes):
            rels[g.name] = frozenset(p for k, p in enumerate(univ) if mask >> (shift + k) & 1)
            shift += len(univ)
        return Interpretation(carrier, rels)

    if bits < 63 and (1 << bits) < budget:
        for mask in range(1 << bits):
            yield decode(mask)
    else:
        for _ in range(budget):
            yield decode(rng.getrandbits(bits) if bits else 0)


def search_counterexample(
    t: T.Tape,
    s: T.Tape,
    budget: int = 1 << 16,
    seed: int = 0,
    max_carrier: int = 3,
    sorts=None,
) -> Interpretation | None:
    """First interpretation (small carriers first) where ``t`` is not included in ``s``."""
    if T.tape_type(t) != T.tape_type(s):
        raise T.TapeTypeError("tapes have different types")
    gens = T.generators_of_tape(t) | T.generators_of_tape(s)
    all_sorts = set(sorts or ())
    for g in gens:
        all_sorts.update(g.arity + g.coarity)
    for ty in T.tape_type(t):
        for u in ty:
            all_sorts.update(u)
    for c in T.lifted_circuits(t) + T.lifted_circuits(s):
        all_sorts.update(_circuit_sorts(c))
    rng = random.Random(seed)
    for carrier in _carrier_assignments(sorted(all_sorts), max_carrier):
        for interp in interpretations(gens, sorted(all_sorts), carrier, budget, rng):
            if not eval_tape(t, interp) <= eval_tape(s, interp):
                return interp
    return None


def _circuit_sorts(c: C.Circuit) -> set[str]:
    u, v = C.circuit_type(c)
    out = set(u + v)
    match c:
        case C.Seq(f, g) | C.Tensor(f, g):
            out |= _circuit_sorts(f) | _circuit_sorts(g)
        case C.Codischarger(a) | C.Discharger(a) | C.Copier(a) | C.Cocopier(a) | C.Id(a):
            out.add(a)
    return out


def random_interpretation(generators, sorts, rng: random.Random, max_carrier: int = 3, density: float = 0.5):
    carrier = {s: rng.randint(1, max_carrier) for s in sorts}
    base = Interpretation(carrier, {})
    rels = {}
    for g in generators:
        rels[g.name] = frozenset(
            (x, y) for x in base.elements(g.arity) for y in base.elements(g.coarity) if rng.random() < density
        )
    return Interpretation(carrier, rels)
