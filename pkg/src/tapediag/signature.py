"""Sorts, words, polynomials and signatures.

A monomial is a tuple of sort names (the empty tuple is the unit object),
and a polynomial is a tuple of monomials (the empty tuple is the zero
object). Both are plain immutable values: the sesquistrict normal form of
objects is exactly a word of words, so no further normalisation is needed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Union

Sort = str
Monomial = tuple[str, ...]
Polynomial = tuple[Monomial, ...]

UNIT: Monomial = ()
ZERO: Polynomial = ()


class SignatureError(ValueError):
    """Raised for malformed signature sources or ill-formed declarations."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


def mono(*sorts: str) -> Monomial:
    return tuple(sorts)


def poly(*monomials: Iterable[str]) -> Polynomial:
    return tuple(tuple(m) for m in monomials)


def poly_sum(*ps: Polynomial) -> Polynomial:
    out: list[Monomial] = []
    for p in ps:
        out.extend(p)
    return tuple(out)


def poly_product(p: Polynomial, q: Polynomial) -> Polynomial:
    """Product of polynomials, i-major: the summands are ``U_i V_j``."""
    return tuple(u + v for u in p for v in q)


def mono_str(u: Monomial) -> str:
    return " ".join(u) if u else "1"


def poly_str(p: Polynomial) -> str:
    return " + ".join(mono_str(u) for u in p) if p else "0"


@dataclass(frozen=True)
class Generator:
    name: str
    arity: Monomial
    coarity: Monomial

    def __str__(self) -> str:
        return f"{self.name} : {mono_str(self.arity)} -> {mono_str(self.coarity)}"


@dataclass(frozen=True)
class RigGenerator:
    name: str
    arity: Polynomial
    coarity: Polynomial

    def __str__(self) -> str:
        return f"{self.name} : {poly_str(self.arity)} -> {poly_str(self.coarity)}"


def _check_sorts(sorts: Iterable[str], words: Iterable[Monomial], what: str) -> None:
    known = set(sorts)
    for w in words:
        for s in w:
            if s not in known:
                raise SignatureError(f"undeclared sort {s!r} in {what}")


@dataclass(frozen=True)
class MonSignature:
    sorts: tuple[str, ...] = ()
    generators: tuple[Generator, ...] = ()
    frobenius_enabled: bool = False
    _by_name: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if len(set(self.sorts)) != len(self.sorts):
            raise SignatureError("duplicate sort declaration")
        by_name = {}
        for g in self.generators:
            if g.name in by_name:
                raise SignatureError(f"duplicate generator {g.name!r}")
            _check_sorts(self.sorts, (g.arity, g.coarity), f"generator {g.name!r}")
            by_name[g.name] = g
        object.__setattr__(self, "_by_name", by_name)

    def generator(self, name: str) -> Generator:
        try:
            return self._by_name[name]
        except KeyError:
            raise SignatureError(f"unknown generator {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def with_frobenius(self, enabled: bool = True) -> "MonSignature":
        return MonSignature(self.sorts, self.generators, enabled)


@dataclass(frozen=True)
class RigSignature:
    sorts: tuple[str, ...] = ()
    generators: tuple[RigGenerator, ...] = ()
    frobenius_enabled: bool = False

    def __post_init__(self):
        if len(set(self.sorts)) != len(self.sorts):
            raise SignatureError("duplicate sort declaration")
        seen = set()
        for g in self.generators:
            if g.name in seen:
                raise SignatureError(f"duplicate generator {g.name!r}")
            seen.add(g.name)
            _check_sorts(self.sorts, g.arity + g.coarity, f"generator {g.name!r}")

    def generator(self, name: str) -> RigGenerator:
        for g in self.generators:
            if g.name == name:
                return g
        raise SignatureError(f"unknown generator {name!r}")


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<arrow>->)|(?P<punct>[:;+])|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<num>[0-9]+)"
)


def _tokens(text: str):
    line, col_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SignatureError(f"unexpected character {text[pos]!r}", line, pos - col_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            col_start = m.end()
        elif kind not in ("ws", "comment"):
            yield kind, m.group(), line, m.start() - col_start + 1
        pos = m.end()
    yield "eof", "", line, pos - col_start + 1


class _SigParser:
    def __init__(self, text: str):
        self.toks = list(_tokens(text))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, line, col = self.next()
        if val != value:
            raise SignatureError(f"expected {value!r}, found {val or 'end of input'!r}", line, col)

    def error(self, msg: str):
        _, _, line, col = self.peek()
        raise SignatureError(msg, line, col)

    def poly_type(self, stop: str) -> tuple[Polynomial, bool]:
        """Parse ``word (+ word)*`` up to ``stop``; returns (poly, is_rig)."""
        monos: list[list[str]] = [[]]
        rig = False
        explicit_zero = False
        while True:
            kind, val, line, col = self.peek()
            if val == stop or kind == "eof":
                break
            self.next()
            if val == "+":
                rig = True
                monos.append([])
            elif kind == "ident":
                monos[-1].append(val)
            elif kind == "num" and val == "1":
                pass
            elif kind == "num" and val == "0":
                explicit_zero = True
                rig = True
            else:
                raise SignatureError(f"unexpected {val!r} in type", line, col)
        if explicit_zero:
            if len(monos) != 1 or monos[0]:
                self.error("'0' must stand alone as the zero type")
            return (), True
        return tuple(tuple(m) for m in monos), rig

    def parse(self):
        sorts: list[str] = []
        gens: list[tuple[str, Polynomial, Polynomial, int, int]] = []
        frob = False
        rig = False
        while True:
            kind, val, line, col = self.next()
            if kind == "eof":
                break
            if val == ";":
                continue
            if val == "sort":
                count = 0
                while self.peek()[0] == "ident":
                    _, name, l2, c2 = self.next()
                    if name in sorts:
                        raise SignatureError(f"duplicate sort {name!r}", l2, c2)
                    sorts.append(name)
                    count += 1
                if not count:
                    self.error("expected at least one sort name")
                self.expect(";")
            elif val == "gen":
                kind2, name, l2, c2 = self.next()
                if kind2 != "ident":
                    raise SignatureError("expected generator name", l2, c2)
                if any(g[0] == name for g in gens):
                    raise SignatureError(f"duplicate generator {name!r}", l2, c2)
                self.expect(":")
                ar, r1 = self.poly_type("->")
                self.expect("->")
                coar, r2 = self.poly_type(";")
                self.expect(";")
                rig = rig or r1 or r2
                gens.append((name, ar, coar, l2, c2))
            elif val == "frobenius":
                frob = True
                self.expect(";")
            else:
                raise SignatureError(f"unexpected {val!r}; expected 'sort' or 'gen'", line, col)
        for name, ar, coar, l2, c2 in gens:
            for s in (x for m in ar + coar for x in m):
                if s not in sorts:
                    raise SignatureError(f"undeclared sort {s!r} in generator {name!r}", l2, c2)
        if rig:
            return RigSignature(tuple(sorts), tuple(RigGenerator(n, a, c) for n, a, c, _, _ in gens), frob)
        return MonSignature(tuple(sorts), tuple(Generator(n, a[0], c[0]) for n, a, c, _, _ in gens), frob)


def parse_signature(text: str) -> Union[MonSignature, RigSignature]:
    """Parse ``sort A B; gen f : A B -> C;`` declarations.

    Rig types separate monomials with ``+``; ``0`` is the zero type and ``1``
    (or nothing) the unit monomial. A ``frobenius;`` statement switches on the
    per-sort copier/discharger/cocopier/codischarger. The result is a
    :class:`RigSignature` as soon as any generator has a non-monomial type.
    """
    return _SigParser(text).parse()


# -- rig to monoidal reduction -------------------------------------------------


def component_name(name: str, j: int, i: int) -> str:
    return f"{name}__{j}_{i}"


def reduce_rig_signature(rs: RigSignature) -> tuple[MonSignature, dict[str, list[list[Generator]]]]:
    """Replace each rig generator ``s : +U_i -> +V_j`` by monomial ``s_{j,i} : U_i -> V_j``.

    The table maps each rig generator name to ``table[name][j-1][i-1]``.
    """
    gens: list[Generator] = []
    table: dict[str, list[list[Generator]]] = {}
    user_names = {g.name for g in rs.generators}
    for g in rs.generators:
        rows = []
        for j, v in enumerate(g.coarity, 1):
            row = []
            for i, u in enumerate(g.arity, 1):
                new = component_name(g.name, j, i)
                if new in user_names:
                    raise SignatureError(f"generated name {new!r} collides with a declared generator")
                gen = Generator(new, u, v)
                row.append(gen)
                gens.append(gen)
            rows.append(row)
        table[g.name] = rows
    # sorted by name so the reduced signature does not depend on declaration order
    gens.sort(key=lambda g: g.name)
    return MonSignature(rs.sorts, tuple(gens), rs.frobenius_enabled), table


def expand_generator(s: RigGenerator, table: dict[str, list[list[Generator]]]):
    """Tape equal to ``s`` in the free rig category over the reduced signature."""
    from . import tape as T
    from . import circuit as C

    rows = table[s.name]
    n, m = len(s.arity), len(s.coarity)
    boxes = T.oplus_all([T.Lift(C.Gen(rows[j][i])) for i in range(n) for j in range(m)])
    parts = []
    if m != 1:
        parts.append(T.oplus_all([T.gen_diag((u,), m) for u in s.arity]))
    parts.append(boxes)
    if n != 1:
        parts.append(T.gen_codiag(s.coarity, n))
    return T.seq_all(parts)
