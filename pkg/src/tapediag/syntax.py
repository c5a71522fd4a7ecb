"""Text syntax for circuits and tapes.

Circuits::

    c ::= id(w) | id1 | NAME | sym(w, w) | cp(A) | dc(A) | cocp(A) | codc(A)
        | c ; c | c * c | ( c )

Tapes::

    t ::= idm(w) | id0 | [ c ] | symp(w, w) | diag(w) | bang(w) | codiag(w) | cobang(w)
        | t ; t | t + t | t (+) t | t * t | ( t )

``*`` binds tightest, then ``(+)``, then ``+`` (sum), then ``;``. A word ``w`` is a
space separated list of sorts; the empty word may be written as nothing or ``1``.
"""

from __future__ import annotations

import re

from . import circuit as C
from . import tape as T
from .signature import MonSignature, Monomial

_TOKEN = re.compile(r"\s*(?:(?P<plus_op>\(\+\))|(?P<ident>[A-Za-z_][A-Za-z0-9_']*|1)|(?P<punct>[;*+()\[\],]))")

_FROBENIUS = {"cp": C.Copier, "dc": C.Discharger, "cocp": C.Cocopier, "codc": C.Codischarger}
_TAPE_WORD_OPS = {"idm": T.IdMon, "diag": T.Diag, "bang": T.Bang, "codiag": T.Codiag, "cobang": T.Cobang}


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)


def _tokenize(text: str) -> list[tuple[str, int]]:
    out, pos = [], 0
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        out.append((m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, sig: MonSignature | None):
        self.toks = _tokenize(text)
        self.i = 0
        self.sig = sig

    def peek(self) -> str:
        return self.toks[self.i][0]

    def at(self) -> int:
        return self.toks[self.i][1]

    def take(self, expected: str | None = None) -> str:
        tok, at = self.toks[self.i]
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, found {tok or 'end of input'!r}", at)
        self.i += 1
        return tok

    def end(self):
        if self.peek():
            raise ParseError(f"unexpected {self.peek()!r}", self.at())

    # words

    def sort(self) -> str:
        at = self.at()
        name = self.take()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", name):
            raise ParseError(f"expected a sort, found {name or 'end of input'!r}", at)
        if self.sig is not None and name not in self.sig.sorts:
            raise ParseError(f"undeclared sort {name!r}", at)
        return name

    def word(self, stop=(")", ",")) -> Monomial:
        sorts = []
        if self.peek() == "1":
            self.take()
            return ()
        while self.peek() not in stop:
            sorts.append(self.sort())
        return tuple(sorts)

    def word_arg(self) -> Monomial:
        self.take("(")
        w = self.word()
        self.take(")")
        return w

    def word_pair(self) -> tuple[Monomial, Monomial]:
        self.take("(")
        u = self.word()
        self.take(",")
        v = self.word()
        self.take(")")
        return u, v

    # circuits

    def circuit(self) -> C.Circuit:
        c = self.circuit_tensor()
        while self.peek() == ";":
            self.take()
            c = C.Seq(c, self.circuit_tensor())
        return c

    def circuit_tensor(self) -> C.Circuit:
        c = self.circuit_atom()
        while self.peek() == "*":
            self.take()
            c = C.Tensor(c, self.circuit_atom())
        return c

    def circuit_atom(self) -> C.Circuit:
        at = self.at()
        tok = self.take()
        if tok == "(":
            c = self.circuit()
            self.take(")")
            return c
        if tok == "id":
            return C.id_word(self.word_arg())
        if tok == "id1":
            return C.IdUnit()
        if tok == "sym":
            u, v = self.word_pair()
            return C.sym_word(u, v)
        if tok in _FROBENIUS and self.peek() == "(":
            if self.sig is not None and not self.sig.frobenius_enabled:
                raise ParseError(f"{tok} needs a signature with frobenius enabled", at)
            w = self.word_arg()
            if len(w) != 1:
                raise ParseError(f"{tok} takes a single sort", at)
            return _FROBENIUS[tok](w[0])
        if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", tok):
            if self.sig is None:
                raise ParseError(f"generator {tok!r} needs a signature", at)
            if tok not in self.sig:
                raise ParseError(f"unknown generator {tok!r}", at)
            return C.Gen(self.sig.generator(tok))
        raise ParseError(f"unexpected {tok or 'end of input'!r}", at)

    # tapes

    def tape(self) -> T.Tape:
        t = self.tape_sum()
        while self.peek() == ";":
            self.take()
            t = T.Seq(t, self.tape_sum())
        return t

    def tape_sum(self) -> T.Tape:
        t = self.tape_oplus()
        while self.peek() == "+":
            at = self.at()
            self.take()
            rhs = self.tape_oplus()
            try:
                t = T.sum_tapes(t, rhs)
            except T.TapeTypeError as exc:
                raise ParseError(str(exc), at) from None
        return t

    def tape_oplus(self) -> T.Tape:
        t = self.tape_tensor()
        while self.peek() == "(+)":
            self.take()
            t = T.Oplus(t, self.tape_tensor())
        return t

    def tape_tensor(self) -> T.Tape:
        t = self.tape_atom()
        while self.peek() == "*":
            at = self.at()
            self.take()
            rhs = self.tape_atom()
            try:
                t = T.tensor(t, rhs)
            except T.TapeTypeError as exc:
                raise ParseError(str(exc), at) from None
        return t

    def tape_atom(self) -> T.Tape:
        at = self.at()
        tok = self.take()
        if tok == "(":
            t = self.tape()
            self.take(")")
            return t
        if tok == "[":
            c = self.circuit()
            self.take("]")
            return T.Lift(c)
        if tok == "id0":
            return T.IdZero()
        if tok == "symp":
            return T.SymPlus(*self.word_pair())
        if tok in _TAPE_WORD_OPS:
            return _TAPE_WORD_OPS[tok](self.word_arg())
        raise ParseError(f"unexpected {tok or 'end of input'!r}", at)


def parse_circuit(text: str, sig: MonSignature | None = None) -> C.Circuit:
    """Parse and type-check a circuit."""
    p = _Parser(text, sig)
    c = p.circuit()
    p.end()
    try:
        if sig is not None:
            C.type_check_circuit(c, sig)
        else:
            C.circuit_type(c)
    except C.CircuitTypeError as exc:
        raise ParseError(str(exc)) from None
    return c


def parse_tape(text: str, sig: MonSignature | None = None) -> T.Tape:
    """Parse and type-check a tape."""
    p = _Parser(text, sig)
    t = p.tape()
    p.end()
    try:
        T.type_check_tape(t, sig)
    except (T.TapeTypeError, C.CircuitTypeError) as exc:
        raise ParseError(str(exc)) from None
    return t
