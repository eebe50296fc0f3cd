"""Concrete syntax for simple types and STT terms.

Grammar, loosest binding first::

    term   ::= 'fun' x ':' atype '->' term
             | ('forall' | 'exists') x ':' type ',' term
             | disj ('=>' term)?
    disj   ::= conj ('\\/' disj)?
    conj   ::= neg ('/\\' conj)?
    neg    ::= '~' neg | eq
    eq     ::= app ('=' app)?
    app    ::= atom+
    atom   ::= ident | 'true' | 'false' | '(' term ')'
    type   ::= atype ('->' type)?
    atype  ::= 'i' | 'o' | ident | '(' type ')'

The binder annotation of ``fun`` is an atomic type, so arrow annotations
must be parenthesized: ``fun f : (i -> i) -> f c``.

An ``.stt`` file is a sequence of ``const c : T`` / ``var x : T``
declarations followed by one term.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError
from .sexp import Span
from .stt import (
    Abs, And, App, Arrow, Base, Bot, Const, Eq, Exists, Forall, Implies, IOTA, Not,
    O, Or, SimpleType, SttContext, SttTerm, Top, Var, show_type,
)

KEYWORDS = {"fun", "forall", "exists", "true", "false", "const", "var"}
TYPE_NAMES = {"i": IOTA, "o": O}

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<punct>->|=>|/\\|\\/|[():,~=])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(src: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            col = pos - line_start + 1
            raise ParseError(f"unexpected character {src[pos]!r}", Span(line, col, line, col + 1))
        kind = m.lastgroup
        text = m.group()
        if kind != "ws":
            out.append(Token(kind, text, line, pos - line_start + 1))
        for i, ch in enumerate(text):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, src: str, consts: dict[str, SimpleType] | None = None):
        self.toks = tokenize(src)
        self.i = 0
        self.consts = dict(consts or {})

    # -- helpers
    def peek(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def at(self, text: str) -> bool:
        return self.peek().text == text and self.peek().kind != "eof"

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text:
            self.fail(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok)
        return tok

    def fail(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, Span(tok.line, tok.col, tok.line, tok.col + max(1, len(tok.text))))

    def ident(self) -> str:
        tok = self.next()
        if tok.kind != "ident" or tok.text in KEYWORDS or tok.text in TYPE_NAMES:
            self.fail(f"expected an identifier, found {tok.text or 'end of input'!r}", tok)
        return tok.text

    # -- types
    def type(self) -> SimpleType:
        dom = self.atype()
        if self.at("->"):
            self.next()
            return Arrow(dom, self.type())
        return dom

    def atype(self) -> SimpleType:
        tok = self.next()
        if tok.text == "(":
            ty = self.type()
            self.expect(")")
            return ty
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            return TYPE_NAMES.get(tok.text) or Base(tok.text)
        self.fail(f"expected a type, found {tok.text or 'end of input'!r}", tok)

    # -- terms
    def term(self, bound: frozenset[str]) -> SttTerm:
        tok = self.peek()
        if tok.text == "fun":
            self.next()
            x = self.ident()
            self.expect(":")
            ty = self.atype()
            self.expect("->")
            return Abs(x, ty, self.term(bound | {x}))
        if tok.text in ("forall", "exists"):
            self.next()
            x = self.ident()
            self.expect(":")
            ty = self.type()
            self.expect(",")
            body = self.term(bound | {x})
            return Forall(x, ty, body) if tok.text == "forall" else Exists(x, ty, body)
        left = self.disj(bound)
        if self.at("=>"):
            self.next()
            return Implies(left, self.term(bound))
        return left

    def disj(self, bound):
        left = self.conj(bound)
        if self.at("\\/"):
            self.next()
            return Or(left, self.disj_or_binder(bound))
        return left

    def conj(self, bound):
        left = self.neg(bound)
        if self.at("/\\"):
            self.next()
            return And(left, self.conj_or_binder(bound))
        return left

    # a trailing binder may follow an infix operator: ``p /\ forall x : i, q``
    def disj_or_binder(self, bound):
        if self.peek().text in ("fun", "forall", "exists"):
            return self.term(bound)
        return self.disj(bound)

    def conj_or_binder(self, bound):
        if self.peek().text in ("fun", "forall", "exists"):
            return self.term(bound)
        return self.conj(bound)

    def neg(self, bound):
        if self.at("~"):
            self.next()
            if self.peek().text in ("fun", "forall", "exists"):
                return Not(self.term(bound))
            return Not(self.neg(bound))
        return self.eq(bound)

    def eq(self, bound):
        left = self.app(bound)
        if self.at("="):
            self.next()
            return Eq(left, self.app(bound))
        return left

    def app(self, bound):
        head = self.atom(bound)
        while self._starts_atom():
            head = App(head, self.atom(bound))
        return head

    def _starts_atom(self) -> bool:
        tok = self.peek()
        if tok.text == "(":
            return True
        return tok.kind == "ident" and tok.text not in ("fun", "forall", "exists", "const", "var")

    def atom(self, bound):
        tok = self.next()
        if tok.text == "(":
            t = self.term(bound)
            self.expect(")")
            return t
        if tok.text == "true":
            return Top()
        if tok.text == "false":
            return Bot()
        if tok.kind == "ident" and tok.text not in KEYWORDS and tok.text not in TYPE_NAMES:
            name = tok.text
            if name not in bound and name in self.consts:
                return Const(name, self.consts[name])
            return Var(name)
        self.fail(f"unexpected {tok.text or 'end of input'!r}", tok)

    def eof(self):
        if self.peek().kind != "eof":
            self.fail(f"trailing input {self.peek().text!r}")


def parse_type(src: str) -> SimpleType:
    p = _Parser(src)
    ty = p.type()
    p.eof()
    return ty


def parse_term(src: str, consts: dict[str, SimpleType] | None = None) -> SttTerm:
    """Parse a term; identifiers listed in ``consts`` become typed constants."""
    p = _Parser(src, consts)
    t = p.term(frozenset())
    p.eof()
    return t


@dataclass(frozen=True)
class SttFile:
    consts: dict[str, SimpleType]
    ctx: SttContext
    term: SttTerm


def parse_stt_file(src: str) -> SttFile:
    p = _Parser(src)
    consts: dict[str, SimpleType] = {}
    ctx: list[tuple[str, SimpleType]] = []
    while p.peek().text in ("const", "var"):
        kind = p.next().text
        name = p.ident()
        p.expect(":")
        ty = p.type()
        if kind == "const":
            consts[name] = ty
        else:
            ctx.append((name, ty))
    p.consts = consts
    t = p.term(frozenset())
    p.eof()
    return SttFile(consts, SttContext(ctx), t)


# ---------------------------------------------------------------------------
# Printing

_BINDER, _IMP, _OR, _AND, _NOT, _EQ, _APP, _ATOM = range(8)


def show_term(t: SttTerm) -> str:
    return _show(t, _BINDER)


def _paren(s: str, level: int, need: int) -> str:
    return f"({s})" if level < need else s


def _atype(ty: SimpleType) -> str:
    s = show_type(ty)
    return f"({s})" if isinstance(ty, Arrow) else s


def _show(t: SttTerm, need: int) -> str:
    match t:
        case Var(name) | Const(name, _):
            return name
        case Top():
            return "true"
        case Bot():
            return "false"
        case Abs(x, ty, b):
            return _paren(f"fun {x} : {_atype(ty)} -> {_show(b, _BINDER)}", _BINDER, need)
        case Forall(x, ty, b):
            return _paren(f"forall {x} : {show_type(ty)}, {_show(b, _BINDER)}", _BINDER, need)
        case Exists(x, ty, b):
            return _paren(f"exists {x} : {show_type(ty)}, {_show(b, _BINDER)}", _BINDER, need)
        case Implies(l, r):
            return _paren(f"{_show(l, _OR)} => {_show(r, _BINDER)}", _IMP, need)
        case Or(l, r):
            return _paren(f"{_show(l, _AND)} \\/ {_show(r, _OR)}", _OR, need)
        case And(l, r):
            return _paren(f"{_show(l, _NOT)} /\\ {_show(r, _AND)}", _AND, need)
        case Not(b):
            return _paren(f"~{_show(b, _NOT)}", _NOT, need)
        case Eq(l, r):
            return _paren(f"{_show(l, _APP)} = {_show(r, _APP)}", _EQ, need)
        case App(f, a):
            return _paren(f"{_show(f, _APP)} {_show(a, _ATOM)}", _APP, need)
    raise TypeError(f"not an STT term: {t!r}")


def show_stt_file(f: SttFile) -> str:
    lines = [f"const {c} : {show_type(ty)}" for c, ty in f.consts.items()]
    lines += [f"var {x} : {show_type(ty)}" for x, ty in f.ctx.items()]
    lines.append(show_term(f.term))
    return "\n".join(lines) + "\n"
