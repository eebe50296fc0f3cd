"""S-expression reader with source spans, and printers for sorts, terms, formulas.

Two printers exist: ``show_*`` emit the s-expression syntax the file
formats read back; ``math_*`` emit the compact notation used in traces
(``α(α(K,a),b)``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import fol
from .errors import ParseError
from .fol import FnApp, PredApp, Var
from .stt import Arrow, Base, IOTA, O


@dataclass(frozen=True)
class Span:
    line: int
    col: int
    end_line: int
    end_col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}-{self.end_line}:{self.end_col}"


@dataclass(frozen=True)
class Atom:
    text: str
    span: Span
    quoted: bool = False

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class SList:
    items: tuple
    span: Span

    def __len__(self):
        return len(self.items)

    def __getitem__(self, k):
        return self.items[k]

    @property
    def head(self) -> str | None:
        if self.items and isinstance(self.items[0], Atom):
            return self.items[0].text
        return None


SExpr = Atom | SList

_TOK = re.compile(r'\s+|;[^\n]*|\(|\)|"(?:[^"\\]|\\.)*"|[^\s()";]+')


def read_all(src: str) -> list[SExpr]:
    """Parse every top-level form in ``src``."""
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(src):
        m = _TOK.match(src, pos)
        if m is None:  # pragma: no cover - the regex accepts any character class
            raise ParseError(f"unexpected character {src[pos]!r}", Span(line, col, line, col))
        text = m.group()
        start = (line, col)
        for ch in text:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        if not text.isspace() and not text.startswith(";"):
            tokens.append((text, start, (line, col)))
        pos = m.end()
    out = []
    k = 0
    while k < len(tokens):
        node, k = _read(tokens, k)
        out.append(node)
    return out


def read_one(src: str) -> SExpr:
    forms = read_all(src)
    if len(forms) != 1:
        raise ParseError(f"expected exactly one form, found {len(forms)}")
    return forms[0]


def _read(tokens, k):
    text, start, end = tokens[k]
    if text == "(":
        items = []
        k += 1
        while True:
            if k >= len(tokens):
                raise ParseError("unbalanced parenthesis", Span(*start, *start))
            if tokens[k][0] == ")":
                return SList(tuple(items), Span(*start, *tokens[k][2])), k + 1
            node, k = _read(tokens, k)
            items.append(node)
    if text == ")":
        raise ParseError("unexpected ')'", Span(*start, *end))
    if text.startswith('"'):
        body = re.sub(r"\\(.)", r"\1", text[1:-1])
        return Atom(body, Span(*start, *end), quoted=True), k + 1
    return Atom(text, Span(*start, *end)), k + 1


def quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


# ---------------------------------------------------------------------------
# Sorts


def show_sort(s) -> str:
    from .debruijn import DbSort
    if isinstance(s, Base):
        return s.name
    if isinstance(s, Arrow):
        parts = []
        while isinstance(s, Arrow):
            parts.append(show_sort(s.dom))
            s = s.cod
        parts.append(show_sort(s))
        return "(-> " + " ".join(parts) + ")"
    if isinstance(s, DbSort):
        ctx = " ".join(show_sort(t) for t in s.context.types)
        return f"(|- ({ctx}) {show_sort(s.type)})"
    return str(s)


def parse_sort(node: SExpr):
    from .debruijn import DbContext, DbSort
    if isinstance(node, Atom):
        return {"i": IOTA, "o": O}.get(node.text) or Base(node.text)
    if node.head == "->" and len(node) >= 3:
        sorts = [parse_sort(n) for n in node.items[1:]]
        result = sorts[-1]
        for s in reversed(sorts[:-1]):
            result = Arrow(s, result)
        return result
    if node.head == "|-" and len(node) == 3 and isinstance(node[1], SList):
        ctx = tuple(parse_sort(n) for n in node[1].items)
        return DbSort(DbContext(ctx), parse_sort(node[2]))
    raise ParseError("malformed sort", node.span)


# ---------------------------------------------------------------------------
# Terms and formulas, s-expression syntax

_FAMILY_ATOMS = {"S": "(S)", "K": "(K)"}


def show_term(t, explicit: bool = False) -> str:
    match t:
        case Var(name, _):
            return name
        case FnApp(sym, ()):
            if explicit and sym.indices:
                return "(@ " + sym.name + " " + " ".join(show_sort(s) for s in sym.indices) + ")"
            return _FAMILY_ATOMS.get(sym.name, sym.name)
        case FnApp(sym, args):
            inner = " ".join(show_term(a, explicit) for a in args)
            return f"({sym.name} {inner})"
    raise TypeError(f"not a term: {t!r}")


def show_formula(p, explicit: bool = False) -> str:
    st = lambda t: show_term(t, explicit)  # noqa: E731
    sf = lambda q: show_formula(q, explicit)  # noqa: E731
    match p:
        case PredApp(sym, ()):
            return sym.name
        case PredApp(sym, args):
            return f"({sym.name} {' '.join(st(a) for a in args)})"
        case fol.Equal(l, r):
            return f"(= {st(l)} {st(r)})"
        case fol.Top():
            return "true"
        case fol.Bot():
            return "false"
        case fol.Not(b):
            return f"(not {sf(b)})"
        case fol.And(l, r):
            return f"(and {sf(l)} {sf(r)})"
        case fol.Or(l, r):
            return f"(or {sf(l)} {sf(r)})"
        case fol.Implies(l, r):
            return f"(imp {sf(l)} {sf(r)})"
        case fol.Iff(l, r):
            return f"(iff {sf(l)} {sf(r)})"
        case fol.Forall(x, s, b):
            return f"(forall {x} {show_sort(s)} {sf(b)})"
        case fol.Exists(x, s, b):
            return f"(exists {x} {show_sort(s)} {sf(b)})"
    raise TypeError(f"not a formula: {p!r}")


def show(x, explicit: bool = False) -> str:
    if isinstance(x, (Var, FnApp)):
        return show_term(x, explicit)
    return show_formula(x, explicit)


# ---------------------------------------------------------------------------
# Compact mathematical notation

MATH_NAMES = {
    "alpha": "α", "eps": "ε", "top.": "⊤̇", "bot.": "⊥̇", "not.": "¬̇", "and.": "∧̇",
    "or.": "∨̇", "imp.": "⇒̇", "eq.": "≐", "all.": "∀̇", "ex.": "∃̇",
}


def math_sort(s) -> str:
    from .stt import show_type
    if isinstance(s, (Base, Arrow)):
        return show_type(s)
    return str(s)


def math_term(t) -> str:
    match t:
        case Var(name, _):
            return name
        case FnApp(sym, ()):
            return MATH_NAMES.get(sym.name, sym.name)
        case FnApp(sym, args):
            name = MATH_NAMES.get(sym.name, sym.name)
            return f"{name}({','.join(math_term(a) for a in args)})"
    raise TypeError(f"not a term: {t!r}")


_PREC = {fol.Iff: 1, fol.Implies: 2, fol.Or: 3, fol.And: 4}
_SYM = {fol.Iff: "⇔", fol.Implies: "⇒", fol.Or: "∨", fol.And: "∧"}


def math_formula(p, need: int = 0) -> str:
    match p:
        case PredApp(sym, ()):
            return MATH_NAMES.get(sym.name, sym.name)
        case PredApp(sym, args):
            name = MATH_NAMES.get(sym.name, sym.name)
            return f"{name}({','.join(math_term(a) for a in args)})"
        case fol.Equal(l, r):
            s = f"{math_term(l)} = {math_term(r)}"
            return f"({s})" if need > 4 else s
        case fol.Top():
            return "⊤"
        case fol.Bot():
            return "⊥"
        case fol.Not(b):
            return "¬" + math_formula(b, 5)
        case fol.And(l, r) | fol.Or(l, r) | fol.Implies(l, r) | fol.Iff(l, r):
            prec = _PREC[type(p)]
            s = f"{math_formula(l, prec + 1)} {_SYM[type(p)]} {math_formula(r, prec)}"
            return f"({s})" if need > prec else s
        case fol.Forall(x, s, b) | fol.Exists(x, s, b):
            q = "∀" if isinstance(p, fol.Forall) else "∃"
            out = f"{q}{x}:{math_sort(s)}. {math_formula(b, 0)}"
            return f"({out})" if need > 0 else out
    raise TypeError(f"not a formula: {p!r}")


def math(x) -> str:
    if isinstance(x, (Var, FnApp)):
        return math_term(x)
    return math_formula(x)
