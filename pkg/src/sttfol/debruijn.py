"""Lambda terms with de Bruijn indices as a first-order language.

Indices are 1-based.  A term is typed relative to a context, a finite list
of types for the indices that exceed the number of binders above them; the
pair ``Γ ⊢ T`` is a first-order sort.  Quantified variables stay named
(``DbVar``) and live at sorts with an empty context.  Ranked function
symbols (``DbFn``), Skolem symbols in particular, take arguments at their
declared sorts, so with ``⊢ T`` argument sorts no index bound by an
enclosing lambda can reach them.

Substitution uses ordinary index shifting rather than explicit
substitutions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Union

from . import fol, stt
from .errors import DanglingIndex, NonEmptyContextSort, ParseError, SortMismatch, TypeMismatch, UnboundVariable
from .fol import FnSym, Signature
from .stt import O, Arrow, SimpleType, arrow, show_type

# ---------------------------------------------------------------------------
# Terms, contexts, sorts


@dataclass(frozen=True, slots=True)
class Index:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("de Bruijn indices start at 1")


@dataclass(frozen=True, slots=True)
class DbApp:
    fun: "DbTerm"
    arg: "DbTerm"


@dataclass(frozen=True, slots=True)
class DbLam:
    type: SimpleType
    body: "DbTerm"


@dataclass(frozen=True, slots=True)
class DbConst:
    name: str
    type: SimpleType


@dataclass(frozen=True, slots=True)
class DbVar:
    """A quantified (named) variable, of sort ``⊢ type``."""
    name: str
    type: SimpleType


@dataclass(frozen=True, slots=True)
class DbFn:
    """Fully applied ranked function symbol whose sorts are ``DbSort`` values."""
    sym: FnSym
    args: tuple = ()

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) != self.sym.arity:
            from .errors import ArityMismatch
            raise ArityMismatch(f"{self.sym.name} expects {self.sym.arity} argument(s), got {len(self.args)}")


DbTerm = Union[Index, DbApp, DbLam, DbConst, DbVar, DbFn]


@dataclass(frozen=True, slots=True)
class DbContext:
    types: tuple[SimpleType, ...] = ()
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.types, tuple):
            object.__setattr__(self, "types", tuple(self.types))

    def __len__(self):
        return len(self.types)

    def __str__(self) -> str:
        return "[" + ", ".join(show_type(t) for t in self.types) + "]"


EMPTY = DbContext(())


@dataclass(frozen=True, slots=True)
class DbSort:
    context: DbContext
    type: SimpleType

    @property
    def closed(self) -> bool:
        return len(self.context) == 0

    def __str__(self) -> str:
        if self.closed:
            return f"⊢ {show_type(self.type)}"
        return f"{self.context} ⊢ {show_type(self.type)}"


def closed_sort(ty: SimpleType) -> DbSort:
    return DbSort(EMPTY, ty)


# ---------------------------------------------------------------------------
# Named <-> nameless

LOGICAL = {"all.", "ex.", "imp.", "and.", "or.", "not.", "top.", "bot.", "eq."}


def to_debruijn(t: stt.SttTerm, ctx: Mapping[str, SimpleType] | None = None) -> tuple[DbTerm, DbContext]:
    """Replace bound names by indices; free variables index into ``ctx`` in its order."""
    ctx = stt.SttContext(ctx or {})
    free = list(ctx)
    db, _ = _to_db(t, [], free, ctx)
    return db, DbContext(tuple(ctx[x] for x in free), tuple(free))


def _to_db(t, binders: list[tuple[str, SimpleType]], free: list[str], ctx) -> tuple[DbTerm, SimpleType]:
    match t:
        case stt.Var(x):
            for k, (name, ty) in enumerate(binders):
                if name == x:
                    return Index(k + 1), ty
            if x in ctx:
                return Index(len(binders) + free.index(x) + 1), ctx[x]
            raise UnboundVariable(f"unbound variable {x}")
        case stt.Const(c, ty):
            return DbConst(c, ty), ty
        case stt.App(f, a):
            fd, fty = _to_db(f, binders, free, ctx)
            ad, _ = _to_db(a, binders, free, ctx)
            return DbApp(fd, ad), fty.cod
        case stt.Abs(x, ty, b):
            bd, bty = _to_db(b, [(x, ty)] + binders, free, ctx)
            return DbLam(ty, bd), Arrow(ty, bty)
        case stt.Forall(x, ty, b) | stt.Exists(x, ty, b):
            bd, _ = _to_db(b, [(x, ty)] + binders, free, ctx)
            name = "all." if isinstance(t, stt.Forall) else "ex."
            return DbApp(DbConst(name, arrow(Arrow(ty, O), O)), DbLam(ty, bd)), O
        case stt.Implies(l, r) | stt.And(l, r) | stt.Or(l, r):
            name = {stt.Implies: "imp.", stt.And: "and.", stt.Or: "or."}[type(t)]
            ld, _ = _to_db(l, binders, free, ctx)
            rd, _ = _to_db(r, binders, free, ctx)
            return DbApp(DbApp(DbConst(name, arrow(O, O, O)), ld), rd), O
        case stt.Not(b):
            bd, _ = _to_db(b, binders, free, ctx)
            return DbApp(DbConst("not.", Arrow(O, O)), bd), O
        case stt.Top():
            return DbConst("top.", O), O
        case stt.Bot():
            return DbConst("bot.", O), O
        case stt.Eq(l, r):
            ld, lty = _to_db(l, binders, free, ctx)
            rd, _ = _to_db(r, binders, free, ctx)
            return DbApp(DbApp(DbConst("eq.", arrow(lty, lty, O)), ld), rd), O
    raise TypeError(f"not an STT term: {t!r}")


def from_debruijn(t: DbTerm, ctx: DbContext = EMPTY) -> stt.SttTerm:
    """Named term for ``t``; free indices take the names recorded in ``ctx`` (or ``x1``, ``x2``, ...)."""
    names = list(ctx.names) if ctx.names is not None else [f"x{k + 1}" for k in range(len(ctx))]
    avoid = set(names) | _db_names(t)
    return _from_db(t, [], names, avoid)


def _db_names(t) -> set[str]:
    match t:
        case DbConst(name, _) | DbVar(name, _):
            return {name}
        case DbApp(f, a):
            return _db_names(f) | _db_names(a)
        case DbLam(_, b):
            return _db_names(b)
    return set()


def _binder_name(depth: int, avoid: set[str]) -> str:
    base = "xyzuvw"[depth % 6] + ("" if depth < 6 else str(depth // 6))
    return base if base not in avoid else stt.fresh_name(base, avoid)


def _from_db(t, binders: list[str], free: list[str], avoid: set[str]) -> stt.SttTerm:
    match t:
        case Index(n):
            if n <= len(binders):
                return stt.Var(binders[n - 1])
            k = n - len(binders) - 1
            if k >= len(free):
                raise DanglingIndex(f"index {n} is not covered by the context")
            return stt.Var(free[k])
        case DbConst(name, ty):
            if name in ("top.", "bot."):
                return stt.Top() if name == "top." else stt.Bot()
            return stt.Const(name, ty)
        case DbVar(name, _):
            return stt.Var(name)
        case DbLam(ty, b):
            x = _binder_name(len(binders), avoid | set(binders))
            return stt.Abs(x, ty, _from_db(b, [x] + binders, free, avoid))
        case DbApp(DbConst(q, _), arg) if q in ("all.", "ex."):
            ctor = stt.Forall if q == "all." else stt.Exists
            if isinstance(arg, DbLam):
                x = _binder_name(len(binders), avoid | set(binders))
                return ctor(x, arg.type, _from_db(arg.body, [x] + binders, free, avoid))
            f = _from_db(arg, binders, free, avoid)
            dom = _type_of_quantifier(t)
            x = _binder_name(len(binders), avoid | set(binders) | stt.free_vars(f))
            return ctor(x, dom, stt.App(f, stt.Var(x)))
        case DbApp(DbConst("not.", _), arg):
            return stt.Not(_from_db(arg, binders, free, avoid))
        case DbApp(DbApp(DbConst(op, _), l), r) if op in ("imp.", "and.", "or.", "eq."):
            ctor = {"imp.": stt.Implies, "and.": stt.And, "or.": stt.Or, "eq.": stt.Eq}[op]
            return ctor(_from_db(l, binders, free, avoid), _from_db(r, binders, free, avoid))
        case DbApp(f, a):
            return stt.App(_from_db(f, binders, free, avoid), _from_db(a, binders, free, avoid))
        case DbFn(sym, _):
            raise TypeError(f"ranked symbol {sym.name} has no named-term counterpart")
    raise TypeError(f"not a de Bruijn term: {t!r}")


def _type_of_quantifier(t: DbApp) -> SimpleType:
    ty = t.fun.type  # (T -> o) -> o
    return ty.dom.dom


# ---------------------------------------------------------------------------
# Typing


def typecheck_db(t: DbTerm, ctx: DbContext = EMPTY) -> SimpleType:
    """Type of ``t`` relative to ``ctx``."""
    return _tc(t, (), ctx)


def _tc(t, binders: tuple, ctx: DbContext) -> SimpleType:
    match t:
        case Index(n):
            if n <= len(binders):
                return binders[n - 1]
            k = n - len(binders) - 1
            if k >= len(ctx.types):
                raise DanglingIndex(
                    f"index {n} exceeds the {len(binders)} binder(s) above it and the context {ctx}"
                )
            return ctx.types[k]
        case DbApp(f, a):
            fty = _tc(f, binders, ctx)
            aty = _tc(a, binders, ctx)
            if not isinstance(fty, Arrow):
                raise TypeMismatch(f"cannot apply a term of type {show_type(fty)}", found=fty)
            if fty.dom != aty:
                raise TypeMismatch(
                    f"argument has type {show_type(aty)}, expected {show_type(fty.dom)}",
                    expected=fty.dom, found=aty,
                )
            return fty.cod
        case DbLam(ty, b):
            return Arrow(ty, _tc(b, (ty,) + binders, ctx))
        case DbConst(_, ty) | DbVar(_, ty):
            return ty
        case DbFn(sym, args):
            for k, (a, s) in enumerate(zip(args, sym.rank.args), 1):
                if not isinstance(s, DbSort):
                    raise SortMismatch(f"argument {k} of {sym.name} does not have a context-paired sort")
                aty = _tc(a, (), s.context)
                if aty != s.type:
                    raise TypeMismatch(
                        f"argument {k} of {sym.name} has type {show_type(aty)}, expected {show_type(s.type)}",
                        expected=s.type, found=aty,
                    )
            res = sym.rank.result
            if not isinstance(res, DbSort):
                raise SortMismatch(f"{sym.name} does not have a context-paired result sort")
            if not res.closed and res.context.types != binders + ctx.types:
                raise SortMismatch(f"{sym.name} yields a term of sort {res}, used in context {DbContext(binders + ctx.types)}")
            return res.type
    raise TypeError(f"not a de Bruijn term: {t!r}")


def free_indices(t: DbTerm, depth: int = 0) -> frozenset[int]:
    """Indices exceeding the binders above them, renumbered relative to ``t``.

    Arguments of ranked symbols are their own scope and contribute their
    own free indices unshifted.
    """
    match t:
        case Index(n):
            return frozenset((n - depth,)) if n > depth else frozenset()
        case DbApp(f, a):
            return free_indices(f, depth) | free_indices(a, depth)
        case DbLam(_, b):
            return free_indices(b, depth + 1)
        case DbFn(_, args):
            out = frozenset()
            for a in args:
                out |= free_indices(a, 0)
            return out
    return frozenset()


def named_vars(t: DbTerm) -> frozenset[str]:
    match t:
        case DbVar(name, _):
            return frozenset((name,))
        case DbApp(f, a):
            return named_vars(f) | named_vars(a)
        case DbLam(_, b):
            return named_vars(b)
        case DbFn(_, args):
            out = frozenset()
            for a in args:
                out |= named_vars(a)
            return out
    return frozenset()


def admit(t: DbTerm, sort: DbSort) -> DbTerm:
    """Check that ``t`` inhabits ``sort``; returns ``t``.

    At an empty-context sort the term is de Bruijn closed.
    """
    ty = typecheck_db(t, sort.context)
    if ty != sort.type:
        raise TypeMismatch(f"term has type {show_type(ty)}, expected {show_type(sort.type)}",
                           expected=sort.type, found=ty)
    assert not sort.closed or not free_indices(t), "closed sort admitted a term with free indices"
    return t


# ---------------------------------------------------------------------------
# Shifting and substitution


def shift(t: DbTerm, d: int, cutoff: int = 0) -> DbTerm:
    match t:
        case Index(n):
            return Index(n + d) if n > cutoff else t
        case DbApp(f, a):
            return DbApp(shift(f, d, cutoff), shift(a, d, cutoff))
        case DbLam(ty, b):
            return DbLam(ty, shift(b, d, cutoff + 1))
    return t


def db_substitute(t: DbTerm, n: int, u: DbTerm) -> DbTerm:
    """Replace index ``n`` by ``u`` and close the gap: indices above ``n`` drop by one."""
    match t:
        case Index(m):
            if m == n:
                return u
            return Index(m - 1) if m > n else t
        case DbApp(f, a):
            return DbApp(db_substitute(f, n, u), db_substitute(a, n, u))
        case DbLam(ty, b):
            return DbLam(ty, db_substitute(b, n + 1, shift(u, 1)))
    return t


def db_beta(t: DbApp) -> DbTerm:
    if not (isinstance(t, DbApp) and isinstance(t.fun, DbLam)):
        raise ValueError("not a beta redex")
    return db_substitute(t.fun.body, 1, t.arg)


def db_normalize(t: DbTerm) -> DbTerm:
    match t:
        case DbApp(f, a):
            f = db_normalize(f)
            if isinstance(f, DbLam):
                return db_normalize(db_beta(DbApp(f, a)))
            return DbApp(f, db_normalize(a))
        case DbLam(ty, b):
            return DbLam(ty, db_normalize(b))
    return t


# ---------------------------------------------------------------------------
# Skolem symbols over context-paired sorts


def skolem_sort_check(sig: Signature, f: str | FnSym) -> None:
    """Every argument sort and the result sort of ``f`` must have an empty context."""
    sym = f if isinstance(f, FnSym) else sig.lookup_function(f)
    if sym is None:
        from .errors import UnknownSymbol
        raise UnknownSymbol(f"unknown function symbol {f}")
    for k, s in enumerate(sym.rank.args, 1):
        _require_closed(s, sym.name, f"argument {k}", k)
    _require_closed(sym.rank.result, sym.name, "result", "result")


def _require_closed(s, name: str, where: str, position) -> None:
    if not isinstance(s, DbSort):
        raise SortMismatch(f"{where} of {name}: {fol.show_sort(s)} is not a context-paired sort")
    if not s.closed:
        raise NonEmptyContextSort(
            f"{where} of Skolem symbol {name} has sort {s}, whose context is not empty",
            position=position,
        )


# ---------------------------------------------------------------------------
# Concrete syntax: \. for lambda, \:T. for an annotated lambda, bare integers

def show_db(t: DbTerm, annotate: bool = False) -> str:
    match t:
        case Index(n):
            return str(n)
        case DbConst(name, _) | DbVar(name, _):
            return name
        case DbLam(ty, b):
            head = f"\\:{show_type(ty)}." if annotate else "\\."
            return head + show_db(b, annotate)
        case DbApp():
            parts = []
            while isinstance(t, DbApp):
                parts.append(t.arg)
                t = t.fun
            parts.append(t)
            parts.reverse()
            return "(" + " ".join(show_db(p, annotate) for p in parts) + ")"
        case DbFn(sym, args):
            return "{" + " ".join([sym.name] + [show_db(a, annotate) for a in args]) + "}"
    raise TypeError(f"not a de Bruijn term: {t!r}")


_DB_TOKEN = re.compile(r"\s+|\\:|\\\.|\\|->|[().\[\],{}]|\d+|[A-Za-z_][A-Za-z0-9_']*")


class _DbParser:
    def __init__(self, src: str, consts: Mapping[str, SimpleType], vars: Mapping[str, SimpleType],
                 fns: Mapping[str, FnSym]):
        self.src = src
        self.toks, self.pos = [], []
        at = 0
        for m in _DB_TOKEN.finditer(src):
            if m.start() != at:
                raise ParseError(f"unexpected character {src[at]!r}", self._span(at, at + 1))
            at = m.end()
            if not m.group().isspace():
                self.toks.append(m.group())
                self.pos.append((m.start(), m.end()))
        if at != len(src):
            raise ParseError(f"unexpected character {src[at]!r}", self._span(at, at + 1))
        self.i = 0
        self.consts, self.vars, self.fns = consts, vars, fns

    def _span(self, start: int, end: int):
        from .sexp import Span
        line = self.src.count("\n", 0, start) + 1
        col = start - (self.src.rfind("\n", 0, start) + 1) + 1
        end_line = self.src.count("\n", 0, end) + 1
        end_col = end - (self.src.rfind("\n", 0, end) + 1) + 1
        return Span(line, col, end_line, end_col)

    def error(self, msg: str, k: int | None = None) -> ParseError:
        k = self.i - 1 if k is None else k
        if 0 <= k < len(self.pos):
            return ParseError(msg, self._span(*self.pos[k]))
        n = len(self.src)
        return ParseError(msg, self._span(n, n))

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ""

    def next(self):
        tok = self.peek()
        if not tok:
            raise self.error("unexpected end of input", len(self.toks))
        self.i += 1
        return tok

    def expect(self, tok):
        got = self.next()
        if got != tok:
            raise self.error(f"expected {tok!r}, found {got!r}")

    def type(self) -> SimpleType:
        dom = self.atype()
        if self.peek() == "->":
            self.next()
            return Arrow(dom, self.type())
        return dom

    def atype(self) -> SimpleType:
        tok = self.next()
        if tok == "(":
            ty = self.type()
            self.expect(")")
            return ty
        if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", tok):
            return {"i": stt.IOTA, "o": O}.get(tok) or stt.Base(tok)
        raise self.error(f"expected a type, found {tok!r}")

    def context(self) -> DbContext:
        self.expect("[")
        types = []
        while self.peek() != "]":
            types.append(self.type())
            if self.peek() == ",":
                self.next()
        self.expect("]")
        return DbContext(tuple(types))

    def term(self) -> DbTerm:
        tok = self.next()
        if tok == "\\.":
            raise self.error("unannotated lambda; write \\:T. to give the binder type")
        if tok == "\\:":
            ty = self.type()
            self.expect(".")
            return DbLam(ty, self.term())
        if tok == "(":
            items = [self.term()]
            while self.peek() != ")":
                items.append(self.term())
            self.next()
            t = items[0]
            for a in items[1:]:
                t = DbApp(t, a)
            return t
        if tok == "{":
            name = self.next()
            if name not in self.fns:
                raise self.error(f"unknown function symbol {name}")
            args = []
            while self.peek() != "}":
                args.append(self.term())
            self.next()
            return DbFn(self.fns[name], tuple(args))
        if tok.isdigit():
            return Index(int(tok))
        if self.peek() == "." and tok + "." in self.consts:
            # dotted connective names such as and.
            self.next()
            tok += "."
        if tok in self.vars:
            return DbVar(tok, self.vars[tok])
        if tok in self.consts:
            return DbConst(tok, self.consts[tok])
        raise self.error(f"unknown identifier {tok!r}")


def parse_db(src: str, consts: Mapping[str, SimpleType] | None = None,
             vars: Mapping[str, SimpleType] | None = None,
             fns: Mapping[str, FnSym] | None = None) -> tuple[DbTerm, DbContext]:
    """Parse ``[T1, ...] term``; the context prefix is optional.  Lambdas must be annotated."""
    p = _DbParser(src, consts or {}, vars or {}, fns or {})
    ctx = p.context() if p.peek() == "[" else EMPTY
    t = p.term()
    if p.peek():
        raise p.error(f"trailing input {p.peek()!r}", p.i)
    return t, ctx


def parse_context(src: str) -> DbContext:
    p = _DbParser(src, {}, {}, {})
    ctx = p.context()
    if p.peek():
        raise p.error(f"trailing input {p.peek()!r}", p.i)
    return ctx
