"""The HOL-SK axioms oriented left to right, and normalization modulo them.

Rules are data.  Patterns are nested tuples ``(symbol, *args)`` whose
strings are pattern variables; symbols match a whole indexed family by
name.  Right-hand sides are rebuilt with the sort-directed builders of
:mod:`sttfol.holsk`, so contracta are always well-sorted.

Every left-hand side of this system keeps its non-variable positions on
the application spine.  The fast normalizers rely on that: once a spine
is redex-free, its arguments can be normalized independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from . import fol
from .errors import FuelExhausted
from .fol import FnApp, FolTerm, PredApp, Var
from .holsk import EPS, app, eps, is_alpha
from .stt import Arrow

DEFAULT_FUEL = 100_000

Pattern = tuple | str


@dataclass(frozen=True)
class RewriteRule:
    name: str
    lhs: Pattern
    rhs: Pattern
    kind: str  # "term" or "prop"

    def pattern_vars(self, side: str = "lhs") -> set[str]:
        return _pvars(self.lhs if side == "lhs" else self.rhs)


def _pvars(p) -> set[str]:
    if isinstance(p, str):
        return {p}
    head, *args = p
    if head in ("forall", "exists"):
        # (quant, bound-name, sort-expression, body)
        return _pvars(args[2]) - {args[0]}
    out = set()
    for a in args:
        out |= _pvars(a)
    return out


HOLSK_RULES: tuple[RewriteRule, ...] = (
    RewriteRule("S", ("alpha", ("alpha", ("alpha", ("S",), "x"), "y"), "z"),
                ("alpha", ("alpha", "x", "z"), ("alpha", "y", "z")), "term"),
    RewriteRule("K", ("alpha", ("alpha", ("K",), "x"), "y"), "x", "term"),
    RewriteRule("eq.", ("eps", ("alpha", ("alpha", ("eq.",), "x"), "y")), ("=", "x", "y"), "prop"),
    RewriteRule("top.", ("eps", ("top.",)), ("top",), "prop"),
    RewriteRule("bot.", ("eps", ("bot.",)), ("bot",), "prop"),
    RewriteRule("not.", ("eps", ("alpha", ("not.",), "x")), ("not", ("eps", "x")), "prop"),
    RewriteRule("and.", ("eps", ("alpha", ("alpha", ("and.",), "x"), "y")),
                ("and", ("eps", "x"), ("eps", "y")), "prop"),
    RewriteRule("or.", ("eps", ("alpha", ("alpha", ("or.",), "x"), "y")),
                ("or", ("eps", "x"), ("eps", "y")), "prop"),
    RewriteRule("imp.", ("eps", ("alpha", ("alpha", ("imp.",), "x"), "y")),
                ("imp", ("eps", "x"), ("eps", "y")), "prop"),
    RewriteRule("all.", ("eps", ("alpha", ("all.",), "x")),
                ("forall", "y", ("dom", "x"), ("eps", ("alpha", "x", "y"))), "prop"),
    RewriteRule("ex.", ("eps", ("alpha", ("ex.",), "x")),
                ("exists", "y", ("dom", "x"), ("eps", ("alpha", "x", "y"))), "prop"),
)


# ---------------------------------------------------------------------------
# Matching and instantiation


def match(pattern: Pattern, t, bindings: dict | None = None) -> dict | None:
    bindings = {} if bindings is None else bindings
    if isinstance(pattern, str):
        bindings[pattern] = t  # left-linear: no consistency check needed
        return bindings
    head, *args = pattern
    if head == "eps":
        if not (isinstance(t, PredApp) and t.sym == EPS):
            return None
        return match(args[0], t.args[0], bindings)
    if not isinstance(t, FnApp) or t.sym.name != head or len(t.args) != len(args):
        return None
    for p, a in zip(args, t.args):
        if match(p, a, bindings) is None:
            return None
    return bindings


def _fresh_binder(base: str, avoid: frozenset[str]) -> str:
    if base not in avoid:
        return base
    return fol.fresh_name(base, avoid)


def instantiate(template: Pattern, b: dict):
    if isinstance(template, str):
        return b[template]
    head, *args = template
    match head:
        case "alpha":
            return app(instantiate(args[0], b), instantiate(args[1], b))
        case "eps":
            return eps(instantiate(args[0], b))
        case "=":
            return fol.Equal(instantiate(args[0], b), instantiate(args[1], b))
        case "top":
            return fol.Top()
        case "bot":
            return fol.Bot()
        case "not":
            return fol.Not(instantiate(args[0], b))
        case "and":
            return fol.And(instantiate(args[0], b), instantiate(args[1], b))
        case "or":
            return fol.Or(instantiate(args[0], b), instantiate(args[1], b))
        case "imp":
            return fol.Implies(instantiate(args[0], b), instantiate(args[1], b))
        case "forall" | "exists":
            var, sort_expr, body = args
            sort = _eval_sort(sort_expr, b)
            avoid = frozenset().union(*(fol.free_names(v) for v in b.values()))
            name = _fresh_binder(var, avoid)
            inner = {**b, var: Var(name, sort)}
            quant = fol.Forall if head == "forall" else fol.Exists
            return quant(name, sort, instantiate(body, inner))
    raise ValueError(f"unknown template head {head!r}")


def _eval_sort(expr, b: dict):
    op, var = expr
    assert op == "dom"
    s = b[var].sort
    assert isinstance(s, Arrow)
    return s.dom


# ---------------------------------------------------------------------------
# Systems


@dataclass
class Trace:
    steps: list[tuple[str, object, object]] = field(default_factory=list)

    def record(self, rule: str, before, after) -> None:
        self.steps.append((rule, before, after))


class _Fuel:
    __slots__ = ("left", "limit")

    def __init__(self, limit: int):
        self.left = limit
        self.limit = limit

    def burn(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise FuelExhausted(f"normalization exceeded {self.limit} rewrite steps")


class RewriteSystem:
    def __init__(self, rules=HOLSK_RULES):
        self.rules = tuple(rules)
        self.term_rules = tuple(r for r in self.rules if r.kind == "term")
        self.prop_rules = tuple(r for r in self.rules if r.kind == "prop")
        for r in self.rules:
            _validate_rule(r)

    def contract(self, t):
        """Rewrite at the root if some rule applies; returns ``(rule, result)`` or None."""
        rules = self.prop_rules if isinstance(t, PredApp) else self.term_rules
        for r in rules:
            b = match(r.lhs, t)
            if b is not None:
                return r, instantiate(r.rhs, b)
        return None

    # -- leftmost-outermost, spine-driven
    def _spine_step(self, t: FolTerm, fuel: _Fuel, trace: Trace | None = None):
        nodes = [t]
        while is_alpha(nodes[-1]):
            nodes.append(nodes[-1].args[0])
        for k, node in enumerate(nodes):
            if not is_alpha(node):
                break
            hit = self.contract(node)
            if hit is not None:
                fuel.burn()
                rule, new = hit
                if trace is not None:
                    trace.record(rule.name, node, new)
                for parent in reversed(nodes[:k]):
                    new = FnApp(parent.sym, (new, parent.args[1]))
                return new
        return None

    def _lo_term(self, t: FolTerm, fuel: _Fuel) -> FolTerm:
        while True:
            nxt = self._spine_step(t, fuel)
            if nxt is None:
                break
            t = nxt
        if isinstance(t, Var) or not t.args:
            return t
        if is_alpha(t):
            return FnApp(t.sym, (self._lo_term(t.args[0], fuel), self._lo_term(t.args[1], fuel)))
        return FnApp(t.sym, tuple(self._lo_term(a, fuel) for a in t.args))

    def _lo_prop(self, p, fuel: _Fuel):
        match p:
            case PredApp(sym, (t,)) if sym == EPS:
                while True:
                    hit = self.contract(eps(t))
                    if hit is not None:
                        fuel.burn()
                        return self._lo_prop(hit[1], fuel)
                    nxt = self._spine_step(t, fuel)
                    if nxt is None:
                        return eps(self._lo_term(t, fuel))
                    t = nxt
            case PredApp(sym, args):
                return PredApp(sym, tuple(self._lo_term(a, fuel) for a in args))
            case fol.Equal(l, r):
                return fol.Equal(self._lo_term(l, fuel), self._lo_term(r, fuel))
            case fol.Top() | fol.Bot():
                return p
            case fol.Not(b):
                return fol.Not(self._lo_prop(b, fuel))
            case fol.And(l, r) | fol.Or(l, r) | fol.Implies(l, r) | fol.Iff(l, r):
                return type(p)(self._lo_prop(l, fuel), self._lo_prop(r, fuel))
            case fol.Forall(x, s, b) | fol.Exists(x, s, b):
                return type(p)(x, s, self._lo_prop(b, fuel))
        raise TypeError(f"not a formula: {p!r}")

    # -- innermost
    def _in_term(self, t: FolTerm, fuel: _Fuel) -> FolTerm:
        if isinstance(t, Var) or not t.args:
            return t
        t = FnApp(t.sym, tuple(self._in_term(a, fuel) for a in t.args))
        return self._in_root(t, fuel)

    def _in_root(self, t: FolTerm, fuel: _Fuel) -> FolTerm:
        # arguments of t are normal; contract at the root and renormalize the new parts
        hit = self.contract(t)
        if hit is None:
            return t
        fuel.burn()
        return self._in_rebuilt(hit[1], fuel)

    def _in_rebuilt(self, t: FolTerm, fuel: _Fuel) -> FolTerm:
        return self._in_term(t, fuel)

    def _in_prop(self, p, fuel: _Fuel):
        match p:
            case PredApp(sym, args):
                p = PredApp(sym, tuple(self._in_term(a, fuel) for a in args))
                hit = self.contract(p)
                if hit is None:
                    return p
                fuel.burn()
                return self._in_prop(hit[1], fuel)
            case fol.Equal(l, r):
                return fol.Equal(self._in_term(l, fuel), self._in_term(r, fuel))
            case fol.Top() | fol.Bot():
                return p
            case fol.Not(b):
                return fol.Not(self._in_prop(b, fuel))
            case fol.And(l, r) | fol.Or(l, r) | fol.Implies(l, r) | fol.Iff(l, r):
                return type(p)(self._in_prop(l, fuel), self._in_prop(r, fuel))
            case fol.Forall(x, s, b) | fol.Exists(x, s, b):
                return type(p)(x, s, self._in_prop(b, fuel))
        raise TypeError(f"not a formula: {p!r}")

    # -- reference stepper: one leftmost-outermost contraction at a time
    def step(self, x):
        """One leftmost-outermost step on a whole term or formula, or None if normal."""
        for path, node in _preorder(x):
            hit = self.contract(node)
            if hit is not None:
                rule, new = hit
                return rule, _replace_at(x, path, new)
        return None


def _validate_rule(r: RewriteRule) -> None:
    if isinstance(r.lhs, str):
        raise ValueError(f"rule {r.name}: left-hand side is a lone variable")
    if not r.pattern_vars("rhs") <= r.pattern_vars("lhs"):
        raise ValueError(f"rule {r.name}: right-hand side has unbound pattern variables")
    if not _spine_shaped(r.lhs if r.kind == "term" else r.lhs[1]):
        raise ValueError(f"rule {r.name}: non-variable positions must lie on the application spine")


def _spine_shaped(p) -> bool:
    if isinstance(p, str):
        return True
    head, *args = p
    if head != "alpha":
        return all(isinstance(a, str) for a in args)
    fn, arg = args
    return isinstance(arg, str) and _spine_shaped(fn)


# ---------------------------------------------------------------------------
# Positions, for the reference stepper


def _children(x) -> list:
    match x:
        case FnApp(_, args) | PredApp(_, args):
            return list(args)
        case fol.Equal(l, r) | fol.And(l, r) | fol.Or(l, r) | fol.Implies(l, r) | fol.Iff(l, r):
            return [l, r]
        case fol.Not(b) | fol.Forall(_, _, b) | fol.Exists(_, _, b):
            return [b]
    return []


def _rebuild(x, kids: list):
    match x:
        case FnApp(sym, _):
            return FnApp(sym, tuple(kids))
        case PredApp(sym, _):
            return PredApp(sym, tuple(kids))
        case fol.Equal() | fol.And() | fol.Or() | fol.Implies() | fol.Iff():
            return type(x)(*kids)
        case fol.Not():
            return fol.Not(kids[0])
        case fol.Forall(v, s, _) | fol.Exists(v, s, _):
            return type(x)(v, s, kids[0])
    return x


def _preorder(x, path=()) -> Iterator[tuple[tuple, object]]:
    yield path, x
    for k, c in enumerate(_children(x)):
        yield from _preorder(c, path + (k,))


def _replace_at(x, path: tuple, new):
    if not path:
        return new
    kids = _children(x)
    kids[path[0]] = _replace_at(kids[path[0]], path[1:], new)
    return _rebuild(x, kids)


# ---------------------------------------------------------------------------
# Public API

_DEFAULT = RewriteSystem()


def default_system() -> RewriteSystem:
    return _DEFAULT


def normalize(sys: RewriteSystem | None, x, *, fuel: int = DEFAULT_FUEL, strategy: str = "outermost"):
    """Normal form of a term or formula.  ``strategy`` is ``outermost`` or ``innermost``."""
    sys = sys or _DEFAULT
    f = _Fuel(fuel)
    is_term = isinstance(x, (Var, FnApp))
    if strategy == "outermost":
        return sys._lo_term(x, f) if is_term else sys._lo_prop(x, f)
    if strategy == "innermost":
        return sys._in_term(x, f) if is_term else sys._in_prop(x, f)
    raise ValueError(f"unknown strategy {strategy!r}")


def normalize_traced(sys: RewriteSystem | None, x, *, fuel: int = DEFAULT_FUEL):
    """Leftmost-outermost normalization one whole-object step at a time.

    Returns the normal form and the list of ``(rule, before, after)`` steps.
    """
    sys = sys or _DEFAULT
    f = _Fuel(fuel)
    steps = []
    while True:
        hit = sys.step(x)
        if hit is None:
            return x, steps
        f.burn()
        rule, nxt = hit
        steps.append((rule.name, x, nxt))
        x = nxt


def equal_modulo(sys: RewriteSystem | None, a, b, *, fuel: int = DEFAULT_FUEL) -> bool:
    return fol.alpha_eq(normalize(sys, a, fuel=fuel), normalize(sys, b, fuel=fuel))


def is_normal(sys: RewriteSystem | None, x) -> bool:
    return (sys or _DEFAULT).step(x) is None
