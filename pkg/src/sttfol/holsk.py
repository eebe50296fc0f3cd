"""HOL-SK: simple type theory as a many-sorted first-order theory.

Sorts are simple types.  The vocabulary is the application symbol
``alpha`` (one per pair of sorts), the single predicate ``eps`` of rank
``<o>``, the combinators ``S`` and ``K``, and dotted constants for the
logical connectives.  Indexed families are created on demand and
memoized per index tuple.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from . import fol
from .errors import NotAbstractable, SkolemCapture, SortMismatch, UnsupportedAtom
from .fol import (
    FnApp, FnSym, FolFormula, FolTerm, PredApp, PredSym, Rank, Signature, Theory, Var,
)
from .stt import O, Arrow, SimpleType, arrow, show_type
from . import stt

# ---------------------------------------------------------------------------
# Symbols

ALPHA = "alpha"
EPS_NAME = "eps"
INDEXED = {"alpha", "S", "K", "eq.", "all.", "ex."}
CONNECTIVES = {"top.": O, "bot.": O, "not.": arrow(O, O),
               "and.": arrow(O, O, O), "or.": arrow(O, O, O), "imp.": arrow(O, O, O)}
RESERVED = INDEXED | set(CONNECTIVES) | {EPS_NAME}

EPS = PredSym(EPS_NAME, (O,))


@lru_cache(maxsize=None)
def alpha_sym(dom: SimpleType, cod: SimpleType) -> FnSym:
    return FnSym(ALPHA, Rank((Arrow(dom, cod), dom), cod), (dom, cod))


@lru_cache(maxsize=None)
def s_sym(t: SimpleType, u: SimpleType, v: SimpleType) -> FnSym:
    sort = arrow(arrow(t, u, v), arrow(t, u), t, v)
    return FnSym("S", Rank((), sort), (t, u, v))


@lru_cache(maxsize=None)
def k_sym(t: SimpleType, u: SimpleType) -> FnSym:
    return FnSym("K", Rank((), arrow(t, u, t)), (t, u))


@lru_cache(maxsize=None)
def eq_sym(t: SimpleType) -> FnSym:
    return FnSym("eq.", Rank((), arrow(t, t, O)), (t,))


@lru_cache(maxsize=None)
def all_sym(t: SimpleType) -> FnSym:
    return FnSym("all.", Rank((), arrow(Arrow(t, O), O)), (t,))


@lru_cache(maxsize=None)
def ex_sym(t: SimpleType) -> FnSym:
    return FnSym("ex.", Rank((), arrow(Arrow(t, O), O)), (t,))


@lru_cache(maxsize=None)
def connective_sym(name: str) -> FnSym:
    return FnSym(name, Rank((), CONNECTIVES[name]))


FAMILY_BUILDERS = {"alpha": alpha_sym, "S": s_sym, "K": k_sym, "eq.": eq_sym,
                   "all.": all_sym, "ex.": ex_sym}


def family_member(name: str, indices: tuple) -> FnSym:
    if name in FAMILY_BUILDERS:
        return FAMILY_BUILDERS[name](*indices)
    return connective_sym(name)


# ---------------------------------------------------------------------------
# Term builders


def app(f: FolTerm, a: FolTerm) -> FnApp:
    """``alpha(f, a)`` with indices read off the sorts."""
    fs = f.sort
    if not isinstance(fs, Arrow):
        raise SortMismatch(f"cannot apply a term of sort {fol.show_sort(fs)}", found=fs)
    if fs.dom != a.sort:
        raise SortMismatch(
            f"argument of sort {fol.show_sort(a.sort)} given to a function of sort {fol.show_sort(fs)}",
            expected=fs.dom, found=a.sort,
        )
    return FnApp(alpha_sym(fs.dom, fs.cod), (f, a))


def app_n(f: FolTerm, *args: FolTerm) -> FolTerm:
    for a in args:
        f = app(f, a)
    return f


def S(t, u, v) -> FnApp:
    return FnApp(s_sym(t, u, v))


def K(t, u) -> FnApp:
    return FnApp(k_sym(t, u))


def dotted(name: str) -> FnApp:
    return FnApp(connective_sym(name))


def eps(t: FolTerm) -> PredApp:
    return PredApp(EPS, (t,))


def identity(t: SimpleType) -> FolTerm:
    """``S K K`` at the indices making it the identity on ``t``."""
    return app_n(S(t, Arrow(t, t), t), K(t, Arrow(t, t)), K(t, t))


def is_alpha(t) -> bool:
    return isinstance(t, FnApp) and t.sym.name == ALPHA


def spine(t: FolTerm) -> tuple[FolTerm, list[FolTerm]]:
    """Head and arguments of a left-nested ``alpha`` chain."""
    args = []
    while is_alpha(t):
        args.append(t.args[1])
        t = t.args[0]
    args.reverse()
    return t, args


# ---------------------------------------------------------------------------
# Signature


class HolSkSignature(Signature):
    """Signature whose indexed families are generated on demand.

    Family members are registered atomically; everything else behaves like
    an ordinary frozen signature.
    """

    def __init__(self, functions: Iterable[FnSym] = (), predicates: Iterable[PredSym] = (), sorts=()):
        super().__init__((), (), sorts)
        self._memo_lock = threading.Lock()
        self.add_predicate(EPS)
        for name in CONNECTIVES:
            self.add_function(connective_sym(name))
        for s in functions:
            self._check_user(s.name)
            self.add_function(s)
        for p in predicates:
            self._check_user(p.name)
            self.add_predicate(p)

    @staticmethod
    def _check_user(name: str):
        if name in RESERVED:
            from .errors import NameCollision
            raise NameCollision(f"{name} is reserved by the HOL-SK encoding")

    def copy(self) -> "HolSkSignature":
        new = super().copy()
        new._memo_lock = threading.Lock()
        return new

    def family(self, sym: FnSym) -> FnSym:
        """Get-or-create an indexed family member."""
        canonical = family_member(sym.name, sym.indices)
        if canonical != sym:
            raise SortMismatch(f"{sym.name} at indices {sym.indices} has the wrong rank")
        with self._memo_lock:
            known = self._functions.get(sym.key)
            if known is None:
                self._functions[sym.key] = canonical
                known = canonical
        return known

    def resolve_function(self, sym: FnSym) -> FnSym:
        if sym.name in INDEXED:
            return self.family(sym)
        return super().resolve_function(sym)

    def register(self, x) -> None:
        """Register every family member occurring in a term or formula."""
        for t in _all_terms(x):
            for sub in fol.subterms(t):
                if isinstance(sub, FnApp) and sub.sym.name in INDEXED:
                    self.family(sub.sym)

    def indices(self, name: str) -> list[tuple]:
        with self._memo_lock:
            keys = [k for k in self._functions if k[0] == name]
        return sorted((k[1] for k in keys), key=lambda ix: tuple(show_type(s) for s in ix))

    def user_functions(self) -> list[FnSym]:
        return [s for s in self.functions if s.name not in RESERVED]

    def user_predicates(self) -> list[PredSym]:
        return [p for p in self.predicates if p.name != EPS_NAME]


def _all_terms(x):
    if isinstance(x, (Var, FnApp)):
        yield x
    else:
        yield from fol.formula_terms(x)


def user_constant(name: str, sort: SimpleType) -> FnSym:
    HolSkSignature._check_user(name)
    return fol.const(name, sort)


# ---------------------------------------------------------------------------
# Axioms


def _v(name: str, sort) -> Var:
    return Var(name, sort)


def generate_axioms(sig: HolSkSignature, extensionality: bool = False) -> list[tuple[str, FolFormula]]:
    """The HOL-SK axioms, one instance per generated index tuple."""
    out: list[tuple[str, FolFormula]] = []

    def name(base, ix=()):
        return base if not ix else f"{base}[{','.join(show_type(s) for s in ix)}]"

    for ix in sig.indices("S"):
        t, u, v = ix
        x, y, z = _v("x", arrow(t, u, v)), _v("y", Arrow(t, u)), _v("z", t)
        lhs = app_n(S(t, u, v), x, y, z)
        rhs = app(app(x, z), app(y, z))
        out.append((name("S", ix), fol.forall([x, y, z], fol.Equal(lhs, rhs))))
    for ix in sig.indices("K"):
        t, u = ix
        x, y = _v("x", t), _v("y", u)
        out.append((name("K", ix), fol.forall([x, y], fol.Equal(app_n(K(t, u), x, y), x))))
    for ix in sig.indices("eq."):
        (t,) = ix
        x, y = _v("x", t), _v("y", t)
        body = fol.Iff(eps(app_n(FnApp(eq_sym(t)), x, y)), fol.Equal(x, y))
        out.append((name("eq.", ix), fol.forall([x, y], body)))
    out.append(("top.", fol.Iff(eps(dotted("top.")), fol.Top())))
    out.append(("bot.", fol.Iff(eps(dotted("bot.")), fol.Bot())))
    x, y = _v("x", O), _v("y", O)
    out.append(("not.", fol.Forall("x", O, fol.Iff(eps(app(dotted("not."), x)), fol.Not(eps(x))))))
    for cname, ctor in (("and.", fol.And), ("or.", fol.Or), ("imp.", fol.Implies)):
        body = fol.Iff(eps(app_n(dotted(cname), x, y)), ctor(eps(x), eps(y)))
        out.append((cname, fol.forall([x, y], body)))
    for cname, builder, quant in (("all.", all_sym, fol.Forall), ("ex.", ex_sym, fol.Exists)):
        for ix in sig.indices(cname):
            (t,) = ix
            p = _v("x", Arrow(t, O))
            body = fol.Iff(eps(app(FnApp(builder(t)), p)), quant("y", t, eps(app(p, _v("y", t)))))
            out.append((name(cname, ix), fol.Forall("x", Arrow(t, O), body)))
    if extensionality:
        out.extend(extensionality_axioms(sig))
    return out


def extensionality_axioms(sig: HolSkSignature) -> list[tuple[str, FolFormula]]:
    """Functional extensionality per arrow sort in use, plus propositional extensionality.

    These shapes are an implementation choice; the axiom set of the theory
    only mentions that they may be added.
    """
    out = []
    for dom, cod in sig.indices(ALPHA):
        fs = Arrow(dom, cod)
        f, g, x = _v("f", fs), _v("g", fs), _v("x", dom)
        body = fol.Implies(fol.Forall("x", dom, fol.Equal(app(f, x), app(g, x))), fol.Equal(f, g))
        out.append((f"ext[{show_type(fs)}]", fol.forall([f, g], body)))
    p, q = _v("p", O), _v("q", O)
    body = fol.Implies(fol.Iff(eps(p), eps(q)), fol.Equal(p, q))
    out.append(("ext[o]", fol.forall([p, q], body)))
    return out


def holsk_theory(sig: HolSkSignature | None = None, axioms: Iterable[tuple[str, FolFormula]] = (),
                 extensionality: bool = False, provenance=()) -> Theory:
    """A theory whose signature is HOL-SK; ``axioms`` are the user axioms only."""
    sig = sig if sig is not None else HolSkSignature()
    axioms = tuple(axioms)
    for _, f in axioms:
        sig.register(f)
    return Theory(sig, axioms, provenance, extensionality)


def theory_axioms(thy: Theory) -> list[tuple[str, FolFormula]]:
    """User axioms plus, for HOL-SK theories, the generated ones."""
    axioms = list(thy.axioms)
    if isinstance(thy.signature, HolSkSignature):
        axioms += generate_axioms(thy.signature, thy.extensionality)
    return axioms


# ---------------------------------------------------------------------------
# Bracket abstraction


def find_skolem_capture(t: FolTerm, names, path=()):
    """First Skolem application whose arguments mention one of ``names``.

    Returns ``(symbol, variable, path)`` where ``path`` lists argument
    positions from the root of ``t`` down to the captured variable, or None.
    """
    if isinstance(t, Var):
        return None
    for k, a in enumerate(t.args):
        if t.sym.skolem:
            hit = next((v for v in fol.subterms(a) if isinstance(v, Var) and v.name in names), None)
            if hit is not None:
                return t.sym, hit, path + (k,)
        found = find_skolem_capture(a, names, path + (k,))
        if found:
            return found
    return None


def bracket_abstract(x: Var, t: FolTerm) -> FolTerm:
    """Combinator term ``u`` of sort ``x.sort -> t.sort`` with ``alpha(u, x)`` reducing to ``t``.

    Plain S/K algorithm, no eta rule.
    """
    hit = find_skolem_capture(t, {x.name})
    if hit:
        sym, var, path = hit
        raise SkolemCapture(
            f"cannot abstract {x.name}: it occurs in argument {path[-1] + 1} of Skolem symbol {sym.name}",
            symbol=sym.name, variable=var.name, position=path,
        )
    return _abstract(x, t)


@dataclass(frozen=True)
class Lam:
    """An abstraction not yet compiled to combinators.

    Witness terms keep this shape until they are checked, so that a
    Skolem capture is reported against the witness itself.
    """
    var: Var
    body: object  # FolTerm or Lam

    @property
    def sort(self) -> SimpleType:
        return Arrow(self.var.sort, self.body.sort)

    def binders(self) -> list[Var]:
        out, t = [], self
        while isinstance(t, Lam):
            out.append(t.var)
            t = t.body
        return out

    def matrix(self) -> FolTerm:
        t = self
        while isinstance(t, Lam):
            t = t.body
        return t


def realize(t) -> FolTerm:
    """Compile pending abstractions with ``bracket_abstract``."""
    if isinstance(t, Lam):
        return bracket_abstract(t.var, realize(t.body))
    return t


def _abstract(x: Var, t: FolTerm) -> FolTerm:
    tx = x.sort
    if isinstance(t, Var) and t.name == x.name:
        if t.sort != tx:
            raise SortMismatch(f"variable {x.name} occurs at two sorts")
        return identity(tx)
    if x.name not in fol.free_names(t):
        return app(K(t.sort, tx), t)
    if is_alpha(t):
        a, b = t.args
        v = b.sort
        return app_n(S(tx, v, t.sort), _abstract(x, a), _abstract(x, b))
    raise NotAbstractable(
        f"cannot abstract {x.name} out of an argument of the function symbol {t.sym.name}"
    )


# ---------------------------------------------------------------------------
# Lifting propositions to terms of sort o


def lift_prop(p: FolFormula) -> FolTerm:
    """Term ``u`` of sort ``o`` such that ``eps(u)`` rewrites to ``p``."""
    match p:
        case fol.PredApp(sym, (t,)) if sym == EPS:
            return t
        case fol.PredApp(sym, _):
            raise UnsupportedAtom(f"predicate {sym.name} has no term-level counterpart")
        case fol.Equal(l, r):
            return app_n(FnApp(eq_sym(l.sort)), l, r)
        case fol.Top():
            return dotted("top.")
        case fol.Bot():
            return dotted("bot.")
        case fol.Not(b):
            return app(dotted("not."), lift_prop(b))
        case fol.And(l, r):
            return app_n(dotted("and."), lift_prop(l), lift_prop(r))
        case fol.Or(l, r):
            return app_n(dotted("or."), lift_prop(l), lift_prop(r))
        case fol.Implies(l, r):
            return app_n(dotted("imp."), lift_prop(l), lift_prop(r))
        case fol.Forall(x, s, b):
            return app(FnApp(all_sym(s)), bracket_abstract(Var(x, s), lift_prop(b)))
        case fol.Exists(x, s, b):
            return app(FnApp(ex_sym(s)), bracket_abstract(Var(x, s), lift_prop(b)))
        case fol.Iff():
            raise UnsupportedAtom("equivalence has no dotted connective")
    raise TypeError(f"not a formula: {p!r}")


# ---------------------------------------------------------------------------
# Translation from STT


def translate_stt(t: stt.SttTerm, ctx: Mapping[str, SimpleType] | None = None) -> FolTerm:
    """HOL-SK term for a well-typed STT term; abstractions go through ``bracket_abstract``."""
    return _tr(t, dict(ctx or {}))


def _tr(t: stt.SttTerm, env: dict) -> FolTerm:
    match t:
        case stt.Var(x):
            if x not in env:
                from .errors import UnboundVariable
                raise UnboundVariable(f"unbound variable {x}")
            return Var(x, env[x])
        case stt.Const(c, ty):
            return FnApp(user_constant(c, ty))
        case stt.App(f, a):
            return app(_tr(f, env), _tr(a, env))
        case stt.Abs(x, ty, b):
            return _abstract_translated(x, ty, _tr(b, {**env, x: ty}))
        case stt.Forall(x, ty, b):
            return app(FnApp(all_sym(ty)), _abstract_translated(x, ty, _tr(b, {**env, x: ty})))
        case stt.Exists(x, ty, b):
            return app(FnApp(ex_sym(ty)), _abstract_translated(x, ty, _tr(b, {**env, x: ty})))
        case stt.Implies(l, r):
            return app_n(dotted("imp."), _tr(l, env), _tr(r, env))
        case stt.And(l, r):
            return app_n(dotted("and."), _tr(l, env), _tr(r, env))
        case stt.Or(l, r):
            return app_n(dotted("or."), _tr(l, env), _tr(r, env))
        case stt.Not(b):
            return app(dotted("not."), _tr(b, env))
        case stt.Top():
            return dotted("top.")
        case stt.Bot():
            return dotted("bot.")
        case stt.Eq(l, r):
            tl = _tr(l, env)
            return app_n(FnApp(eq_sym(tl.sort)), tl, _tr(r, env))
    raise TypeError(f"not an STT term: {t!r}")


def _abstract_translated(x: str, ty: SimpleType, body: FolTerm) -> FolTerm:
    # pure STT input contains no Skolem symbols, so capture is impossible here
    try:
        return bracket_abstract(Var(x, ty), body)
    except SkolemCapture as e:  # pragma: no cover
        raise AssertionError(f"Skolem capture on STT input: {e}") from e


def translate_prop(p: stt.SttTerm, ctx: Mapping[str, SimpleType] | None = None) -> FolFormula:
    """First-order proposition for an STT proposition.

    Connectives and quantifiers at the top become first-order ones; any
    other subterm of type ``o`` is wrapped in ``eps``.
    """
    return _trp(p, dict(ctx or {}))


def _trp(p: stt.SttTerm, env: dict) -> FolFormula:
    match p:
        case stt.Forall(x, ty, b):
            return fol.Forall(x, ty, _trp(b, {**env, x: ty}))
        case stt.Exists(x, ty, b):
            return fol.Exists(x, ty, _trp(b, {**env, x: ty}))
        case stt.Implies(l, r):
            return fol.Implies(_trp(l, env), _trp(r, env))
        case stt.And(l, r):
            return fol.And(_trp(l, env), _trp(r, env))
        case stt.Or(l, r):
            return fol.Or(_trp(l, env), _trp(r, env))
        case stt.Not(b):
            return fol.Not(_trp(b, env))
        case stt.Top():
            return fol.Top()
        case stt.Bot():
            return fol.Bot()
        case stt.Eq(l, r):
            return fol.Equal(_tr(l, env), _tr(r, env))
    t = _tr(p, env)
    if t.sort != O:
        raise SortMismatch(f"expected a proposition, got sort {fol.show_sort(t.sort)}", expected=O, found=t.sort)
    return eps(t)
