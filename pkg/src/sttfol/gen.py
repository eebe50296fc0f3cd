"""Seeded random generators for the property suites.

Everything is type- or sort-directed, so every sample is well-typed by
construction.  Sizes are soft budgets; callers that need a hard bound
filter on the measured size.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import fol, holsk, stt
from .debruijn import DbApp, DbConst, DbFn, DbLam, DbSort, DbVar, EMPTY, Index, closed_sort
from .fol import FnApp, Var
from .stt import IOTA, O, Arrow, SimpleType, arrow

BASES = (IOTA, O)

STT_CONSTS: dict[str, SimpleType] = {
    "a": IOTA, "b": IOTA, "f": Arrow(IOTA, IOTA), "g": arrow(IOTA, IOTA, IOTA),
    "h": arrow(Arrow(IOTA, IOTA), IOTA), "p": Arrow(IOTA, O), "r": arrow(IOTA, IOTA, O), "q": O,
}
STT_FREE: dict[str, SimpleType] = {"v": IOTA, "k": Arrow(IOTA, IOTA)}


@dataclass
class GenConfig:
    seed: int = 0
    max_size: int = 30
    type_depth: int = 2
    consts: dict = field(default_factory=lambda: dict(STT_CONSTS))
    free: dict = field(default_factory=lambda: dict(STT_FREE))


def random_type(rng: random.Random, depth: int = 2) -> SimpleType:
    if depth <= 0 or rng.random() < 0.55:
        return rng.choice(BASES)
    return Arrow(random_type(rng, depth - 1), random_type(rng, depth - 1))


def _ends_in(ty: SimpleType, target: SimpleType) -> list[SimpleType] | None:
    """Argument types ``A1..An`` with ``ty = A1 -> ... -> An -> target``, if any."""
    args = []
    while True:
        if ty == target:
            return args
        if not isinstance(ty, Arrow):
            return None
        args.append(ty.dom)
        ty = ty.cod


# ---------------------------------------------------------------------------
# Simply typed terms


class SttGen:
    """Generator of beta-normal and arbitrary well-typed STT terms."""

    def __init__(self, cfg: GenConfig | None = None, rng: random.Random | None = None):
        self.cfg = cfg or GenConfig()
        self.rng = rng or random.Random(self.cfg.seed)
        self._n = 0

    def fresh(self, stem: str = "x") -> str:
        self._n += 1
        return f"{stem}{self._n}"

    def heads(self, env: dict, target: SimpleType):
        out = []
        for name, ty in list(env.items()) + list(self.cfg.free.items()):
            args = _ends_in(ty, target)
            if args is not None:
                out.append((stt.Var(name), args))
        for name, ty in self.cfg.consts.items():
            args = _ends_in(ty, target)
            if args is not None:
                out.append((stt.Const(name, ty), args))
        return out

    def normal(self, ty: SimpleType, env: dict, size: int) -> stt.SttTerm:
        """A beta-normal term of type ``ty``."""
        rng = self.rng
        if isinstance(ty, Arrow) and (size <= 1 or rng.random() < 0.45):
            x = self.fresh()
            return stt.Abs(x, ty.dom, self.normal(ty.cod, {**env, x: ty.dom}, size - 1))
        if ty == O and size > 2 and rng.random() < 0.35:
            return self._logical(env, size)
        heads = self.heads(env, ty)
        if size <= 1:
            heads = [(h, a) for h, a in heads if not a]
        if not heads:
            if isinstance(ty, Arrow):
                x = self.fresh()
                return stt.Abs(x, ty.dom, self.normal(ty.cod, {**env, x: ty.dom}, size - 1))
            return stt.Top() if ty == O else stt.Const("a", IOTA)
        head, args = self._pick(heads, env)
        share = max(1, (size - 1) // max(1, len(args)))
        return stt.apply(head, *[self.normal(a, env, share) for a in args])

    def _logical(self, env: dict, size: int) -> stt.SttTerm:
        rng = self.rng
        k = rng.randrange(7)
        half = max(1, (size - 1) // 2)
        if k == 0:
            return stt.Not(self.normal(O, env, size - 1))
        if k in (1, 2, 3):
            ctor = (stt.And, stt.Or, stt.Implies)[k - 1]
            return ctor(self.normal(O, env, half), self.normal(O, env, half))
        if k == 4:
            ty = random_type(rng, 1)
            return stt.Eq(self.normal(ty, env, half), self.normal(ty, env, half))
        x = self.fresh("y")
        ty = random_type(rng, 1)
        ctor = stt.Forall if k == 5 else stt.Exists
        return ctor(x, ty, self.normal(O, {**env, x: ty}, size - 1))

    def term(self, ty: SimpleType, env: dict, size: int) -> stt.SttTerm:
        """Any well-typed term of type ``ty``, redexes included."""
        rng = self.rng
        if size > 3 and rng.random() < 0.25:
            a = random_type(rng, 1)
            x = self.fresh()
            body = self.term(ty, {**env, x: a}, size // 2)
            return stt.App(stt.Abs(x, a, body), self.term(a, env, size // 2))
        if isinstance(ty, Arrow) and rng.random() < 0.4:
            x = self.fresh()
            return stt.Abs(x, ty.dom, self.term(ty.cod, {**env, x: ty.dom}, size - 1))
        heads = self.heads(env, ty)
        if size <= 1:
            heads = [(h, a) for h, a in heads if not a]
        if not heads:
            return self.normal(ty, env, size)
        head, args = self._pick(heads, env)
        share = max(1, (size - 1) // max(1, len(args)))
        return stt.apply(head, *[self.term(a, env, share) for a in args])

    def _pick(self, heads, env):
        # bound variables first, so that abstractions are not vacuous
        local = [h for h in heads if isinstance(h[0], stt.Var) and h[0].name in env]
        if local and self.rng.random() < 0.6:
            return self.rng.choice(local)
        return self.rng.choice(heads)

    def context(self) -> dict:
        return {**self.cfg.free}

    def redex(self, max_size: int | None = None):
        """``(x, A, t, u)`` with ``(fun x : A -> t) u`` a redex whose contractum is beta-normal.

        ``t`` and ``u`` are beta-normal, and when ``u`` is an abstraction
        ``x`` never heads an application in ``t``.
        """
        max_size = max_size or self.cfg.max_size
        rng = self.rng
        while True:
            a = random_type(rng, self.cfg.type_depth)
            b = random_type(rng, self.cfg.type_depth)
            x = self.fresh("x")
            budget = rng.randint(max_size // 4, 2 * max_size // 3)
            t = self.normal(b, {x: a}, budget)
            u = self.normal(a, {}, rng.randint(1, max(1, max_size // 3)))
            if isinstance(u, stt.Abs) and x in _heads(t):
                continue
            if x not in stt.free_vars(t) and rng.random() < 0.9:
                continue
            total = stt.size(stt.App(stt.Abs(x, a, t), u))
            if total <= max_size:
                return x, a, t, u


def _heads(t: stt.SttTerm) -> set[str]:
    """Variables occurring in the function position of an application."""
    match t:
        case stt.App(f, a):
            out = _heads(f) | _heads(a)
            if isinstance(f, stt.Var):
                out.add(f.name)
            return out
        case stt.Abs(_, _, b) | stt.Forall(_, _, b) | stt.Exists(_, _, b) | stt.Not(b):
            return _heads(b)
        case stt.And(l, r) | stt.Or(l, r) | stt.Implies(l, r) | stt.Eq(l, r):
            return _heads(l) | _heads(r)
    return set()


# ---------------------------------------------------------------------------
# HOL-SK terms and formulas


class HolSkGen:
    """Well-sorted HOL-SK terms rich in S/K and connective redexes.

    Terms use only ``alpha``, the combinators, dotted connectives,
    nullary constants, and variables, so every sample can be fed to
    bracket abstraction.
    """

    def __init__(self, seed: int = 0, rng: random.Random | None = None, max_size: int = 40):
        self.rng = rng or random.Random(seed)
        self.max_size = max_size
        self._n = 0

    def fresh(self) -> str:
        self._n += 1
        return f"v{self._n}"

    def const(self, sort) -> FnApp:
        if sort == IOTA:
            name = self.rng.choice(("c", "d"))
        elif sort == O:
            name = self.rng.choice(("p", "q"))
        else:
            shown = stt.show_type(sort).replace("->", "_").replace("(", "L").replace(")", "R")
            name = "c_" + shown
        return FnApp(fol.const(name, sort))

    def leaf(self, sort, env: dict):
        rng = self.rng
        options = [Var(x, s) for x, s in env.items() if s == sort]
        if rng.random() < 0.5 and options:
            return rng.choice(options)
        for name, s in holsk.CONNECTIVES.items():
            if s == sort and rng.random() < 0.5:
                return holsk.dotted(name)
        if isinstance(sort, Arrow) and isinstance(sort.cod, Arrow) and sort.cod.cod == sort.dom and rng.random() < 0.3:
            return holsk.K(sort.dom, sort.cod.dom)
        return self.const(sort)

    def term(self, sort, env: dict, size: int):
        rng = self.rng
        if size <= 1:
            return self.leaf(sort, env)
        k = rng.random()
        if k < 0.2:
            # K redex
            u = random_type(rng, 1)
            return holsk.app_n(holsk.K(sort, u), self.term(sort, env, size - 2), self.term(u, env, 1 + size // 4))
        if k < 0.38:
            # S redex
            a, b = random_type(rng, 1), random_type(rng, 1)
            third = max(1, (size - 1) // 3)
            return holsk.app_n(holsk.S(a, b, sort), self.term(arrow(a, b, sort), env, third),
                               self.term(Arrow(a, b), env, third), self.term(a, env, third))
        if k < 0.5 and isinstance(sort, Arrow):
            # an abstraction, compiled
            x = self.fresh()
            body = self.term(sort.cod, {**env, x: sort.dom}, size - 1)
            return holsk.bracket_abstract(Var(x, sort.dom), body)
        if sort == O and k < 0.75:
            return self.prop_term(env, size)
        a = random_type(rng, 1)
        half = max(1, (size - 1) // 2)
        return holsk.app(self.term(Arrow(a, sort), env, half), self.term(a, env, half))

    def prop_term(self, env: dict, size: int):
        rng = self.rng
        half = max(1, (size - 2) // 2)
        k = rng.randrange(6)
        if k == 0:
            return holsk.app(holsk.dotted("not."), self.term(O, env, size - 1))
        if k in (1, 2, 3):
            name = ("and.", "or.", "imp.")[k - 1]
            return holsk.app_n(holsk.dotted(name), self.term(O, env, half), self.term(O, env, half))
        if k == 4:
            s = random_type(rng, 1)
            return holsk.app_n(FnApp(holsk.eq_sym(s)), self.term(s, env, half), self.term(s, env, half))
        s = random_type(rng, 1)
        q = holsk.all_sym(s) if rng.random() < 0.5 else holsk.ex_sym(s)
        return holsk.app(FnApp(q), self.term(Arrow(s, O), env, size - 1))

    def formula(self, env: dict, size: int, lifted: bool = False):
        """A formula over eps-atoms; ``lifted`` keeps to the fragment ``lift_prop`` accepts."""
        rng = self.rng
        if size <= 2:
            k = rng.random()
            if k < 0.15:
                return rng.choice((fol.Top(), fol.Bot()))
            if k < 0.3:
                s = rng.choice(BASES)
                return fol.Equal(self.term(s, env, 1), self.term(s, env, 1))
            return holsk.eps(self.term(O, env, max(1, size)))
        k = rng.randrange(8 if lifted else 9)
        half = max(1, (size - 1) // 2)
        if k == 0:
            return fol.Not(self.formula(env, size - 1, lifted))
        if k in (1, 2, 3):
            ctor = (fol.And, fol.Or, fol.Implies)[k - 1]
            return ctor(self.formula(env, half, lifted), self.formula(env, half, lifted))
        if k in (4, 5):
            x = self.fresh()
            s = random_type(rng, 1)
            ctor = fol.Forall if k == 4 else fol.Exists
            return ctor(x, s, self.formula({**env, x: s}, size - 1, lifted))
        if k == 6:
            s = random_type(rng, 1)
            return fol.Equal(self.term(s, env, half), self.term(s, env, half))
        if k == 8:
            return fol.Iff(self.formula(env, half), self.formula(env, half))
        return holsk.eps(self.term(O, env, size - 1))

    def sized_term(self, sort=None, env=None):
        while True:
            s = sort or random_type(self.rng, 2)
            t = self.term(s, dict(env or {}), self.rng.randint(4, self.max_size // 2))
            if fol.term_size(t) <= self.max_size:
                return t

    def sized_formula(self, lifted: bool = False, env=None):
        while True:
            p = self.formula(dict(env or {}), self.rng.randint(3, self.max_size // 2), lifted)
            if fol.formula_size(p) <= self.max_size:
                return p


def signature_for(*xs) -> holsk.HolSkSignature:
    """HOL-SK signature declaring every user constant that occurs in ``xs``."""
    sig = holsk.HolSkSignature()
    for x in xs:
        for t in holsk._all_terms(x):
            for sub in fol.subterms(t):
                if isinstance(sub, FnApp) and sub.sym.name not in holsk.RESERVED:
                    sig.add_function(sub.sym)
        sig.register(x)
    return sig


# ---------------------------------------------------------------------------
# de Bruijn terms


class DbGen:
    """Well-typed de Bruijn terms relative to a context.

    ``skolem`` symbols over closed sorts may appear; their arguments are
    generated in the empty context, as their rank demands.
    """

    def __init__(self, seed: int = 0, rng: random.Random | None = None):
        self.rng = rng or random.Random(seed)
        self.skolems = [
            fol.fn("sk0", [closed_sort(IOTA)], closed_sort(IOTA), skolem=True),
            fol.fn("sk1", [closed_sort(IOTA), closed_sort(Arrow(IOTA, IOTA))], closed_sort(IOTA), skolem=True),
        ]
        self.consts = {"c": IOTA, "f": Arrow(IOTA, IOTA), "q": O}
        self.qvars = {"x": IOTA, "y": Arrow(IOTA, IOTA)}

    def context(self, max_len: int = 3):
        return tuple(random_type(self.rng, 1) for _ in range(self.rng.randint(0, max_len)))

    def term(self, ty: SimpleType, binders: tuple, ctx: tuple, size: int):
        rng = self.rng
        scope = binders + ctx
        leaves = [Index(k + 1) for k, s in enumerate(scope) if s == ty]
        leaves += [DbConst(c, s) for c, s in self.consts.items() if s == ty]
        leaves += [DbVar(x, s) for x, s in self.qvars.items() if s == ty]
        if size <= 1 or (leaves and rng.random() < 0.3):
            if leaves:
                return rng.choice(leaves)
        k = rng.random()
        if isinstance(ty, Arrow) and k < 0.5:
            return DbLam(ty.dom, self.term(ty.cod, (ty.dom,) + binders, ctx, size - 1))
        if ty == IOTA and k < 0.65:
            sym = rng.choice(self.skolems)
            args = tuple(self.term(s.type, (), (), max(1, size // 3)) for s in sym.rank.args)
            return DbFn(sym, args)
        if size > 1:
            a = random_type(rng, 1)
            half = max(1, (size - 1) // 2)
            return DbApp(self.term(Arrow(a, ty), binders, ctx, half), self.term(a, binders, ctx, half))
        if leaves:
            return rng.choice(leaves)
        if isinstance(ty, Arrow):
            return DbLam(ty.dom, self.term(ty.cod, (ty.dom,) + binders, ctx, 1))
        return DbConst("c", IOTA) if ty == IOTA else DbConst("q", O)


__all__ = ["GenConfig", "SttGen", "HolSkGen", "DbGen", "random_type", "STT_CONSTS", "STT_FREE",
           "DbSort", "EMPTY"]
