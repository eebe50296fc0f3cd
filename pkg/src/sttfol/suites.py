"""Randomized property suites shared by the tests and the scripts.

Each ``run_*`` function draws ``n`` seeded samples, checks one property on
each, and returns a ``SuiteResult``.  Nothing here raises on a failed
sample; failures are collected so callers can report them.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import debruijn, fol, holsk, stt
from .errors import DanglingIndex, FuelExhausted, LogicError, TypeMismatch
from .gen import DbGen, GenConfig, HolSkGen, SttGen, random_type, signature_for
from .rewrite import DEFAULT_FUEL, default_system, normalize


@dataclass
class SuiteConfig:
    n: int
    seed: int = 0
    max_size: int = 30
    fuel: int = DEFAULT_FUEL


@dataclass
class SuiteResult:
    name: str
    n: int
    seconds: float = 0.0
    failures: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures and self.n > 0

    def summary(self) -> str:
        extra = ", ".join(f"{k}={v}" for k, v in self.stats.items())
        status = "ok" if self.passed else f"{len(self.failures)} failure(s)"
        return f"{self.name}: {self.n} samples, {status}, {self.seconds:.2f}s" + (f" ({extra})" if extra else "")


def _timed(fn):
    def wrapper(cfg: SuiteConfig) -> SuiteResult:
        t0 = time.perf_counter()
        res = fn(cfg)
        res.seconds = time.perf_counter() - t0
        return res
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# ---------------------------------------------------------------------------


def beta_simulation_case(x: str, a, t, u, ctx, system=None, fuel: int = DEFAULT_FUEL):
    """Normal forms of ``alpha([fun x -> t], [u])`` and ``[(fun x -> t) u]`` after beta."""
    redex = stt.App(stt.Abs(x, a, t), u)
    lhs = holsk.app(holsk.translate_stt(stt.Abs(x, a, t), ctx), holsk.translate_stt(u, ctx))
    rhs = holsk.translate_stt(stt.beta_normalize(redex), ctx)
    return normalize(system, lhs, fuel=fuel), normalize(system, rhs, fuel=fuel)


@_timed
def run_beta_simulation(cfg: SuiteConfig) -> SuiteResult:
    """Translation followed by rewriting simulates beta reduction, syntactically."""
    res = SuiteResult("beta-simulation", cfg.n)
    gen = SttGen(GenConfig(seed=cfg.seed, max_size=cfg.max_size))
    ctx = gen.context()
    system = default_system()
    sizes = []
    for k in range(cfg.n):
        x, a, t, u = gen.redex()
        sizes.append(stt.size(stt.App(stt.Abs(x, a, t), u)))
        try:
            left, right = beta_simulation_case(x, a, t, u, ctx, system, cfg.fuel)
        except LogicError as e:
            res.failures.append((k, repr(e)))
            continue
        if left != right:
            res.failures.append((k, (x, a, t, u)))
    res.stats = {"max_size": max(sizes, default=0), "mean_size": round(sum(sizes) / max(1, len(sizes)), 1)}
    return res


@_timed
def run_lift(cfg: SuiteConfig) -> SuiteResult:
    """``eps(lift_prop(p))`` and ``p`` share a normal form (up to bound names)."""
    res = SuiteResult("eps-lifting", cfg.n)
    gen = HolSkGen(cfg.seed, max_size=max(cfg.max_size, 10))
    system = default_system()
    for k in range(cfg.n):
        p = gen.sized_formula(lifted=True)
        try:
            left = normalize(system, holsk.eps(holsk.lift_prop(p)), fuel=cfg.fuel)
            right = normalize(system, p, fuel=cfg.fuel)
        except LogicError as e:
            res.failures.append((k, repr(e)))
            continue
        if fol.canonical(left) != fol.canonical(right):
            res.failures.append((k, p))
    return res


@_timed
def run_rewrite_health(cfg: SuiteConfig) -> SuiteResult:
    """Outermost and innermost reach the same normal form within fuel, at the input's sort."""
    res = SuiteResult("rewrite-health", cfg.n)
    gen = HolSkGen(cfg.seed, max_size=cfg.max_size)
    system = default_system()
    formulas = 0
    for k in range(cfg.n):
        x = gen.sized_formula() if k % 2 else gen.sized_term()
        try:
            out = normalize(system, x, fuel=cfg.fuel, strategy="outermost")
            inn = normalize(system, x, fuel=cfg.fuel, strategy="innermost")
        except FuelExhausted as e:
            res.failures.append((k, f"fuel: {e}"))
            continue
        if fol.canonical(out) != fol.canonical(inn):
            res.failures.append((k, "strategies disagree"))
            continue
        if fol.is_formula(x):
            formulas += 1
            sig = signature_for(x)
            ctx = {v.name: v.sort for v in fol.free_vars(x)}
            try:
                sig.register(out)
                fol.wf_formula(sig, ctx, out)
            except LogicError as e:
                res.failures.append((k, f"ill-sorted result: {e}"))
        elif out.sort != x.sort:
            res.failures.append((k, "sort changed"))
    res.stats = {"formulas": formulas, "terms": cfg.n - formulas}
    return res


@_timed
def run_db_admission(cfg: SuiteConfig) -> SuiteResult:
    """Terms admitted at an empty-context sort have no free indices.

    Every Skolem argument is also checked: no free index, while named
    quantified variables are allowed to occur.
    """
    res = SuiteResult("db-admission", cfg.n)
    gen = DbGen(cfg.seed)
    admitted = rejected = named_in_skolem = 0
    for k in range(cfg.n):
        ctx = gen.context()
        ty = random_type(gen.rng, 1)
        t = gen.term(ty, (), ctx, gen.rng.randint(2, 12))
        if debruijn.typecheck_db(t, debruijn.DbContext(ctx)) != ty:
            res.failures.append((k, "generator produced an ill-typed term"))
            continue
        try:
            debruijn.admit(t, debruijn.closed_sort(ty))
        except (DanglingIndex, TypeMismatch):
            rejected += 1
            if not debruijn.free_indices(t):
                res.failures.append((k, "closed term rejected at a closed sort"))
        else:
            admitted += 1
            if debruijn.free_indices(t):
                res.failures.append((k, "term with free indices admitted at a closed sort"))
        for sub in _db_subterms(t):
            if isinstance(sub, debruijn.DbFn):
                for arg in sub.args:
                    if debruijn.free_indices(arg):
                        res.failures.append((k, "Skolem argument with a free index"))
                    named_in_skolem += bool(debruijn.named_vars(arg))
    res.stats = {"admitted": admitted, "rejected": rejected, "named_in_skolem_args": named_in_skolem}
    return res


def _db_subterms(t):
    yield t
    match t:
        case debruijn.DbApp(f, a):
            yield from _db_subterms(f)
            yield from _db_subterms(a)
        case debruijn.DbLam(_, b):
            yield from _db_subterms(b)
        case debruijn.DbFn(_, args):
            for a in args:
                yield from _db_subterms(a)


SUITES = {
    "beta": (run_beta_simulation, 1000),
    "lift": (run_lift, 500),
    "rewrite": (run_rewrite_health, 1000),
    "db": (run_db_admission, 500),
}


def run_all(seed: int = 0, scale: float = 1.0) -> list[SuiteResult]:
    return [fn(SuiteConfig(n=max(1, int(n * scale)), seed=seed, max_size=40 if name == "rewrite" else 30))
            for name, (fn, n) in SUITES.items()]


__all__ = ["SuiteConfig", "SuiteResult", "SUITES", "beta_simulation_case", "run_all",
           "run_beta_simulation", "run_db_admission", "run_lift", "run_rewrite_health"]
