"""Church-style simply typed lambda terms with logical constants.

This is the source language that HOL-SK and the de Bruijn layer encode.
The beta normalizer here is deliberately independent of the combinator
rewriting engine: tests use it as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

from .errors import NonPropositionBody, TypeMismatch, UnboundVariable

# ---------------------------------------------------------------------------
# Types


@dataclass(frozen=True, slots=True)
class Base:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Arrow:
    dom: "SimpleType"
    cod: "SimpleType"

    def __str__(self) -> str:
        return show_type(self)


SimpleType = Union[Base, Arrow]

IOTA = Base("i")
O = Base("o")


def arrow(*types: SimpleType) -> SimpleType:
    """Right-nested arrow: ``arrow(a, b, c)`` is ``a -> b -> c``."""
    if not types:
        raise ValueError("arrow needs at least one type")
    result = types[-1]
    for t in reversed(types[:-1]):
        result = Arrow(t, result)
    return result


def uncurry(ty: SimpleType) -> tuple[list[SimpleType], SimpleType]:
    args = []
    while isinstance(ty, Arrow):
        args.append(ty.dom)
        ty = ty.cod
    return args, ty


def show_type(ty: SimpleType) -> str:
    if isinstance(ty, Base):
        return ty.name
    dom = show_type(ty.dom)
    if isinstance(ty.dom, Arrow):
        dom = f"({dom})"
    return f"{dom}->{show_type(ty.cod)}"


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class Const:
    name: str
    type: SimpleType


@dataclass(frozen=True, slots=True)
class App:
    fun: "SttTerm"
    arg: "SttTerm"


@dataclass(frozen=True, slots=True)
class Abs:
    var: str
    type: SimpleType
    body: "SttTerm"


@dataclass(frozen=True, slots=True)
class Forall:
    var: str
    type: SimpleType
    body: "SttTerm"


@dataclass(frozen=True, slots=True)
class Exists:
    var: str
    type: SimpleType
    body: "SttTerm"


@dataclass(frozen=True, slots=True)
class Implies:
    left: "SttTerm"
    right: "SttTerm"


@dataclass(frozen=True, slots=True)
class And:
    left: "SttTerm"
    right: "SttTerm"


@dataclass(frozen=True, slots=True)
class Or:
    left: "SttTerm"
    right: "SttTerm"


@dataclass(frozen=True, slots=True)
class Not:
    body: "SttTerm"


@dataclass(frozen=True, slots=True)
class Top:
    pass


@dataclass(frozen=True, slots=True)
class Bot:
    pass


@dataclass(frozen=True, slots=True)
class Eq:
    left: "SttTerm"
    right: "SttTerm"


SttTerm = Union[Var, Const, App, Abs, Forall, Exists, Implies, And, Or, Not, Top, Bot, Eq]
Binder = (Abs, Forall, Exists)
Binary = (Implies, And, Or)


def apply(f: SttTerm, *args: SttTerm) -> SttTerm:
    for a in args:
        f = App(f, a)
    return f


# ---------------------------------------------------------------------------
# Contexts


class SttContext(Mapping[str, SimpleType]):
    """Ordered, immutable map from variable names to types.

    ``extend`` rebinds an existing name in place of adding a duplicate.
    """

    __slots__ = ("_items",)

    def __init__(self, items: Iterable[tuple[str, SimpleType]] | Mapping[str, SimpleType] = ()):
        if isinstance(items, Mapping):
            items = items.items()
        d: dict[str, SimpleType] = {}
        for name, ty in items:
            d.pop(name, None)
            d[name] = ty
        self._items = d

    def __getitem__(self, name: str) -> SimpleType:
        return self._items[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def extend(self, name: str, ty: SimpleType) -> "SttContext":
        return SttContext([*self._items.items(), (name, ty)])

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}:{show_type(v)}" for k, v in self._items.items())
        return f"SttContext([{inner}])"


# ---------------------------------------------------------------------------
# Typing


def typecheck_stt(ctx: Mapping[str, SimpleType], t: SttTerm) -> SimpleType:
    """Return the unique type of ``t`` under ``ctx``."""
    if not isinstance(ctx, SttContext):
        ctx = SttContext(ctx)
    return _infer(ctx._items, t)


def _infer(env: dict, t: SttTerm) -> SimpleType:
    match t:
        case Var(name):
            try:
                return env[name]
            except KeyError:
                raise UnboundVariable(f"unbound variable {name}") from None
        case Const(_, ty):
            return ty
        case App(f, a):
            fty = _infer(env, f)
            aty = _infer(env, a)
            if not isinstance(fty, Arrow):
                raise TypeMismatch(
                    f"cannot apply a term of type {show_type(fty)}",
                    expected=Arrow(aty, Base("?")), found=fty,
                )
            if fty.dom != aty:
                raise TypeMismatch(
                    f"argument has type {show_type(aty)}, expected {show_type(fty.dom)}",
                    expected=fty.dom, found=aty,
                )
            return fty.cod
        case Abs(x, ty, body):
            return Arrow(ty, _infer({**env, x: ty}, body))
        case Forall(x, ty, body) | Exists(x, ty, body):
            _expect_prop(_infer({**env, x: ty}, body), t)
            return O
        case Implies(l, r) | And(l, r) | Or(l, r):
            _expect_prop(_infer(env, l), t)
            _expect_prop(_infer(env, r), t)
            return O
        case Not(b):
            _expect_prop(_infer(env, b), t)
            return O
        case Top() | Bot():
            return O
        case Eq(l, r):
            lty = _infer(env, l)
            rty = _infer(env, r)
            if lty != rty:
                raise TypeMismatch(
                    f"equality between {show_type(lty)} and {show_type(rty)}",
                    expected=lty, found=rty,
                )
            return O
    raise TypeError(f"not an STT term: {t!r}")


def _expect_prop(ty: SimpleType, where: SttTerm) -> None:
    if ty != O:
        raise NonPropositionBody(
            f"{type(where).__name__} expects a proposition, got a term of type {show_type(ty)}"
        )


# ---------------------------------------------------------------------------
# Variables and substitution


def free_vars(t: SttTerm) -> frozenset[str]:
    match t:
        case Var(name):
            return frozenset((name,))
        case Const() | Top() | Bot():
            return frozenset()
        case App(f, a):
            return free_vars(f) | free_vars(a)
        case Abs(x, _, b) | Forall(x, _, b) | Exists(x, _, b):
            return free_vars(b) - {x}
        case Implies(l, r) | And(l, r) | Or(l, r) | Eq(l, r):
            return free_vars(l) | free_vars(r)
        case Not(b):
            return free_vars(b)
    raise TypeError(f"not an STT term: {t!r}")


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """Deterministic fresh name: ``y`` becomes ``y'1``, ``y'2``, ..."""
    avoid = set(avoid)
    stem = base.split("'", 1)[0] or "v"
    k = 1
    while f"{stem}'{k}" in avoid:
        k += 1
    return f"{stem}'{k}"


def substitute(t: SttTerm, x: str, u: SttTerm) -> SttTerm:
    """Capture-avoiding substitution of ``u`` for the free occurrences of ``x``."""
    return _subst(t, x, u, free_vars(u))


def _subst(t: SttTerm, x: str, u: SttTerm, fv_u: frozenset[str]) -> SttTerm:
    match t:
        case Var(name):
            return u if name == x else t
        case Const() | Top() | Bot():
            return t
        case App(f, a):
            return App(_subst(f, x, u, fv_u), _subst(a, x, u, fv_u))
        case Abs(y, ty, b) | Forall(y, ty, b) | Exists(y, ty, b):
            if y == x:
                return t
            fv_b = free_vars(b)
            if x not in fv_b:
                return t
            if y in fv_u:
                y2 = fresh_name(y, fv_u | fv_b | {x})
                b = _subst(b, y, Var(y2), frozenset((y2,)))
                y = y2
            return type(t)(y, ty, _subst(b, x, u, fv_u))
        case Implies(l, r) | And(l, r) | Or(l, r) | Eq(l, r):
            return type(t)(_subst(l, x, u, fv_u), _subst(r, x, u, fv_u))
        case Not(b):
            return Not(_subst(b, x, u, fv_u))
    raise TypeError(f"not an STT term: {t!r}")


# ---------------------------------------------------------------------------
# Beta normalization


def beta_normalize(t: SttTerm) -> SttTerm:
    """Full beta normal form; terminates on well-typed input."""
    match t:
        case Var() | Const() | Top() | Bot():
            return t
        case App(f, a):
            f = beta_normalize(f)
            if isinstance(f, Abs):
                return beta_normalize(substitute(f.body, f.var, a))
            return App(f, beta_normalize(a))
        case Abs(x, ty, b) | Forall(x, ty, b) | Exists(x, ty, b):
            return type(t)(x, ty, beta_normalize(b))
        case Implies(l, r) | And(l, r) | Or(l, r) | Eq(l, r):
            return type(t)(beta_normalize(l), beta_normalize(r))
        case Not(b):
            return Not(beta_normalize(b))
    raise TypeError(f"not an STT term: {t!r}")


def is_beta_normal(t: SttTerm) -> bool:
    match t:
        case Var() | Const() | Top() | Bot():
            return True
        case App(f, a):
            return not isinstance(f, Abs) and is_beta_normal(f) and is_beta_normal(a)
        case Abs(_, _, b) | Forall(_, _, b) | Exists(_, _, b) | Not(b):
            return is_beta_normal(b)
        case Implies(l, r) | And(l, r) | Or(l, r) | Eq(l, r):
            return is_beta_normal(l) and is_beta_normal(r)
    raise TypeError(f"not an STT term: {t!r}")


# ---------------------------------------------------------------------------
# Alpha equivalence


def canonical(t: SttTerm) -> SttTerm:
    """Rename bound variables positionally (``%0``, ``%1``, ... by depth)."""
    return _canon(t, {}, 0)


def _canon(t: SttTerm, env: dict[str, str], depth: int) -> SttTerm:
    match t:
        case Var(name):
            return Var(env.get(name, name))
        case Const() | Top() | Bot():
            return t
        case App(f, a):
            return App(_canon(f, env, depth), _canon(a, env, depth))
        case Abs(x, ty, b) | Forall(x, ty, b) | Exists(x, ty, b):
            bound = f"%{depth}"
            return type(t)(bound, ty, _canon(b, {**env, x: bound}, depth + 1))
        case Implies(l, r) | And(l, r) | Or(l, r) | Eq(l, r):
            return type(t)(_canon(l, env, depth), _canon(r, env, depth))
        case Not(b):
            return Not(_canon(b, env, depth))
    raise TypeError(f"not an STT term: {t!r}")


def alpha_eq(a: SttTerm, b: SttTerm) -> bool:
    return canonical(a) == canonical(b)


def size(t: SttTerm) -> int:
    match t:
        case Var() | Const() | Top() | Bot():
            return 1
        case App(f, a):
            return 1 + size(f) + size(a)
        case Abs(_, _, b) | Forall(_, _, b) | Exists(_, _, b) | Not(b):
            return 1 + size(b)
        case Implies(l, r) | And(l, r) | Or(l, r) | Eq(l, r):
            return 1 + size(l) + size(r)
    raise TypeError(f"not an STT term: {t!r}")
