"""Many-sorted first-order logic with equality.

Sorts are opaque hashable values: simple types for HOL-SK, ``DbSort``
pairs for the de Bruijn theory, or any user base sort.  A function symbol
carries its rank, and ``FnApp`` refuses to be built unless the argument
list matches that rank exactly, so a partially applied symbol (in
particular a Skolem symbol without its necessary arguments) cannot exist.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, replace
from typing import Hashable, Iterable, Mapping, Union

from .errors import (
    ArityMismatch, IllFormedAxiom, NameCollision, NonClosedAxiom, SortMismatch,
    UnboundVariable, UnknownSymbol,
)
from .stt import fresh_name

Sort = Hashable


@dataclass(frozen=True, slots=True)
class Rank:
    args: tuple[Sort, ...]
    result: Sort | None = None  # None for predicates

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True, slots=True)
class FnSym:
    name: str
    rank: Rank
    indices: tuple[Sort, ...] = ()
    skolem: bool = False

    @property
    def key(self) -> tuple[str, tuple]:
        return (self.name, self.indices)

    @property
    def arity(self) -> int:
        return len(self.rank.args)


@dataclass(frozen=True, slots=True)
class PredSym:
    name: str
    args: tuple[Sort, ...]

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))


def fn(name: str, args: Iterable[Sort], result: Sort, *, skolem: bool = False) -> FnSym:
    return FnSym(name, Rank(tuple(args), result), (), skolem)


def const(name: str, sort: Sort) -> FnSym:
    return FnSym(name, Rank((), sort))


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True, slots=True)
class Var:
    name: str
    sort: Sort


@dataclass(frozen=True, slots=True)
class FnApp:
    sym: FnSym
    args: tuple["FolTerm", ...] = ()

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))
        _check_args(self.sym.name, self.sym.rank.args, self.args)

    @property
    def sort(self) -> Sort:
        return self.sym.rank.result


FolTerm = Union[Var, FnApp]


def _check_args(name: str, expected: tuple, args: tuple) -> None:
    if len(args) != len(expected):
        raise ArityMismatch(
            f"{name} expects {len(expected)} argument(s), got {len(args)}"
        )
    for k, (want, a) in enumerate(zip(expected, args), 1):
        if a.sort != want:
            raise SortMismatch(
                f"argument {k} of {name} has sort {show_sort(a.sort)}, expected {show_sort(want)}",
                expected=want, found=a.sort,
            )


# ---------------------------------------------------------------------------
# Formulas


@dataclass(frozen=True, slots=True)
class PredApp:
    sym: PredSym
    args: tuple[FolTerm, ...] = ()

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))
        _check_args(self.sym.name, self.sym.args, self.args)


@dataclass(frozen=True, slots=True)
class Equal:
    left: FolTerm
    right: FolTerm

    def __post_init__(self):
        if self.left.sort != self.right.sort:
            raise SortMismatch(
                f"equality between sorts {show_sort(self.left.sort)} and {show_sort(self.right.sort)}",
                expected=self.left.sort, found=self.right.sort,
            )


@dataclass(frozen=True, slots=True)
class Top:
    pass


@dataclass(frozen=True, slots=True)
class Bot:
    pass


@dataclass(frozen=True, slots=True)
class Not:
    body: "FolFormula"


@dataclass(frozen=True, slots=True)
class And:
    left: "FolFormula"
    right: "FolFormula"


@dataclass(frozen=True, slots=True)
class Or:
    left: "FolFormula"
    right: "FolFormula"


@dataclass(frozen=True, slots=True)
class Implies:
    left: "FolFormula"
    right: "FolFormula"


@dataclass(frozen=True, slots=True)
class Iff:
    left: "FolFormula"
    right: "FolFormula"


@dataclass(frozen=True, slots=True)
class Forall:
    var: str
    sort: Sort
    body: "FolFormula"


@dataclass(frozen=True, slots=True)
class Exists:
    var: str
    sort: Sort
    body: "FolFormula"


FolFormula = Union[PredApp, Equal, Top, Bot, Not, And, Or, Implies, Iff, Forall, Exists]
BINARY = (And, Or, Implies, Iff)
QUANTIFIERS = (Forall, Exists)


def is_formula(x) -> bool:
    return isinstance(x, (PredApp, Equal, Top, Bot, Not, And, Or, Implies, Iff, Forall, Exists))


def forall(vars: Iterable[Var], body: FolFormula) -> FolFormula:
    for v in reversed(list(vars)):
        body = Forall(v.name, v.sort, body)
    return body


# ---------------------------------------------------------------------------
# Signatures and theories


class Signature:
    """Function and predicate symbols, keyed by name (and indices for families).

    Build it, then ``freeze()`` it; ``extended`` returns a modified copy.
    """

    def __init__(self, functions: Iterable[FnSym] = (), predicates: Iterable[PredSym] = (),
                 sorts: Iterable[Sort] = ()):
        self._functions: dict[tuple, FnSym] = {}
        self._predicates: dict[str, PredSym] = {}
        self.sorts: set[Sort] = set(sorts)
        self.frozen = False
        self._lock = threading.RLock()
        for s in functions:
            self.add_function(s)
        for p in predicates:
            self.add_predicate(p)

    # construction
    def _check_open(self):
        if self.frozen:
            raise RuntimeError("signature is frozen")

    def add_function(self, sym: FnSym) -> FnSym:
        self._check_open()
        return self._register(sym)

    def _register(self, sym: FnSym) -> FnSym:
        with self._lock:
            old = self._functions.get(sym.key)
            if old is not None:
                if old != sym:
                    raise NameCollision(f"function symbol {sym.name} already declared with another rank")
                return old
            if not sym.indices and sym.name in self._predicates:
                raise NameCollision(f"{sym.name} is already a predicate symbol")
            self._functions[sym.key] = sym
            return sym

    def add_predicate(self, sym: PredSym) -> PredSym:
        self._check_open()
        old = self._predicates.get(sym.name)
        if old is not None:
            if old != sym:
                raise NameCollision(f"predicate symbol {sym.name} already declared with another rank")
            return old
        if (sym.name, ()) in self._functions:
            raise NameCollision(f"{sym.name} is already a function symbol")
        self._predicates[sym.name] = sym
        return sym

    def freeze(self) -> "Signature":
        self.frozen = True
        return self

    def copy(self) -> "Signature":
        new = type(self).__new__(type(self))
        new.__dict__.update(self.__dict__)
        new._functions = dict(self._functions)
        new._predicates = dict(self._predicates)
        new.sorts = set(self.sorts)
        new.frozen = False
        new._lock = threading.RLock()
        return new

    def extended(self, *syms: FnSym | PredSym) -> "Signature":
        new = self.copy()
        for s in syms:
            if isinstance(s, FnSym):
                if new.lookup_function(s.name) is not None or s.name in new._predicates:
                    raise NameCollision(f"symbol {s.name} is already used")
                new.add_function(s)
            else:
                new.add_predicate(s)
        return new.freeze()

    # queries
    @property
    def functions(self) -> list[FnSym]:
        return list(self._functions.values())

    @property
    def predicates(self) -> list[PredSym]:
        return list(self._predicates.values())

    @property
    def skolem_symbols(self) -> set[str]:
        return {s.name for s in self._functions.values() if s.skolem}

    def lookup_function(self, name: str, indices: tuple = ()) -> FnSym | None:
        return self._functions.get((name, indices))

    def lookup_predicate(self, name: str) -> PredSym | None:
        return self._predicates.get(name)

    def resolve_function(self, sym: FnSym) -> FnSym:
        """Declared version of ``sym``; raises if absent or ranked differently."""
        known = self.lookup_function(sym.name, sym.indices)
        if known is None:
            raise UnknownSymbol(f"unknown function symbol {sym.name}")
        if known.rank != sym.rank:
            if len(known.rank.args) != len(sym.rank.args):
                raise ArityMismatch(f"{sym.name} is declared with arity {len(known.rank.args)}")
            raise SortMismatch(f"{sym.name} is declared with a different rank")
        if known.skolem != sym.skolem:
            raise SortMismatch(f"{sym.name}: Skolem flag disagrees with the signature")
        return known

    def resolve_predicate(self, sym: PredSym) -> PredSym:
        known = self.lookup_predicate(sym.name)
        if known is None:
            raise UnknownSymbol(f"unknown predicate symbol {sym.name}")
        if known.args != sym.args:
            if len(known.args) != len(sym.args):
                raise ArityMismatch(f"{sym.name} is declared with arity {len(known.args)}")
            raise SortMismatch(f"{sym.name} is declared with a different rank")
        return known

    def used_names(self) -> set[str]:
        return {k[0] for k in self._functions} | set(self._predicates)


@dataclass(frozen=True)
class Theory:
    signature: Signature
    axioms: tuple[tuple[str, FolFormula], ...] = ()
    provenance: tuple = ()
    extensionality: bool = False

    def __post_init__(self):
        object.__setattr__(self, "axioms", tuple(self.axioms))
        object.__setattr__(self, "provenance", tuple(self.provenance))

    def axiom(self, name: str) -> FolFormula:
        for n, f in self.axioms:
            if n == name:
                return f
        raise KeyError(name)

    def axiom_names(self) -> list[str]:
        return [n for n, _ in self.axioms]

    def replace_axiom(self, name: str, formula: FolFormula, **changes) -> "Theory":
        axioms = tuple((n, formula if n == name else f) for n, f in self.axioms)
        return replace(self, axioms=axioms, **changes)


# ---------------------------------------------------------------------------
# Well-formedness


def wf_term(sig: Signature, ctx: Mapping[str, Sort], t: FolTerm) -> Sort:
    """Sort of ``t``, checking every symbol against ``sig`` and variables against ``ctx``."""
    match t:
        case Var(name, sort):
            if name not in ctx:
                raise UnboundVariable(f"unbound variable {name}")
            if ctx[name] != sort:
                raise SortMismatch(
                    f"variable {name} used at sort {show_sort(sort)}, bound at {show_sort(ctx[name])}",
                    expected=ctx[name], found=sort,
                )
            return sort
        case FnApp(sym, args):
            known = sig.resolve_function(sym)
            _check_args(known.name, known.rank.args, args)
            for a in args:
                wf_term(sig, ctx, a)
            return known.rank.result
    raise TypeError(f"not a first-order term: {t!r}")


def wf_formula(sig: Signature, ctx: Mapping[str, Sort], p: FolFormula) -> None:
    match p:
        case PredApp(sym, args):
            known = sig.resolve_predicate(sym)
            _check_args(known.name, known.args, args)
            for a in args:
                wf_term(sig, ctx, a)
        case Equal(l, r):
            ls = wf_term(sig, ctx, l)
            rs = wf_term(sig, ctx, r)
            if ls != rs:
                raise SortMismatch("equality between different sorts", expected=ls, found=rs)
        case Top() | Bot():
            pass
        case Not(b):
            wf_formula(sig, ctx, b)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            wf_formula(sig, ctx, l)
            wf_formula(sig, ctx, r)
        case Forall(x, s, b) | Exists(x, s, b):
            wf_formula(sig, {**ctx, x: s}, b)
        case _:
            raise TypeError(f"not a first-order formula: {p!r}")


def check_axiom(sig: Signature, name: str, p: FolFormula) -> None:
    """Admission check for a theory axiom: closed and well-formed."""
    fv = free_vars(p)
    if fv:
        names = ", ".join(sorted(v.name for v in fv))
        raise NonClosedAxiom(f"axiom {name} has free variable(s) {names}")
    try:
        wf_formula(sig, {}, p)
    except (UnknownSymbol, ArityMismatch, SortMismatch, UnboundVariable) as e:
        raise IllFormedAxiom(f"axiom {name}: {e}") from e


# ---------------------------------------------------------------------------
# Free variables, substitution, alpha equivalence


def term_vars(t: FolTerm) -> frozenset[Var]:
    if isinstance(t, Var):
        return frozenset((t,))
    out: frozenset[Var] = frozenset()
    for a in t.args:
        out |= term_vars(a)
    return out


def free_vars(p) -> frozenset[Var]:
    """Free variables of a term or formula."""
    match p:
        case Var() | FnApp():
            return term_vars(p)
        case PredApp(_, args):
            out = frozenset()
            for a in args:
                out |= term_vars(a)
            return out
        case Equal(l, r):
            return term_vars(l) | term_vars(r)
        case Top() | Bot():
            return frozenset()
        case Not(b):
            return free_vars(b)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return free_vars(l) | free_vars(r)
        case Forall(x, _, b) | Exists(x, _, b):
            return frozenset(v for v in free_vars(b) if v.name != x)
    raise TypeError(f"not a term or formula: {p!r}")


def free_names(p) -> frozenset[str]:
    return frozenset(v.name for v in free_vars(p))


def bound_names(p) -> set[str]:
    match p:
        case Forall(x, _, b) | Exists(x, _, b):
            return {x} | bound_names(b)
        case Not(b):
            return bound_names(b)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return bound_names(l) | bound_names(r)
    return set()


def subst_term(t: FolTerm, x: str, u: FolTerm) -> FolTerm:
    if isinstance(t, Var):
        return u if t.name == x else t
    if not t.args:
        return t
    return FnApp(t.sym, tuple(subst_term(a, x, u) for a in t.args))


def subst_fol(p, x: str | Var, t: FolTerm):
    """Capture-avoiding substitution of ``t`` for free ``x`` in a term or formula."""
    if isinstance(x, Var):
        if x.sort != t.sort:
            raise SortMismatch(
                f"cannot substitute a term of sort {show_sort(t.sort)} for {x.name}:{show_sort(x.sort)}",
                expected=x.sort, found=t.sort,
            )
        x = x.name
    for v in free_vars(p):
        if v.name == x and v.sort != t.sort:
            raise SortMismatch(
                f"cannot substitute a term of sort {show_sort(t.sort)} for {x}:{show_sort(v.sort)}",
                expected=v.sort, found=t.sort,
            )
    if isinstance(p, (Var, FnApp)):
        return subst_term(p, x, t)
    return _subst(p, x, t, free_names(t))


def _subst(p: FolFormula, x: str, t: FolTerm, fv_t: frozenset[str]) -> FolFormula:
    match p:
        case PredApp(sym, args):
            return PredApp(sym, tuple(subst_term(a, x, t) for a in args))
        case Equal(l, r):
            return Equal(subst_term(l, x, t), subst_term(r, x, t))
        case Top() | Bot():
            return p
        case Not(b):
            return Not(_subst(b, x, t, fv_t))
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return type(p)(_subst(l, x, t, fv_t), _subst(r, x, t, fv_t))
        case Forall(y, s, b) | Exists(y, s, b):
            if y == x:
                return p
            fv_b = free_names(b)
            if x not in fv_b:
                return p
            if y in fv_t:
                y2 = fresh_name(y, fv_t | fv_b | {x})
                b = _subst(b, y, Var(y2, s), frozenset((y2,)))
                y = y2
            return type(p)(y, s, _subst(b, x, t, fv_t))
    raise TypeError(f"not a first-order formula: {p!r}")


def rename_bound(p: FolFormula, old: str, new: str) -> FolFormula:
    """Rename the outermost binder of a quantified formula."""
    assert isinstance(p, QUANTIFIERS) and p.var == old
    body = _subst(p.body, old, Var(new, p.sort), frozenset((new,)))
    return type(p)(new, p.sort, body)


def canonical(p):
    """Bound variables renamed positionally; free variables untouched."""
    return _canon(p, {}, 0)


def _canon_term(t: FolTerm, env: dict) -> FolTerm:
    if isinstance(t, Var):
        n = env.get(t.name)
        return t if n is None else Var(n, t.sort)
    if not t.args:
        return t
    return FnApp(t.sym, tuple(_canon_term(a, env) for a in t.args))


def _canon(p, env: dict, depth: int):
    match p:
        case Var() | FnApp():
            return _canon_term(p, env)
        case PredApp(sym, args):
            return PredApp(sym, tuple(_canon_term(a, env) for a in args))
        case Equal(l, r):
            return Equal(_canon_term(l, env), _canon_term(r, env))
        case Top() | Bot():
            return p
        case Not(b):
            return Not(_canon(b, env, depth))
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return type(p)(_canon(l, env, depth), _canon(r, env, depth))
        case Forall(x, s, b) | Exists(x, s, b):
            n = f"%{depth}"
            return type(p)(n, s, _canon(b, {**env, x: n}, depth + 1))
    raise TypeError(f"not a term or formula: {p!r}")


def alpha_eq(a, b) -> bool:
    return canonical(a) == canonical(b)


def term_size(t: FolTerm) -> int:
    if isinstance(t, Var):
        return 1
    return 1 + sum(term_size(a) for a in t.args)


def formula_size(p) -> int:
    match p:
        case Var() | FnApp():
            return term_size(p)
        case PredApp(_, args):
            return 1 + sum(term_size(a) for a in args)
        case Equal(l, r):
            return 1 + term_size(l) + term_size(r)
        case Top() | Bot():
            return 1
        case Not(b) | Forall(_, _, b) | Exists(_, _, b):
            return 1 + formula_size(b)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return 1 + formula_size(l) + formula_size(r)
    raise TypeError(f"not a term or formula: {p!r}")


def subterms(t: FolTerm):
    yield t
    if isinstance(t, FnApp):
        for a in t.args:
            yield from subterms(a)


def formula_terms(p):
    """Maximal terms occurring in a formula (atom arguments)."""
    match p:
        case PredApp(_, args):
            yield from args
        case Equal(l, r):
            yield l
            yield r
        case Not(b) | Forall(_, _, b) | Exists(_, _, b):
            yield from formula_terms(b)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            yield from formula_terms(l)
            yield from formula_terms(r)


def show_sort(s: Sort) -> str:
    from .stt import Arrow, Base, show_type
    if isinstance(s, (Base, Arrow)):
        return show_type(s)
    return str(s)


def show_rank(rank: Rank) -> str:
    parts = [show_sort(s) for s in rank.args]
    if rank.result is not None:
        parts.append(show_sort(rank.result))
    return "<" + ", ".join(parts) + ">"
