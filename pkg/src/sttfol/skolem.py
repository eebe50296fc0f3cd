"""Skolemization of ``forall x1..xn exists y. A`` axioms.

Two modes.  ``MILLER`` introduces a ranked function symbol ``f`` of rank
``<T1, ..., Tn, U>`` flagged as Skolem, so ``f`` can only occur fully
applied.  ``NAIVE`` introduces a constant of sort ``T1 -> ... -> Tn -> U``
applied through ``alpha``; it behaves like any other constant and can be
abstracted over, which is what breaks conservativity.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from . import fol
from .debruijn import DbSort, skolem_sort_check
from .errors import NameCollision, NoExistential, NotPrenex, SkolemCapture, UnknownSymbol
from .fol import FnApp, FnSym, FolFormula, Rank, Theory, Var
from .holsk import HolSkSignature, Lam, app_n, find_skolem_capture
from .stt import arrow


class SkolemizationMode(enum.Enum):
    MILLER = "miller"
    NAIVE = "naive"


@dataclass(frozen=True)
class SkolemRecord:
    """Provenance of one skolemization step."""
    axiom: str
    mode: SkolemizationMode
    symbol: FnSym
    original: FolFormula


@dataclass(frozen=True)
class Introduced:
    symbol: FnSym
    source: str

    @property
    def rank(self) -> Rank:
        return self.symbol.rank


@dataclass(frozen=True)
class SkolemizationResult:
    theory: Theory
    introduced: list[Introduced] = field(default_factory=list)
    provenance: SkolemRecord | None = None


def fresh_skolem_name(sig: fol.Signature) -> str:
    """``sk<N>`` with the smallest unused ``N``."""
    used = sig.used_names()
    n = 0
    while f"sk{n}" in used:
        n += 1
    return f"sk{n}"


def skolemize_axiom(thy: Theory, axiom: str, mode: SkolemizationMode | str = SkolemizationMode.MILLER,
                    name: str | None = None) -> SkolemizationResult:
    """Replace ``axiom`` by its skolemized form, eliminating its outermost existential."""
    mode = SkolemizationMode(mode)
    try:
        p = thy.axiom(axiom)
    except KeyError:
        raise UnknownSymbol(f"no axiom named {axiom}") from None
    xs: list[Var] = []
    q = p
    while isinstance(q, fol.Forall):
        xs.append(Var(q.var, q.sort))
        q = q.body
    if not isinstance(q, fol.Exists):
        if _prefix_has_existential(p):
            raise NotPrenex(
                f"axiom {axiom} is not of the form forall* exists; apply prenexify first"
            )
        raise NoExistential(f"axiom {axiom} has no existential quantifier to eliminate")

    sig = thy.signature
    name = name or fresh_skolem_name(sig)
    if name in sig.used_names():
        raise NameCollision(f"symbol {name} is already used in the theory")
    y, u, body = q.var, q.sort, q.body

    if mode is SkolemizationMode.MILLER:
        sym = fol.fn(name, [x.sort for x in xs], u, skolem=True)
        if any(isinstance(s, DbSort) for s in (*sym.rank.args, u)):
            skolem_sort_check(sig, sym)
        witness = FnApp(sym, tuple(xs))
    else:
        if not isinstance(sig, HolSkSignature):
            raise UnknownSymbol("naive skolemization needs the application symbol alpha of a HOL-SK signature")
        sym = fol.const(name, arrow(*[x.sort for x in xs], u))
        witness = app_n(FnApp(sym), *xs)

    new_sig = sig.extended(sym)
    new_formula = fol.forall(xs, fol.subst_fol(body, Var(y, u), witness))
    if isinstance(new_sig, HolSkSignature):
        new_sig.register(new_formula)
    record = SkolemRecord(axiom, mode, sym, p)
    new_thy = thy.replace_axiom(axiom, new_formula, signature=new_sig,
                                provenance=thy.provenance + (record,))
    return SkolemizationResult(new_thy, [Introduced(sym, axiom)], record)


def skolemize_fully(thy: Theory, axiom: str, mode=SkolemizationMode.MILLER) -> tuple[Theory, list[Introduced]]:
    """Apply ``skolemize_axiom`` until the axiom has no existential left in its prefix."""
    out = []
    while True:
        try:
            res = skolemize_axiom(thy, axiom, mode)
        except NoExistential:
            return thy, out
        thy = res.theory
        out.extend(res.introduced)


def _prefix_has_existential(p: FolFormula) -> bool:
    q = prenexify(p)
    while isinstance(q, fol.QUANTIFIERS):
        if isinstance(q, fol.Exists):
            return True
        q = q.body
    return False


# ---------------------------------------------------------------------------
# Prenex form


def prenexify(p: FolFormula) -> FolFormula:
    """Classically equivalent prenex form.

    Bound variables are first renamed apart; quantifiers are then pulled
    out left to right with the usual prenex laws.  Quantifier-free
    subformulas are kept as they are.
    """
    p = _expand_iff(p)
    p = _rectify(p, set(fol.free_names(p)))
    prefix, matrix = _pull(p)
    for quant, x, s in reversed(prefix):
        matrix = quant(x, s, matrix)
    return matrix


def _has_quantifier(p) -> bool:
    match p:
        case fol.Forall() | fol.Exists():
            return True
        case fol.Not(b):
            return _has_quantifier(b)
        case fol.And(l, r) | fol.Or(l, r) | fol.Implies(l, r) | fol.Iff(l, r):
            return _has_quantifier(l) or _has_quantifier(r)
    return False


def _expand_iff(p):
    match p:
        case fol.Iff(l, r) if _has_quantifier(p):
            l, r = _expand_iff(l), _expand_iff(r)
            return fol.And(fol.Implies(l, r), fol.Implies(r, l))
        case fol.Not(b):
            return fol.Not(_expand_iff(b))
        case fol.And(l, r) | fol.Or(l, r) | fol.Implies(l, r) | fol.Iff(l, r):
            return type(p)(_expand_iff(l), _expand_iff(r))
        case fol.Forall(x, s, b) | fol.Exists(x, s, b):
            return type(p)(x, s, _expand_iff(b))
    return p


def _rectify(p, used: set[str]):
    """Rename binders so that no two coincide and none shadows a free name."""
    match p:
        case fol.Not(b):
            return fol.Not(_rectify(b, used))
        case fol.And(l, r) | fol.Or(l, r) | fol.Implies(l, r) | fol.Iff(l, r):
            left = _rectify(l, used)
            return type(p)(left, _rectify(r, used))
        case fol.Forall(x, s, b) | fol.Exists(x, s, b):
            if x in used:
                x2 = fol.fresh_name(x, used | fol.free_names(b))
                b = fol.subst_fol(b, Var(x, s), Var(x2, s))
                x = x2
            used.add(x)
            return type(p)(x, s, _rectify(b, used))
    return p


_DUAL = {fol.Forall: fol.Exists, fol.Exists: fol.Forall}


def _pull(p):
    match p:
        case fol.Forall(x, s, b) | fol.Exists(x, s, b):
            prefix, m = _pull(b)
            return [(type(p), x, s)] + prefix, m
        case fol.Not(b):
            prefix, m = _pull(b)
            return [(_DUAL[q], x, s) for q, x, s in prefix], fol.Not(m)
        case fol.Implies(l, r):
            pl, ml = _pull(l)
            pr, mr = _pull(r)
            return [(_DUAL[q], x, s) for q, x, s in pl] + pr, fol.Implies(ml, mr)
        case fol.And(l, r) | fol.Or(l, r):
            pl, ml = _pull(l)
            pr, mr = _pull(r)
            return pl + pr, type(p)(ml, mr)
    return [], p


# ---------------------------------------------------------------------------
# Miller's conditions on instantiation terms


def check_miller_conditions(thy: Theory, t, binder_context=()) -> None:
    """Admission check for a witness term.

    Skolem symbols must be fully applied (already guaranteed by the term
    representation, checked again against the signature), and no variable
    in a Skolem argument may be abstracted above it, whether by an
    enclosing ``Lam`` in ``t`` or by a name in ``binder_context``.
    """
    names = {v.name if isinstance(v, Var) else v for v in binder_context}
    body = t
    if isinstance(t, Lam):
        names |= {v.name for v in t.binders()}
        body = t.matrix()
    for sub in fol.subterms(body):
        if isinstance(sub, FnApp) and sub.sym.skolem:
            known = thy.signature.resolve_function(sub.sym)
            assert len(sub.args) == known.arity
    hit = find_skolem_capture(body, names)
    if hit:
        sym, var, path = hit
        raise SkolemCapture(
            f"variable {var.name} is abstracted above an argument of Skolem symbol {sym.name}",
            symbol=sym.name, variable=var.name, position=path,
        )
