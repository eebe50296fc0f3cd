"""Natural deduction modulo the HOL-SK rewrite system.

Each step records the assumptions it depends on, so discharging rules
(``ImpI``, ``NotI``, ``OrE``, ``ExistsE``) remove an ``Assume`` step from
that set.  Formulas are compared through their normal forms, up to
renaming of bound variables; structural rules inspect normal forms, so
``eps(alpha(alpha(and., a), b))`` counts as a conjunction.

Instantiation terms of ``ForallE`` and ``ExistsI`` pass
:func:`sttfol.skolem.check_miller_conditions` before use.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import fol
from .errors import BadStep, EigenvariableViolation, LogicError, NotModuloEqual, SkolemCapture, SortMismatch
from .fol import FolFormula, Theory, Var
from .holsk import HolSkSignature, Lam, generate_axioms, realize, theory_axioms
from .rewrite import RewriteSystem, default_system, normalize
from .skolem import check_miller_conditions

RULES = {
    "Axiom", "Assume", "TopI", "AndI", "AndE", "OrI", "OrE", "ImpI", "ImpE", "NotI", "NotE", "BotE",
    "ForallI", "ForallE", "ExistsI", "ExistsE", "EqRefl", "EqSubst", "IffI", "IffE", "ConvModulo",
}

# number of premises; None for any
_ARITY = {
    "Axiom": 0, "Assume": 0, "TopI": 0, "EqRefl": 0, "AndI": 2, "AndE": 1, "OrI": 1, "OrE": 5,
    "ImpI": 2, "ImpE": 2, "NotI": 2, "NotE": 2, "BotE": 1, "ForallI": 1, "ForallE": 1, "ExistsI": 1,
    "ExistsE": 3, "EqSubst": 2, "IffI": 2, "IffE": 2, "ConvModulo": 1,
}
_WITNESS = {"ForallI", "ForallE", "ExistsI", "ExistsE"}


@dataclass(frozen=True)
class ProofStep:
    index: int
    rule: str
    premises: tuple[int, ...]
    formula: FolFormula
    witness: object = None  # FolTerm, Lam, or eigenvariable Var
    span: object = None


@dataclass(frozen=True)
class Proof:
    name: str
    steps: tuple[ProofStep, ...]
    conclusion: FolFormula
    declared: dict = field(default_factory=dict, compare=False)


class _Checker:
    def __init__(self, thy: Theory, system: RewriteSystem | None):
        self.thy = thy
        self.sys = system or default_system()
        self.nf_cache: dict = {}
        self.nf: dict[int, FolFormula] = {}
        self.open: dict[int, frozenset[int]] = {}
        self.steps: dict[int, ProofStep] = {}
        self.eigen: dict[str, int] = {}
        self._axioms = None

    def normal(self, p):
        key = fol.canonical(p)
        hit = self.nf_cache.get(key)
        if hit is None:
            hit = fol.canonical(normalize(self.sys, p))
            self.nf_cache[key] = hit
        return hit

    def axioms(self) -> set:
        if self._axioms is None:
            self._axioms = {self.normal(p) for _, p in theory_axioms(self.thy)}
        return self._axioms

    def fail(self, step: ProofStep, msg: str, cls=BadStep):
        e = cls(f"step {step.index} ({step.rule}): {msg}", index=step.index)
        e.span = step.span
        raise e

    def same(self, step, a, b, what: str):
        if a != b:
            self.fail(step, f"{what} does not match modulo rewriting", NotModuloEqual)

    def shape(self, step, p, cls, what: str):
        if not isinstance(p, cls):
            self.fail(step, f"{what} is not a {cls.__name__} after normalization")
        return p

    # -- main loop
    def check(self, proof: Proof) -> None:
        last = None
        for step in proof.steps:
            if step.index in self.steps:
                self.fail(step, "duplicate step number")
            if step.rule not in RULES:
                self.fail(step, "unknown rule")
            if len(step.premises) != _ARITY[step.rule]:
                self.fail(step, f"expects {_ARITY[step.rule]} premise(s), got {len(step.premises)}")
            for k in step.premises:
                if k not in self.steps:
                    self.fail(step, f"premise {k} does not refer to an earlier step")
            if (step.witness is not None) != (step.rule in _WITNESS):
                self.fail(step, "witness given to a rule that takes none" if step.witness is not None
                          else "missing witness")
            self._wf(step)
            nf = self.normal(step.formula)
            self.nf[step.index] = nf
            self.open[step.index] = getattr(self, "_" + step.rule)(step, nf, [self.nf[k] for k in step.premises])
            self.steps[step.index] = step
            last = step
        if last is None:
            raise BadStep("proof has no steps")
        if self.open[last.index]:
            self.fail(last, f"assumption(s) {sorted(self.open[last.index])} are still open")
        if self.normal(proof.conclusion) != self.nf[last.index]:
            self.fail(last, "final formula is not the stated conclusion", NotModuloEqual)

    def _wf(self, step: ProofStep) -> None:
        ctx = {}
        for v in fol.free_vars(step.formula):
            if ctx.setdefault(v.name, v.sort) != v.sort:
                self.fail(step, f"variable {v.name} occurs at two sorts")
        sig = self.thy.signature
        if isinstance(sig, HolSkSignature):
            sig.register(step.formula)
        try:
            fol.wf_formula(sig, ctx, step.formula)
        except LogicError as e:
            self.fail(step, f"ill-formed formula: {e}")

    def _deps(self, step) -> frozenset[int]:
        out = frozenset()
        for k in step.premises:
            out |= self.open[k]
        return out

    def _discharge(self, step, h: int, c: int):
        if self.steps[h].rule != "Assume":
            self.fail(step, f"step {h} is not an assumption")
        return self.open[c] - {h}

    # -- rules
    def _Assume(self, step, nf, prem):
        return frozenset((step.index,))

    def _Axiom(self, step, nf, prem):
        if nf not in self.axioms():
            self._axioms = None  # the signature may have grown
            if nf not in self.axioms():
                self.fail(step, "formula is not an axiom of the theory", NotModuloEqual)
        return frozenset()

    def _TopI(self, step, nf, prem):
        self.shape(step, nf, fol.Top, "formula")
        return frozenset()

    def _AndI(self, step, nf, prem):
        c = self.shape(step, nf, fol.And, "formula")
        self.same(step, c.left, prem[0], "left conjunct")
        self.same(step, c.right, prem[1], "right conjunct")
        return self._deps(step)

    def _AndE(self, step, nf, prem):
        c = self.shape(step, prem[0], fol.And, "premise")
        if nf not in (c.left, c.right):
            self.fail(step, "formula is neither conjunct of the premise", NotModuloEqual)
        return self._deps(step)

    def _OrI(self, step, nf, prem):
        d = self.shape(step, nf, fol.Or, "formula")
        if prem[0] not in (d.left, d.right):
            self.fail(step, "premise is neither disjunct of the formula", NotModuloEqual)
        return self._deps(step)

    def _OrE(self, step, nf, prem):
        d, h1, c1, h2, c2 = step.premises
        disj = self.shape(step, prem[0], fol.Or, "first premise")
        self.same(step, prem[1], disj.left, "left hypothesis")
        self.same(step, prem[3], disj.right, "right hypothesis")
        self.same(step, prem[2], nf, "left case")
        self.same(step, prem[4], nf, "right case")
        return self.open[d] | self._discharge(step, h1, c1) | self._discharge(step, h2, c2)

    def _ImpI(self, step, nf, prem):
        h, c = step.premises
        imp = self.shape(step, nf, fol.Implies, "formula")
        self.same(step, imp.left, prem[0], "antecedent")
        self.same(step, imp.right, prem[1], "consequent")
        return self._discharge(step, h, c)

    def _ImpE(self, step, nf, prem):
        imp = self.shape(step, prem[0], fol.Implies, "first premise")
        self.same(step, prem[1], imp.left, "second premise")
        self.same(step, nf, imp.right, "formula")
        return self._deps(step)

    def _NotI(self, step, nf, prem):
        h, c = step.premises
        neg = self.shape(step, nf, fol.Not, "formula")
        self.same(step, neg.body, prem[0], "negated formula")
        self.shape(step, prem[1], fol.Bot, "second premise")
        return self._discharge(step, h, c)

    def _NotE(self, step, nf, prem):
        neg = self.shape(step, prem[0], fol.Not, "first premise")
        self.same(step, prem[1], neg.body, "second premise")
        self.shape(step, nf, fol.Bot, "formula")
        return self._deps(step)

    def _BotE(self, step, nf, prem):
        self.shape(step, prem[0], fol.Bot, "premise")
        return self._deps(step)

    def _eigenvariable(self, step, sort) -> Var:
        y = step.witness
        if not isinstance(y, Var):
            self.fail(step, "the witness of this rule is an eigenvariable", EigenvariableViolation)
        if y.sort != sort:
            self.fail(step, f"eigenvariable {y.name} has sort {fol.show_sort(y.sort)}, "
                            f"expected {fol.show_sort(sort)}", EigenvariableViolation)
        if y.name in self.eigen:
            self.fail(step, f"eigenvariable {y.name} already used at step {self.eigen[y.name]}",
                      EigenvariableViolation)
        self.eigen[y.name] = step.index
        return y

    def _free_in_open(self, deps) -> set[str]:
        out = set()
        for k in deps:
            out |= fol.free_names(self.nf[k])
        return out

    def _instance(self, q, t):
        return self.normal(fol.subst_fol(q.body, Var(q.var, q.sort), t))

    def _ForallI(self, step, nf, prem):
        q = self.shape(step, nf, fol.Forall, "formula")
        y = self._eigenvariable(step, q.sort)
        deps = self._deps(step)
        if y.name in fol.free_names(nf):
            self.fail(step, f"eigenvariable {y.name} is free in the conclusion", EigenvariableViolation)
        if y.name in self._free_in_open(deps):
            self.fail(step, f"eigenvariable {y.name} is free in an open assumption", EigenvariableViolation)
        self.same(step, prem[0], self._instance(q, y), "premise")
        return deps

    def _ExistsE(self, step, nf, prem):
        e, h, c = step.premises
        q = self.shape(step, prem[0], fol.Exists, "first premise")
        y = self._eigenvariable(step, q.sort)
        rest = self._discharge(step, h, c)
        if y.name in fol.free_names(nf) or y.name in fol.free_names(q):
            self.fail(step, f"eigenvariable {y.name} escapes its scope", EigenvariableViolation)
        if y.name in self._free_in_open(rest):
            self.fail(step, f"eigenvariable {y.name} is free in an open assumption", EigenvariableViolation)
        self.same(step, prem[1], self._instance(q, y), "hypothesis")
        self.same(step, prem[2], nf, "conclusion of the case")
        return self.open[e] | rest

    def _witness(self, step, sort):
        try:
            check_miller_conditions(self.thy, step.witness)
        except SkolemCapture as e:
            e.args = (f"step {step.index} ({step.rule}): {e}",)
            e.index, e.span = step.index, step.span
            raise
        t = realize(step.witness)
        if t.sort != sort:
            self.fail(step, f"witness has sort {fol.show_sort(t.sort)}, expected {fol.show_sort(sort)}")
        try:
            fol.wf_term(self.thy.signature, {v.name: v.sort for v in fol.term_vars(t)}, t)
        except LogicError as e:
            self.fail(step, f"ill-formed witness: {e}")
        return t

    def _ForallE(self, step, nf, prem):
        q = self.shape(step, prem[0], fol.Forall, "premise")
        t = self._witness(step, q.sort)
        self.same(step, nf, self._instance(q, t), "formula")
        return self._deps(step)

    def _ExistsI(self, step, nf, prem):
        q = self.shape(step, nf, fol.Exists, "formula")
        t = self._witness(step, q.sort)
        self.same(step, prem[0], self._instance(q, t), "premise")
        return self._deps(step)

    def _EqRefl(self, step, nf, prem):
        eq = self.shape(step, nf, fol.Equal, "formula")
        if eq.left != eq.right:
            self.fail(step, "the two sides have different normal forms", NotModuloEqual)
        return frozenset()

    def _EqSubst(self, step, nf, prem):
        eq = self.shape(step, prem[0], fol.Equal, "first premise")
        if not (_replaces(prem[1], nf, eq.left, eq.right)
                or self.normal(_replace_all(prem[1], eq.left, eq.right)) == nf):
            self.fail(step, "formula is not the premise with the left side replaced by the right",
                      NotModuloEqual)
        return self._deps(step)

    def _IffI(self, step, nf, prem):
        iff = self.shape(step, nf, fol.Iff, "formula")
        a = self.shape(step, prem[0], fol.Implies, "first premise")
        b = self.shape(step, prem[1], fol.Implies, "second premise")
        self.same(step, a, fol.Implies(iff.left, iff.right), "first premise")
        self.same(step, b, fol.Implies(iff.right, iff.left), "second premise")
        return self._deps(step)

    def _IffE(self, step, nf, prem):
        iff = self.shape(step, prem[0], fol.Iff, "first premise")
        if prem[1] == iff.left:
            self.same(step, nf, iff.right, "formula")
        elif prem[1] == iff.right:
            self.same(step, nf, iff.left, "formula")
        else:
            self.fail(step, "second premise is neither side of the equivalence", NotModuloEqual)
        return self._deps(step)

    def _ConvModulo(self, step, nf, prem):
        self.same(step, nf, prem[0], "formula")
        return self._deps(step)


def _replaces(a, b, s, t) -> bool:
    """``b`` is ``a`` with some occurrences of ``s`` replaced by ``t`` (canonical forms)."""
    if a == b:
        return True
    match a, b:
        case (fol.Var() | fol.FnApp(), _) if a == s and b == t:
            return True
        case (fol.FnApp(f, xs), fol.FnApp(g, ys)) if f == g:
            return all(_replaces(x, y, s, t) for x, y in zip(xs, ys))
        case (fol.PredApp(f, xs), fol.PredApp(g, ys)) if f == g:
            return all(_replaces(x, y, s, t) for x, y in zip(xs, ys))
        case (fol.Not(x), fol.Not(y)):
            return _replaces(x, y, s, t)
        case (fol.Equal(l1, r1), fol.Equal(l2, r2)) | (fol.And(l1, r1), fol.And(l2, r2)) | \
             (fol.Or(l1, r1), fol.Or(l2, r2)) | (fol.Implies(l1, r1), fol.Implies(l2, r2)) | \
             (fol.Iff(l1, r1), fol.Iff(l2, r2)):
            return _replaces(l1, l2, s, t) and _replaces(r1, r2, s, t)
        case (fol.Forall(x, xs_, p), fol.Forall(y, ys_, q)) | (fol.Exists(x, xs_, p), fol.Exists(y, ys_, q)):
            # canonical binders are positional; s and t never mention them
            return type(a) is type(b) and x == y and xs_ == ys_ and _replaces(p, q, s, t)
    return False


def _replace_all(p, s, t):
    match p:
        case fol.Var() | fol.FnApp():
            if p == s:
                return t
            if isinstance(p, fol.FnApp) and p.args:
                return fol.FnApp(p.sym, tuple(_replace_all(a, s, t) for a in p.args))
            return p
        case fol.PredApp(f, args):
            return fol.PredApp(f, tuple(_replace_all(a, s, t) for a in args))
        case fol.Equal(l, r):
            return fol.Equal(_replace_all(l, s, t), _replace_all(r, s, t))
        case fol.Not(b):
            return fol.Not(_replace_all(b, s, t))
        case fol.And(l, r) | fol.Or(l, r) | fol.Implies(l, r) | fol.Iff(l, r):
            return type(p)(_replace_all(l, s, t), _replace_all(r, s, t))
        case fol.Forall(x, so, b) | fol.Exists(x, so, b):
            return type(p)(x, so, _replace_all(b, s, t))
    return p


def check_proof(thy: Theory, proof: Proof, system: RewriteSystem | None = None) -> None:
    """Raise on the first invalid step; return None when the proof checks."""
    _Checker(thy, system).check(proof)


def check_theory(thy: Theory) -> None:
    """Every axiom closed and well-formed; Skolem symbols over context-paired sorts checked."""
    from .debruijn import DbSort, skolem_sort_check

    sig = thy.signature
    names = set()
    for name, p in thy.axioms:
        if name in names:
            from .errors import IllFormedAxiom
            raise IllFormedAxiom(f"axiom {name} is declared twice")
        names.add(name)
        if isinstance(sig, HolSkSignature):
            sig.register(p)
        fol.check_axiom(sig, name, p)
    if isinstance(sig, HolSkSignature):
        for name, p in generate_axioms(sig, thy.extensionality):
            fol.check_axiom(sig, name, p)
    for f in sig.functions:
        if f.skolem and any(isinstance(s, DbSort) for s in (*f.rank.args, f.rank.result)):
            skolem_sort_check(sig, f)


# ---------------------------------------------------------------------------
# Proofs of the generated axioms from the rewrite rules alone


def axiom_validation_proof(name: str, axiom: FolFormula, system: RewriteSystem | None = None) -> Proof:
    """A proof of ``axiom`` that never cites it.

    The matrix is proved on its normal form (by ``EqRefl``, or by an
    assumption discharged twice and ``IffI``), converted back with
    ``ConvModulo``, and generalized with ``ForallI``.
    """
    system = system or default_system()
    binders = []
    matrix = axiom
    while isinstance(matrix, fol.Forall):
        binders.append(Var(matrix.var, matrix.sort))
        matrix = matrix.body
    nf = normalize(system, matrix)
    steps = []

    def add(rule, premises, formula, witness=None):
        steps.append(ProofStep(len(steps) + 1, rule, tuple(premises), formula, witness))
        return len(steps)

    if isinstance(nf, fol.Equal):
        last = add("EqRefl", [], nf)
    elif isinstance(nf, fol.Iff):
        a = add("Assume", [], nf.left)
        imp = add("ImpI", [a, a], fol.Implies(nf.left, nf.left))
        last = add("IffI", [imp, imp], fol.Iff(nf.left, nf.right))
    else:
        raise SortMismatch(f"axiom {name} is neither an equation nor an equivalence")
    last = add("ConvModulo", [last], matrix)
    body = matrix
    for v in reversed(binders):
        body = fol.Forall(v.name, v.sort, body)
        last = add("ForallI", [last], body, v)
    return Proof(f"validate-{name}", tuple(steps), axiom)


__all__ = [
    "Proof", "ProofStep", "RULES", "axiom_validation_proof", "check_proof", "check_theory", "Lam",
]
