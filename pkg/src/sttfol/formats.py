"""S-expression file formats: theories, terms, proofs.

Terms are elaborated with sort inference.  Indices of ``S``, ``K``,
``eq.``, ``all.`` and ``ex.`` may be omitted and are reconstructed by
unification over arrow sorts; free variables of term and proof files get
their sorts the same way.  Curried application ``(h a1 ... an)`` is sugar:
when ``h`` is a ranked function symbol of arity ``k`` the first ``k``
arguments fill its rank and the rest are applied with ``alpha``, otherwise
every argument goes through ``alpha``.  The same script therefore means
``sk0(x)`` over a Miller signature and ``alpha(sk0, x)`` over a naive one.

Theory file::

    (holsk)
    (fn P () (-> i i o))
    (fn f (i) i :skolem)
    (pred Q (i))
    (axiom name formula)
    (provenance (skolemized name (mode miller) (symbol sk0 (i) i) (original "...")))

Proof file::

    (proof name (var c i)* (conclusion f) (step n Rule (premises n*) (formula f) (witness t)?)*)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from . import fol, holsk, sexp
from .errors import (
    AmbiguousSort, ArityMismatch, IllFormedAxiom, LogicError, NonClosedAxiom, ParseError, SortMismatch,
    UnknownSymbol,
)
from .fol import FnApp, FnSym, PredApp, PredSym, Signature, Theory, Var
from .holsk import HolSkSignature, Lam
from .sexp import Atom, SList, parse_sort, quote, read_all, read_one, show_sort
from .stt import O, Arrow

FORMULA_HEADS = {"eps", "=", "not", "and", "or", "imp", "iff", "forall", "exists"}
FORMULA_ATOMS = {"true", "false"}


def _locate(e: Exception, node) -> Exception:
    if getattr(e, "span", None) is None and node is not None:
        e.span = node.span
    return e


# ---------------------------------------------------------------------------
# Sort inference


@dataclass(frozen=True)
class _Meta:
    id: int


class Elaborator:
    """Turns s-expressions into terms and formulas over a signature.

    ``free`` controls unknown atoms: ``"infer"`` makes them free variables
    whose sorts are inferred, ``"error"`` rejects them as free variables of
    a would-be closed axiom.
    """

    def __init__(self, sig: Signature, free: str = "infer", declared: dict | None = None):
        self.sig = sig
        self.holsk = isinstance(sig, HolSkSignature)
        self.free = free
        self.declared = dict(declared or {})
        self.free_sorts: dict[str, object] = {}
        self.subst: dict[_Meta, object] = {}
        self._ids = itertools.count()

    # -- unification
    def meta(self) -> _Meta:
        return _Meta(next(self._ids))

    def walk(self, s):
        while isinstance(s, _Meta) and s in self.subst:
            s = self.subst[s]
        return s

    def resolve(self, s):
        s = self.walk(s)
        if isinstance(s, Arrow):
            return Arrow(self.resolve(s.dom), self.resolve(s.cod))
        return s

    def _occurs(self, m, s) -> bool:
        s = self.walk(s)
        if s == m:
            return True
        return isinstance(s, Arrow) and (self._occurs(m, s.dom) or self._occurs(m, s.cod))

    def unify(self, a, b, node=None) -> None:
        a, b = self.walk(a), self.walk(b)
        if a == b:
            return
        if isinstance(a, _Meta) or isinstance(b, _Meta):
            m, s = (a, b) if isinstance(a, _Meta) else (b, a)
            if self._occurs(m, s):
                raise _locate(SortMismatch("cyclic sort constraint"), node)
            self.subst[m] = s
            return
        if isinstance(a, Arrow) and isinstance(b, Arrow):
            self.unify(a.dom, b.dom, node)
            self.unify(a.cod, b.cod, node)
            return
        ra, rb = self.resolve(a), self.resolve(b)
        raise _locate(SortMismatch(f"sort {_show(ra)} does not match {_show(rb)}", expected=rb, found=ra), node)

    def final(self, s, node=None):
        r = self.resolve(s)
        if _has_meta(r):
            raise _locate(AmbiguousSort(f"cannot determine the sort {_show(r)}; give indices explicitly with (@ ...)"), node)
        return r

    # -- terms
    def term(self, node, env: dict, keep_lam: bool = False):
        """Returns ``(sort, build)``; ``build()`` produces the term once all constraints are in."""
        try:
            return self._term(node, env, keep_lam)
        except LogicError as e:
            raise _locate(e, node)

    def _term(self, node, env, keep_lam):
        if isinstance(node, Atom):
            return self._atom_term(node, env)
        if not node.items:
            raise ParseError("empty list where a term was expected", node.span)
        head = node.head
        if head in FORMULA_HEADS:
            raise ParseError(f"{head} builds a formula, a term was expected here", node.span)
        if head == "alpha":
            if len(node) != 3:
                raise ParseError("alpha takes exactly two arguments", node.span)
            return self._apply(self.term(node[1], env), [node[2]], env, node)
        if head == "@":
            return self._explicit(node)
        if head == "lam":
            return self._lam(node, env, keep_lam)
        if head is not None and head not in env and not node[0].quoted:
            sym = self.sig.lookup_function(head) if head not in holsk.RESERVED else None
            if sym is not None and sym.arity > 0:
                return self._ranked(sym, node, env)
        return self._apply(self.term(node[0], env), list(node.items[1:]), env, node)

    def _atom_term(self, node: Atom, env):
        name = node.text
        if name in env:
            s = env[name]
            return s, lambda: Var(name, s)
        if not node.quoted and self.holsk:
            if name in holsk.INDEXED and name != holsk.ALPHA:
                return self._family(name, node)
            if name in holsk.CONNECTIVES:
                sym = holsk.connective_sym(name)
                return sym.rank.result, lambda: FnApp(sym)
        sym = self.sig.lookup_function(name)
        if sym is not None:
            if sym.arity:
                raise _locate(ArityMismatch(
                    f"{name} has rank {fol.show_rank(sym.rank)}; it is not a term on its own"), node)
            return sym.rank.result, lambda: FnApp(sym)
        if self.sig.lookup_predicate(name) is not None:
            raise _locate(SortMismatch(f"predicate {name} used as a term"), node)
        return self._free_var(node)

    def _free_var(self, node: Atom):
        name = node.text
        if name in self.declared:
            s = self.declared[name]
            return s, lambda: Var(name, s)
        if self.free == "error":
            raise _locate(NonClosedAxiom(f"free variable {name}"), node)
        s = self.free_sorts.setdefault(name, self.meta())
        return s, lambda: Var(name, self.final(s, node))

    def _family(self, name: str, node):
        arity = {"S": 3, "K": 2}.get(name, 1)
        ms = [self.meta() for _ in range(arity)]
        proto = holsk.family_member(name, tuple(ms))
        return proto.rank.result, lambda: FnApp(
            holsk.family_member(name, tuple(self.final(m, node) for m in ms)))

    def _explicit(self, node: SList):
        if len(node) < 2 or not isinstance(node[1], Atom):
            raise ParseError("(@ name index...) expected", node.span)
        name = node[1].text
        if name not in holsk.INDEXED or name == holsk.ALPHA:
            raise ParseError(f"{name} is not a nullary indexed family", node.span)
        ix = tuple(parse_sort(n) for n in node.items[2:])
        try:
            sym = holsk.family_member(name, ix)
        except TypeError:
            raise ParseError(f"wrong number of indices for {name}", node.span) from None
        return sym.rank.result, lambda: FnApp(sym)

    def _lam(self, node: SList, env, keep_lam):
        if len(node) != 4 or not isinstance(node[1], Atom):
            raise ParseError("(lam x sort body) expected", node.span)
        x, s = node[1].text, parse_sort(node[2])
        bs, bb = self.term(node[3], {**env, x: s}, keep_lam)

        def build():
            body = bb()
            if keep_lam:
                return Lam(Var(x, s), body)
            return holsk.bracket_abstract(Var(x, s), holsk.realize(body))
        return Arrow(s, bs), build

    def _ranked(self, sym: FnSym, node: SList, env):
        args = list(node.items[1:])
        if len(args) < sym.arity:
            raise _locate(ArityMismatch(
                f"{sym.name} expects {sym.arity} argument(s), got {len(args)}"), node)
        builders = []
        for want, a in zip(sym.rank.args, args):
            s, b = self.term(a, env)
            self.unify(s, want, a)
            builders.append(b)
        head = (sym.rank.result, lambda: FnApp(sym, tuple(b() for b in builders)))
        return self._apply(head, args[sym.arity:], env, node)

    def _apply(self, head, args, env, node):
        if args and not self.holsk:
            raise _locate(UnknownSymbol("application needs the symbol alpha of a HOL-SK signature"), node)
        fs, fb = head
        for a in args:
            s, ab = self.term(a, env)
            cod = self.meta()
            self.unify(fs, Arrow(s, cod), a)
            fb = (lambda f, x: lambda: holsk.app(holsk.realize(f()), x()))(fb, ab)
            fs = cod
        return fs, fb

    # -- formulas
    def formula(self, node, env: dict) -> Callable:
        try:
            return self._formula(node, env)
        except LogicError as e:
            raise _locate(e, node)

    def _formula(self, node, env):
        if isinstance(node, Atom):
            if node.text == "true":
                return fol.Top
            if node.text == "false":
                return fol.Bot
            pred = self.sig.lookup_predicate(node.text)
            if pred is not None and node.text not in env:
                if pred.args:
                    raise _locate(ArityMismatch(f"{pred.name} expects {len(pred.args)} argument(s)"), node)
                return lambda: PredApp(pred, ())
            return self._lifted(node, env)
        head = node.head
        n = len(node)

        def need(k):
            if n != k + 1:
                raise ParseError(f"{head} takes {k} argument(s)", node.span)

        if head == "not":
            need(1)
            b = self.formula(node[1], env)
            return lambda: fol.Not(b())
        if head in ("and", "or", "imp", "iff"):
            need(2)
            ctor = {"and": fol.And, "or": fol.Or, "imp": fol.Implies, "iff": fol.Iff}[head]
            lb, rb = self.formula(node[1], env), self.formula(node[2], env)
            return lambda: ctor(lb(), rb())
        if head in ("forall", "exists"):
            need(3)
            if not isinstance(node[1], Atom):
                raise ParseError("binder name expected", node[1].span)
            x, s = node[1].text, parse_sort(node[2])
            b = self.formula(node[3], {**env, x: s})
            ctor = fol.Forall if head == "forall" else fol.Exists
            return lambda: ctor(x, s, b())
        if head == "=":
            need(2)
            ls, lb = self.term(node[1], env)
            rs, rb = self.term(node[2], env)
            self.unify(rs, ls, node[2])
            return lambda: fol.Equal(holsk.realize(lb()), holsk.realize(rb()))
        if head == "eps":
            need(1)
            if not self.holsk:
                raise _locate(UnknownSymbol("eps belongs to HOL-SK signatures"), node)
            s, b = self.term(node[1], env)
            self.unify(s, O, node[1])
            return lambda: holsk.eps(holsk.realize(b()))
        if head is not None and head not in env:
            pred = self.sig.lookup_predicate(head)
            if pred is not None:
                if n - 1 != len(pred.args):
                    raise _locate(ArityMismatch(
                        f"{pred.name} expects {len(pred.args)} argument(s), got {n - 1}"), node)
                builders = []
                for want, a in zip(pred.args, node.items[1:]):
                    s, b = self.term(a, env)
                    self.unify(s, want, a)
                    builders.append(b)
                return lambda: PredApp(pred, tuple(holsk.realize(b()) for b in builders))
        return self._lifted(node, env)

    def _lifted(self, node, env):
        # a term of sort o used as a formula stands for eps(term)
        if not self.holsk:
            if isinstance(node, SList) and node.head is not None:
                raise _locate(UnknownSymbol(f"unknown predicate symbol {node.head}"), node)
            raise _locate(UnknownSymbol(f"unknown predicate symbol {node}"), node)
        s, b = self.term(node, env)
        self.unify(s, O, node)
        return lambda: holsk.eps(holsk.realize(b()))

    def build(self, builder: Callable, node=None):
        try:
            return builder()
        except LogicError as e:
            raise _locate(e, node)


def _has_meta(s) -> bool:
    if isinstance(s, _Meta):
        return True
    return isinstance(s, Arrow) and (_has_meta(s.dom) or _has_meta(s.cod))


def _show(s) -> str:
    if isinstance(s, _Meta):
        return f"?{s.id}"
    if isinstance(s, Arrow):
        dom = _show(s.dom)
        if isinstance(s.dom, Arrow):
            dom = f"({dom})"
        return f"{dom}->{_show(s.cod)}"
    return fol.show_sort(s)


def is_formula_node(node, sig: Signature) -> bool:
    if isinstance(node, Atom):
        return node.text in FORMULA_ATOMS or sig.lookup_predicate(node.text) is not None
    return node.head in FORMULA_HEADS or (node.head is not None and sig.lookup_predicate(node.head) is not None)


# ---------------------------------------------------------------------------
# Declarations


def _parse_decl(node: SList, sig: Signature):
    head = node.head
    if head == "sort":
        if len(node) != 2:
            raise ParseError("(sort name) expected", node.span)
        sig.sorts.add(parse_sort(node[1]))
        return
    if head == "pred":
        if len(node) != 3 or not isinstance(node[2], SList):
            raise ParseError("(pred name (sort*)) expected", node.span)
        sym = PredSym(node[1].text, tuple(parse_sort(s) for s in node[2].items))
        _declare(sig, sym, node)
        return
    if head == "fn":
        items = list(node.items)
        skolem = False
        if isinstance(items[-1], Atom) and items[-1].text == ":skolem":
            skolem = True
            items.pop()
        if len(items) != 4 or not isinstance(items[2], SList):
            raise ParseError("(fn name (sort*) sort [:skolem]) expected", node.span)
        sym = fol.fn(items[1].text, [parse_sort(s) for s in items[2].items], parse_sort(items[3]),
                     skolem=skolem)
        _declare(sig, sym, node)
        return
    raise ParseError(f"unknown declaration {head}", node.span)


def _declare(sig: Signature, sym, node):
    try:
        if isinstance(sig, HolSkSignature):
            HolSkSignature._check_user(sym.name)
        if isinstance(sym, PredSym):
            sig.add_predicate(sym)
        else:
            sig.add_function(sym)
    except LogicError as e:
        raise _locate(e, node)


DECLS = {"sort", "pred", "fn"}


def _show_decls(sig: Signature) -> list[str]:
    out = []
    is_hs = isinstance(sig, HolSkSignature)
    if not is_hs:
        for s in sorted(sig.sorts, key=show_sort):
            out.append(f"(sort {show_sort(s)})")
    fns = sig.user_functions() if is_hs else sig.functions
    for f in fns:
        args = " ".join(show_sort(s) for s in f.rank.args)
        flag = " :skolem" if f.skolem else ""
        out.append(f"(fn {f.name} ({args}) {show_sort(f.rank.result)}{flag})")
    preds = sig.user_predicates() if is_hs else sig.predicates
    for p in preds:
        out.append(f"(pred {p.name} ({' '.join(show_sort(s) for s in p.args)}))")
    return out


# ---------------------------------------------------------------------------
# Theories


@dataclass
class TheoryFile:
    theory: Theory
    spans: dict = field(default_factory=dict)


def load_theory(src: str) -> TheoryFile:
    from .skolem import SkolemizationMode, SkolemRecord

    forms = read_all(src)
    is_hs = any(isinstance(f, SList) and f.head == "holsk" for f in forms)
    ext = any(isinstance(f, SList) and f.head == "extensionality" for f in forms)
    sig: Signature = HolSkSignature() if is_hs else Signature()
    axioms, spans, prov_nodes = [], {}, []
    for f in forms:
        if not isinstance(f, SList) or f.head is None:
            raise ParseError("expected a declaration", f.span)
        if f.head in DECLS:
            _parse_decl(f, sig)
        elif f.head in ("holsk", "extensionality"):
            if len(f) != 1:
                raise ParseError(f"({f.head}) takes no arguments", f.span)
        elif f.head not in ("axiom", "provenance"):
            raise ParseError(f"unknown form {f.head}", f.span)
    for f in forms:
        if f.head == "axiom":
            if len(f) != 3 or not isinstance(f[1], Atom):
                raise ParseError("(axiom name formula) expected", f.span)
            name = f[1].text
            if name in spans:
                raise _locate(IllFormedAxiom(f"axiom {name} is declared twice"), f)
            p = elaborate_formula(sig, f[2], free="error")
            try:
                fol.check_axiom(sig, name, p)
            except LogicError as e:
                raise _locate(e, f)
            axioms.append((name, p))
            spans[name] = f.span
        elif f.head == "provenance":
            prov_nodes.extend(f.items[1:])
    records = []
    for node in prov_nodes:
        if not (isinstance(node, SList) and node.head == "skolemized"):
            raise ParseError("(skolemized axiom (mode m) (symbol name (sort*) sort) (original \"f\")) expected",
                             node.span)
        fields = {n.head: n for n in node.items[2:] if isinstance(n, SList)}
        try:
            mode = SkolemizationMode(fields["mode"][1].text)
            sn = fields["symbol"]
            sym = fol.fn(sn[1].text, [parse_sort(s) for s in sn[2].items], parse_sort(sn[3]),
                         skolem=mode is SkolemizationMode.MILLER)
            original = elaborate_formula(sig, read_one(fields["original"][1].text), free="error")
        except (KeyError, IndexError, ValueError, AttributeError):
            raise ParseError("malformed provenance record", node.span) from None
        records.append(SkolemRecord(node[1].text, mode, sym, original))
    thy = Theory(sig, tuple(axioms), tuple(records), ext)
    if is_hs:
        for _, p in axioms:
            sig.register(p)
    sig.freeze()
    return TheoryFile(thy, spans)


def elaborate_formula(sig: Signature, node, free: str = "infer", declared=None):
    el = Elaborator(sig, free, declared)
    b = el.formula(node, {})
    return el.build(b, node)


def elaborate_term(sig: Signature, node, free: str = "infer", declared=None, keep_lam: bool = False):
    el = Elaborator(sig, free, declared)
    s, b = el.term(node, {}, keep_lam)
    return el.build(b, node)


def parse_formula(sig: Signature, src: str, **kw):
    return elaborate_formula(sig, read_one(src), **kw)


def parse_term(sig: Signature, src: str, **kw):
    return elaborate_term(sig, read_one(src), **kw)


def show_formula_in(sig: Signature, p, declared=None) -> str:
    """Index-elided printing when it reads back to ``p``, explicit indices otherwise."""
    short = sexp.show_formula(p)
    try:
        if elaborate_formula(sig, read_one(short), free="infer", declared=declared) == p:
            return short
    except (LogicError, ParseError):
        pass
    return sexp.show_formula(p, explicit=True)


def show_term_in(sig: Signature, t, declared=None) -> str:
    short = show_witness(t)
    try:
        if elaborate_term(sig, read_one(short), declared=declared, keep_lam=isinstance(t, Lam)) == t:
            return short
    except (LogicError, ParseError):
        pass
    return show_witness(t, explicit=True)


def show_witness(t, explicit: bool = False) -> str:
    if isinstance(t, Lam):
        return f"(lam {t.var.name} {show_sort(t.var.sort)} {show_witness(t.body, explicit)})"
    return sexp.show_term(t, explicit)


def show_theory(thy: Theory) -> str:
    sig = thy.signature
    lines = []
    if isinstance(sig, HolSkSignature):
        lines.append("(holsk)")
    if thy.extensionality:
        lines.append("(extensionality)")
    lines += _show_decls(sig)
    for name, p in thy.axioms:
        lines.append(f"(axiom {name} {show_formula_in(sig, p)})")
    if thy.provenance:
        lines.append("(provenance")
        for r in thy.provenance:
            s = r.symbol
            args = " ".join(show_sort(x) for x in s.rank.args)
            lines.append(
                f"  (skolemized {r.axiom} (mode {r.mode.value}) "
                f"(symbol {s.name} ({args}) {show_sort(s.rank.result)}) "
                f"(original {quote(show_formula_in(sig, r.original))}))"
            )
        lines[-1] += ")"
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Term files: declarations, then one term or formula


@dataclass
class TermFile:
    signature: Signature
    body: object
    declared: dict = field(default_factory=dict)

    @property
    def is_formula(self) -> bool:
        return fol.is_formula(self.body)


def load_term_file(src: str) -> TermFile:
    forms = read_all(src)
    if not forms:
        raise ParseError("empty term file")
    sig = HolSkSignature()
    declared = {}
    for f in forms[:-1]:
        if not isinstance(f, SList):
            raise ParseError("expected a declaration", f.span)
        if f.head == "var":
            if len(f) != 3 or not isinstance(f[1], Atom):
                raise ParseError("(var name sort) expected", f.span)
            declared[f[1].text] = parse_sort(f[2])
        elif f.head in DECLS:
            _parse_decl(f, sig)
        else:
            raise ParseError(f"unknown declaration {f.head}", f.span)
    last = forms[-1]
    if is_formula_node(last, sig):
        body = elaborate_formula(sig, last, declared=declared)
    else:
        body = elaborate_term(sig, last, declared=declared)
    sig.register(body)
    return TermFile(sig, body, declared)


def show_term_file(tf: TermFile) -> str:
    lines = _show_decls(tf.signature)
    lines += [f"(var {x} {show_sort(s)})" for x, s in tf.declared.items()]
    if tf.is_formula:
        lines.append(show_formula_in(tf.signature, tf.body, tf.declared))
    else:
        lines.append(show_term_in(tf.signature, tf.body, tf.declared))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Proofs


def load_proof(src: str, thy: Theory):
    from .proofcheck import Proof, ProofStep

    node = read_one(src)
    if not (isinstance(node, SList) and node.head == "proof" and len(node) >= 2 and isinstance(node[1], Atom)):
        raise ParseError("(proof name ...) expected", node.span)
    name = node[1].text
    declared = {}
    for item in node.items[2:]:
        if isinstance(item, SList) and item.head == "var":
            if len(item) != 3 or not isinstance(item[1], Atom):
                raise ParseError("(var name sort) expected", item.span)
            declared[item[1].text] = parse_sort(item[2])
    el = Elaborator(thy.signature, "infer", declared)
    conclusion = None
    pending = []
    for item in node.items[2:]:
        if not isinstance(item, SList):
            raise ParseError("proof item expected", item.span)
        if item.head == "var":
            continue
        if item.head == "conclusion":
            if len(item) != 2:
                raise ParseError("(conclusion formula) expected", item.span)
            conclusion = (el.formula(item[1], {}), item)
        elif item.head == "step":
            pending.append(_parse_step(el, item))
        else:
            raise ParseError(f"unknown proof item {item.head}", item.span)
    if conclusion is None:
        raise ParseError("proof has no conclusion", node.span)
    steps = []
    for index, rule, premises, fb, wb, item in pending:
        formula = el.build(fb, item)
        witness = el.build(wb, item) if wb is not None else None
        steps.append(ProofStep(index, rule, premises, formula, witness, item.span))
    return Proof(name, tuple(steps), el.build(conclusion[0], conclusion[1]), declared)


def _parse_step(el: Elaborator, item: SList):
    from .proofcheck import RULES

    if len(item) < 3 or not isinstance(item[1], Atom) or not isinstance(item[2], Atom):
        raise ParseError("(step n Rule ...) expected", item.span)
    try:
        index = int(item[1].text)
    except ValueError:
        raise ParseError("step number expected", item[1].span) from None
    rule = item[2].text
    if rule not in RULES:
        raise ParseError(f"unknown rule {rule}", item[2].span)
    premises, fb, wb = (), None, None
    for part in item.items[3:]:
        if not isinstance(part, SList):
            raise ParseError("step field expected", part.span)
        if part.head == "premises":
            try:
                premises = tuple(int(p.text) for p in part.items[1:])
            except (ValueError, AttributeError):
                raise ParseError("premises are step numbers", part.span) from None
        elif part.head == "formula" and len(part) == 2:
            fb = el.formula(part[1], {})
        elif part.head == "witness" and len(part) == 2:
            _, wb = el.term(part[1], {}, keep_lam=True)
        else:
            raise ParseError(f"unknown step field {part.head}", part.span)
    if fb is None:
        raise ParseError("step has no formula", item.span)
    return index, rule, premises, fb, wb, item


def show_proof(proof, thy: Theory) -> str:
    sig = thy.signature
    fv = {}
    for p in [proof.conclusion] + [s.formula for s in proof.steps]:
        for v in fol.free_vars(p):
            fv.setdefault(v.name, v.sort)
    for s in proof.steps:
        if s.witness is not None:
            for v in _witness_vars(s.witness):
                fv.setdefault(v.name, v.sort)
    fv.update(proof.declared)
    lines = [f"(proof {proof.name}"]
    lines += [f"  (var {x} {show_sort(s)})" for x, s in fv.items()]
    lines.append(f"  (conclusion {show_formula_in(sig, proof.conclusion, fv)})")
    for s in proof.steps:
        prem = " ".join(str(p) for p in s.premises)
        line = f"  (step {s.index} {s.rule} (premises{' ' + prem if prem else ''}) " \
               f"(formula {show_formula_in(sig, s.formula, fv)})"
        if s.witness is not None:
            line += f" (witness {show_term_in(sig, s.witness, fv)})"
        lines.append(line + ")")
    lines[-1] += ")"
    return "\n".join(lines) + "\n"


def _witness_vars(t):
    bound = set()
    while isinstance(t, Lam):
        bound.add(t.var.name)
        t = t.body
    return [v for v in fol.term_vars(t) if v.name not in bound]
