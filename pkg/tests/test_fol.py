import pytest
from hypothesis import given, strategies as st

from sttfol import fol, holsk
from sttfol.errors import ArityMismatch, SortMismatch, UnknownSymbol
from sttfol.fol import Equal, FnApp, Forall, PredApp, PredSym, Signature, Var
from sttfol.gen import HolSkGen, signature_for
from sttfol.stt import IOTA, O, Arrow

I2I = Arrow(IOTA, IOTA)
seeds = st.integers(0, 2**32 - 1)

c = fol.const("c", IOTA)
g = fol.const("g", I2I)
f_sk = fol.fn("f", [IOTA], IOTA, skolem=True)
Q = PredSym("Q", (IOTA,))
Q2 = PredSym("Q2", (IOTA, IOTA))


def sig():
    s = holsk.HolSkSignature([c, g, f_sk], [Q, Q2])
    s.family(holsk.alpha_sym(IOTA, IOTA))
    return s


def test_alpha_application_has_codomain_sort():
    t = holsk.app(FnApp(g), FnApp(c))
    assert t.sym.name == "alpha"
    assert fol.wf_term(sig(), {}, t) == IOTA


def test_partial_skolem_application_unrepresentable():
    with pytest.raises(ArityMismatch):
        FnApp(f_sk)
    with pytest.raises(SortMismatch):
        FnApp(f_sk, (FnApp(g),))


def test_constant_sort():
    assert fol.wf_term(sig(), {}, FnApp(c)) == IOTA


def test_wf_formula_examples():
    s = holsk.HolSkSignature()
    p = Var("p", O)
    fol.wf_formula(s, {}, Forall("p", O, fol.Implies(holsk.eps(p), holsk.eps(p))))
    with pytest.raises(SortMismatch):
        holsk.eps(FnApp(c))
    with pytest.raises(SortMismatch):
        Equal(FnApp(c), FnApp(g))


def test_wf_rejects_undeclared_and_misranked():
    s = Signature([c])
    with pytest.raises(UnknownSymbol):
        fol.wf_term(s, {}, FnApp(fol.const("d", IOTA)))
    with pytest.raises(SortMismatch):
        fol.wf_term(Signature([fol.fn("f", [IOTA], IOTA)]), {}, FnApp(f_sk, (FnApp(c),)))


def test_subst_examples():
    y, x = Var("y", IOTA), Var("x", IOTA)
    assert fol.subst_fol(PredApp(Q, (y,)), y, FnApp(c)) == PredApp(Q, (FnApp(c),))
    fx = FnApp(f_sk, (x,))
    out = fol.subst_fol(Forall("x", IOTA, PredApp(Q2, (x, y))), "y", fx)
    assert isinstance(out, Forall) and out.var != "x"
    assert out.body == PredApp(Q2, (Var(out.var, IOTA), fx))


def test_subst_skolem_matrix():
    x, y = Var("x", IOTA), Var("y", IOTA)
    body = PredApp(Q2, (x, y))
    assert fol.subst_fol(body, y, FnApp(f_sk, (x,))) == PredApp(Q2, (x, FnApp(f_sk, (x,))))


def test_signature_extension_and_collision():
    s = Signature([c]).freeze()
    bigger = s.extended(fol.const("d", IOTA))
    assert bigger.lookup_function("d") is not None and s.lookup_function("d") is None
    with pytest.raises(Exception):
        s.extended(fol.const("c", IOTA))
    with pytest.raises(RuntimeError):
        s.add_function(fol.const("e", IOTA))


def test_canonical_alpha():
    a = Forall("x", IOTA, PredApp(Q, (Var("x", IOTA),)))
    b = Forall("z", IOTA, PredApp(Q, (Var("z", IOTA),)))
    assert fol.alpha_eq(a, b) and a != b


@given(seeds)
def test_wf_term_deterministic(seed):
    gen = HolSkGen(seed)
    t = gen.sized_term()
    s = signature_for(t)
    ctx = {v.name: v.sort for v in fol.term_vars(t)}
    first = fol.wf_term(s, ctx, t)
    assert first == fol.wf_term(s, ctx, t) == t.sort


@given(seeds)
def test_subst_preserves_well_formedness(seed):
    gen = HolSkGen(seed)
    p = gen.sized_formula(env={"w": IOTA})
    t = gen.sized_term(IOTA)
    s = signature_for(p, t)
    ctx = {v.name: v.sort for v in fol.free_vars(p) | fol.term_vars(t)}
    fol.wf_formula(s, ctx, p)
    q = fol.subst_fol(p, Var("w", IOTA), t)
    fol.wf_formula(s, ctx, q)
    assert "w" not in fol.free_names(q) or "w" in fol.free_names(t)


@given(seeds)
def test_builder_never_yields_partial_application(seed):
    # every FnApp produced by the generators carries exactly its rank's arguments
    gen = HolSkGen(seed)
    for sub in fol.subterms(gen.sized_term()):
        if isinstance(sub, FnApp):
            assert len(sub.args) == sub.sym.arity
            assert all(a.sort == s for a, s in zip(sub.args, sub.sym.rank.args))
