import pytest
from hypothesis import given, strategies as st

from sttfol import fol, holsk, stt
from sttfol.errors import NotAbstractable, SkolemCapture, UnsupportedAtom
from sttfol.fol import FnApp, Var
from sttfol.gen import GenConfig, HolSkGen, SttGen, random_type
from sttfol.rewrite import normalize
from sttfol.stt import IOTA, O, Arrow

I2I = Arrow(IOTA, IOTA)
seeds = st.integers(0, 2**32 - 1)
c, d = FnApp(fol.const("c", IOTA)), FnApp(fol.const("d", IOTA))
x = Var("x", IOTA)


def axioms_of(sig):
    return dict(holsk.generate_axioms(sig))


def test_k_axiom():
    sig = holsk.HolSkSignature()
    sig.family(holsk.k_sym(IOTA, IOTA))
    ax = axioms_of(sig)["K[i,i]"]
    y = Var("y", IOTA)
    assert ax == fol.forall([x, y], fol.Equal(holsk.app_n(holsk.K(IOTA, IOTA), x, y), x))


def test_connective_axioms():
    ax = axioms_of(holsk.HolSkSignature())
    p, q = Var("x", O), Var("y", O)
    conj = holsk.eps(holsk.app_n(holsk.dotted("and."), p, q))
    assert ax["and."] == fol.forall([p, q], fol.Iff(conj, fol.And(holsk.eps(p), holsk.eps(q))))
    assert ax["top."] == fol.Iff(holsk.eps(holsk.dotted("top.")), fol.Top())


def test_identity_combinator_shape():
    u = holsk.bracket_abstract(x, x)
    skk = holsk.app_n(holsk.S(IOTA, I2I, IOTA), holsk.K(IOTA, I2I), holsk.K(IOTA, IOTA))
    assert u == skk
    assert normalize(None, holsk.app(u, c)) == c


def test_constant_body_uses_k():
    u = holsk.bracket_abstract(x, c)
    assert u == holsk.app(holsk.K(IOTA, IOTA), c)
    assert normalize(None, holsk.app(u, d)) == c


def test_skolem_argument_blocks_abstraction():
    f = fol.fn("f", [IOTA], IOTA, skolem=True)
    with pytest.raises(SkolemCapture) as info:
        holsk.bracket_abstract(x, FnApp(f, (x,)))
    assert info.value.symbol == "f" and info.value.variable == "x"


def test_plain_ranked_symbol_not_abstractable():
    g = fol.fn("g", [IOTA], IOTA)
    with pytest.raises(NotAbstractable):
        holsk.bracket_abstract(x, FnApp(g, (x,)))


def test_lift_examples():
    a, b = Var("a", O), Var("b", O)
    assert holsk.lift_prop(fol.Top()) == holsk.dotted("top.")
    assert holsk.lift_prop(fol.And(holsk.eps(a), holsk.eps(b))) == holsk.app_n(holsk.dotted("and."), a, b)
    xf = Var("x", Arrow(IOTA, O))
    body = fol.Forall("y", IOTA, holsk.eps(holsk.app(xf, Var("y", IOTA))))
    lifted = holsk.lift_prop(body)
    assert lifted.args[0] == FnApp(holsk.all_sym(IOTA))
    # no eta: the abstraction of alpha(x, y) over y stays an S-term
    assert lifted.args[1] != xf
    assert fol.alpha_eq(normalize(None, holsk.eps(lifted)), body)


def test_lift_rejects_foreign_predicates_and_iff():
    P = fol.PredSym("P", (IOTA,))
    with pytest.raises(UnsupportedAtom):
        holsk.lift_prop(fol.PredApp(P, (c,)))
    with pytest.raises(UnsupportedAtom):
        holsk.lift_prop(fol.Iff(fol.Top(), fol.Top()))


def test_translate_examples():
    ident = holsk.translate_stt(stt.Abs("x", IOTA, stt.Var("x")))
    assert ident == holsk.identity(IOTA)
    assert holsk.translate_stt(stt.Const("c", IOTA)) == c
    p = stt.Var("p")
    refl = holsk.translate_prop(stt.Forall("p", O, stt.Implies(p, p)))
    pv = Var("p", O)
    assert refl == fol.Forall("p", O, fol.Implies(holsk.eps(pv), holsk.eps(pv)))


def test_lam_realize():
    lam = holsk.Lam(x, holsk.app(Var("g", I2I), x))
    assert lam.sort == I2I
    assert holsk.realize(lam) == holsk.bracket_abstract(x, lam.body)


@given(seeds)
def test_bracket_abstraction_sound(seed):
    gen = HolSkGen(seed)
    t = gen.sized_term(env={"w": IOTA})
    w = Var("w", IOTA)
    u = holsk.bracket_abstract(w, t)
    assert u.sort == Arrow(IOTA, t.sort)
    assert "w" not in fol.free_names(u)
    fresh = FnApp(fol.const("fresh_w", IOTA))
    assert normalize(None, holsk.app(u, fresh)) == normalize(None, fol.subst_term(t, "w", fresh))


@given(seeds)
def test_translation_preserves_sorts(seed):
    g = SttGen(GenConfig(seed=seed))
    ty = random_type(g.rng, 2)
    t = g.term(ty, {}, 12)
    assert holsk.translate_stt(t, g.context()).sort == ty


@given(seeds)
def test_lift_sound(seed):
    p = HolSkGen(seed).sized_formula(lifted=True)
    left = normalize(None, holsk.eps(holsk.lift_prop(p)))
    assert fol.canonical(left) == fol.canonical(normalize(None, p))


def test_beta_simulation_needs_restriction():
    # x heads an application under a binder and u is an abstraction: beta leaves
    # fun y -> y, while rewriting cannot reach the redex inside the compiled S-term
    from sttfol.suites import beta_simulation_case
    y = stt.Var("y")
    t = stt.Abs("y", IOTA, stt.App(stt.Var("x"), y))
    u = stt.Abs("z", IOTA, stt.Var("z"))
    left, right = beta_simulation_case("x", I2I, t, u, {})
    assert left != right
    assert fol.term_size(left) > fol.term_size(right)
