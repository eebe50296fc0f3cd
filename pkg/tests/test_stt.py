import pytest
from hypothesis import given, strategies as st

from sttfol import stt
from sttfol.errors import NonPropositionBody, TypeMismatch, UnboundVariable
from sttfol.gen import GenConfig, SttGen, random_type
from sttfol.stt import IOTA, O, Abs, App, Arrow, Const, Var, arrow
from sttfol.stt_syntax import parse_stt_file, parse_term, parse_type, show_term

from conftest import read_fixture

I2I = Arrow(IOTA, IOTA)
X_TY = Arrow(I2I, IOTA)
Y_TY = arrow(X_TY, IOTA, IOTA)

seeds = st.integers(0, 2**32 - 1)


def y_term():
    # fun y -> x (fun z -> y x z)
    return Abs("y", Y_TY, App(Var("x"), Abs("z", IOTA, stt.apply(Var("y"), Var("x"), Var("z")))))


def test_variable_lookup():
    assert stt.typecheck_stt({"x": IOTA}, Var("x")) == IOTA


def test_open_term_typechecks_under_higher_type():
    assert stt.typecheck_stt({"x": X_TY}, y_term()) == Arrow(Y_TY, IOTA)
    assert stt.show_type(Arrow(Y_TY, IOTA)) == "(((i->i)->i)->i->i)->i"


def test_open_term_rejected_at_base_type():
    with pytest.raises(TypeMismatch):
        stt.typecheck_stt({"x": IOTA}, y_term())


def test_unbound_and_non_proposition():
    with pytest.raises(UnboundVariable):
        stt.typecheck_stt({}, Var("nope"))
    with pytest.raises(NonPropositionBody):
        stt.typecheck_stt({}, stt.Forall("x", IOTA, Var("x")))


def test_substitute_base_and_capture():
    assert stt.substitute(Var("x"), "x", Var("y")) == Var("y")
    out = stt.substitute(Abs("y", IOTA, Var("x")), "x", Var("y"))
    assert isinstance(out, Abs) and out.var != "y" and out.body == Var("y")


def test_substitute_skolem_shape():
    f = Const("f", I2I)
    P = Const("P", arrow(IOTA, IOTA, O))
    body = stt.apply(P, Var("x"), Var("y"))
    assert stt.substitute(body, "y", App(f, Var("x"))) == stt.apply(P, Var("x"), App(f, Var("x")))


def test_beta_examples():
    c = Const("c", IOTA)
    assert stt.beta_normalize(App(Abs("x", IOTA, Var("x")), c)) == c
    f = Const("f", I2I)
    P = Const("P", arrow(IOTA, IOTA, O))
    t = stt.apply(P, Var("x"), App(Abs("z", IOTA, App(f, Var("z"))), Var("x")))
    assert stt.beta_normalize(t) == stt.apply(P, Var("x"), App(f, Var("x")))
    already = stt.apply(P, Var("x"), Var("x"))
    assert stt.beta_normalize(already) == already


def test_alpha_eq():
    assert stt.alpha_eq(Abs("x", IOTA, Var("x")), Abs("z", IOTA, Var("z")))
    assert not stt.alpha_eq(Abs("x", IOTA, Var("x")), Abs("z", IOTA, Var("w")))


def test_parser_fixtures():
    f = parse_stt_file(read_fixture("nested-open.stt"))
    assert stt.typecheck_stt(f.ctx, f.term) == Arrow(Y_TY, IOTA)
    assert parse_type("(i -> i) -> i") == X_TY


@given(seeds)
def test_subject_reduction_and_idempotence(seed):
    g = SttGen(GenConfig(seed=seed))
    ty = random_type(g.rng, 2)
    t = g.term(ty, {}, 14)
    ctx = g.context()
    assert stt.typecheck_stt(ctx, t) == ty
    nf = stt.beta_normalize(t)
    assert stt.typecheck_stt(ctx, nf) == ty
    assert stt.is_beta_normal(nf)
    assert stt.beta_normalize(nf) == nf


@given(seeds)
def test_substitution_lemma(seed):
    g = SttGen(GenConfig(seed=seed))
    a, b = random_type(g.rng, 1), random_type(g.rng, 2)
    t = g.term(b, {"x0": a}, 12)
    u = g.term(a, {}, 6)
    ctx = g.context()
    assert stt.typecheck_stt({**ctx, "x0": a}, t) == b
    assert stt.typecheck_stt(ctx, stt.substitute(t, "x0", u)) == b


@given(seeds)
def test_print_parse_roundtrip(seed):
    g = SttGen(GenConfig(seed=seed))
    t = g.term(random_type(g.rng, 2), {}, 14)
    back = parse_term(show_term(t), g.cfg.consts)
    assert stt.alpha_eq(back, t)
