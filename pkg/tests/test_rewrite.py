import pytest
from hypothesis import given, strategies as st

from sttfol import fol, holsk, stt
from sttfol.errors import FuelExhausted
from sttfol.fol import FnApp, Var
from sttfol.gen import HolSkGen
from sttfol.rewrite import (
    HOLSK_RULES, default_system, equal_modulo, is_normal, normalize, normalize_traced,
)
from sttfol.stt import IOTA, O

seeds = st.integers(0, 2**32 - 1)
a, b = FnApp(fol.const("a", IOTA)), FnApp(fol.const("b", IOTA))
pa, pb = FnApp(fol.const("pa", O)), FnApp(fol.const("pb", O))
K = holsk.K(IOTA, IOTA)


def test_k_rule():
    assert normalize(None, holsk.app_n(K, a, b)) == a


def test_conjunction_rule():
    p = holsk.eps(holsk.app_n(holsk.dotted("and."), pa, pb))
    assert normalize(None, p) == fol.And(holsk.eps(pa), holsk.eps(pb))


def test_negated_top_takes_two_steps():
    p = holsk.eps(holsk.app(holsk.dotted("not."), holsk.dotted("top.")))
    nf, steps = normalize_traced(None, p)
    assert nf == fol.Not(fol.Top())
    assert [r for r, _, _ in steps] == ["not.", "top."]


def test_quantifier_rule_introduces_binder():
    P = Var("P", stt.Arrow(IOTA, O))
    nf = normalize(None, holsk.eps(holsk.app(FnApp(holsk.all_sym(IOTA)), P)))
    assert isinstance(nf, fol.Forall) and nf.sort == IOTA
    assert nf.body == holsk.eps(holsk.app(P, Var(nf.var, IOTA)))


def test_equal_modulo_examples():
    assert equal_modulo(None, holsk.app_n(K, a, b), a)
    assert not equal_modulo(None, a, b)
    c = stt.Const("c", IOTA)
    redex = stt.App(stt.Abs("x", IOTA, stt.Var("x")), c)
    assert equal_modulo(None, holsk.translate_stt(redex), holsk.translate_stt(c))


def test_fuel_limit():
    t = holsk.app_n(K, holsk.app_n(K, a, b), b)
    with pytest.raises(FuelExhausted):
        normalize(None, t, fuel=1)
    assert normalize(None, t, fuel=2) == a


def test_rules_left_linear():
    for r in HOLSK_RULES:
        seen = []

        def walk(p):
            if isinstance(p, str):
                seen.append(p)
            else:
                for q in p[1:]:
                    walk(q)
        walk(r.lhs)
        assert len(seen) == len(set(seen)), r.name
        assert r.pattern_vars("rhs") <= r.pattern_vars("lhs"), r.name


def test_unknown_strategy():
    with pytest.raises(ValueError):
        normalize(None, a, strategy="sideways")


@given(seeds)
def test_strategies_agree(seed):
    gen = HolSkGen(seed)
    x = gen.sized_formula() if seed % 2 else gen.sized_term()
    out = normalize(None, x)
    assert fol.canonical(out) == fol.canonical(normalize(None, x, strategy="innermost"))
    assert is_normal(None, out)
    assert normalize(None, out) == out


@given(seeds)
def test_sort_preserved(seed):
    t = HolSkGen(seed).sized_term()
    assert normalize(None, t).sort == t.sort


@given(seeds)
def test_trace_matches_normal_form(seed):
    x = HolSkGen(seed, max_size=20).sized_formula()
    nf, steps = normalize_traced(None, x)
    assert fol.canonical(nf) == fol.canonical(normalize(None, x))
    for _, before, after in steps:
        assert before != after
    system = default_system()
    assert system.step(nf) is None
