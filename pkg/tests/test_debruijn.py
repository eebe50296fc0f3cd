import pytest
from hypothesis import given, strategies as st

from sttfol import debruijn, fol, stt
from sttfol.debruijn import (
    EMPTY, DbApp, DbConst, DbContext, DbFn, DbLam, DbSort, DbVar, Index, closed_sort,
    db_beta, db_substitute, free_indices, from_debruijn, parse_db, show_db, skolem_sort_check,
    to_debruijn, typecheck_db,
)
from sttfol.errors import ArityMismatch, DanglingIndex, NonEmptyContextSort, ParseError, SortMismatch
from sttfol.fol import Signature
from sttfol.gen import DbGen, GenConfig, SttGen, random_type
from sttfol.stt import IOTA, Abs, App, Arrow, Var, arrow
from sttfol.stt_syntax import parse_stt_file

from conftest import read_fixture

seeds = st.integers(0, 2**32 - 1)
I2I = Arrow(IOTA, IOTA)
X_TY = Arrow(I2I, IOTA)
Y_TY = arrow(X_TY, IOTA, IOTA)


def nested_term():
    inner = Abs("z", IOTA, stt.apply(Var("y"), Var("x"), Var("z")))
    return Abs("x", X_TY, Abs("y", Y_TY, App(Var("x"), inner)))


def test_closed_example():
    t, ctx = to_debruijn(nested_term())
    assert show_db(t) == r"\.\.(2 \.(2 3 1))"
    assert ctx == EMPTY
    assert stt.alpha_eq(from_debruijn(t), nested_term())


def test_open_example_context():
    f = parse_stt_file(read_fixture("nested-open.stt"))
    t, ctx = to_debruijn(f.term, f.ctx)
    assert show_db(t) == r"\.(2 \.(2 3 1))"
    assert str(ctx) == "[(i->i)->i]"


def test_single_binder():
    t, _ = to_debruijn(Abs("x", IOTA, Var("x")))
    assert t == DbLam(IOTA, Index(1))
    assert stt.alpha_eq(from_debruijn(t), Abs("x", IOTA, Var("x")))


def test_dangling_index():
    with pytest.raises(DanglingIndex):
        from_debruijn(Index(1))
    with pytest.raises(DanglingIndex):
        typecheck_db(DbLam(IOTA, Index(2)))


def test_typecheck_examples():
    t, ctx = parse_db(read_fixture("nested-open.db"))
    assert stt.show_type(typecheck_db(t, ctx)) == "(((i->i)->i)->i->i)->i"
    assert typecheck_db(DbLam(IOTA, Index(1))) == I2I


def test_substitution_examples():
    c = DbConst("c", IOTA)
    assert db_substitute(Index(1), 1, c) == c
    assert db_beta(DbApp(DbLam(IOTA, Index(1)), c)) == c
    # the substituted term is shifted under a binder
    out = db_substitute(DbLam(IOTA, Index(2)), 1, Index(3))
    assert out == DbLam(IOTA, Index(4))


def test_skolem_sorts():
    sig = Signature()
    good = fol.fn("f", [closed_sort(IOTA)], closed_sort(IOTA), skolem=True)
    skolem_sort_check(sig, good)
    skolem_sort_check(sig, fol.fn("c", [], closed_sort(IOTA), skolem=True))
    bad = fol.fn("f", [DbSort(DbContext((IOTA,)), IOTA)], closed_sort(IOTA), skolem=True)
    with pytest.raises(NonEmptyContextSort) as info:
        skolem_sort_check(sig, bad)
    assert info.value.position == 1
    late = fol.fn("g", [closed_sort(IOTA), closed_sort(IOTA), DbSort(DbContext((I2I,)), IOTA)],
                  closed_sort(IOTA), skolem=True)
    with pytest.raises(NonEmptyContextSort) as info:
        skolem_sort_check(sig, late)
    assert info.value.position == 3
    res = fol.fn("h", [closed_sort(IOTA)], DbSort(DbContext((IOTA,)), IOTA), skolem=True)
    with pytest.raises(NonEmptyContextSort) as info:
        skolem_sort_check(sig, res)
    assert info.value.position == "result"
    with pytest.raises(SortMismatch):
        skolem_sort_check(sig, fol.fn("k", [IOTA], IOTA, skolem=True))


def test_skolem_arguments_are_their_own_scope():
    sk = fol.fn("sk0", [closed_sort(IOTA)], closed_sort(IOTA), skolem=True)
    with pytest.raises(ArityMismatch):
        DbFn(sk, ())
    # a lambda-bound index cannot reach the argument, a quantified variable can
    ok = DbLam(IOTA, DbFn(sk, (DbVar("x", IOTA),)))
    assert typecheck_db(ok) == I2I
    assert free_indices(ok) == frozenset()
    with pytest.raises(DanglingIndex):
        typecheck_db(DbLam(IOTA, DbFn(sk, (Index(1),))))


def test_parse_errors_carry_spans():
    with pytest.raises(ParseError) as info:
        parse_db(r"\:i.(1 $)")
    assert info.value.span is not None
    with pytest.raises(ParseError):
        parse_db(r"\.1")


def test_show_parse_roundtrip_annotated():
    t, ctx = parse_db(read_fixture("nested-open.db"))
    again, _ = parse_db(show_db(t, annotate=True))
    assert again == t


@given(seeds)
def test_roundtrip_and_typing_agreement(seed):
    g = SttGen(GenConfig(seed=seed))
    ty = random_type(g.rng, 2)
    t = g.term(ty, {}, 14)
    ctx = g.context()
    db, dctx = to_debruijn(t, ctx)
    assert typecheck_db(db, dctx) == stt.typecheck_stt(ctx, t)
    assert stt.alpha_eq(from_debruijn(db, dctx), t)


@given(seeds)
def test_substitution_agrees_with_named(seed):
    g = SttGen(GenConfig(seed=seed))
    a, b = random_type(g.rng, 1), random_type(g.rng, 2)
    t = g.term(b, {"x0": a}, 12)
    u = g.term(a, {}, 6)
    ctx = g.context()
    named = to_debruijn(stt.substitute(t, "x0", u), ctx)[0]
    t_db = to_debruijn(t, {"x0": a, **ctx})[0]
    u_db = to_debruijn(u, ctx)[0]
    assert db_substitute(t_db, 1, u_db) == named


@given(seeds)
def test_beta_agrees_with_named(seed):
    g = SttGen(GenConfig(seed=seed))
    t = g.term(random_type(g.rng, 2), {}, 14)
    ctx = g.context()
    assert debruijn.db_normalize(to_debruijn(t, ctx)[0]) == to_debruijn(stt.beta_normalize(t), ctx)[0]


@given(seeds)
def test_admitted_closed_terms_have_no_free_indices(seed):
    gen = DbGen(seed)
    ctx = gen.context()
    ty = random_type(gen.rng, 1)
    t = gen.term(ty, (), ctx, 8)
    try:
        debruijn.admit(t, closed_sort(ty))
    except DanglingIndex:
        assert free_indices(t)
    else:
        assert not free_indices(t)
