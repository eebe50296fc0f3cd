"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line with its measured
runtime, then asserts.  Run directly with ``python tests/test_acceptance.py``
for the summary alone.
"""

import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

from sttfol import fol, formats, holsk, stt  # noqa: E402
from sttfol.debruijn import (  # noqa: E402
    DbContext, DbSort, closed_sort, from_debruijn, parse_db, show_db, skolem_sort_check,
    to_debruijn, typecheck_db,
)
from sttfol.errors import LogicError, NonEmptyContextSort, SkolemCapture  # noqa: E402
from sttfol.fol import FnApp, Var  # noqa: E402
from sttfol.proofcheck import axiom_validation_proof, check_proof  # noqa: E402
from sttfol.skolem import SkolemizationMode, skolemize_axiom  # noqa: E402
from sttfol.stt import IOTA, O, Abs, App, Arrow, arrow  # noqa: E402
from sttfol.suites import (  # noqa: E402
    SuiteConfig, run_beta_simulation, run_db_admission, run_lift, run_rewrite_health,
)

from conftest import read_fixture  # noqa: E402

I2I = Arrow(IOTA, IOTA)


def _line(number, title, ok, seconds, limit, detail=""):
    status = "PASS" if ok and seconds < limit else "FAIL"
    msg = f"[{status}] criterion {number}: {title} ({seconds:.2f}s, limit {limit:g}s)"
    return status == "PASS", msg + (f": {detail}" if detail else "")


def _report(capsys, number, title, fn, limit):
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as e:  # a crash is a failure of the criterion, reported like one
        ok, detail = False, f"{type(e).__name__}: {e}"
    passed, msg = _line(number, title, ok, time.perf_counter() - t0, limit, detail)
    if capsys is None:
        print(msg)
    else:
        with capsys.disabled():
            print("\n" + msg)
    return passed, msg


# ---------------------------------------------------------------------------


def criterion_1():
    x_ty = Arrow(I2I, IOTA)
    y_ty = arrow(x_ty, IOTA, IOTA)
    inner = Abs("z", IOTA, stt.apply(stt.Var("y"), stt.Var("x"), stt.Var("z")))
    t = Abs("x", x_ty, Abs("y", y_ty, App(stt.Var("x"), inner)))
    db, _ = to_debruijn(t)
    shown = show_db(db)
    back = from_debruijn(db)
    return shown == r"\.\.(2 \.(2 3 1))" and stt.alpha_eq(back, t), shown


def criterion_2():
    t, ctx = parse_db(read_fixture("nested-open.db"))
    shown = stt.show_type(typecheck_db(t, ctx))
    return str(ctx) == "[(i->i)->i]" and shown == "(((i->i)->i)->i->i)->i", f"{ctx} gives {shown}"


def criterion_3():
    thy = formats.load_theory(read_fixture("choice.thy")).theory
    x = Var("x", IOTA)
    miller = skolemize_axiom(thy, "ac-premise", SkolemizationMode.MILLER)
    f = miller.introduced[0].symbol
    if f.rank != fol.Rank((IOTA,), IOTA) or not f.skolem:
        return False, f"Miller symbol has rank {fol.show_rank(f.rank)}"
    try:
        holsk.bracket_abstract(x, FnApp(f, (x,)))
        return False, "bracket abstraction over a Miller Skolem argument succeeded"
    except SkolemCapture:
        pass
    naive = skolemize_axiom(thy, "ac-premise", SkolemizationMode.NAIVE)
    g = naive.introduced[0].symbol
    if g.rank != fol.Rank((), I2I):
        return False, f"naive symbol has rank {fol.show_rank(g.rank)}"
    holsk.bracket_abstract(x, holsk.app(FnApp(g), x))
    src = read_fixture("proofs/choice.prf")
    check_proof(naive.theory, formats.load_proof(src, naive.theory))
    try:
        check_proof(miller.theory, formats.load_proof(src, miller.theory))
        return False, "Miller-mode theory accepted the choice proof"
    except SkolemCapture as e:
        step = next(s for s in formats.load_proof(src, miller.theory).steps if s.rule == "ExistsI")
        at_witness = getattr(e, "index", None) == step.index and getattr(e, "span", None) == step.span
        return at_witness, f"naive accepts; Miller raises SkolemCapture at step {getattr(e, 'index', '?')}"


def _suite(fn, n, **kw):
    def run():
        res = fn(SuiteConfig(n=n, **kw))
        return res.passed, res.summary()
    return run


def criterion_7():
    proofs = [("empty.thy", "proofs/refl.prf"), ("instance-miller.thy", "proofs/instance.prf")]
    for thy_name, proof_name in proofs:
        thy = formats.load_theory(read_fixture(thy_name)).theory
        check_proof(thy, formats.load_proof(read_fixture(proof_name), thy))
    thy = formats.load_theory(read_fixture("empty.thy")).theory
    sig = thy.signature
    for s in (holsk.k_sym(IOTA, IOTA), holsk.s_sym(IOTA, IOTA, IOTA), holsk.eq_sym(IOTA),
              holsk.all_sym(IOTA), holsk.ex_sym(IOTA)):
        sig.family(s)
    axioms = holsk.generate_axioms(sig)
    for name, ax in axioms:
        check_proof(fol.Theory(sig, ()), axiom_validation_proof(name, ax))
    from test_proofcheck import MUTANTS, check
    rejected = 0
    for _, thy_name, src, _ in MUTANTS:
        try:
            check(thy_name, src)
        except LogicError:
            rejected += 1
    ok = rejected == len(MUTANTS) and len(MUTANTS) >= 20
    return ok, f"{len(axioms)} axioms validated, {rejected}/{len(MUTANTS)} mutants rejected"


def criterion_8():
    sig = fol.Signature()
    skolem_sort_check(sig, fol.fn("f", [closed_sort(IOTA)], closed_sort(IOTA), skolem=True))
    skolem_sort_check(sig, fol.fn("f2", [closed_sort(IOTA), closed_sort(I2I)], closed_sort(O), skolem=True))
    skolem_sort_check(sig, fol.fn("c", [], closed_sort(IOTA), skolem=True))
    open_sort = DbSort(DbContext((IOTA,)), IOTA)
    cases = [([open_sort, closed_sort(IOTA)], closed_sort(IOTA), 1),
             ([closed_sort(IOTA), open_sort], closed_sort(IOTA), 2),
             ([closed_sort(IOTA)], open_sort, "result")]
    for args, res, where in cases:
        try:
            skolem_sort_check(sig, fol.fn("bad", args, res, skolem=True))
            return False, f"rank with a non-empty context at {where} accepted"
        except NonEmptyContextSort as e:
            if e.position != where:
                return False, f"diagnostic points at {e.position}, expected {where}"
    res = run_db_admission(SuiteConfig(n=500))
    return res.passed, res.summary()


CRITERIA = [
    (1, "de Bruijn form of the closed example and round trip", criterion_1, 1),
    (2, "typing of the open annotated example", criterion_2, 1),
    (3, "Miller versus naive skolemization on the choice premise", criterion_3, 2),
    (4, "beta simulation on 1000 redexes", _suite(run_beta_simulation, 1000, max_size=30), 60),
    (5, "eps-lifting soundness on 500 formulas", _suite(run_lift, 500), 30),
    (6, "rewrite strategies agree on 1000 inputs", _suite(run_rewrite_health, 1000, max_size=40), 60),
    (7, "proof fixtures check and every mutant is rejected", criterion_7, 10),
    (8, "Skolem sorts have empty contexts", criterion_8, 60),
]


@pytest.mark.parametrize("number,title,fn,limit", CRITERIA, ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(number, title, fn, limit, capsys):
    passed, msg = _report(capsys, number, title, fn, limit)
    assert passed, msg


if __name__ == "__main__":
    results = [_report(None, *c) for c in CRITERIA]
    sys.exit(0 if all(p for p, _ in results) else 1)
