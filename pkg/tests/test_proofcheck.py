import dataclasses

import pytest
from hypothesis import given, strategies as st

from sttfol import fol, formats, holsk
from sttfol.errors import (
    BadStep, EigenvariableViolation, IllFormedAxiom, LogicError, NonClosedAxiom, NotModuloEqual,
    SkolemCapture,
)
from sttfol.fol import Var
from sttfol.gen import HolSkGen
from sttfol.proofcheck import axiom_validation_proof, check_proof, check_theory
from sttfol.rewrite import normalize
from sttfol.stt import IOTA, O, Arrow

from conftest import read_fixture

seeds = st.integers(0, 2**32 - 1)


def theory(name):
    return formats.load_theory(read_fixture(name)).theory


def check(thy_name, proof_src):
    thy = theory(thy_name)
    check_proof(thy, formats.load_proof(proof_src, thy))


VALID = [
    ("empty.thy", "proofs/refl.prf"),
    ("instance-miller.thy", "proofs/instance.prf"),
    ("choice-naive.thy", "proofs/choice.prf"),
    ("witness.thy", "proofs/witness.prf"),
    ("witness-miller.thy", "proofs/witness-sk.prf"),
]


@pytest.mark.parametrize("thy_name,proof_name", VALID)
def test_fixture_proofs_check(thy_name, proof_name):
    check(thy_name, read_fixture(proof_name))


def test_choice_rejected_under_miller():
    with pytest.raises(SkolemCapture):
        check("choice-miller.thy", read_fixture("proofs/choice.prf"))


def test_conservativity_witness():
    # the existential elimination in the original theory becomes a Skolem instance
    check("witness.thy", read_fixture("proofs/witness.prf"))
    check("witness-miller.thy", read_fixture("proofs/witness-sk.prf"))
    with pytest.raises(NotModuloEqual):
        check("witness.thy", read_fixture("proofs/witness-sk.prf").replace("sk0", "w"))


@pytest.mark.parametrize("thy_name,proof_name", VALID)
def test_skolem_renaming_is_harmless(thy_name, proof_name):
    thy_src = read_fixture(thy_name).replace("sk0", "sk1")
    proof_src = read_fixture(proof_name).replace("sk0", "sk1")
    thy = formats.load_theory(thy_src).theory
    check_proof(thy, formats.load_proof(proof_src, thy))


def test_theory_checks():
    for name in ("empty.thy", "choice.thy", "choice-miller.thy", "choice-naive.thy", "instance.thy"):
        check_theory(theory(name))
    sig = holsk.HolSkSignature()
    for s in (holsk.k_sym(IOTA, IOTA), holsk.s_sym(IOTA, IOTA, IOTA), holsk.alpha_sym(IOTA, O),
              holsk.alpha_sym(Arrow(IOTA, IOTA), IOTA), holsk.eq_sym(IOTA)):
        sig.family(s)
    check_theory(holsk.holsk_theory(sig))
    x = Var("x", IOTA)
    P = fol.PredSym("P", (IOTA,))
    open_thy = fol.Theory(fol.Signature(predicates=[P]), (("open", fol.PredApp(P, (x,))),))
    with pytest.raises(NonClosedAxiom):
        check_theory(open_thy)
    Q = fol.PredSym("Q", (IOTA,))
    undeclared = fol.Theory(fol.Signature(predicates=[P]),
                            (("bad", fol.Forall("x", IOTA, fol.PredApp(Q, (x,)))),))
    with pytest.raises(IllFormedAxiom):
        check_theory(undeclared)


def test_generated_axioms_validate_by_rewriting():
    thy = theory("empty.thy")
    sig = thy.signature
    for s in (holsk.k_sym(IOTA, IOTA), holsk.s_sym(IOTA, IOTA, O), holsk.eq_sym(IOTA),
              holsk.all_sym(IOTA), holsk.ex_sym(O)):
        sig.family(s)
    axioms = holsk.generate_axioms(sig)
    assert {n.split("[")[0] for n, _ in axioms} >= {"S", "K", "eq.", "top.", "bot.", "not.", "and.",
                                                    "or.", "imp.", "all.", "ex."}
    bare = fol.Theory(sig, ())
    for name, ax in axioms:
        proof = axiom_validation_proof(name, ax)
        assert all(s.rule != "Axiom" for s in proof.steps)
        assert any(s.rule == "ConvModulo" for s in proof.steps)
        check_proof(bare, proof)


# ---------------------------------------------------------------------------
# Mutants: every one is invalid by construction and must be rejected

REFL = read_fixture("proofs/refl.prf")
INSTANCE = read_fixture("proofs/instance.prf")
WITNESS = read_fixture("proofs/witness.prf")
CHOICE = read_fixture("proofs/choice.prf")


def _edit(src, old, new):
    assert old in src, old
    return src.replace(old, new)


MUTANTS = [
    ("drop-first-step", "empty.thy", _edit(REFL, "(step 1 Assume (premises) (formula (eps p)))", ""), BadStep),
    ("conclusion-bot", "empty.thy", _edit(REFL, "(conclusion (forall p o (imp (eps p) (eps p))))",
                                          "(conclusion false)"), NotModuloEqual),
    ("open-assumption", "empty.thy",
     "(proof m (conclusion (eps p)) (step 1 Assume (premises) (formula (eps p))))", BadStep),
    ("eigenvariable-sort", "empty.thy",
     _edit(REFL, "(witness p)", "(witness q)").replace("(proof refl", "(proof refl (var q i)"),
     EigenvariableViolation),
    ("eigenvariable-not-variable", "empty.thy", _edit(REFL, "(witness p)", "(witness top.)"),
     EigenvariableViolation),
    ("imp-wrong-consequent", "empty.thy",
     _edit(REFL, "(step 2 ImpI (premises 1 1) (formula (imp (eps p) (eps p))))",
           "(step 2 ImpI (premises 1 1) (formula (imp (eps p) (not (eps p)))))"), NotModuloEqual),
    ("forward-reference", "empty.thy", _edit(REFL, "(premises 1 1)", "(premises 3 3)"), BadStep),
    ("wrong-arity", "empty.thy", _edit(REFL, "(premises 1 1)", "(premises 1)"), BadStep),
    ("duplicate-step", "empty.thy", _edit(REFL, "(step 2 ImpI", "(step 1 ImpI"), BadStep),
    ("witness-on-impi", "empty.thy",
     _edit(REFL, "(formula (imp (eps p) (eps p))))\n", "(formula (imp (eps p) (eps p))) (witness p))\n"),
     BadStep),
    ("impi-of-non-assumption", "empty.thy",
     "(proof m (conclusion (imp true true)) (step 1 TopI (premises) (formula true))"
     " (step 2 ImpI (premises 1 1) (formula (imp true true))))", BadStep),
    ("eigenvariable-in-open-assumption", "empty.thy",
     "(proof m (conclusion (forall p o (eps p)))"
     " (step 1 Assume (premises) (formula (eps p)))"
     " (step 2 ForallI (premises 1) (formula (forall p o (eps p))) (witness p)))", EigenvariableViolation),
    ("reused-eigenvariable", "empty.thy",
     _edit(REFL, "(conclusion (forall p o (imp (eps p) (eps p))))",
           "(conclusion (forall q o (forall p o (imp (eps p) (eps p)))))").replace(
         "(witness p)))",
         "(witness p))\n  (step 4 ForallI (premises 3) (formula (forall q o (forall p o (imp (eps p) (eps p)))))"
         " (witness p)))"), EigenvariableViolation),
    ("instance-wrong-term", "instance-miller.thy", _edit(INSTANCE, "(witness c)", "(witness (sk0 c))"),
     NotModuloEqual),
    ("instance-missing-witness", "instance-miller.thy", _edit(INSTANCE, " (witness c)", ""), BadStep),
    ("not-an-axiom", "instance-miller.thy",
     _edit(INSTANCE, "(formula (forall x i (P x (sk0 x))))", "(formula (forall x i (P x x)))"),
     NotModuloEqual),
    ("instance-wrong-conclusion", "instance-miller.thy",
     _edit(INSTANCE, "(conclusion (P c (sk0 c)))", "(conclusion (P (sk0 c) c))"), NotModuloEqual),
    ("choice-under-miller", "choice-miller.thy", CHOICE, SkolemCapture),
    ("eigenvariable-escapes", "witness.thy",
     _edit(WITNESS, "(step 5 ExistsE (premises 1 2 4) (formula (exists z i (Q z))) (witness w))",
           "(step 5 ExistsE (premises 1 2 3) (formula (Q w)) (witness w))").replace(
         "(conclusion (exists z i (Q z)))", "(conclusion (Q w))"), EigenvariableViolation),
    ("exists-hypothesis-mismatch", "witness.thy",
     _edit(WITNESS, "(formula (and (Q w) (R w)))", "(formula (and (R w) (Q w)))"), NotModuloEqual),
    ("assumption-left-open", "witness.thy",
     _edit(WITNESS, "\n  (step 5 ExistsE (premises 1 2 4) (formula (exists z i (Q z))) (witness w))", ""),
     BadStep),
    ("existsi-wrong-witness-sort", "witness.thy", _edit(WITNESS, "(witness w))\n", "(witness top.))\n"),
     BadStep),
    ("conv-to-negation", "empty.thy",
     "(proof m (conclusion (not (eps top.))) (step 1 TopI (premises) (formula true))"
     " (step 2 ConvModulo (premises 1) (formula (not (eps top.)))))", NotModuloEqual),
    ("refl-distinct", "instance-miller.thy",
     "(proof m (conclusion (= c (sk0 c))) (step 1 EqRefl (premises) (formula (= c (sk0 c)))))", NotModuloEqual),
    ("bot-from-top", "empty.thy",
     "(proof m (conclusion false) (step 1 TopI (premises) (formula true))"
     " (step 2 BotE (premises 1) (formula false)))", BadStep),
]


def test_mutant_corpus_size():
    assert len(MUTANTS) >= 20
    assert len({name for name, *_ in MUTANTS}) == len(MUTANTS)


@pytest.mark.parametrize("name,thy_name,src,expected", MUTANTS, ids=[m[0] for m in MUTANTS])
def test_mutant_rejected(name, thy_name, src, expected):
    with pytest.raises(expected):
        check(thy_name, src)


# ---------------------------------------------------------------------------
# ConvModulo never links formulas with distinct normal forms


@given(seeds)
def test_conv_modulo_sound(seed):
    gen = HolSkGen(seed, max_size=20)
    thy = theory("empty.thy")
    ax = dict(holsk.generate_axioms(thy.signature))["and."]
    proof = axiom_validation_proof("and.", ax)
    target = gen.sized_formula()
    k = next(i for i, s in enumerate(proof.steps) if s.rule == "ConvModulo")
    good_nf = fol.canonical(normalize(None, proof.steps[k].formula))
    mutated = dataclasses.replace(proof.steps[k], formula=target)
    steps = proof.steps[:k] + (mutated,) + proof.steps[k + 1:]
    bad = dataclasses.replace(proof, steps=steps)
    if fol.canonical(normalize(None, target)) == good_nf:
        return
    with pytest.raises(LogicError):
        check_proof(thy, bad)
