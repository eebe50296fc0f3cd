import pytest

from sttfol import fol, formats, holsk, stt
from sttfol.debruijn import parse_db, show_db
from sttfol.errors import AmbiguousSort, ArityMismatch, NonClosedAxiom, ParseError, SortMismatch
from sttfol.sexp import Span, read_all
from sttfol.stt_syntax import parse_stt_file, show_stt_file

from conftest import FIXTURES, read_fixture

THEORIES = sorted(p.name for p in FIXTURES.glob("*.thy"))
PROOFS = [
    ("empty.thy", "proofs/refl.prf"), ("instance-miller.thy", "proofs/instance.prf"),
    ("choice-naive.thy", "proofs/choice.prf"), ("witness.thy", "proofs/witness.prf"),
    ("witness-miller.thy", "proofs/witness-sk.prf"),
]


@pytest.mark.parametrize("name", THEORIES)
def test_theory_roundtrip(name):
    thy = formats.load_theory(read_fixture(name)).theory
    text = formats.show_theory(thy)
    again = formats.load_theory(text).theory
    assert again.axioms == thy.axioms
    assert again.provenance == thy.provenance
    assert formats.show_theory(again) == text
    assert {s.key for s in again.signature.user_functions()} == {s.key for s in thy.signature.user_functions()}


@pytest.mark.parametrize("thy_name,proof_name", PROOFS)
def test_proof_roundtrip(thy_name, proof_name):
    thy = formats.load_theory(read_fixture(thy_name)).theory
    proof = formats.load_proof(read_fixture(proof_name), thy)
    text = formats.show_proof(proof, thy)
    again = formats.load_proof(text, thy)
    assert [(s.index, s.rule, s.premises, s.formula, s.witness) for s in again.steps] == \
        [(s.index, s.rule, s.premises, s.formula, s.witness) for s in proof.steps]
    assert again.conclusion == proof.conclusion


@pytest.mark.parametrize("name", ["k-redex.trm", "not-top.trm"])
def test_term_file_roundtrip(name):
    tf = formats.load_term_file(read_fixture(name))
    again = formats.load_term_file(formats.show_term_file(tf))
    assert again.body == tf.body


@pytest.mark.parametrize("name", sorted(p.name for p in FIXTURES.glob("*.stt")))
def test_stt_file_roundtrip(name):
    f = parse_stt_file(read_fixture(name))
    again = parse_stt_file(show_stt_file(f))
    assert stt.alpha_eq(again.term, f.term) and dict(again.ctx) == dict(f.ctx)


def test_db_file_roundtrip():
    t, ctx = parse_db(read_fixture("nested-open.db"))
    again, ctx2 = parse_db(f"{ctx} {show_db(t, annotate=True)}")
    assert again == t and ctx2 == ctx


def test_indices_elided_and_reconstructed():
    sig = holsk.HolSkSignature([fol.const("a", stt.IOTA), fol.const("b", stt.IOTA)])
    t = formats.parse_term(sig, "(alpha (alpha K a) b)")
    a, b = (fol.FnApp(sig.lookup_function(n)) for n in "ab")
    assert t == holsk.app_n(holsk.K(stt.IOTA, stt.IOTA), a, b)
    shown = formats.show_term_in(sig, t)
    assert shown == "(alpha (alpha (K) a) b)"
    assert formats.parse_term(sig, shown) == t


def test_elaboration_errors():
    sig = holsk.HolSkSignature([fol.fn("f", [stt.IOTA], stt.IOTA, skolem=True), fol.const("a", stt.IOTA)])
    with pytest.raises(ArityMismatch):
        formats.parse_term(sig, "f")
    with pytest.raises(SortMismatch):
        formats.parse_formula(sig, "(eps a)")
    with pytest.raises(AmbiguousSort):
        formats.parse_term(sig, "K")
    with pytest.raises(NonClosedAxiom):
        formats.load_theory("(holsk) (axiom bad (eps p))")


def test_parse_errors_have_spans():
    with pytest.raises(ParseError) as info:
        formats.load_theory("(holsk)\n(axiom x")
    assert isinstance(info.value.span, Span)
    with pytest.raises(ParseError) as info:
        parse_stt_file("fun x : i -> ")
    assert isinstance(info.value.span, Span)


def test_logic_errors_have_spans():
    with pytest.raises(SortMismatch) as info:
        formats.load_theory("(holsk)\n(fn a () i)\n(axiom bad (eps a))")
    assert str(info.value.span).startswith("3:")


def test_reader():
    (node,) = read_all('(a "b c" (d))')
    assert node.head == "a" and node[1].quoted and node[1].text == "b c"
