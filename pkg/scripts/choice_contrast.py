#!/usr/bin/env python3
"""Skolemize the premise of the axiom of choice in both modes and replay the
fixture proof of its conclusion against each result.

    python scripts/choice_contrast.py [--theory fixtures/choice.thy] [--proof fixtures/proofs/choice.prf]
"""

import argparse
from dataclasses import dataclass
from pathlib import Path

from sttfol import fol, formats, holsk, sexp
from sttfol.errors import LogicError
from sttfol.fol import FnApp, Var
from sttfol.proofcheck import check_proof
from sttfol.skolem import SkolemizationMode, skolemize_axiom
from sttfol.stt import IOTA

ROOT = Path(__file__).resolve().parent.parent


@dataclass
class Config:
    theory: Path = ROOT / "fixtures" / "choice.thy"
    proof: Path = ROOT / "fixtures" / "proofs" / "choice.prf"
    axiom: str = "ac-premise"


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--theory", type=Path, default=Config.theory)
    p.add_argument("--proof", type=Path, default=Config.proof)
    p.add_argument("--axiom", default=Config.axiom)
    a = p.parse_args()
    cfg = Config(a.theory, a.proof, a.axiom)

    thy = formats.load_theory(cfg.theory.read_text()).theory
    proof_src = cfg.proof.read_text()
    x = Var("x", IOTA)
    for mode in SkolemizationMode:
        res = skolemize_axiom(thy, cfg.axiom, mode)
        sym = res.introduced[0].symbol
        print(f"== {mode.value}")
        print(f"  symbol   {sym.name} : {fol.show_rank(sym.rank)}")
        print(f"  axiom    {sexp.math(res.theory.axiom(cfg.axiom))}")
        body = FnApp(sym, (x,)) if mode is SkolemizationMode.MILLER else holsk.app(FnApp(sym), x)
        try:
            u = holsk.bracket_abstract(x, body)
            print(f"  abstract {sexp.math(u)}")
        except LogicError as e:
            print(f"  abstract refused: {e.code}")
        try:
            check_proof(res.theory, formats.load_proof(proof_src, res.theory))
            print("  proof    accepted")
        except LogicError as e:
            print(f"  proof    rejected: {e.code}: {e}")


if __name__ == "__main__":
    main()
