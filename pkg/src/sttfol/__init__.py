"""Simple type theory presented as a many-sorted first-order theory.

Modules: ``stt`` (source terms), ``fol`` (target logic), ``holsk``
(combinator encoding), ``rewrite`` (normalization modulo), ``skolem``,
``debruijn``, ``proofcheck``, ``formats`` and ``cli``.
"""

from .errors import LogicError, ParseError
from .fol import Signature, Theory
from .holsk import HolSkSignature, bracket_abstract, generate_axioms, lift_prop, translate_prop, translate_stt
from .rewrite import default_system, equal_modulo, normalize
from .skolem import SkolemizationMode, check_miller_conditions, prenexify, skolemize_axiom
from .debruijn import from_debruijn, skolem_sort_check, to_debruijn, typecheck_db
from .proofcheck import Proof, ProofStep, check_proof, check_theory
from .stt import beta_normalize, substitute, typecheck_stt

__version__ = "0.1.0"

__all__ = [
    "LogicError", "ParseError", "Signature", "Theory", "HolSkSignature", "bracket_abstract",
    "generate_axioms", "lift_prop", "translate_prop", "translate_stt", "default_system", "equal_modulo",
    "normalize", "SkolemizationMode", "check_miller_conditions", "prenexify", "skolemize_axiom",
    "from_debruijn", "skolem_sort_check", "to_debruijn", "typecheck_db", "Proof", "ProofStep",
    "check_proof", "check_theory", "beta_normalize", "substitute", "typecheck_stt",
]
