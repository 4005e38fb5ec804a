"""Robinson-style arithmetic over the 15-symbol alphabet: formulas, a
Hilbert-style proof checker, theorem enumeration, Goedel numberings, and
the provability-density experiments."""

from .syntax import (  # noqa: F401
    And,
    Eq,
    Exists,
    ForAll,
    Formula,
    Implies,
    Not,
    Or,
    Plus,
    Succ,
    Term,
    Times,
    Var,
    Zero,
    formulas_of_length,
    free_vars,
    parse_wff,
    render,
    render_ascii,
    render_glyphs,
    terms_of_length,
)
from .axioms import is_axiom, match_scheme, Q_AXIOMS, SCHEME_IDS  # noqa: F401
from .proofs import (  # noqa: F401
    CheckResult,
    Generalization,
    LogicalAxiom,
    ModusPonens,
    Proof,
    ProofStep,
    QAxiom,
    check_proof,
    proof_from_json,
    proof_to_json,
)
from .ground import numeral, prove_ground_equation  # noqa: F401
from .enumeration import enumerate_theorems, theorem_corpus  # noqa: F401
from .ranking import count_formulas, rank_formula, unrank_formula  # noqa: F401
from .numberings import (  # noqa: F401
    GoedelNumbering,
    goedel_fixed4,
    goedel_index,
)
from .machines import build_group_echo_machine, build_sentence_echo_machine  # noqa: F401
from .density import hgt_family_stats, provability_density, sample_provability_density  # noqa: F401
