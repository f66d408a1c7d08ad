"""Coxeter systems, their Cayley graphs, and the automorphisms of finite balls.

The word problem is solved by elementary rewriting alone (m-operations and
ss-deletions); balls of the Cayley graph are materialized breadth-first with
deterministic vertex ids; embedded cycles are classified as essential or not
with an explicit certification flag; and ball automorphisms (left
multiplications, diagram automorphisms, the exotic psi maps, and everything
an identity-stabilizer search can find) are constructed, verified, composed,
and decomposed.  Everything is stated on finite balls with an interior-radius
discipline, so truncation can never smuggle in a false claim.
"""

from .system import (
    CoxeterSystem,
    DiagramAutomorphism,
    FlexibilityWitness,
    ParseError,
    enumerate_diagram_automorphisms,
    identity_automorphism,
    is_flexible,
    parse_system,
    validate_witness,
)
from .words import (
    LimitExceeded,
    Word,
    apply_m_operation,
    format_word,
    inverse_word,
    is_reduced,
    m_class,
    m_closure,
    multiply,
    parse_word,
    reduce_word,
    word_length,
    words_equal,
)
from .ball import CayleyBall, build_ball, count_paths, distance
from .cycles import (
    EmbeddedCycle,
    enumerate_embedded_cycles,
    is_alternating,
    is_essential,
    is_relator_shape,
    map_cycle,
    relator_cycles,
    verify_essential_characterization,
)
from .automorphisms import (
    BallAutomorphism,
    FactoredAutomorphism,
    StabilizerCensus,
    StabilizerEntry,
    compose_ball,
    coupling_violations,
    decompose,
    diagram_aut,
    identity_factored,
    identity_stabilizer_census,
    left_mult,
    local_permutation,
    local_permutation_field,
    psi_family_distinctness,
    psi_n,
    psi_n_word,
    psi_phi,
    psi_phi_word,
    star_interior,
    verify_ball_automorphism,
)
from .checks import CheckResult, SystemReport, commutation_violations, run_system_checks

__all__ = [
    "BallAutomorphism",
    "CayleyBall",
    "CheckResult",
    "CoxeterSystem",
    "DiagramAutomorphism",
    "EmbeddedCycle",
    "FactoredAutomorphism",
    "FlexibilityWitness",
    "LimitExceeded",
    "ParseError",
    "StabilizerCensus",
    "StabilizerEntry",
    "SystemReport",
    "Word",
    "apply_m_operation",
    "build_ball",
    "commutation_violations",
    "compose_ball",
    "count_paths",
    "coupling_violations",
    "decompose",
    "diagram_aut",
    "distance",
    "enumerate_diagram_automorphisms",
    "enumerate_embedded_cycles",
    "format_word",
    "identity_automorphism",
    "identity_factored",
    "identity_stabilizer_census",
    "inverse_word",
    "is_alternating",
    "is_essential",
    "is_flexible",
    "is_reduced",
    "is_relator_shape",
    "left_mult",
    "local_permutation",
    "local_permutation_field",
    "m_class",
    "m_closure",
    "map_cycle",
    "multiply",
    "parse_system",
    "parse_word",
    "psi_family_distinctness",
    "psi_n",
    "psi_n_word",
    "psi_phi",
    "psi_phi_word",
    "reduce_word",
    "relator_cycles",
    "run_system_checks",
    "star_interior",
    "validate_witness",
    "verify_ball_automorphism",
    "verify_essential_characterization",
    "word_length",
    "words_equal",
]
