"""Counterfactual statements over two-qubit measurement worlds.

Evaluates region-parameterized counterfactuals about measurements at two
spacelike-separated sites by exhaustive enumeration of quantum-possible
worlds, with witness extraction for every false verdict. Ships a reference
entangled configuration on which the four built-in statements take the
verdicts SF_L2 true and SB_L2, SF_L1, SB_L1 false.
"""

from .errors import (
    CfWorldsError,
    ConditionImpossible,
    MalformedStatement,
    NormError,
    OrthonormalityError,
    ParseError,
    SourceSpan,
    ValidationError,
)
from .qcalc import (
    NORM_TOLERANCE,
    POSSIBILITY_EPSILON,
    Outcome,
    OutcomeAssignment,
    SingleParticleBasis,
    StateVector,
    conditional_probability,
    joint_probability,
    validate_basis,
    validate_state,
)
from .spacetime import (
    CausalRelation,
    Event,
    RegionKind,
    classify,
    in_region,
)
from .worlds import (
    Experiment,
    HardyCondition,
    HardyReport,
    Setting,
    Wing,
    World,
    WorldFilter,
    agrees_on,
    build_reference_hardy_experiment,
    enumerate_candidate_worlds,
    enumerate_possible_worlds,
    validate_experiment,
    verify_hardy_conditions,
    wing_of_label,
)
from .logic import (
    And,
    Counterexample,
    Counterfactual,
    Implies,
    Not,
    Or,
    OutcomeAtom,
    REFERENCE_VERDICTS,
    SettingAtom,
    Statement,
    Verdict,
    canonical_statements,
    evaluate,
    explain,
    format_probability,
    hypothetical_worlds,
    validate_statement,
)
from .dsl import (
    parse_experiment,
    parse_statement,
    print_experiment,
    print_statement,
    reference_config_text,
)

__version__ = "0.1.0"

__all__ = [
    "And",
    "CausalRelation",
    "CfWorldsError",
    "ConditionImpossible",
    "Counterexample",
    "Counterfactual",
    "Event",
    "Experiment",
    "HardyCondition",
    "HardyReport",
    "Implies",
    "MalformedStatement",
    "NORM_TOLERANCE",
    "NormError",
    "Not",
    "Or",
    "OrthonormalityError",
    "Outcome",
    "OutcomeAssignment",
    "OutcomeAtom",
    "POSSIBILITY_EPSILON",
    "ParseError",
    "REFERENCE_VERDICTS",
    "RegionKind",
    "Setting",
    "SettingAtom",
    "SingleParticleBasis",
    "SourceSpan",
    "StateVector",
    "Statement",
    "ValidationError",
    "Verdict",
    "Wing",
    "World",
    "WorldFilter",
    "agrees_on",
    "build_reference_hardy_experiment",
    "canonical_statements",
    "classify",
    "conditional_probability",
    "enumerate_candidate_worlds",
    "enumerate_possible_worlds",
    "evaluate",
    "explain",
    "format_probability",
    "hypothetical_worlds",
    "in_region",
    "joint_probability",
    "parse_experiment",
    "parse_statement",
    "print_experiment",
    "print_statement",
    "reference_config_text",
    "validate_basis",
    "validate_experiment",
    "validate_state",
    "validate_statement",
    "verify_hardy_conditions",
    "wing_of_label",
    "__version__",
]
