"""Proof kernel: formulas, vernacular commands, and the execution rules."""

from .prop import (
    FALSE,
    TRUE,
    And,
    Atom,
    Falsity,
    Imp,
    Not,
    Or,
    ParseError,
    Prop,
    RESERVED_WORDS,
    Truth,
    is_negation,
    parse_prop,
    pretty,
)
from .vernac import (
    TACTIC_NAMES,
    Apply,
    Assumption,
    Check,
    Contradiction,
    Destruct,
    Exact,
    Exfalso,
    Intro,
    Left,
    Lemma,
    Parameter,
    ProofMarker,
    Qed,
    RequireImport,
    Right,
    Split,
    Tactic,
    TacticCmd,
    Vernac,
    parse_vernac,
)
from .engine import (
    GOAL_SEPARATOR,
    OPTION_DEFAULTS,
    ExecError,
    Goal,
    ProofEnv,
    ProofState,
    TacticError,
    apply_tactic,
    default_options,
    exec_vernac,
    fresh_name,
    option_kind,
    pretty_goal,
    pretty_proof_state,
)

__all__ = [
    "Prop", "Atom", "Truth", "Falsity", "And", "Or", "Imp", "TRUE", "FALSE",
    "Not", "is_negation", "ParseError", "parse_prop", "pretty", "RESERVED_WORDS",
    "Lemma", "Parameter", "ProofMarker", "Qed", "Check", "RequireImport",
    "TacticCmd", "Vernac", "Tactic", "Intro", "Exact", "Assumption", "Split",
    "Left", "Right", "Apply", "Destruct", "Exfalso", "Contradiction",
    "TACTIC_NAMES", "parse_vernac",
    "OPTION_DEFAULTS", "default_options", "option_kind",
    "ProofEnv", "Goal", "ProofState", "ExecError", "TacticError",
    "fresh_name", "apply_tactic", "exec_vernac",
    "GOAL_SEPARATOR", "pretty_goal", "pretty_proof_state",
]
