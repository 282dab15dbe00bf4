"""Assume/guarantee contract algebra over finite theories."""

from __future__ import annotations

from agcontracts.alphabet import (
    Inclusion,
    eliminate_variable,
    eliminate_variables,
    extend_assertion,
    extend_contract,
    extend_state,
    extended_compose,
    project_assertion_exists,
    project_assertion_forall,
    project_contract,
    project_state,
)
from agcontracts.contracts import Contract
from agcontracts.core import (
    BOOL,
    DEFAULT_STATE_CAP,
    Assertion,
    EnumerationCapError,
    State,
    Theory,
    UnknownLiteralError,
    UnknownVariableError,
    VarSet,
    VarSetMismatchError,
    enumerate_states,
    state_space_size,
)
from agcontracts.formulas import (
    FALSE,
    TRUE,
    And,
    Atom,
    Formula,
    FormulaContract,
    FormulaSyntaxError,
    Implies,
    Not,
    Or,
    TT,
    assertion_to_formula,
    check_formula,
    evaluate,
    format_formula,
    formula_to_assertion,
    parse_formula,
)
from agcontracts.oracle import (
    INFORMATIONAL_THEOREMS,
    THEOREM_NAMES,
    AlgebraOps,
    CheckReport,
    OracleConfig,
    check_theorem,
    replay_counterexample,
    reports_to_json,
    reports_to_table,
    run_all_checks,
)

__all__ = [
    "BOOL",
    "DEFAULT_STATE_CAP",
    "FALSE",
    "INFORMATIONAL_THEOREMS",
    "THEOREM_NAMES",
    "TRUE",
    "AlgebraOps",
    "And",
    "Assertion",
    "Atom",
    "CheckReport",
    "Contract",
    "EnumerationCapError",
    "Formula",
    "FormulaContract",
    "FormulaSyntaxError",
    "Implies",
    "Inclusion",
    "Not",
    "Or",
    "OracleConfig",
    "State",
    "TT",
    "Theory",
    "UnknownLiteralError",
    "UnknownVariableError",
    "VarSet",
    "VarSetMismatchError",
    "assertion_to_formula",
    "check_formula",
    "check_theorem",
    "eliminate_variable",
    "eliminate_variables",
    "enumerate_states",
    "evaluate",
    "extend_assertion",
    "extend_contract",
    "extend_state",
    "extended_compose",
    "format_formula",
    "formula_to_assertion",
    "parse_formula",
    "project_assertion_exists",
    "project_assertion_forall",
    "project_contract",
    "project_state",
    "replay_counterexample",
    "reports_to_json",
    "reports_to_table",
    "run_all_checks",
    "state_space_size",
]
