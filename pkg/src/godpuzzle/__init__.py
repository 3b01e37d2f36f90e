"""Solver, verifier, and strategy synthesizer for the n-gods questioning
puzzle: truthful, lying, and random gods answering templated yes/no
questions in an unknown word."""

from .model import (
    Assignment,
    DomainError,
    GodType,
    PuzzleError,
    PuzzleSpec,
    SpecError,
    assignment_from_string,
    assignment_index,
    assignment_to_string,
    enumerate_assignments,
    enumeration_size,
)
from .formula import (
    And,
    Const,
    Formula,
    Lit,
    Not,
    Or,
    ParseError,
    Question,
    balance,
    catalog,
    dnf_conjuncts,
    eval_formula,
    format_formula,
    parse,
    to_dnf,
    truth_set,
)
from .simulator import (
    Base,
    Meta,
    PatternCoins,
    ProtocolError,
    SeededCoins,
    Transcript,
    Word,
    WordSemantics,
    decode_template,
    god_answer,
    run_episode,
    self_templated,
    template_theorem_check,
)
from .knowledge import (
    KnowledgeState,
    TwinWitness,
    exhaustive_twin_check,
    full_state,
    is_solved,
    safe_gods,
    twin_adversary,
    update,
)
from .strategy import (
    Leaf,
    Node,
    SolvabilityError,
    StrategyError,
    StrategyTree,
    VerificationReport,
    builtin,
    builtin_names,
    constructive_solve,
    find_non_random,
    parse_strategy,
    serialize_strategy,
    verify,
)
from .synthesis import (
    BudgetExceeded,
    SearchResult,
    min_expected,
    min_worst_case,
    solvable_by_search,
    solvable_within,
)
