"""Exhaustive optimal-strategy search over knowledge states.

Questions are enumerated semantically as subsets of the non-random part of
the current possibility set; a DNF formula is reconstructed from the chosen
subset for the witness tree.  Worst-case search is a memoized minimax over
possibility sets; expected-cost search is an expectimax over weighted sets
with exact rationals.  Both are deterministic: gods ascending, subsets in
ascending mask order, strict improvement to switch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .model import GodType, PuzzleError, PuzzleSpec, enumerate_assignments
from .formula import formula_of_indices
from .strategy import Leaf, Node, StrategyTree, verify

INFINITE = None  # value of an unsolvable state


class BudgetExceeded(PuzzleError):
    """Search aborted: node budget or per-state move enumeration too large."""


@dataclass
class SearchResult:
    value: Union[int, Fraction, None]  # None = Unsolvable
    witness: Optional[StrategyTree]
    nodes_explored: int
    optimal: bool = True
    note: str = ""

    @property
    def solvable(self) -> bool:
        return self.value is not None


@dataclass
class _Budget:
    max_nodes: int
    max_moves_per_state: int
    nodes: int = 0

    def charge(self):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise BudgetExceeded(f"node budget {self.max_nodes} exceeded")

    def check_moves(self, count: int):
        if count > self.max_moves_per_state:
            raise BudgetExceeded(
                f"{count} candidate questions at one state exceeds the "
                f"per-state limit {self.max_moves_per_state}"
            )


def _split(spec: PuzzleSpec, members: frozenset, god: int):
    enum = enumerate_assignments(spec)
    randoms = frozenset(i for i in members if enum[i][god - 1] is GodType.RANDOM)
    return randoms, sorted(members - randoms)


def _question_subsets(non_random: list, budget: _Budget):
    """Subsets of the non-random part, deduplicated by complement symmetry:
    the first non-random element always stays on the false side."""
    free = non_random[1:] if non_random else []
    budget.check_moves(1 << len(free))
    for mask in range(1 << len(free)):
        yield frozenset(e for b, e in enumerate(free) if mask >> b & 1)


DEFAULT_NODE_BUDGET = 2_000_000
DEFAULT_MOVE_LIMIT = 1 << 12


def min_worst_case(
    spec: PuzzleSpec,
    node_budget: int = DEFAULT_NODE_BUDGET,
    move_limit: int = DEFAULT_MOVE_LIMIT,
) -> SearchResult:
    """Minimal worst-case question count, with a witness tree when solvable.

    f(S) = 0 for singletons; otherwise 1 + the best over (god, subset) moves
    of the worse child, children being subset-plus-randoms on each side.
    Moves that leave a child equal to S are discarded; a non-singleton state
    with no admissible move is unsolvable.
    """
    enum = enumerate_assignments(spec)
    budget = _Budget(node_budget, move_limit)
    memo: dict = {}

    def f(members: frozenset):
        if members in memo:
            return memo[members]
        budget.charge()
        if len(members) == 1:
            result = (0, Leaf(enum[next(iter(members))]))
            memo[members] = result
            return result
        best = None  # (depth, god, true-set, false-set)
        for god in range(1, spec.n + 1):
            randoms, non_random = _split(spec, members, god)
            for q in _question_subsets(non_random, budget):
                true_set = q | randoms
                false_set = (frozenset(non_random) - q) | randoms
                if true_set == members or false_set == members:
                    continue
                if not true_set or not false_set:
                    # Complement dedup keeps the first non-random element on
                    # the false side, so an empty side means no information.
                    continue
                dt, _ = f(true_set)
                df, _ = f(false_set)
                if dt is INFINITE or df is INFINITE:
                    continue
                depth = 1 + max(dt, df)
                if best is None or depth < best[0]:
                    best = (depth, god, q, true_set, false_set)
        if best is None:
            result = (INFINITE, None)
        else:
            depth, god, q, true_set, false_set = best
            question = formula_of_indices(q, spec)
            result = (depth, Node(god, question, f(true_set)[1], f(false_set)[1]))
        memo[members] = result
        return result

    start = frozenset(range(len(enum)))
    value, witness = f(start)
    return SearchResult(value, witness, budget.nodes)


def solvable_within(spec: PuzzleSpec, depth: int,
                    node_budget: int = DEFAULT_NODE_BUDGET,
                    move_limit: int = DEFAULT_MOVE_LIMIT) -> bool:
    """Exhaustive depth-limited solvability: True iff some strategy of at most
    `depth` questions always pins down the assignment."""
    enum = enumerate_assignments(spec)
    budget = _Budget(node_budget, move_limit)
    memo: dict = {}

    def can(members: frozenset, d: int) -> bool:
        if len(members) == 1:
            return True
        if d == 0:
            return False
        key = (members, d)
        if key in memo:
            return memo[key]
        budget.charge()
        ok = False
        for god in range(1, spec.n + 1):
            randoms, non_random = _split(spec, members, god)
            for q in _question_subsets(non_random, budget):
                true_set = q | randoms
                false_set = (frozenset(non_random) - q) | randoms
                if true_set == members or false_set == members:
                    continue
                if not true_set or not false_set:
                    continue
                if can(true_set, d - 1) and can(false_set, d - 1):
                    ok = True
                    break
            if ok:
                break
        memo[key] = ok
        return ok

    return can(frozenset(range(len(enum))), depth)


def _has_inseparable_pair(spec: PuzzleSpec) -> bool:
    """Two assignments that no question can tell apart: at every god position
    at least one of them is random, so an adversarial random god keeps both in
    the same child forever.  Such a pair exists iff no strategy of any depth
    solves the full puzzle (the pairwise split strategy handles the converse)."""
    enum = enumerate_assignments(spec)
    for i, a in enumerate(enum):
        for b in enum[i + 1:]:
            if all(
                a[g] is GodType.RANDOM or b[g] is GodType.RANDOM
                for g in range(spec.n)
            ):
                return True
    return False


def solvable_by_search(spec: PuzzleSpec,
                       node_budget: int = 20_000,
                       move_limit: int = DEFAULT_MOVE_LIMIT) -> bool:
    """True iff the minimax finds a finite worst case.  When the full minimax
    exceeds its budget, fall back to the exhaustive inseparable-pair analysis,
    which decides the same predicate over the enumeration."""
    try:
        return min_worst_case(spec, node_budget, move_limit).solvable
    except BudgetExceeded:
        return not _has_inseparable_pair(spec)


# ---------------------------------------------------------------------------
# Expected-cost search
# ---------------------------------------------------------------------------

def min_expected(
    spec: PuzzleSpec,
    node_budget: int = DEFAULT_NODE_BUDGET,
    move_limit: int = DEFAULT_MOVE_LIMIT,
) -> SearchResult:
    """Minimal expected question count, uniform prior over assignments,
    exact rationals throughout.

    States carry one weight per surviving assignment: a non-random addressee
    routes its full weight to one child, a random one half to each.  The move
    space is restricted to questions whose both children have strictly smaller
    support, which bounds strategy depth by the enumeration size; questions
    that eliminate nothing on one side (they only rescale random-god weights)
    are outside the searched class.  Beyond the budget the best bound from the
    built-in and constructive strategies is reported, flagged non-optimal.
    """
    def fallback(nodes):
        from .strategy import (
            BUILTIN_MODES,
            BUILTIN_SPECS,
            builtin,
            builtin_names,
            constructive_solve,
        )

        candidates = [constructive_solve(spec)]
        for name in builtin_names():
            if BUILTIN_SPECS[name] == spec and BUILTIN_MODES[name] == "escaping":
                candidates.append(builtin(name))
        scored = []
        for tree in candidates:
            report = verify(tree, spec, "escaping")
            if report.correct:
                scored.append((report.expected, tree))
        value, tree = min(scored, key=lambda vw: vw[0])
        return SearchResult(
            value, tree, nodes, optimal=False,
            note="budget exceeded; best known upper bound, not proved optimal",
        )

    try:
        worst = min_worst_case(spec, node_budget, move_limit)
    except BudgetExceeded:
        if not _has_inseparable_pair(spec):
            return fallback(0)
        return SearchResult(None, None, 0)
    if not worst.solvable:
        return SearchResult(None, None, worst.nodes_explored)

    enum = enumerate_assignments(spec)
    budget = _Budget(node_budget, move_limit)
    memo: dict = {}

    def g(state: tuple):
        # state: sorted tuple of (index, Fraction weight), weights sum to 1
        if len(state) == 1:
            return Fraction(0), Leaf(enum[state[0][0]])
        if state in memo:
            return memo[state]
        budget.charge()
        members = frozenset(i for i, _ in state)
        weight_of = dict(state)
        best = None
        for god in range(1, spec.n + 1):
            randoms, non_random = _split(spec, members, god)
            for q in _question_subsets(non_random, budget):
                true_w = {i: weight_of[i] for i in q}
                false_w = {i: weight_of[i] for i in non_random if i not in q}
                for i in randoms:
                    true_w[i] = weight_of[i] / 2
                    false_w[i] = weight_of[i] / 2
                if len(true_w) >= len(members) or len(false_w) >= len(members):
                    continue
                cost = Fraction(1)
                children = []
                for side_w in (true_w, false_w):
                    if not side_w:
                        children.append(Leaf(enum[0]))  # unreachable branch
                        continue
                    side_total = sum(side_w.values())
                    normalized = tuple(
                        sorted((i, w / side_total) for i, w in side_w.items())
                    )
                    val, wit = g(normalized)
                    cost += side_total * val
                    children.append(wit)
                if best is None or cost < best[0]:
                    best = (cost, Node(god, formula_of_indices(q, spec),
                                       children[0], children[1]))
        # Every strictly-shrinking split keeps sub-states solvable whenever the
        # spec is solvable, so best is always set here.
        memo[state] = best
        return best

    uniform = Fraction(1, len(enum))
    start = tuple((i, uniform) for i in range(len(enum)))
    try:
        value, witness = g(start)
    except BudgetExceeded:
        return fallback(budget.nodes)
    return SearchResult(
        value, witness, budget.nodes, optimal=True,
        note="exhaustive over strategies whose every question eliminates "
             "at least one possibility from each branch",
    )
