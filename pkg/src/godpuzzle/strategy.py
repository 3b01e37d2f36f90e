"""Strategy trees: the hand-built solutions, the exhaustive verifier with
exact-rational cost accounting, the adaptive non-random-god finder, the
general constructive solver, and the strategy file format.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from .model import (
    Assignment,
    DomainError,
    GodType,
    PuzzleError,
    PuzzleSpec,
    assignment_from_string,
    assignment_to_string,
    enumerate_assignments,
)
from .formula import (
    Formula,
    Lit,
    catalog,
    eval_formula,
    format_formula,
    parse,
)
from .knowledge import KnowledgeState, full_state, is_solved, update


class StrategyError(PuzzleError):
    """Malformed strategy tree or strategy file."""


class SolvabilityError(PuzzleError):
    """The spec fails the random < non-random criterion."""


@dataclass(frozen=True)
class Leaf:
    declared: Assignment


@dataclass(frozen=True)
class Node:
    god: int
    question: Formula
    true_child: "StrategyTree"
    false_child: "StrategyTree"


StrategyTree = Union[Leaf, Node]


def tree_depth(t: StrategyTree) -> int:
    if isinstance(t, Leaf):
        return 0
    return 1 + max(tree_depth(t.true_child), tree_depth(t.false_child))


def validate_tree(t: StrategyTree, spec: PuzzleSpec, path: str = "root") -> None:
    if isinstance(t, Leaf):
        if not spec.counts_ok(t.declared):
            raise StrategyError(
                f"leaf at {path} declares {assignment_to_string(t.declared)}, "
                f"which violates {spec}"
            )
        return
    if isinstance(t, Node):
        if not 1 <= t.god <= spec.n:
            raise StrategyError(f"node at {path} asks god {t.god}, out of 1..{spec.n}")
        validate_tree(t.true_child, spec, path + "/true")
        validate_tree(t.false_child, spec, path + "/false")
        return
    raise StrategyError(f"not a strategy node at {path}: {t!r}")


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    correct: bool
    worst_case: int
    expected: Fraction
    per_assignment: list  # (Assignment, [(Fraction probability, int cost)])
    mode: str

    def expected_decimal(self, places: int = 2) -> str:
        return f"{float(self.expected):.{places}f}"


def verify(t: StrategyTree, spec: PuzzleSpec, mode: str = "escaping") -> VerificationReport:
    """Exhaustively evaluate a strategy against every assignment and every
    branch choice a random god can force.

    escaping mode: a random addressee routes to both children, probability 1/2
    each.  reliable mode: every decoded bit equals the question's truth value
    (the random god merely picks a truthful or lying persona, which the
    template cancels out), so each assignment follows a single path.
    """
    if mode not in ("escaping", "reliable"):
        raise DomainError(f"unknown verification mode: {mode!r}")
    validate_tree(t, spec)
    enum = enumerate_assignments(spec)

    per_assignment = []
    correct = True
    worst = 0
    total = Fraction(0)

    for a in enum:
        paths = []  # (probability, cost)
        ok = True

        def walk(node, prob, depth):
            nonlocal ok
            if isinstance(node, Leaf):
                paths.append((prob, depth))
                if node.declared != a:
                    ok = False
                return
            if mode == "escaping" and a[node.god - 1] is GodType.RANDOM:
                walk(node.true_child, prob / 2, depth + 1)
                walk(node.false_child, prob / 2, depth + 1)
            else:
                bit = eval_formula(node.question, a)
                walk(node.true_child if bit else node.false_child, prob, depth + 1)

        walk(t, Fraction(1), 0)
        per_assignment.append((a, paths))
        correct = correct and ok
        worst = max(worst, max(c for _, c in paths))
        total += sum(p * c for p, c in paths)

    expected = total / len(enum)
    return VerificationReport(correct, worst, expected, per_assignment, mode)


# ---------------------------------------------------------------------------
# Built-in strategies
# ---------------------------------------------------------------------------

def _leaf(s: str) -> Leaf:
    return Leaf(assignment_from_string(s))


def _three_nonrandom() -> StrategyTree:
    # Assumes the random god behaves reliably; expected cost 8/3.
    q = catalog()
    return Node(
        1, q["q_Rbar"],
        Node(2, parse("g2=T"),
             _leaf("RTF"),
             Node(2, parse("g1=T"), _leaf("TFR"), _leaf("RFT"))),
        Node(1, parse("g1=T"),
             _leaf("TRF"),
             Node(1, parse("g2=T"), _leaf("FTR"), _leaf("FRT"))),
    )


def _three_bottom_up() -> StrategyTree:
    # First question balanced so each answer leaves a god that is provably
    # non-random; all paths take exactly 3 questions.
    q = catalog()
    return Node(
        1, q["q1"],
        Node(2, parse("g2=T"),
             Node(2, parse("g1=R"), _leaf("RTF"), _leaf("FTR")),
             Node(2, parse("g1=R"), _leaf("RFT"), _leaf("TFR"))),
        Node(3, parse("g3=T"),
             Node(3, parse("g1=R"), _leaf("RFT"), _leaf("FRT")),
             Node(3, parse("g1=R"), _leaf("RTF"), _leaf("TRF"))),
    )


def _three_roberts() -> StrategyTree:
    # Top-down variant: lead with "is god 3 random?" to locate a safe god.
    return Node(
        1, parse("g3=R"),
        Node(2, parse("g1!=R"),
             Node(2, parse("g2=T"), _leaf("FTR"), _leaf("TFR")),
             Node(2, parse("g2=T"), _leaf("RTF"), _leaf("RFT"))),
        Node(3, parse("g1!=R"),
             Node(3, parse("g3=T"), _leaf("FRT"), _leaf("TRF")),
             Node(3, parse("g3=T"), _leaf("RFT"), _leaf("RTF"))),
    )


def _five_gods() -> StrategyTree:
    q = catalog()
    true_branch = Node(
        2, q["q2_5"],
        Node(3, parse("g4!=R"),
             Node(3, parse("g5!=R"), _leaf("RRTTT"), _leaf("RTTTR")),
             Node(3, parse("g5!=R"), _leaf("RTTRT"), _leaf("TTTRR"))),
        Node(4, q["q3_5"],
             Node(2, parse("g4!=R"), _leaf("TTRTR"), _leaf("TTRRT")),
             Node(5, parse("g4!=R"),
                  Node(5, parse("g3!=R"), _leaf("RRTTT"), _leaf("RTRTT")),
                  _leaf("TTRRT"))),
    )
    false_branch = Node(
        3, q["q2_bar5"],
        Node(4, parse("g2!=R"),
             Node(4, parse("g3!=R"), _leaf("RTTTR"), _leaf("RTRTT")),
             Node(4, parse("g3!=R"), _leaf("TRTTR"), _leaf("TRRTT"))),
        Node(5, parse("g4!=R"),
             Node(5, parse("g1!=R"),
                  _leaf("TRRTT"),
                  Node(5, parse("g3!=R"), _leaf("RRTTT"), _leaf("RTRTT"))),
             Node(5, parse("g1!=R"), _leaf("TRTRT"), _leaf("RTTRT"))),
    )
    return Node(1, q["q1_5"], true_branch, false_branch)


BUILTIN_SPECS = {
    "three_nonrandom": PuzzleSpec(3, 1, 1),
    "three_bottom_up": PuzzleSpec(3, 1, 1),
    "three_roberts": PuzzleSpec(3, 1, 1),
    "five_gods": PuzzleSpec(5, 2, 3),
}

BUILTIN_MODES = {
    "three_nonrandom": "reliable",
    "three_bottom_up": "escaping",
    "three_roberts": "escaping",
    "five_gods": "escaping",
}

_BUILDERS = {
    "three_nonrandom": _three_nonrandom,
    "three_bottom_up": _three_bottom_up,
    "three_roberts": _three_roberts,
    "five_gods": _five_gods,
}


def builtin(name: str) -> StrategyTree:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise StrategyError(
            f"unknown built-in strategy {name!r}; "
            f"choices: {', '.join(sorted(_BUILDERS))}"
        ) from None


def builtin_names() -> tuple:
    return tuple(sorted(_BUILDERS))


# ---------------------------------------------------------------------------
# Finding a non-random god and the general constructive solver
# ---------------------------------------------------------------------------

def find_non_random(spec: PuzzleSpec, ask: Callable[[int, Formula], bool]) -> int:
    """Adaptive procedure returning a god that is non-random in every world
    consistent with the answers, provided randoms < non-randoms.

    Scans with the first god as interviewer: ask it whether each later god is
    random; a positive answer discards both interviewer and suspect, exhaustion
    discards just the interviewer; 1- and 2-god sets return their least god.
    """
    def go(gods):
        if len(gods) <= 2:
            return gods[0]
        interviewer = gods[0]
        hit = None
        for suspect in gods[1:]:
            if ask(interviewer, Lit(suspect, GodType.RANDOM)):
                hit = suspect
                break
        return go([g for g in gods[1:] if g != hit])

    if not spec.m < spec.non_random:
        raise SolvabilityError(
            f"finding a non-random god needs m < n - m; {spec} has "
            f"{spec.m} random vs {spec.non_random} non-random"
        )
    return go(list(range(1, spec.n + 1)))


def constructive_solve(spec: PuzzleSpec) -> StrategyTree:
    """Unroll the non-random-god search into tree form, then identify every
    god by asking the found safe god about its type.  Not depth-optimal, but
    correct for every solvable spec."""
    if not spec.m < spec.non_random:
        raise SolvabilityError(
            f"{spec} is unsolvable: {spec.m} random gods is not strictly "
            f"less than {spec.non_random} non-random gods"
        )
    enum = enumerate_assignments(spec)

    def leaf_for(state: KnowledgeState) -> Leaf:
        idx = min(state.possible) if state.possible else 0
        return Leaf(enum[idx])

    def identify(state: KnowledgeState, safe: int) -> StrategyTree:
        # `safe` is non-random in every possibility here, so its updates
        # filter exactly and each ask splits some undetermined god.
        if len(state.possible) <= 1:
            return leaf_for(state)
        for god in range(1, spec.n + 1):
            types = {enum[i][god - 1] for i in state.possible}
            if len(types) > 1:
                q = Lit(god, GodType.RANDOM if GodType.RANDOM in types
                        else GodType.TRUTHFUL)
                return Node(
                    safe, q,
                    identify(update(state, safe, q, True), safe),
                    identify(update(state, safe, q, False), safe),
                )
        raise StrategyError("all gods determined but state not singleton")

    def find_phase(state: KnowledgeState, gods, scan: int) -> StrategyTree:
        if len(state.possible) <= 1:
            return leaf_for(state)
        if len(gods) <= 2:
            return identify(state, gods[0])
        interviewer = gods[0]
        if scan >= len(gods):
            return find_phase(state, gods[1:], 1)
        suspect = gods[scan]
        q = Lit(suspect, GodType.RANDOM)
        positive = find_phase(
            update(state, interviewer, q, True),
            [g for g in gods if g not in (interviewer, suspect)],
            1,
        )
        negative = find_phase(update(state, interviewer, q, False), gods, scan + 1)
        return Node(interviewer, q, positive, negative)

    return find_phase(full_state(spec), list(range(1, spec.n + 1)), 1)


# ---------------------------------------------------------------------------
# Strategy file format
# ---------------------------------------------------------------------------

FORMAT_TAG = "strategy v1"


def serialize_strategy(t: StrategyTree, spec: PuzzleSpec,
                       header_comments=()) -> str:
    lines = [FORMAT_TAG]
    lines += [f"# {c}" for c in header_comments]
    lines.append(f"spec {spec.n} {spec.m} {spec.k}")

    def emit(node, indent):
        pad = "  " * indent
        if isinstance(node, Leaf):
            lines.append(f"{pad}leaf declare={assignment_to_string(node.declared)}")
            return
        lines.append(
            f'{pad}node god={node.god} question="{format_formula(node.question)}"'
        )
        lines.append(f"{pad}  true:")
        emit(node.true_child, indent + 2)
        lines.append(f"{pad}  false:")
        emit(node.false_child, indent + 2)

    emit(t, 0)
    return "\n".join(lines) + "\n"


def parse_strategy(text: str):
    """Parse a strategy file; returns (tree, spec).  Raises StrategyError with
    a line number on malformed input."""
    raw = text.splitlines()
    lines = []  # (lineno, indent, content)
    for no, line in enumerate(raw, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        indent = len(line) - len(line.lstrip(" "))
        lines.append((no, indent, stripped))

    if not lines or lines[0][2] != FORMAT_TAG:
        raise StrategyError(f"missing format tag {FORMAT_TAG!r} on line 1")
    if len(lines) < 2 or not lines[1][2].startswith("spec "):
        raise StrategyError("missing spec line after format tag")
    try:
        n, m, k = (int(x) for x in lines[1][2].split()[1:])
        spec = PuzzleSpec(n, m, k)
    except (ValueError, PuzzleError) as e:
        raise StrategyError(f"bad spec line {lines[1][0]}: {e}") from None

    pos = 2

    def parse_node(indent):
        nonlocal pos
        if pos >= len(lines):
            raise StrategyError("unexpected end of strategy file")
        no, ind, content = lines[pos]
        if ind != indent:
            raise StrategyError(f"line {no}: expected indent {indent}, got {ind}")
        pos += 1
        if content.startswith("leaf declare="):
            try:
                return Leaf(assignment_from_string(content[len("leaf declare="):]))
            except PuzzleError as e:
                raise StrategyError(f"line {no}: {e}") from None
        if content.startswith("node god="):
            rest = content[len("node god="):]
            try:
                god_part, q_part = rest.split(" ", 1)
                god = int(god_part)
                if not q_part.startswith('question="') or not q_part.endswith('"'):
                    raise ValueError("bad question field")
                question = parse(q_part[len('question="'):-1])
            except (ValueError, PuzzleError) as e:
                raise StrategyError(f"line {no}: {e}") from None
            branches = {}
            for marker in ("true:", "false:"):
                if pos >= len(lines) or lines[pos][2] != marker \
                        or lines[pos][1] != indent + 2:
                    where = lines[pos][0] if pos < len(lines) else "EOF"
                    raise StrategyError(f"line {where}: expected {marker!r}")
                pos += 1
                branches[marker] = parse_node(indent + 4)
            return Node(god, question, branches["true:"], branches["false:"])
        raise StrategyError(f"line {no}: expected 'node' or 'leaf', got {content!r}")

    tree = parse_node(0)
    if pos != len(lines):
        raise StrategyError(f"line {lines[pos][0]}: trailing content")
    validate_tree(tree, spec)
    return tree, spec
