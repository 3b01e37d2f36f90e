"""Ground-truth world simulation: god answer behavior, the self-referential
question template, and full episode execution against a strategy tree.

The questioner never learns what the answer words mean.  Every strategy ask
is wrapped as "would you answer 'chi' to q?" (a Meta node whose subject is
the addressed god); decoding the raw word with decode_template then yields
q's truth value whenever the addressed god is not random.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

from .model import (
    Assignment,
    GodType,
    PuzzleError,
    PuzzleSpec,
    assignment_from_string,
    assignment_to_string,
)
from .formula import Const, Formula, eval_formula, format_formula, parse


class ProtocolError(PuzzleError):
    """A word outside the two-word answer alphabet."""


class CoinsExhausted(PuzzleError):
    """A pattern coin source ran out of scripted outcomes."""


class Word(Enum):
    CHI = "chi"
    OTHER = "other"

    @property
    def glyph(self) -> str:
        return "χ" if self is Word.CHI else "_"


@dataclass(frozen=True)
class WordSemantics:
    """Whether the word 'chi' means yes; the other word means the opposite."""

    chi_means_yes: bool

    def word_for(self, truth: bool) -> Word:
        return Word.CHI if truth == self.chi_means_yes else Word.OTHER

    def meaning(self, word: Word) -> bool:
        return (word is Word.CHI) == self.chi_means_yes


@dataclass(frozen=True)
class Base:
    formula: Formula


@dataclass(frozen=True)
class Meta:
    """The question "would god `subject` answer 'chi' to `inner`?"."""

    subject: int
    inner: "AskNode"


AskNode = Union[Base, Meta]


def self_templated(god: int, f: Formula) -> Meta:
    return Meta(god, Base(f))


class SeededCoins:
    """Deterministic fair-coin source; the seed makes episodes replayable."""

    def __init__(self, seed: int):
        self.seed = seed
        self._rng = random.Random(seed)

    def flip(self) -> bool:
        return bool(self._rng.getrandbits(1))


class PatternCoins:
    """Coin source scripted from a fixed outcome vector, for exhaustive
    enumeration of random-god behaviors.  `used` records how many outcomes
    a run consumed, so callers can grow the vector until runs complete."""

    def __init__(self, bits):
        self.bits = list(bits)
        self.used = 0

    def flip(self) -> bool:
        if self.used >= len(self.bits):
            raise CoinsExhausted("pattern coin source exhausted")
        bit = self.bits[self.used]
        self.used += 1
        return bit


def god_answer(
    assignment: Assignment,
    ws: WordSemantics,
    god: int,
    node: AskNode,
    coins,
    reliable: bool = False,
) -> Word:
    """The word god `god` emits for `node` in the given world.

    In reliable mode a random god picks a truthful or lying persona by coin,
    once per question, and keeps it for any nested self-reference within the
    question.  In the default (escaping) mode a random god's word is a plain
    coin flip, and a random inner subject of a Meta node is resolved by a coin
    draw as well (strategies never rely on that case).
    """
    personas: dict = {}

    def persona_of(g: int) -> GodType:
        t = assignment[g - 1]
        if t is GodType.RANDOM and reliable:
            if g not in personas:
                personas[g] = GodType.TRUTHFUL if coins.flip() else GodType.LIAR
            return personas[g]
        return t

    def word_of(g: int, nd: AskNode) -> Word:
        p = persona_of(g)
        if p is GodType.RANDOM:
            return Word.CHI if coins.flip() else Word.OTHER
        v = resolve(nd)
        truth = v if p is GodType.TRUTHFUL else not v
        return ws.word_for(truth)

    def resolve(nd: AskNode) -> bool:
        if isinstance(nd, Base):
            return eval_formula(nd.formula, assignment)
        return word_of(nd.subject, nd.inner) is Word.CHI

    return word_of(god, node)


def decode_template(word: Word) -> bool:
    """Questioner-side decoding of a templated answer: chi means true.
    Never requires knowing what chi means."""
    if word is Word.CHI:
        return True
    if word is Word.OTHER:
        return False
    raise ProtocolError(f"unknown answer word: {word!r}")


@dataclass(frozen=True)
class TemplateCase:
    q: bool
    god_type: GodType
    chi_means_yes: bool
    decoded: bool

    @property
    def passed(self) -> bool:
        return self.decoded == self.q


def template_theorem_check(answer=god_answer) -> list:
    """All 8 (q, non-random type, chi meaning) cases of the template: the
    decoded answer to the self-referential wrapping must equal q."""
    placements = {
        GodType.TRUTHFUL: assignment_from_string("TFR"),
        GodType.LIAR: assignment_from_string("FTR"),
    }
    cases = []
    for q in (True, False):
        for god_type in (GodType.TRUTHFUL, GodType.LIAR):
            for chi_means_yes in (True, False):
                a = placements[god_type]
                word = answer(
                    a,
                    WordSemantics(chi_means_yes),
                    1,
                    self_templated(1, Const(q)),
                    PatternCoins([]),
                )
                cases.append(TemplateCase(q, god_type, chi_means_yes,
                                          decode_template(word)))
    return cases


# ---------------------------------------------------------------------------
# Episodes and transcripts
# ---------------------------------------------------------------------------

@dataclass
class Transcript:
    seed: Optional[int]
    entries: list = field(default_factory=list)  # (god, AskNode, Word)
    declared: Optional[Assignment] = None

    def serialize(self) -> str:
        lines = []
        if self.seed is not None:
            lines.append(f"seed {self.seed}")
        for god, node, word in self.entries:
            base = node
            while isinstance(base, Meta):
                base = base.inner
            lines.append(
                f'ask g{god} "{format_formula(base.formula)}" -> {word.glyph}'
            )
        if self.declared is not None:
            lines.append(f"declare {assignment_to_string(self.declared)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Transcript":
        t = cls(seed=None)
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("seed "):
                t.seed = int(line[len("seed "):])
            elif line.startswith("ask "):
                rest = line[len("ask "):]
                god_part, rest = rest.split(" ", 1)
                god = int(god_part[1:])
                qtext, word_part = rest.rsplit(" -> ", 1)
                f = parse(qtext.strip('"'))
                word = Word.CHI if word_part == "χ" else Word.OTHER
                t.entries.append((god, self_templated(god, f), word))
            elif line.startswith("declare "):
                t.declared = assignment_from_string(line[len("declare "):])
            else:
                raise ProtocolError(f"bad transcript line: {line!r}")
        return t


@dataclass
class EpisodeResult:
    declared: Assignment
    questions: int
    transcript: Transcript


def run_episode(
    spec: PuzzleSpec,
    assignment: Assignment,
    ws: WordSemantics,
    strategy,
    coins,
    reliable: bool = False,
    seed: Optional[int] = None,
) -> EpisodeResult:
    """Walk a strategy tree against a concrete world, asking each node's god
    the self-templated node question and branching on the decoded word."""
    from .strategy import Leaf, Node, StrategyError

    transcript = Transcript(seed=seed)
    node = strategy
    count = 0
    while isinstance(node, Node):
        ask = self_templated(node.god, node.question)
        word = god_answer(assignment, ws, node.god, ask, coins, reliable=reliable)
        transcript.entries.append((node.god, ask, word))
        count += 1
        node = node.true_child if decode_template(word) else node.false_child
        if node is None:
            raise StrategyError("dangling branch in strategy tree")
    if not isinstance(node, Leaf):
        raise StrategyError(f"malformed strategy node: {node!r}")
    transcript.declared = node.declared
    return EpisodeResult(node.declared, count, transcript)
