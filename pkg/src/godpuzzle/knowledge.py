"""The questioner's epistemic state and the unsolvability adversary.

The update rule implements the "escaping" reading of the random god: a
possibility in which the addressed god is random survives either decoded
answer, so each answer narrows the set by strictly less when the addressed
god can be random.

The adversary for equal-split specs (n even, half random, half truthful) is
the constructive twin-echo rule: the emitted bit for any question is the
question's truth value in whichever of the two alternating assignments has
the addressed god truthful.  Both twin worlds produce identical transcripts,
so no strategy can separate them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .model import (
    Assignment,
    DomainError,
    GodType,
    PuzzleSpec,
    assignment_index,
    enumerate_assignments,
)
from .formula import Formula, eval_formula


@dataclass(frozen=True)
class KnowledgeState:
    spec: PuzzleSpec
    possible: frozenset  # indices into the canonical enumeration

    def __len__(self) -> int:
        return len(self.possible)

    def assignments(self) -> tuple:
        enum = enumerate_assignments(self.spec)
        return tuple(enum[i] for i in sorted(self.possible))


def full_state(spec: PuzzleSpec) -> KnowledgeState:
    return KnowledgeState(spec, frozenset(range(len(enumerate_assignments(spec)))))


def update(s: KnowledgeState, god: int, q: Formula, bit: bool) -> KnowledgeState:
    """Possibilities surviving the decoded answer `bit` to asking `god` the
    templated question q: those where the god is random or q evaluates to bit."""
    if not 1 <= god <= s.spec.n:
        raise DomainError(f"god index {god} out of range 1..{s.spec.n}")
    enum = enumerate_assignments(s.spec)
    keep = frozenset(
        i
        for i in s.possible
        if enum[i][god - 1] is GodType.RANDOM or eval_formula(q, enum[i]) == bit
    )
    return KnowledgeState(s.spec, keep)


def update_by_set(s: KnowledgeState, god: int, q_indices: frozenset,
                  bit: bool) -> KnowledgeState:
    """update() with the question given semantically as its truth set."""
    enum = enumerate_assignments(s.spec)
    keep = frozenset(
        i
        for i in s.possible
        if enum[i][god - 1] is GodType.RANDOM or (i in q_indices) == bit
    )
    return KnowledgeState(s.spec, keep)


def is_solved(s: KnowledgeState) -> bool:
    return len(s.possible) == 1


def is_inconsistent(s: KnowledgeState) -> bool:
    """Empty possibility set: the answers came from a world outside the spec."""
    return not s.possible


def safe_gods(s: KnowledgeState) -> frozenset:
    """Gods that are non-random in every remaining possibility."""
    enum = enumerate_assignments(s.spec)
    return frozenset(
        g
        for g in range(1, s.spec.n + 1)
        if all(enum[i][g - 1] is not GodType.RANDOM for i in s.possible)
    )


# ---------------------------------------------------------------------------
# The twin-world adversary
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TwinWitness:
    spec: PuzzleSpec
    twin_tr: Assignment  # truthful at odd positions
    twin_rt: Assignment  # random at odd positions

    def answer_bit(self, god: int, q: Formula) -> bool:
        """The echoed bit: q's truth value in the twin where `god` is truthful.
        In that world the bit is the honest templated answer; in the other the
        god is random, so the same bit is a legal random outcome.  Hence the
        transcript is identical in both worlds."""
        world = self.twin_tr if self.twin_tr[god - 1] is GodType.TRUTHFUL else self.twin_rt
        return eval_formula(q, world)

    def answer_bit_for_set(self, god: int, q_indices: frozenset) -> bool:
        world = self.twin_tr if self.twin_tr[god - 1] is GodType.TRUTHFUL else self.twin_rt
        return assignment_index(self.spec, world) in q_indices

    def twin_indices(self) -> tuple:
        return (
            assignment_index(self.spec, self.twin_tr),
            assignment_index(self.spec, self.twin_rt),
        )


def twin_adversary(spec: PuzzleSpec) -> TwinWitness:
    """The two alternating truthful/random assignments for an equal-split spec
    (n even, m = k = n/2, no liars)."""
    if spec.n % 2 != 0 or spec.m != spec.n // 2 or spec.k != spec.n // 2:
        raise DomainError(
            f"twin adversary needs n even with m = k = n/2, got {spec}"
        )
    tr = tuple(
        GodType.TRUTHFUL if i % 2 == 0 else GodType.RANDOM for i in range(spec.n)
    )
    rt = tuple(
        GodType.RANDOM if i % 2 == 0 else GodType.TRUTHFUL for i in range(spec.n)
    )
    return TwinWitness(spec, tr, rt)


def exhaustive_twin_check(spec: PuzzleSpec) -> int:
    """Check the lockstep property against every strategy of any depth.

    Questions are quotiented to truth subsets of the enumeration, so every
    (god, question) move from every reachable knowledge state is covered; a
    strategy tree is just a choice of one move per state, so covering all
    (state, move) edges covers all strategies.  Asserts that both twins
    survive every update.  Returns the number of states explored.
    """
    witness = twin_adversary(spec)
    enum = enumerate_assignments(spec)
    universe = list(range(len(enum)))
    twins = frozenset(witness.twin_indices())

    seen = set()
    stack = [full_state(spec).possible]
    while stack:
        possible = stack.pop()
        if possible in seen:
            continue
        seen.add(possible)
        if not twins <= possible:
            raise AssertionError(
                f"twin possibility eliminated in state {sorted(possible)}"
            )
        state = KnowledgeState(spec, possible)
        for god in range(1, spec.n + 1):
            for mask in range(1 << len(universe)):
                q_indices = frozenset(
                    i for b, i in enumerate(universe) if mask >> b & 1
                )
                bit = witness.answer_bit_for_set(god, q_indices)
                child = update_by_set(state, god, q_indices, bit)
                if child.possible not in seen:
                    stack.append(child.possible)
    return len(seen)
