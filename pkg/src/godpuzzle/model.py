"""God types, puzzle specifications, and the canonical assignment enumeration.

An assignment is a tuple of GodType, one per god, indexed 1-based in all
user-facing text and 0-based internally.  The canonical enumeration orders
assignments lexicographically by position with Truthful < Liar < Random,
so indices are stable across runs and platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import permutations


class PuzzleError(Exception):
    """Base class for errors raised by this package."""


class SpecError(PuzzleError):
    """Invalid puzzle specification (e.g. more randoms+truthfuls than gods)."""


class DomainError(PuzzleError):
    """A value outside the domain of an operation (bad god index, bad counts)."""


class GodType(Enum):
    TRUTHFUL = "T"
    LIAR = "F"
    RANDOM = "R"

    def __str__(self) -> str:
        return self.value


# Canonical type order used for the enumeration.
TYPE_ORDER = (GodType.TRUTHFUL, GodType.LIAR, GodType.RANDOM)
_TYPE_RANK = {t: i for i, t in enumerate(TYPE_ORDER)}

Assignment = tuple  # tuple[GodType, ...]


@dataclass(frozen=True)
class PuzzleSpec:
    """An (n, m, k) puzzle: n gods, m random, k truthful, n-m-k liars."""

    n: int
    m: int
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise SpecError(f"god count must be >= 1, got {self.n}")
        if self.m < 0 or self.k < 0:
            raise SpecError(f"counts must be non-negative: m={self.m}, k={self.k}")
        if self.m + self.k > self.n:
            raise SpecError(
                f"m + k = {self.m + self.k} exceeds god count n = {self.n}"
            )

    @property
    def liars(self) -> int:
        return self.n - self.m - self.k

    @property
    def non_random(self) -> int:
        return self.n - self.m

    def counts_ok(self, a: Assignment) -> bool:
        if len(a) != self.n:
            return False
        return (
            sum(t is GodType.RANDOM for t in a) == self.m
            and sum(t is GodType.TRUTHFUL for t in a) == self.k
        )


def assignment_from_string(s: str) -> Assignment:
    """Parse a type string like "RTF" into an assignment tuple."""
    by_letter = {t.value: t for t in GodType}
    try:
        return tuple(by_letter[c] for c in s)
    except KeyError as e:
        raise DomainError(f"unknown god type letter {e.args[0]!r} in {s!r}") from None


def assignment_to_string(a: Assignment) -> str:
    return "".join(t.value for t in a)


@lru_cache(maxsize=None)
def enumerate_assignments(spec: PuzzleSpec) -> tuple:
    """All assignments satisfying spec's counts, in canonical order."""
    multiset = (
        (GodType.TRUTHFUL,) * spec.k
        + (GodType.LIAR,) * spec.liars
        + (GodType.RANDOM,) * spec.m
    )
    distinct = set(permutations(multiset))
    return tuple(sorted(distinct, key=lambda a: tuple(_TYPE_RANK[t] for t in a)))


def enumeration_size(spec: PuzzleSpec) -> int:
    """Closed-form size of the enumeration: n! / (m! k! (n-m-k)!)."""
    return math.factorial(spec.n) // (
        math.factorial(spec.m) * math.factorial(spec.k) * math.factorial(spec.liars)
    )


@lru_cache(maxsize=None)
def _index_map(spec: PuzzleSpec) -> dict:
    return {a: i for i, a in enumerate(enumerate_assignments(spec))}


def assignment_index(spec: PuzzleSpec, a: Assignment) -> int:
    """Position of a in enumerate_assignments(spec)."""
    if not spec.counts_ok(a):
        raise DomainError(
            f"assignment {assignment_to_string(a)} violates counts of {spec}"
        )
    return _index_map(spec)[a]
