"""Boolean formulas over god-type literals.

Formulas are syntax trees; their semantics is always taken over the finite
enumeration of a puzzle spec, so equivalence is decided by truth-set
equality, never syntactically.  DNF normalization emits conjuncts that are
complete assignments (one positive literal per god), which keeps equality
tests against hand-written question lists exact.

Text grammar (whitespace insignificant):

    expr    := term ('|' term)*
    term    := factor ('&' factor)*
    factor  := '!' factor | '(' expr ')' | literal | 'true' | 'false'
    literal := 'g' digits ('=' | '!=') ('T' | 'F' | 'R')
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .model import (
    Assignment,
    DomainError,
    GodType,
    PuzzleError,
    PuzzleSpec,
    enumerate_assignments,
)


@dataclass(frozen=True)
class Lit:
    god: int  # 1-based
    type: GodType
    equal: bool = True


@dataclass(frozen=True)
class Not:
    child: "Formula"


@dataclass(frozen=True)
class And:
    items: tuple

    def __post_init__(self):
        if not self.items:
            raise DomainError("And of no items")


@dataclass(frozen=True)
class Or:
    items: tuple

    def __post_init__(self):
        if not self.items:
            raise DomainError("Or of no items")


@dataclass(frozen=True)
class Const:
    value: bool


Formula = Union[Lit, Not, And, Or, Const]


class ParseError(PuzzleError):
    """Syntax error in formula text; carries a 1-based column."""

    def __init__(self, message: str, column: int):
        super().__init__(f"{message} (column {column})")
        self.message = message
        self.column = column


def eval_formula(f: Formula, a: Assignment) -> bool:
    if isinstance(f, Lit):
        if not 1 <= f.god <= len(a):
            raise DomainError(f"god index {f.god} out of range 1..{len(a)}")
        return (a[f.god - 1] is f.type) == f.equal
    if isinstance(f, Not):
        return not eval_formula(f.child, a)
    if isinstance(f, And):
        return all(eval_formula(c, a) for c in f.items)
    if isinstance(f, Or):
        return any(eval_formula(c, a) for c in f.items)
    if isinstance(f, Const):
        return f.value
    raise DomainError(f"not a formula: {f!r}")


def truth_set(f: Formula, spec: PuzzleSpec) -> frozenset:
    """Indices into the canonical enumeration where f holds."""
    enum = enumerate_assignments(spec)
    return frozenset(i for i, a in enumerate(enum) if eval_formula(f, a))


def conjunct_of(a: Assignment) -> And:
    """The complete conjunction pinning every god to its type in a."""
    return And(tuple(Lit(i + 1, t) for i, t in enumerate(a)))


def formula_of_indices(indices, spec: PuzzleSpec) -> Formula:
    """A DNF formula whose truth set over spec is exactly the given indices."""
    enum = enumerate_assignments(spec)
    idx = sorted(set(indices))
    if not idx:
        return Const(False)
    return Or(tuple(conjunct_of(enum[i]) for i in idx))


def to_dnf(f: Formula, spec: PuzzleSpec) -> Formula:
    """DNF over the spec's enumeration: an Or of complete-assignment conjuncts,
    deduplicated and in canonical order.  Empty truth set yields Const(False),
    and Const(True)'s DNF lists every assignment."""
    return formula_of_indices(truth_set(f, spec), spec)


def dnf_conjuncts(f: Formula, spec: PuzzleSpec) -> tuple:
    """The assignments listed by to_dnf(f, spec), in canonical order."""
    enum = enumerate_assignments(spec)
    return tuple(a for a in enum if eval_formula(f, a))


# ---------------------------------------------------------------------------
# Parsing and printing
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise ParseError(message, self.pos + 1)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, s: str):
        if not self.text.startswith(s, self.pos):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def parse(self) -> Formula:
        f = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("unexpected trailing input")
        return f

    def expr(self) -> Formula:
        items = [self.term()]
        while True:
            self.skip_ws()
            if self.peek() == "|":
                self.pos += 1
                items.append(self.term())
            else:
                break
        return items[0] if len(items) == 1 else Or(tuple(items))

    def term(self) -> Formula:
        items = [self.factor()]
        while True:
            self.skip_ws()
            if self.peek() == "&":
                self.pos += 1
                items.append(self.factor())
            else:
                break
        return items[0] if len(items) == 1 else And(tuple(items))

    def factor(self) -> Formula:
        self.skip_ws()
        c = self.peek()
        if c == "!":
            self.pos += 1
            return Not(self.factor())
        if c == "(":
            self.pos += 1
            f = self.expr()
            self.skip_ws()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return f
        if self.text.startswith("true", self.pos):
            self.pos += 4
            return Const(True)
        if self.text.startswith("false", self.pos):
            self.pos += 5
            return Const(False)
        if c == "g":
            return self.literal()
        self.error("expected a literal, '!', '(', 'true', or 'false'")

    def literal(self) -> Lit:
        self.expect("g")
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected god number after 'g'")
        god = int(self.text[start:self.pos])
        if self.text.startswith("!=", self.pos):
            equal = False
            self.pos += 2
        elif self.peek() == "=":
            equal = True
            self.pos += 1
        else:
            self.error("expected '=' or '!='")
        c = self.peek()
        by_letter = {t.value: t for t in GodType}
        if c not in by_letter:
            self.error("expected god type T, F, or R")
        self.pos += 1
        return Lit(god, by_letter[c], equal)


def parse(text: str) -> Formula:
    return _Parser(text).parse()


def format_formula(f: Formula) -> str:
    """Print a formula in the text grammar.  And-conjuncts inside an Or are
    parenthesized, so DNFs render as `(... & ...) | (... & ...)`."""
    if isinstance(f, Lit):
        op = "=" if f.equal else "!="
        return f"g{f.god}{op}{f.type.value}"
    if isinstance(f, Not):
        inner = format_formula(f.child)
        if isinstance(f.child, (And, Or)):
            return f"!({inner})"
        return f"!{inner}"
    if isinstance(f, And):
        parts = [
            f"({format_formula(c)})" if isinstance(c, Or) else format_formula(c)
            for c in f.items
        ]
        return " & ".join(parts)
    if isinstance(f, Or):
        parts = [
            f"({format_formula(c)})" if isinstance(c, And) else format_formula(c)
            for c in f.items
        ]
        return " | ".join(parts)
    if isinstance(f, Const):
        return "true" if f.value else "false"
    raise DomainError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# The question catalog and the balance metric
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Question:
    """A formula together with its truth set over a spec."""

    formula: Formula
    truth: frozenset

    @classmethod
    def from_formula(cls, f: Formula, spec: PuzzleSpec) -> "Question":
        return cls(f, truth_set(f, spec))


def _disjunction(*type_strings: str) -> Or:
    from .model import assignment_from_string

    return Or(tuple(conjunct_of(assignment_from_string(s)) for s in type_strings))


def catalog() -> dict:
    """The named questions used by the hand-built solutions.

    Three-god questions range over (3,1,1); the *_5 family over (5,2,3).
    """
    return {
        # three gods
        "q_Rbar": _disjunction("RTF", "RFT", "TFR"),
        "q1": _disjunction("RTF", "RFT", "TFR", "FTR"),
        "qbar1R": _disjunction("TRF", "FRT", "RFT", "RTF"),
        "q1_alt": parse("g3=R | (g1=R & g2=T & g3=F)"),
        # five gods (2 random, 3 truthful)
        "q1_5": _disjunction("RTTTR", "RTTRT", "TTTRR", "TTRTR", "TTRRT"),
        "q15R": _disjunction(
            "RTRTT", "RRTTT", "RTTTR", "RTTRT", "TTTRR", "TTRTR", "TTRRT"
        ),
        "qbar15R": _disjunction(
            "TRTTR", "TRTRT", "TRRTT", "RTRTT", "RRTTT", "RTTTR", "RTTRT"
        ),
        "q2_5": _disjunction("RRTTT", "RTTTR", "RTTRT", "TTTRR"),
        "qbar25R": _disjunction("RRTTT", "RTRTT", "TTRTR", "TTRRT"),
        "q3_5": _disjunction("TTRTR", "TTRRT"),
        "qbar35R": _disjunction("RTRTT", "RRTTT", "TTRRT"),
        "q2_bar5": _disjunction("TRTTR", "TRRTT", "RTTTR"),
        "q2bar5R": _disjunction("RTRTT", "TRTTR", "TRRTT", "RTTTR"),
        "qbar2bar5R": _disjunction("TRTRT", "RTTRT", "RRTTT", "RTRTT", "TRRTT"),
    }


def balance(f: Formula, members, god: int, spec: PuzzleSpec) -> tuple:
    """Sizes of the two knowledge children of asking god about f within the
    possibility set `members` (indices).  A possibility where the asked god is
    random counts on both sides."""
    enum = enumerate_assignments(spec)
    if not 1 <= god <= spec.n:
        raise DomainError(f"god index {god} out of range 1..{spec.n}")
    true_side = 0
    false_side = 0
    for i in members:
        a = enum[i]
        if a[god - 1] is GodType.RANDOM:
            true_side += 1
            false_side += 1
        elif eval_formula(f, a):
            true_side += 1
        else:
            false_side += 1
    return (true_side, false_side)
