"""Formula evaluation, DNF normalization, parsing, the question catalog,
and the balance metric."""

import pytest
from hypothesis import given, settings, strategies as st

from godpuzzle import (
    And,
    Const,
    DomainError,
    Lit,
    Not,
    Or,
    ParseError,
    PuzzleSpec,
    GodType,
    assignment_from_string,
    assignment_index,
    balance,
    catalog,
    dnf_conjuncts,
    enumerate_assignments,
    eval_formula,
    format_formula,
    parse,
    to_dnf,
    truth_set,
)

SPEC3 = PuzzleSpec(3, 1, 1)
SPEC5 = PuzzleSpec(5, 2, 3)


def conjunct_strings(f, spec):
    """The DNF of f over spec as a set of assignment strings."""
    from godpuzzle import assignment_to_string

    return {assignment_to_string(a) for a in dnf_conjuncts(f, spec)}


def indices(spec, *strings):
    return frozenset(assignment_index(spec, assignment_from_string(s))
                     for s in strings)


class TestEval:
    def test_q1_true_on_its_first_conjunct(self):
        assert eval_formula(catalog()["q1"], assignment_from_string("RTF"))

    def test_q1_false_on_a_negated_conjunct(self):
        assert not eval_formula(catalog()["q1"], assignment_from_string("TRF"))

    def test_constants(self):
        a = assignment_from_string("TFR")
        assert eval_formula(Const(True), a)
        assert not eval_formula(Const(False), a)

    def test_out_of_range_god(self):
        with pytest.raises(DomainError):
            eval_formula(Lit(4, GodType.RANDOM, True),
                         assignment_from_string("TFR"))

    def test_negated_literal(self):
        f = parse("g2!=R")
        assert eval_formula(f, assignment_from_string("RTF"))
        assert not eval_formula(f, assignment_from_string("TRF"))


class TestTruthSet:
    def test_q1_has_four_members(self):
        assert len(truth_set(catalog()["q1"], SPEC3)) == 4

    def test_q1_is_god2_not_random(self):
        assert truth_set(catalog()["q1"], SPEC3) == truth_set(
            parse("!(g2=R)"), SPEC3
        )

    def test_const_false_is_empty(self):
        assert truth_set(Const(False), SPEC3) == frozenset()


class TestToDnf:
    def test_not_q_rbar(self):
        f = Not(catalog()["q_Rbar"])
        assert conjunct_strings(f, SPEC3) == {"TRF", "FTR", "FRT"}

    def test_not_q1(self):
        assert conjunct_strings(Not(catalog()["q1"]), SPEC3) == {"TRF", "FRT"}

    def test_const_true_is_the_full_enumeration(self):
        assert len(conjunct_strings(Const(True), SPEC3)) == 6

    def test_conjuncts_are_complete_and_canonically_ordered(self):
        d = to_dnf(parse("g2=R | g1=T"), SPEC3)
        assert isinstance(d, Or)
        for conj in d.items:
            assert isinstance(conj, And)
            assert sorted(lit.god for lit in conj.items) == [1, 2, 3]
            assert all(lit.equal for lit in conj.items)
        listed = dnf_conjuncts(parse("g2=R | g1=T"), SPEC3)
        idx = [assignment_index(SPEC3, a) for a in listed]
        assert idx == sorted(idx)

    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_dnf_preserves_truth_set(self, data):
        spec = data.draw(st.sampled_from([SPEC3, PuzzleSpec(4, 1, 2), SPEC5]))
        f = data.draw(formulas(spec.n))
        assert truth_set(to_dnf(f, spec), spec) == truth_set(f, spec)


def formulas(n):
    literal = st.builds(
        Lit,
        st.integers(1, n),
        st.sampled_from(list(GodType)),
        st.booleans(),
    )
    consts = st.builds(Const, st.booleans())
    return st.recursive(
        literal | consts,
        lambda sub: st.builds(Not, sub)
        | st.builds(lambda a, b: And((a, b)), sub, sub)
        | st.builds(lambda a, b: Or((a, b)), sub, sub),
        max_leaves=8,
    )


class TestParsePrint:
    def test_mixed_precedence(self):
        f = parse("g1=R & g2=T & g3=F | g2=R")
        assert isinstance(f, Or)

    def test_round_trip_over_catalog(self):
        spec_of = {name: SPEC3 if "5" not in name else SPEC5
                   for name in catalog()}
        for name, q in catalog().items():
            spec = spec_of[name]
            again = parse(format_formula(q))
            assert truth_set(again, spec) == truth_set(q, spec), name

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as e:
            parse("g1=")
        assert e.value.column == 4

    def test_trailing_garbage_rejected(self):
        with pytest.raises(ParseError):
            parse("g1=T g2=F")

    def test_empty_input_rejected(self):
        with pytest.raises(ParseError):
            parse("   ")

    @settings(max_examples=150, deadline=None)
    @given(st.data())
    def test_print_parse_is_semantic_identity(self, data):
        f = data.draw(formulas(3))
        assert truth_set(parse(format_formula(f)), SPEC3) == truth_set(f, SPEC3)


class TestCatalog:
    CONJUNCTS = {
        "q_Rbar": {"RTF", "RFT", "TFR"},
        "q1": {"RTF", "RFT", "TFR", "FTR"},
        "qbar1R": {"TRF", "FRT", "RFT", "RTF"},
        "q1_5": {"RTTTR", "RTTRT", "TTTRR", "TTRTR", "TTRRT"},
        "qbar15R": {"TRTTR", "TRTRT", "TRRTT", "RTRTT", "RRTTT",
                    "RTTTR", "RTTRT"},
        "q2_5": {"RRTTT", "RTTTR", "RTTRT", "TTTRR"},
        "qbar25R": {"RRTTT", "RTRTT", "TTRTR", "TTRRT"},
        "q3_5": {"TTRTR", "TTRRT"},
        "qbar35R": {"RTRTT", "RRTTT", "TTRRT"},
        "q2_bar5": {"TRTTR", "TRRTT", "RTTTR"},
        "q2bar5R": {"RTRTT", "TRTTR", "TRRTT", "RTTTR"},
        "qbar2bar5R": {"TRTRT", "RTTRT", "RRTTT", "RTRTT", "TRRTT"},
    }

    @pytest.mark.parametrize("name,expected", sorted(CONJUNCTS.items()))
    def test_conjunct_sets(self, name, expected):
        spec = SPEC5 if "5" in name else SPEC3
        assert conjunct_strings(catalog()[name], spec) == expected

    def test_sizes_cited_in_the_literature(self):
        assert len(self.CONJUNCTS["q1_5"]) == 5
        assert len(self.CONJUNCTS["qbar15R"]) == 7
        assert len(self.CONJUNCTS["q_Rbar"]) == 3

    def test_companion_sets_are_negation_plus_randoms(self):
        """Each R-augmented companion equals the base question's complement
        (or the base itself, for the positive companions) within the
        possibility set where the strategy asks it, plus the possibilities
        where the addressed god is random."""
        c = catalog()

        def ctx(name, spec):
            return truth_set(c[name], spec) if name else frozenset(
                range(len(enumerate_assignments(spec)))
            )

        # (base, companion, context question, addressed god, negated?)
        cases = [
            ("q1", "qbar1R", None, 1, True, SPEC3),
            ("q1_5", "q15R", None, 1, False, SPEC5),
            ("q1_5", "qbar15R", None, 1, True, SPEC5),
            ("q2_5", "qbar25R", "q15R", 2, True, SPEC5),
            ("q3_5", "qbar35R", "qbar25R", 4, True, SPEC5),
            ("q2_bar5", "q2bar5R", "qbar15R", 3, False, SPEC5),
            ("q2_bar5", "qbar2bar5R", "qbar15R", 3, True, SPEC5),
        ]
        for base, companion, context, god, negated, spec in cases:
            enum = enumerate_assignments(spec)
            context_set = ctx(context, spec)
            base_f = Not(c[base]) if negated else c[base]
            survivors = truth_set(base_f, spec) & context_set
            randoms = frozenset(
                i for i in context_set
                if enum[i][god - 1] is GodType.RANDOM
            )
            assert truth_set(c[companion], spec) == survivors | randoms, companion

    def test_q1_alt_matches_its_printed_form(self):
        f = catalog()["q1_alt"]
        assert truth_set(f, SPEC3) == truth_set(
            parse("g3=R | (g1=R & g2=T & g3=F)"), SPEC3
        )


class TestBalance:
    def test_q1_splits_three_gods_evenly(self):
        members = frozenset(range(6))
        assert balance(catalog()["q1"], members, 1, SPEC3) == (4, 4)

    def test_q1_5_splits_five_gods_evenly(self):
        members = frozenset(range(10))
        assert balance(catalog()["q1_5"], members, 1, SPEC5) == (7, 7)

    def test_constant_question(self):
        members = frozenset(range(6))
        enum = enumerate_assignments(SPEC3)
        randoms = sum(enum[i][0] is GodType.RANDOM for i in members)
        assert balance(Const(True), members, 1, SPEC3) == (len(members), randoms)

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_sides_sum_to_size_plus_randoms(self, data):
        f = data.draw(formulas(3))
        god = data.draw(st.integers(1, 3))
        members = frozenset(data.draw(
            st.sets(st.integers(0, 5), min_size=1)
        ))
        enum = enumerate_assignments(SPEC3)
        t_side, f_side = balance(f, members, god, SPEC3)
        randoms = sum(enum[i][god - 1] is GodType.RANDOM for i in members)
        assert t_side + f_side == len(members) + randoms
