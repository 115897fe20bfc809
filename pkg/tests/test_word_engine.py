"""
Tests for word_engine - parsing, free reduction and evaluation.
"""

import pytest
import numpy as np
import os
import sys

from hypothesis import given, settings, strategies as st

# Add parent directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from catalog import builtin, default_catalog
from word_engine import (
    Assignment,
    UnknownName,
    UnknownVariable,
    Word,
    WordError,
    WordSyntaxError,
    X_GEN,
    Y_GEN,
    evaluate,
    evaluate_all,
    evaluate_block,
    is_identity_in,
    named_word,
    parse,
    reduce_letters,
)

x, X, y, Y = (X_GEN, 1), (X_GEN, -1), (Y_GEN, 1), (Y_GEN, -1)

letters = st.lists(st.sampled_from([x, X, y, Y]), max_size=30)


def naive_reduce(seq):
    """Cancel adjacent inverse pairs one at a time until none remain."""
    seq = list(seq)
    changed = True
    while changed:
        changed = False
        for i in range(len(seq) - 1):
            if seq[i][0] == seq[i + 1][0] and seq[i][1] == -seq[i + 1][1]:
                del seq[i:i + 2]
                changed = True
                break
    return tuple(seq)


class TestParse:
    """Test the word grammar"""

    def test_commutator(self):
        w = parse("[x,y]")
        assert w.letters == (X, Y, x, y)
        assert len(w) == 4

    def test_free_reduction_to_empty(self):
        assert parse("x x^-1").is_empty

    def test_engel2_length(self):
        w = parse("[x,y,y]")
        assert w.letters == (Y, X, y, x, Y, X, Y, x, y, y)
        assert len(w) == 10

    def test_capital_inverses(self):
        assert parse("X") == parse("x^-1")
        assert parse("xyXY") == parse("x*y*x^-1*y^-1")

    def test_powers(self):
        assert parse("x^3").letters == (x, x, x)
        assert parse("(xy)^-2").letters == (Y, X, Y, X)
        assert parse("x^0").is_empty

    def test_one_is_empty(self):
        assert parse("1").is_empty
        assert str(parse("1")) == "1"

    def test_nested_commutator(self):
        assert parse("[[x,y],y]") == parse("[x,y,y]")

    def test_whitespace(self):
        assert parse("  [ x , y ]  ") == parse("[x,y]")

    def test_source_kept_but_ignored_by_equality(self):
        assert parse("[x,y]").source == "[x,y]"
        assert parse("[x,y]") == parse("XYxy")

    def test_print_round_trip(self):
        w = parse("[x,y,y]")
        assert parse(str(w)) == w

    def test_inverse(self):
        w = parse("xyy")
        assert w.inverse().letters == (Y, Y, X)


class TestParseErrors:
    """Test positioned parse errors"""

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariable) as exc:
            parse("x z")
        assert exc.value.offset == 2

    def test_unbalanced_parenthesis(self):
        with pytest.raises(WordSyntaxError) as exc:
            parse("(xy")
        assert exc.value.offset == 3

    def test_stray_bracket(self):
        with pytest.raises(WordSyntaxError):
            parse("x]")

    def test_missing_exponent(self):
        with pytest.raises(WordSyntaxError) as exc:
            parse("x^")
        assert exc.value.offset == 2

    def test_empty_input(self):
        with pytest.raises(WordSyntaxError):
            parse("   ")

    def test_empty_parentheses(self):
        with pytest.raises(WordSyntaxError):
            parse("x()")

    def test_single_entry_commutator(self):
        with pytest.raises(WordSyntaxError):
            parse("[x]")

    def test_offsets_are_bytes(self):
        """A non-breaking space before the error takes two bytes"""
        with pytest.raises(WordSyntaxError) as exc:
            parse("x\u00a0)")
        assert exc.value.offset == 3

    def test_errors_are_value_errors(self):
        with pytest.raises(ValueError):
            parse("q")


class TestExpansionLimit:
    """Words that would expand past WORD_MAX_LENGTH are rejected while parsing"""

    def test_huge_exponent(self):
        with pytest.raises(WordError) as exc:
            parse("x^1000000000000")
        assert isinstance(exc.value, WordSyntaxError)
        assert exc.value.offset == 2

    def test_twenty_digit_exponent(self):
        with pytest.raises(WordSyntaxError) as exc:
            parse("(xy)^ " + "9" * 20)
        assert exc.value.offset == 6

    def test_large_commutator(self):
        with pytest.raises(WordSyntaxError) as exc:
            parse("[x^30000, y^30000]")
        assert exc.value.offset == 0

    def test_long_concatenation(self):
        with pytest.raises(WordSyntaxError):
            parse("x^60000 y^60000")

    def test_empty_base_any_exponent(self):
        assert parse("1^" + "9" * 20).is_empty

    def test_large_engel_name(self):
        with pytest.raises(WordError):
            named_word("engel40")

    def test_within_limit(self):
        assert len(parse("x^1000 y^-1000")) == 2000


class TestReduction:
    """Test free reduction against the pass-by-pass reference"""

    @given(letters)
    @settings(max_examples=300)
    def test_stack_reduction_matches_naive(self, seq):
        assert reduce_letters(seq) == naive_reduce(seq)

    @given(letters)
    def test_reduced_has_no_cancelling_pair(self, seq):
        reduced = reduce_letters(seq)
        for a, b in zip(reduced, reduced[1:]):
            assert not (a[0] == b[0] and a[1] == -b[1])

    @given(letters)
    def test_print_parse(self, seq):
        w = Word(reduce_letters(seq))
        assert parse(str(w)) == w


class TestNamedWords:
    """Test built-in word names"""

    def test_commutator(self):
        assert named_word("commutator") == parse("[x,y]")

    def test_engel(self):
        assert named_word("engel2") == parse("[x,y,y]")
        assert named_word("engel1") == parse("[x,y]")
        assert named_word("Engel3") == parse("[x,y,y,y]")

    def test_power(self):
        assert named_word("power2") == parse("x^2")

    def test_unknown(self):
        with pytest.raises(UnknownName):
            named_word("engel0")
        with pytest.raises(UnknownName):
            named_word("metabelian")


class TestEvaluate:
    """Test word evaluation on groups"""

    def setup_method(self):
        self.s3 = builtin("symmetric", 3)

    def test_empty_word(self):
        g = builtin("quaternion8")
        for a in range(g.order):
            assert evaluate(parse("1"), g, Assignment(a, 7 - a)) == g.identity_index

    def test_commutator_on_abelian(self):
        g = builtin("cyclic", 6)
        w = parse("[x,y]")
        assert all(evaluate(w, g, Assignment(a, b)) == g.identity_index for a in range(6) for b in range(6))

    def test_commutator_of_transpositions(self):
        """(01) and (12) have a 3-cycle as commutator"""
        # in symmetric(3) element 1 is (01) and element 3 is (0)(12)
        value = evaluate(parse("[x,y]"), self.s3, Assignment(1, 3))
        assert value in (2, 5)

    def test_block_matches_pointwise(self):
        w = parse("[x,y,y] x^2")
        block = evaluate_block(w, self.s3, [0, 2, 5])
        for i, a in enumerate([0, 2, 5]):
            for b in range(6):
                assert block[i, b] == evaluate(w, self.s3, Assignment(a, b))

    def test_evaluate_all_shape(self):
        table = evaluate_all(parse("xy"), self.s3)
        assert table.shape == (6, 6)
        assert np.array_equal(table, self.s3.table)


class TestIsIdentity:
    """Test identity detection"""

    def test_commutator_on_cyclic(self):
        assert is_identity_in(parse("[x,y]"), builtin("cyclic", 4))

    def test_commutator_on_s3(self):
        assert not is_identity_in(parse("[x,y]"), builtin("symmetric", 3))

    def test_engel2_on_dihedral4(self):
        assert is_identity_in(parse("[x,y,y]"), builtin("dihedral", 4))

    def test_exponent_law(self):
        """x^4 vanishes on quaternion8, x^2 does not"""
        g = builtin("quaternion8")
        assert is_identity_in(named_word("power4"), g)
        assert not is_identity_in(named_word("power2"), g)


class TestEvaluationInvariants:
    """Evaluation agrees with group structure and ignores free reduction"""

    def test_commutator_vanishes_iff_commuting(self):
        w = named_word("commutator")
        for entry in default_catalog(24):
            g = entry.build()
            values = evaluate_all(w, g)
            commuting = g.table == g.table.T
            assert np.array_equal(values == g.identity_index, commuting), entry.name

    @given(
        seq=letters,
        group=st.sampled_from([("symmetric", (3,)), ("quaternion8", ()), ("dihedral", (5,))]),
        data=st.data(),
    )
    @settings(max_examples=200, deadline=None)
    def test_unreduced_fold_matches_reduced(self, seq, group, data):
        g = builtin(group[0], *group[1])
        a = data.draw(st.integers(0, g.order - 1))
        b = data.draw(st.integers(0, g.order - 1))
        values = {x: a, X: int(g.inverse[a]), y: b, Y: int(g.inverse[b])}
        result = g.identity_index
        for letter in seq:
            result = int(g.table[result, values[letter]])
        assert evaluate(Word(reduce_letters(seq)), g, Assignment(a, b)) == result
