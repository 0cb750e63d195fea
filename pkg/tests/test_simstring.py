import pytest
from hypothesis import given, settings, strategies as st

from lexclean.simstring import (bigrams, blcs, blcsr, diacritical_symmetry, edit_distance,
                                edit_similarity, enelvo_lcsr, lcs_len, lcsr,
                                modified_edit_distance, strip_diacritics)

from oracles import blcs_brute, edit_distance_brute, lcs_brute

short = st.text(alphabet="abcdé", max_size=7)


class TestLcs:
    @pytest.mark.parametrize("a,b,expected", [("abcd", "acd", 3), ("abc", "abc", 3), ("abc", "xyz", 0), ("", "abc", 0)])
    def test_values(self, a, b, expected):
        assert lcs_len(a, b) == expected

    @settings(max_examples=200, deadline=None)
    @given(short, short)
    def test_matches_oracle(self, a, b):
        assert lcs_len(a, b) == lcs_brute(a, b)

    @given(short, short)
    def test_symmetric(self, a, b):
        assert lcs_len(a, b) == lcs_len(b, a)


class TestBlcs:
    @pytest.mark.parametrize("a,b,expected", [("ABCD", "ACD", 1), ("abc", "abc", 2), ("ab", "cd", 0), ("a", "a", 0)])
    def test_values(self, a, b, expected):
        assert blcs(a, b) == expected

    def test_bigrams_overlap(self):
        assert bigrams("abcd") == ["ab", "bc", "cd"]
        assert bigrams("a") == []

    @settings(max_examples=200, deadline=None)
    @given(short, short)
    def test_matches_oracle(self, a, b):
        assert blcs(a, b) == blcs_brute(a, b)


class TestBlcsr:
    def test_values(self):
        assert blcsr("ABCD", "ACD") == pytest.approx(1 / 3, abs=0)
        assert blcsr("abcd", "abcd") == 1.0
        assert blcsr("ab", "cd") == 0.0

    def test_single_characters(self):
        assert blcsr("a", "a") == 1.0
        assert blcsr("a", "b") == 0.0
        assert blcsr("", "") == 1.0

    @given(short, short)
    def test_unit_interval(self, a, b):
        assert 0.0 <= blcsr(a, b) <= 1.0


class TestLcsr:
    def test_values(self):
        assert lcsr("abcd", "acd") == 0.75
        assert lcsr("a", "a") == 1.0
        assert lcsr("a", "b") == 0.0

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            lcsr("", "a")


class TestEditDistance:
    @pytest.mark.parametrize("a,b,expected", [("w", "w", 0), ("release", "released", 1), ("kitten", "sitting", 3),
                                              ("", "abc", 3)])
    def test_values(self, a, b, expected):
        assert edit_distance(a, b) == expected
        assert edit_distance_brute(a, b) == expected

    @settings(max_examples=200, deadline=None)
    @given(short, short)
    def test_matches_oracle(self, a, b):
        assert edit_distance(a, b) == edit_distance_brute(a, b)

    @given(short, short, short)
    def test_triangle_inequality(self, a, b, c):
        assert edit_distance(a, c) <= edit_distance(a, b) + edit_distance(b, c)

    def test_code_points_not_bytes(self):
        # one accented letter is one substitution, however many UTF-8 bytes it takes
        assert edit_distance("café", "cafe") == 1
        assert edit_distance("বাংলা", "বাংলে") == 1


class TestEditSimilarity:
    def test_values(self):
        assert edit_similarity("abc", "abc") == 1.0
        assert edit_similarity("abcd", "acd") == 0.75
        assert edit_similarity("ab", "xy") == 0.0


class TestDiacritics:
    def test_strip(self):
        assert strip_diacritics("café") == "cafe"
        assert strip_diacritics("naïve") == "naive"

    def test_symmetry(self):
        assert diacritical_symmetry("cafe", "café") == 1
        assert diacritical_symmetry("abc", "abc") == 0
        assert diacritical_symmetry("abc", "xyz") == 0

    def test_modified_edit_distance(self):
        assert modified_edit_distance("café", "cafe") == 0
        assert modified_edit_distance("abc", "abc") == 0
        assert modified_edit_distance("abcd", "acd") == 1

    def test_enelvo_lcsr(self):
        assert enelvo_lcsr("abcd", "acd") == 0.75
        assert enelvo_lcsr("café", "cafe") == 1.0

    @given(short, short)
    def test_med_bounds(self, a, b):
        med = modified_edit_distance(a, b)
        assert 0 <= med <= edit_distance(a, b)
        assert 0.0 <= enelvo_lcsr(a, b) <= 1.0
