"""Palindromic structure: counts, central words, witnesses, lengths."""

import functools
import json
import pathlib
import random

import pytest

from sturmian.errors import CapExceededError
from sturmian.ostrowski import OstrowskiRep, decode, is_legal, is_valid
from sturmian.palindromes import (
    PalindromeOccurrence,
    PalindromicTree,
    central_word,
    construct_hard_prefix,
    distinct_palindromic_factors,
    is_palindrome,
    maximal_palindromic_extension,
    occurrence_witness,
    pal_length,
    pal_length_profile,
    palindrome_factor_count,
    palindromes_starting_at,
    z_vector,
    zd_max_gap,
)
from sturmian.words import BinaryWord, DirectiveSequence, characteristic_prefix

FIB = DirectiveSequence.parse("fib")
D2 = DirectiveSequence.parse("2,(2)")
D8 = DirectiveSequence.parse("1,1,1,1,8,(1)")
DATA = pathlib.Path(__file__).parent / "data"


def bw(text):
    return BinaryWord.from_string(text)


def brute_palindromic_factors(raw):
    return {raw[i:j] for i in range(len(raw)) for j in range(i + 1, len(raw) + 1) if raw[i:j] == raw[i:j][::-1]}


class TestIsPalindrome:
    def test_examples(self):
        assert is_palindrome(bw("01001010010"))
        assert is_palindrome(bw(""))
        assert not is_palindrome(bw("ab"))


class TestTree:
    def test_matches_brute_force(self):
        rng = random.Random(90125)
        for _ in range(120):
            n = rng.randrange(17)
            raw = bytes(rng.randrange(2) for _ in range(n))
            word = BinaryWord(raw)
            tree = PalindromicTree()
            for stop in range(1, n + 1):
                grew = tree.add(raw[stop - 1])
                seen = brute_palindromic_factors(raw[:stop])
                assert tree.distinct_count == len(seen)
                assert grew == (len(seen) > len(brute_palindromic_factors(raw[: stop - 1])))
                suffixes = sorted(
                    (len(p) for p in seen if raw[:stop].endswith(p)),
                    reverse=True,
                )
                assert tree.suffix_palindrome_lengths() == suffixes
            assert PalindromicTree(word).distinct_count == tree.distinct_count

    def test_richness_bound(self):
        rng = random.Random(5)
        for _ in range(50):
            n = rng.randrange(30)
            word = BinaryWord(bytes(rng.randrange(2) for _ in range(n)))
            count, rich = distinct_palindromic_factors(word)
            assert count <= n + 1
            assert rich == (count == n + 1)


class TestFactorCounts:
    def test_fibonacci_small(self):
        assert palindrome_factor_count(FIB, 1) == 2
        assert palindrome_factor_count(FIB, 2) == 1
        assert palindrome_factor_count(FIB, 3) == 2

    def test_parity_pattern(self):
        for d in (FIB, D2):
            for n in range(1, 21):
                expect = 2 if n % 2 else 1
                assert palindrome_factor_count(d, n) == expect

    def test_length_validation(self):
        with pytest.raises(ValueError):
            palindrome_factor_count(FIB, 0)

    def test_cap(self):
        with pytest.raises(CapExceededError):
            palindrome_factor_count(FIB, 10, cap=32)


class TestRichness:
    def test_example(self):
        assert distinct_palindromic_factors(bw("abaabb")) == (7, True)

    def test_characteristic_prefixes_rich(self):
        raw = characteristic_prefix(FIB, 300).raw
        tree = PalindromicTree()
        for i, symbol in enumerate(raw, start=1):
            tree.add(symbol)
            assert tree.distinct_count == i

    def test_growth_at_most_one(self):
        rng = random.Random(777)
        for _ in range(60):
            n = rng.randrange(1, 40)
            raw = bytes(rng.randrange(2) for _ in range(n))
            tree = PalindromicTree()
            prev = 0
            for symbol in raw:
                tree.add(symbol)
                assert tree.distinct_count - prev in (0, 1)
                prev = tree.distinct_count

    def test_factors_of_rich_words_are_rich(self):
        raw = characteristic_prefix(FIB, 200)
        rng = random.Random(31337)
        for _ in range(40):
            i = rng.randrange(200)
            j = rng.randrange(i, 201)
            _, rich = distinct_palindromic_factors(raw[i:j])
            assert rich


class TestCentralWords:
    def test_fibonacci_level_four(self):
        assert central_word(FIB, 4).to_string("ab") == "abaababaaba"

    def test_d2_examples(self):
        assert central_word(D2, 1, 1).to_string("ab") == "aabaa"
        assert central_word(D2, 2).to_string("ab") == "aabaabaa"
        assert central_word(D2, 2, 1).to_string("ab") == "aabaabaaabaabaa"
        assert central_word(D2, 3).to_string("ab") == "aabaabaaabaabaaabaabaa"

    def test_level_zero_is_empty(self):
        assert len(central_word(FIB, 0)) == 0

    def test_repetition_validation(self):
        with pytest.raises(ValueError):
            central_word(FIB, 2, 2)
        with pytest.raises(ValueError):
            central_word(FIB, 2, -1)
        with pytest.raises(ValueError):
            central_word(DirectiveSequence.parse("2,2"), 5)

    def test_they_are_palindromic_prefixes(self):
        for d in (FIB, D2):
            for m in range(9):
                for j in range(d.digit(m) + 1):
                    c = central_word(d, m, j)
                    assert is_palindrome(c)
                    assert c == characteristic_prefix(d, len(c))

    def test_complete_list_of_palindromic_prefixes(self):
        for d in (FIB, D2):
            limit = len(central_word(d, 8))
            raw = characteristic_prefix(d, limit).raw
            actual = {
                n for n in range(limit + 1) if raw[:n] == raw[:n][::-1]
            }
            claimed = set()
            for m in range(9):
                for j in range(d.digit(m) + 1):
                    n = len(central_word(d, m, j))
                    if n <= limit:
                        claimed.add(n)
            assert claimed == actual


class TestExtension:
    def test_single_letter(self):
        ext = maximal_palindromic_extension(PalindromeOccurrence(FIB, 12, 13))
        assert (ext.p1, ext.p2) == (11, 14)

    def test_d2_example(self):
        occ = PalindromeOccurrence(D2, 3, 5)
        assert occ.factor().to_string("ab") == "aa"
        ext = maximal_palindromic_extension(occ)
        assert (ext.p1, ext.p2) == (0, 8)
        assert ext.factor() == central_word(D2, 2)

    def test_non_palindromic_rejected(self):
        with pytest.raises(ValueError):
            maximal_palindromic_extension(PalindromeOccurrence(FIB, 0, 2))

    def test_extensions_are_central_word_occurrences(self):
        # widening any palindromic occurrence far enough lands on an
        # occurrence of some palindromic prefix of the same word
        for d in (FIB, D2):
            raw = characteristic_prefix(d, 120).raw
            for p1 in range(120):
                for p2 in range(p1 + 1, 121):
                    if raw[p1:p2] != raw[p1:p2][::-1]:
                        continue
                    ext = maximal_palindromic_extension(
                        PalindromeOccurrence(d, p1, p2)
                    )
                    assert ext.p1 <= p1 and p2 <= ext.p2
                    assert p1 - ext.p1 == ext.p2 - p2
                    factor = ext.factor()
                    assert factor == characteristic_prefix(d, len(factor))


class TestWitness:
    def test_worked_example(self):
        w = occurrence_witness(PalindromeOccurrence(FIB, 12, 13))
        assert w.to_record() == {
            "p1": 12,
            "p2": 13,
            "rep_p1": "10101",
            "m": 1,
            "y_m": 1,
            "rep_p2": "10110",
            "fallback_used": False,
        }

    def test_prefix_occurrence(self):
        w = occurrence_witness(PalindromeOccurrence(FIB, 0, 11))
        assert w.rep_p1.render() == "0"
        assert (w.m, w.y_m) == (3, 1)
        assert w.rep_p2.render() == "1111"

    def test_validation(self):
        with pytest.raises(ValueError):
            occurrence_witness(PalindromeOccurrence(FIB, 5, 5))
        with pytest.raises(ValueError):
            occurrence_witness(PalindromeOccurrence(FIB, 0, 2))

    def test_every_occurrence_has_structured_witness(self):
        for d in (FIB, D2):
            raw = characteristic_prefix(d, 120).raw
            for p1 in range(120):
                for p2 in range(p1 + 1, 121):
                    if raw[p1:p2] != raw[p1:p2][::-1]:
                        continue
                    w = occurrence_witness(PalindromeOccurrence(d, p1, p2))
                    assert decode(w.rep_p1) == p1
                    assert is_legal(w.rep_p1)
                    assert decode(w.rep_p2) == p2
                    assert is_valid(w.rep_p2)
                    assert w.y_m >= 0
                    # mirrored digit structure around the pivot
                    for i in range(w.m):
                        assert w.rep_p2.digit(i) == d.digit(i) - w.rep_p1.digit(i)
                    assert w.rep_p2.digit(w.m) == w.y_m
                    top = max(len(w.rep_p1.digits), len(w.rep_p2.digits))
                    for i in range(w.m + 1, top):
                        assert w.rep_p2.digit(i) == w.rep_p1.digit(i)

    def test_z_vectors_differ_at_one_index_at_most(self):
        raw = characteristic_prefix(FIB, 100).raw
        for p1 in range(100):
            for p2 in range(p1 + 1, 101):
                if raw[p1:p2] != raw[p1:p2][::-1]:
                    continue
                w = occurrence_witness(PalindromeOccurrence(FIB, p1, p2))
                za = z_vector(w.rep_p1)
                zb = z_vector(w.rep_p2)
                width = max(len(za), len(zb))
                diffs = sum(
                    (za[i] if i < len(za) else 0) != (zb[i] if i < len(zb) else 0)
                    for i in range(width)
                )
                assert diffs <= 1


class TestZVectors:
    def test_examples(self):
        assert z_vector(OstrowskiRep.parse("140000", D8)) == (0, 0, 0, 0, 4, 0)
        assert z_vector(OstrowskiRep.parse("1011221", D8)) == (0, 1, 1, 0, 1, 0, 0)
        assert z_vector(OstrowskiRep(FIB, ())) == ()

    def test_directive_bound_required(self):
        short = DirectiveSequence.parse("2,2")
        with pytest.raises(ValueError):
            z_vector(OstrowskiRep(short, (1, 1, 1)))


class TestZdGap:
    def test_spike_directive(self):
        gap, witness = zd_max_gap(D8, 101)
        assert gap == 3
        assert witness is not None
        assert witness.digit_index == 4
        assert decode(witness.rep_a) == witness.n == decode(witness.rep_b)
        assert is_valid(witness.rep_a) and is_valid(witness.rep_b)
        za, zb = z_vector(witness.rep_a), z_vector(witness.rep_b)
        va = za[4] if len(za) > 4 else 0
        vb = zb[4] if len(zb) > 4 else 0
        assert abs(va - vb) == 3

    def test_fibonacci_stays_low(self):
        gap, witness = zd_max_gap(FIB, 150)
        assert gap == 2
        assert witness is not None

    def test_zero_range(self):
        assert zd_max_gap(FIB, 0) == (0, None)

    def test_cap(self):
        with pytest.raises(CapExceededError):
            zd_max_gap(FIB, 10, cap=9)


def brute_pal_length(raw):
    @functools.lru_cache(maxsize=None)
    def go(s):
        if not s:
            return 0
        best = None
        for cut in range(1, len(s) + 1):
            if s[:cut] == s[:cut][::-1]:
                rest = 1 + go(s[cut:])
                if best is None or rest < best:
                    best = rest
        return best

    return go(raw)


class TestPalLength:
    def test_examples(self):
        assert pal_length(bw("abaabb")) == 3
        assert pal_length(bw("ab")) == 2
        assert pal_length(bw("")) == 0

    def test_one_iff_palindrome(self):
        rng = random.Random(424)
        for _ in range(200):
            n = rng.randrange(1, 15)
            word = BinaryWord(bytes(rng.randrange(2) for _ in range(n)))
            assert (pal_length(word) == 1) == is_palindrome(word)

    def test_matches_brute_force(self):
        rng = random.Random(20260819)
        for _ in range(300):
            n = rng.randrange(15)
            raw = bytes(rng.randrange(2) for _ in range(n))
            assert pal_length(BinaryWord(raw)) == brute_pal_length(raw)

    def test_subadditive(self):
        rng = random.Random(88)
        for _ in range(100):
            u = bytes(rng.randrange(2) for _ in range(rng.randrange(12)))
            v = bytes(rng.randrange(2) for _ in range(rng.randrange(12)))
            assert pal_length(BinaryWord(u + v)) <= pal_length(
                BinaryWord(u)
            ) + pal_length(BinaryWord(v))


class TestProfile:
    def test_first_record(self):
        assert pal_length_profile(FIB, 1) == [(1, 1)]

    def test_fibonacci_golden(self):
        expected = [
            tuple(pair)
            for pair in json.loads((DATA / "fib_profile_records.json").read_text())
        ]
        assert pal_length_profile(FIB, 100_000) == expected

    def test_record_structure(self):
        inc = DirectiveSequence.parse("1,2,3,4,5,6,7,8,(9)")
        records = pal_length_profile(inc, 20_000)
        positions = [pos for pos, _ in records]
        values = [val for _, val in records]
        assert positions == sorted(set(positions))
        assert values == list(range(1, len(values) + 1))
        assert values[-1] >= 4

    def test_profile_matches_direct_dp(self):
        raw = characteristic_prefix(FIB, 300)
        records = dict(pal_length_profile(FIB, 300))
        best = 0
        for i in range(1, 301):
            value = pal_length(raw[:i])
            if value > best:
                best = value
                assert records[i] == value

    def test_validation_and_cap(self):
        with pytest.raises(ValueError):
            pal_length_profile(FIB, 0)
        with pytest.raises(CapExceededError):
            pal_length_profile(FIB, 300_000)


class TestHardPrefix:
    def test_zero_budget(self):
        assert construct_hard_prefix(FIB, 0) == 1

    def test_budget_one(self):
        d = DirectiveSequence.parse("8,8,1,(1)")
        n = construct_hard_prefix(d, 1)
        assert n == 40
        assert pal_length(characteristic_prefix(d, n)) == 2

    def test_budget_two(self):
        d = DirectiveSequence.parse("14,14,14,(1)")
        n = construct_hard_prefix(d, 2)
        assert n == 1589
        assert pal_length(characteristic_prefix(d, n)) == 3

    def test_small_digits_rejected(self):
        with pytest.raises(ValueError):
            construct_hard_prefix(FIB, 1)
        with pytest.raises(ValueError):
            construct_hard_prefix(FIB, -1)


class TestStartingAt:
    def test_basic(self):
        w = bw("aabaa")
        assert palindromes_starting_at(w, 0, 5) == [1, 2, 5]
        assert palindromes_starting_at(w, 1, 3) == [1, 3]
        assert palindromes_starting_at(w, 2, 5) == [1]

    def test_position_validation(self):
        with pytest.raises(ValueError):
            palindromes_starting_at(bw("ab"), 2, 1)
        with pytest.raises(ValueError):
            palindromes_starting_at(bw("ab"), -1, 1)

    def test_logarithmic_density(self):
        # with the empty word added, at most 2 + log_{4/3} maxlen
        # palindromes can begin at any one position
        import math

        maxlen = 100
        bound = 2 + math.log(maxlen) / math.log(4 / 3)
        w = characteristic_prefix(FIB, 2000)
        for i in range(len(w)):
            lengths = palindromes_starting_at(w, i, maxlen)
            assert len(lengths) + 1 <= bound
            for shorter, longer in zip(lengths, lengths[1:]):
                assert 3 * longer > 4 * shorter

    def test_nested_pair_periodicity(self):
        # two palindromes at one position force the longer one to be
        # periodic with period equal to the length difference
        raw = characteristic_prefix(FIB, 400).raw
        w = BinaryWord(raw)
        rng = random.Random(2024)
        for _ in range(60):
            i = rng.randrange(300)
            lengths = palindromes_starting_at(w, i, 100)
            for shorter, longer in zip(lengths, lengths[1:]):
                period = longer - shorter
                assert all(
                    raw[i + k] == raw[i + k + period]
                    for k in range(longer - period)
                )
