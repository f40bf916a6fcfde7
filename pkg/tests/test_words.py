import itertools
import random

import pytest

from rps.errors import UsageError
from rps.words import (
    LETTER_PERMS,
    LETTER_PERMS_AND_REVERSAL,
    InstanceSpec,
    PatternAutomaton,
    canonical_pairs,
    count_occurrences,
    exhaustive_terms,
    oracle_terms,
    parse_word,
    total_pairs,
)

H, T = 0, 1


def test_parse_word_aliases():
    assert parse_word("HTT", 2) == ((0, 1, 1), True)
    assert parse_word("abb", 2) == ((0, 1, 1), False)
    assert parse_word("cab", 3) == ((2, 0, 1), False)
    with pytest.raises(UsageError):
        parse_word("abd", 3)
    with pytest.raises(UsageError):
        parse_word("", 2)


@pytest.mark.parametrize(
    "w, p, n",
    [((T, T, T), (T, T), 2), ((H, T, T), (H, T), 1), ((H, T, T), (T, T), 1), ((), (T, T), 0)],
)
def test_count_occurrences(w, p, n):
    assert count_occurrences(w, p) == n


def test_spec_validation():
    with pytest.raises(UsageError):
        InstanceSpec.pair(2, "HT", "HT")
    with pytest.raises(UsageError):
        InstanceSpec(2, ((0, 2),), (1,))
    with pytest.raises(UsageError):
        InstanceSpec(2, ((0,),), (0,))
    with pytest.raises(UsageError):
        InstanceSpec.from_words(2, ["HT", "ab"], [1, -1])


def test_spec_round_trip_and_text():
    s = InstanceSpec.pair(2, "HT", "TT", 2, 3, 1)
    assert s.describe() == "2*#HT - 3*#TT = 1"
    assert InstanceSpec.from_dict(s.to_dict()) == s
    assert s.step_bounds() == (-3, 2)


@pytest.mark.parametrize(
    "spec, expected",
    [
        (InstanceSpec.pair(2, "HT", "TT"), [1, 2, 2, 3, 6]),
        (InstanceSpec.pair(2, "H", "T"), [1, 0, 2, 0, 6]),
        (InstanceSpec.from_words(2, ["TT"], [1]), [1, 2, 3, 5, 8]),
    ],
)
def test_oracle_examples(spec, expected):
    assert oracle_terms(spec, 4) == expected


def test_stanley_length_four_words():
    spec = InstanceSpec.pair(2, "HT", "TT")
    good = sorted(
        "".join("HT"[x] for x in w)
        for w in itertools.product(range(2), repeat=4)
        if count_occurrences(w, (H, T)) == count_occurrences(w, (T, T))
    )
    assert good == ["HHHH", "HHTT", "HTTH", "THHH", "THTT", "TTHT"]
    assert exhaustive_terms(spec, 4)[4] == 6


def test_automaton_counts_overlaps():
    aut = PatternAutomaton(((T, T), (H, T)), 2)
    assert tuple(aut.run((H, T, T, T))) == (2, 1)


def _all_pair_specs(m, k):
    words = list(itertools.product(range(m), repeat=k))
    for a, b in itertools.combinations(words, 2):
        yield InstanceSpec(m, (a, b), (1, -1))


@pytest.mark.parametrize("m, k, N", [(2, 1, 12), (2, 2, 12), (2, 3, 12), (3, 1, 7), (3, 2, 7)])
def test_oracle_matches_exhaustive(m, k, N):
    for spec in _all_pair_specs(m, k):
        assert oracle_terms(spec, N) == exhaustive_terms(spec, N), spec


def test_oracle_matches_exhaustive_random():
    rng = random.Random(7)
    for _ in range(25):
        m = rng.choice((2, 3))
        s = rng.randint(1, 3)
        words = set()
        while len(words) < s:
            words.add(tuple(rng.randrange(m) for _ in range(rng.randint(1, 3))))
        weights = [rng.choice((-2, -1, 1, 2)) for _ in words]
        spec = InstanceSpec(m, tuple(sorted(words)), weights, rng.randint(-1, 1))
        N = 11 if m == 2 else 7
        assert oracle_terms(spec, N) == exhaustive_terms(spec, N), spec


def test_all_zero_weights_free_target():
    # r beyond the reachable range gives nothing
    spec = InstanceSpec.pair(2, "HT", "TT", r=9)
    assert oracle_terms(spec, 8) == [0] * 9


@pytest.mark.parametrize("m, k", [(2, 2), (2, 3), (3, 2)])
def test_counts_invariant_under_symmetry(m, k):
    for cls in canonical_pairs(m, k, LETTER_PERMS_AND_REVERSAL):
        values = {tuple(oracle_terms(InstanceSpec(m, pair, (1, -1)), 8)) for pair in cls.orbit_members}
        assert len(values) == 1


def test_canonical_counts_small():
    assert len(canonical_pairs(2, 2, LETTER_PERMS_AND_REVERSAL)) == 3
    assert len(canonical_pairs(2, 2, LETTER_PERMS)) == 4
    assert len(canonical_pairs(2, 3, LETTER_PERMS_AND_REVERSAL)) == 11


@pytest.mark.parametrize("m, k", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)])
@pytest.mark.parametrize("symmetry", [LETTER_PERMS, LETTER_PERMS_AND_REVERSAL])
def test_orbits_partition_all_pairs(m, k, symmetry):
    classes = canonical_pairs(m, k, symmetry)
    members = [p for c in classes for p in c.orbit_members]
    assert len(members) == len(set(members)) == total_pairs(m, k)
    assert [c.representative for c in classes] == sorted(c.representative for c in classes)
    assert all(c.representative == min(c.orbit_members) for c in classes)


def test_letter_perms_alone_miss_published_counts():
    got = [len(canonical_pairs(m, k, LETTER_PERMS)) for m, k in [(2, 2), (2, 3), (3, 2)]]
    assert got == [4, 16, 8]
