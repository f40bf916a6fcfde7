import itertools
import random
from collections import Counter

import pytest

from rps.cluster import WeightEnumerator, build_enumerator, determinant, overlaps
from rps.errors import UnsupportedInstanceError, UsageError
from rps.exact import MultiPoly
from rps.words import InstanceSpec, count_occurrences

H, T = 0, 1


def t_series(F, N):
    """Coefficients of t^0..t^N of F as polynomials in the z's (exponent vectors)."""
    vars = F.vars

    def slices(p):
        out = [MultiPoly.constant(0, vars) for _ in range(N + 1)]
        for e, c in p.terms.items():
            if e[0] <= N:
                out[e[0]] = out[e[0]] + MultiPoly({(0,) + e[1:]: c}, vars)
        return out

    num, den = slices(F.value.numerator), slices(F.value.denominator)
    assert den[0] == MultiPoly.constant(1, vars)
    f = []
    for n in range(N + 1):
        acc = num[n]
        for j in range(1, n + 1):
            acc = acc - den[j] * f[n - j]
        f.append(acc)
    return f


def classify(spec, n):
    return Counter(
        tuple(count_occurrences(w, p) for p in spec.patterns)
        for w in itertools.product(range(spec.alphabet_size), repeat=n)
    )


@pytest.mark.parametrize(
    "pv, pu, expected",
    [((H, T), (T, T), {1}), ((T, T), (H, T), set()), ((T, T), (T, T), {1}), ((H, T, H), (H, T, H), {1})],
)
def test_overlaps(pv, pu, expected):
    assert overlaps(pv, pu) == frozenset(expected)


def test_overlaps_rejects_empty():
    with pytest.raises(UsageError):
        overlaps((), (H,))


def test_tt_avoiding_at_z_zero():
    F = build_enumerator(InstanceSpec.from_words(2, ["TT"], [1]))
    G = F.value.subs({"z1": 0})
    coeffs = [f.constant_term() for f in t_series(WeightEnumerator(G, F.spec), 4)]
    assert coeffs == [1, 2, 3, 5, 8]
    t = MultiPoly.var("t", F.vars)
    # (1 + t) / (1 - t - t^2) up to a common factor
    assert G.numerator * (1 - t - t * t) == G.denominator * (1 + t)


def test_stanley_enumerator():
    F = build_enumerator(InstanceSpec.pair(2, "HT", "TT"))
    assert F.to_dict() == {
        "numerator": "1 + 1*t - 1*t*z2",
        "denominator": "1 - 1*t - 1*t*z2 - 1*t^2*z1 + 1*t^2*z2",
    }
    f3 = t_series(F, 4)[3]
    assert f3.terms.get((0, 1, 1)) == 1  # only HTT
    assert WeightEnumerator.from_dict(F.to_dict(), F.spec) == F


@pytest.mark.parametrize("words", [["HT", "TT"], ["HHT", "THT"], ["ab", "bc", "cca"]])
def test_all_marks_one_gives_all_words(words):
    m = 3 if "a" in words[0] else 2
    F = build_enumerator(InstanceSpec.from_words(m, words, [1] * len(words)))
    G = F.value.subs({v: 1 for v in F.vars[1:]})
    t = MultiPoly.var("t", F.vars)
    assert G.numerator * (1 - t * m) == G.denominator


def test_factor_containment_unsupported():
    with pytest.raises(UnsupportedInstanceError):
        build_enumerator(InstanceSpec.pair(2, "T", "TT"))


def test_determinant_small():
    vars = ("t",)
    t = MultiPoly.var("t", vars)
    one = MultiPoly.constant(1, vars)
    assert determinant([[one, t], [t, one]]) == 1 - t * t
    assert determinant([[t * 0, one], [one, t * 0]]) == one * -1


def _specs_for_master():
    for k1, k2 in [(1, 2), (2, 2), (2, 3), (3, 3)]:
        for a in itertools.product(range(2), repeat=k1):
            for b in itertools.product(range(2), repeat=k2):
                if a < b or k1 != k2:
                    spec = InstanceSpec(2, (a, b), (1, -1))
                    if not spec.has_factor_containment():
                        yield spec, 10
    rng = random.Random(11)
    made = 0
    while made < 6:
        words = {tuple(rng.randrange(3) for _ in range(rng.randint(1, 3))) for _ in range(rng.randint(1, 3))}
        spec = InstanceSpec(3, tuple(sorted(words)), [1] * len(words))
        if not spec.has_factor_containment():
            made += 1
            yield spec, 10


def test_bivariate_master():
    for spec, N in _specs_for_master():
        F = build_enumerator(spec)
        series = t_series(F, N)
        for n in range(N + 1):
            got = {e[1:]: c for e, c in series[n].terms.items()}
            assert got == dict(classify(spec, n)), (spec, n)
        bound = sum(len(p) for p in spec.patterns) + 1
        assert F.value.denominator.degree_in("t") <= bound
