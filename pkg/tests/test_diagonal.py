import random

import pytest

from rps.cluster import build_enumerator
from rps.errors import UsageError
from rps.exact import LaurentPoly
from rps.words import InstanceSpec, oracle_terms
from rps.diagonal import diagonal_terms, expand_diagonal


def random_spec(rng, m, max_len=3):
    while True:
        s = rng.randint(1, 3)
        words = {tuple(rng.randrange(m) for _ in range(rng.randint(1, max_len))) for _ in range(s)}
        weights = [rng.choice((-2, -1, 1, 2)) for _ in words]
        spec = InstanceSpec(m, tuple(sorted(words)), weights, rng.randint(-2, 2))
        if not spec.has_factor_containment():
            return spec


def test_stanley_laurent_coefficient():
    d = expand_diagonal(build_enumerator(InstanceSpec.pair(2, "HT", "TT")), 6)
    assert d.laurent_coefficients[2] == LaurentPoly(-1, [1, 2, 1])
    assert d.extracted[:5] == (1, 2, 2, 3, 6)


def test_single_letters_central_binomial():
    F = build_enumerator(InstanceSpec.pair(2, "H", "T"))
    assert diagonal_terms(F, 8) == [1, 0, 2, 0, 6, 0, 20, 0, 70]


def test_unreachable_target_is_zero():
    spec = InstanceSpec.pair(2, "HT", "TT", r=20)
    assert diagonal_terms(build_enumerator(spec), 9) == [0] * 10


def test_negative_order_rejected():
    with pytest.raises(UsageError):
        expand_diagonal(build_enumerator(InstanceSpec.pair(2, "H", "T")), -1)


@pytest.mark.parametrize("seed", range(12))
def test_diagonal_equals_oracle_random(seed):
    rng = random.Random(seed)
    spec = random_spec(rng, rng.choice((2, 3)))
    N = 14
    d = expand_diagonal(build_enumerator(spec), N)
    assert list(d.extracted) == oracle_terms(spec, N)
    lo, hi = spec.step_bounds()
    m = spec.alphabet_size
    for n, c in enumerate(d.laurent_coefficients):
        assert sum(c.coeffs) == m**n
        if not c.is_zero():
            assert lo * n <= c.low and c.high <= hi * n
        assert 0 <= d.extracted[n] <= m**n
