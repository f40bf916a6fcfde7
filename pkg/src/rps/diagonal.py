"""Constant-term extraction: substitute z_i -> s^(c_i) in the weight-enumerator,
expand in t over Laurent polynomials in s, read off the s^r coefficient."""

from __future__ import annotations

from dataclasses import dataclass

from .cluster import WeightEnumerator
from .errors import UsageError
from .exact import LaurentPoly, MultiPoly, TruncSeries, series_invert


@dataclass(frozen=True)
class DiagonalSeries:
    spec: object
    order: int
    laurent_coefficients: tuple
    extracted: tuple


def _specialize(poly: MultiPoly, weights, N) -> TruncSeries:
    """poly(t, s^c_1, ..., s^c_k) as a t-series with Laurent coefficients, to order N."""
    coeffs = [LaurentPoly() for _ in range(N + 1)]
    for e, c in poly.terms.items():
        n = e[0]
        if n > N:
            continue
        k = sum(ci * ei for ci, ei in zip(weights, e[1:]))
        coeffs[n] = coeffs[n] + LaurentPoly.monomial(k, c)
    return TruncSeries(coeffs)


def expand_diagonal(F: WeightEnumerator, N: int) -> DiagonalSeries:
    if N < 0:
        raise UsageError("N must be nonnegative")
    spec = F.spec
    num = _specialize(F.value.numerator, spec.weights, N)
    den = _specialize(F.value.denominator, spec.weights, N)
    # cluster-method denominators are 1 at t = 0 for every value of the z's
    assert den[0].is_unit_constant(), "substituted denominator lost its unit constant term"
    series = num * series_invert(den)
    extracted = []
    for c in series.coeffs:
        a = c.coeff(spec.target)
        assert a.denominator == 1
        extracted.append(int(a))
    return DiagonalSeries(spec, N, series.coeffs, tuple(extracted))


def diagonal_terms(F: WeightEnumerator, N: int) -> list[int]:
    return list(expand_diagonal(F, N).extracted)
