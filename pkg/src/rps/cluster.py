"""Goulden-Jackson cluster method for the weight-enumerator of all words."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnsupportedInstanceError, UsageError
from .exact import MultiPoly, RatFunc
from .words import InstanceSpec


@dataclass(frozen=True)
class OverlapSet:
    source: int
    target: int
    overlaps: frozenset


def overlaps(pv, pu) -> frozenset:
    """Lengths l, 1 <= l < |pu|, l <= |pv|, where pv's l-suffix equals pu's l-prefix."""
    pv, pu = tuple(pv), tuple(pu)
    if not pv or not pu:
        raise UsageError("overlaps of empty words are undefined")
    return frozenset(l for l in range(1, min(len(pu) - 1, len(pv)) + 1) if pv[len(pv) - l :] == pu[:l])


@dataclass(frozen=True)
class WeightEnumerator:
    value: RatFunc
    spec: InstanceSpec

    @property
    def vars(self):
        return self.value.vars

    def to_dict(self):
        return {"numerator": self.value.numerator.to_text(), "denominator": self.value.denominator.to_text()}

    @classmethod
    def from_dict(cls, d, spec):
        vars = enumerator_vars(len(spec.patterns))
        return cls(RatFunc(MultiPoly.from_text(d["numerator"], vars), MultiPoly.from_text(d["denominator"], vars)), spec)


def enumerator_vars(s):
    return ("t",) + tuple(f"z{i + 1}" for i in range(s))


def determinant(M) -> MultiPoly:
    """Fraction-free (Bareiss) determinant of a square matrix of MultiPolys."""
    A = [list(row) for row in M]
    n = len(A)
    if n == 0:
        raise UsageError("empty matrix")
    sign = 1
    prev = None
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if not A[i][k].is_zero()), None)
        if piv is None:
            return A[0][0] * 0
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[k][k] * A[i][j] - A[i][k] * A[k][j]
                A[i][j] = num if prev is None else num.exact_div(prev)
        prev = A[k][k]
    return A[n - 1][n - 1] * sign


def build_enumerator(spec: InstanceSpec) -> WeightEnumerator:
    """F(t; z_1..z_s) = 1 / (1 - m t - sum_u C_u) with cluster generating functions C_u."""
    if spec.has_factor_containment():
        raise UnsupportedInstanceError("a distinguished word is a factor of another; use the oracle path")
    pats = spec.patterns
    s = len(pats)
    vars = enumerator_vars(s)
    one = MultiPoly.constant(1, vars)
    t = MultiPoly.var("t", vars)
    marks = [MultiPoly.var(f"z{u + 1}", vars) - 1 for u in range(s)]

    # C_u - (z_u - 1) sum_v sum_l t^(|p_u| - l) C_v = (z_u - 1) t^|p_u|
    M = [[one * 0 for _ in range(s)] for _ in range(s)]
    b = []
    for u, pu in enumerate(pats):
        for v, pv in enumerate(pats):
            link = sum((t ** (len(pu) - l) for l in overlaps(pv, pu)), one * 0)
            M[u][v] = (one if u == v else one * 0) - marks[u] * link
        b.append(marks[u] * t ** len(pu))

    D = determinant(M)
    S = one * 0
    for u in range(s):
        Mu = [row[:u] + [b[i]] + row[u + 1 :] for i, row in enumerate(M)]
        S = S + determinant(Mu)
    m = spec.alphabet_size
    return WeightEnumerator(RatFunc(D, D * (1 - t * m) - S).normalized(), spec)
