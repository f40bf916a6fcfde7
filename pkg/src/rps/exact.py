"""Exact arithmetic: polynomials, Laurent polynomials, truncated series,
rational functions and nullspaces over the rationals.

Rationals are :class:`fractions.Fraction`.  Every container here is
immutable after construction.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import zip_longest
from math import gcd, lcm

import numpy as np

from .errors import SingularExpansionError, UsageError

Rational = Fraction


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _check_var(a, b):
    if a.var != b.var:
        raise UsageError(f"mismatched indeterminates {a.var!r} and {b.var!r}")


# ---------------------------------------------------------------------------
# dense univariate polynomials


class UniPoly:
    """Dense univariate polynomial, coefficients lowest degree first."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var: str = "t"):
        c = [_frac(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)
        self.var = var

    @classmethod
    def constant(cls, c, var="t"):
        return cls([c], var)

    @classmethod
    def monomial(cls, k, c=1, var="t"):
        return cls([0] * k + [c], var)

    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            _check_var(self, other)
            return other
        return UniPoly([other], self.var)

    def __add__(self, other):
        other = self._coerce(other)
        return UniPoly([a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-a for a in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            other = _frac(other)
            return UniPoly([a * other for a in self.coeffs], self.var)
        _check_var(self, other)
        if not self.coeffs or not other.coeffs:
            return UniPoly((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = UniPoly([1], self.var)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.var == other.var and self.coeffs == other.coeffs
        try:
            return self.coeffs == UniPoly([other], self.var).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:], self.var)

    def shift(self, k):
        """p(x + k)."""
        out = UniPoly((), self.var)
        lin = UniPoly([k, 1], self.var)
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def divmod(self, other: UniPoly):
        _check_var(self, other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly((), self.var), self
        quot = [Fraction(0)] * (dq + 1)
        inv = 1 / other.lc()
        db = len(other.coeffs) - 1
        for k in range(dq, -1, -1):
            q = rem[k + db] * inv
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return UniPoly(quot, self.var), UniPoly(rem[:db], self.var)

    def monic(self):
        return self * (1 / self.lc()) if self.coeffs else self

    def gcd(self, other: UniPoly) -> UniPoly:
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1].primitive()
        return a.monic()

    def content(self) -> Fraction:
        """Positive rational c with self / c primitive with integer coefficients."""
        if not self.coeffs:
            return Fraction(1)
        den = lcm(*(c.denominator for c in self.coeffs))
        num = gcd(*(int(c * den) for c in self.coeffs))
        return Fraction(num, den)

    def primitive(self) -> UniPoly:
        return self * (1 / self.content()) if self.coeffs else self

    def to_text(self, descending=False) -> str:
        return _poly_text([((k,), c) for k, c in enumerate(self.coeffs) if c], (self.var,), descending, unit=False)

    def __repr__(self):
        return f"UniPoly({self.to_text() or '0'!r}, var={self.var!r})"


def _monomial_text(exps, names) -> str:
    parts = []
    for e, v in zip(exps, names):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def _poly_text(terms, names, descending=False, unit=True) -> str:
    """Render (exponent-tuple, coefficient) terms.

    ``unit=True`` keeps an explicit ``1*`` on non-constant monomials, which is
    the serialized form; ``unit=False`` is the human form.
    """
    if not terms:
        return "0"
    out = []
    for exps, c in terms:
        mono = _monomial_text(exps, names)
        mag = abs(c)
        if not mono:
            body = format_rational(mag)
        elif mag == 1 and not unit:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        out.append((c < 0, body))
    if descending:
        out.reverse()
    sep = " " if unit else ""
    text = ("-" if out[0][0] else "") + out[0][1]
    for neg, body in out[1:]:
        text += f"{sep}{'-' if neg else '+'}{sep}{body}"
    return text


# ---------------------------------------------------------------------------
# univariate rational functions (used for the algebraic -> ODE route)


class UniRatFunc:
    """Reduced quotient of univariate polynomials, denominator monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly | None = None):
        if den is None:
            den = UniPoly([1], num.var)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = num, UniPoly([1], num.var)
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num.divmod(g)[0], den.divmod(g)[0]
            lc = den.lc()
            num, den = num * (1 / lc), den * (1 / lc)
        self.num, self.den = num, den

    @property
    def var(self):
        return self.num.var

    def is_zero(self):
        return self.num.is_zero()

    def _coerce(self, other):
        if isinstance(other, UniRatFunc):
            return other
        if isinstance(other, UniPoly):
            return UniRatFunc(other)
        return UniRatFunc(UniPoly([other], self.var))

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return UniRatFunc(self.num + o.num, self.den)
        return UniRatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return UniRatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return UniRatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return UniRatFunc(self.num * o.den, self.den * o.num)

    def __eq__(self, other):
        o = self._coerce(other)
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def derivative(self):
        return UniRatFunc(self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den)

    def __repr__(self):
        return f"({self.num.to_text()})/({self.den.to_text()})"


# ---------------------------------------------------------------------------
# sparse multivariate polynomials


class MultiPoly:
    """Sparse polynomial: exponent tuple -> Fraction, one slot per indeterminate."""

    __slots__ = ("vars", "terms")

    def __init__(self, terms=None, vars=("t",)):
        self.vars = tuple(vars)
        out = {}
        for e, c in (terms or {}).items():
            if len(e) != len(self.vars):
                raise UsageError(f"exponent {e} does not match indeterminates {self.vars}")
            if any(x < 0 for x in e):
                raise UsageError(f"negative exponent {e}")
            c = _frac(c)
            if c:
                out[tuple(e)] = c
        self.terms = out

    @classmethod
    def constant(cls, c, vars):
        return cls({(0,) * len(vars): c}, vars)

    @classmethod
    def var(cls, name, vars):
        e = [0] * len(vars)
        e[list(vars).index(name)] = 1
        return cls({tuple(e): 1}, vars)

    def is_zero(self):
        return not self.terms

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise UsageError(f"mismatched indeterminates {self.vars} and {other.vars}")
            return other
        return MultiPoly.constant(other, self.vars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(out, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            other = _frac(other)
            return MultiPoly({e: c * other for e, c in self.terms.items()}, self.vars)
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(out, self.vars)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = MultiPoly.constant(1, self.vars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def degree_in(self, name) -> int:
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def subs(self, values: dict) -> MultiPoly:
        """Substitute numbers for some indeterminates (they are kept with exponent 0)."""
        idx = {self.vars.index(k): _frac(v) for k, v in values.items()}
        out = {}
        for e, c in self.terms.items():
            for i, v in idx.items():
                c = c * v ** e[i]
            e = tuple(0 if i in idx else x for i, x in enumerate(e))
            out[e] = out.get(e, 0) + c
        return MultiPoly(out, self.vars)

    def leading(self):
        """Leading (exponents, coefficient) in lexicographic order."""
        e = max(self.terms)
        return e, self.terms[e]

    def exact_div(self, other: MultiPoly) -> MultiPoly:
        """Quotient of an exact division; raises ArithmeticError otherwise."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("multivariate division by zero")
        eb, cb = other.leading()
        rem, quot = self, {}
        while not rem.is_zero():
            ea, ca = rem.leading()
            diff = tuple(a - b for a, b in zip(ea, eb))
            if any(d < 0 for d in diff):
                raise ArithmeticError("division is not exact")
            q = ca / cb
            quot[diff] = q
            rem = rem - MultiPoly({diff: q}, self.vars) * other
        return MultiPoly(quot, self.vars)

    def sorted_terms(self):
        """Terms by total degree, then lexicographic exponent order."""
        return sorted(self.terms.items(), key=lambda it: (sum(it[0]), tuple(-x for x in it[0])))

    def to_text(self) -> str:
        return _poly_text(self.sorted_terms(), self.vars)

    @classmethod
    def from_text(cls, text: str, vars) -> MultiPoly:
        vars = tuple(vars)
        text = text.strip()
        if text == "0":
            return cls({}, vars)
        out = {}
        for sign, body in re.findall(r"([+-]?)\s*([^+-]+)", text.replace(" ", "")):
            coef, exps = Fraction(1), [0] * len(vars)
            for factor in body.split("*"):
                if re.fullmatch(r"\d+(/\d+)?", factor):
                    coef *= Fraction(factor)
                else:
                    name, _, power = factor.partition("^")
                    exps[vars.index(name)] += int(power) if power else 1
            e = tuple(exps)
            out[e] = out.get(e, 0) + (-coef if sign == "-" else coef)
        return cls(out, vars)

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r}, vars={self.vars})"


# ---------------------------------------------------------------------------
# Laurent polynomials in one indeterminate


class LaurentPoly:
    """sum_k coeffs[k] * s^(low + k); zero is low = 0 with no coefficients."""

    __slots__ = ("low", "coeffs", "var")

    def __init__(self, low: int = 0, coeffs=(), var: str = "s"):
        c = [_frac(x) for x in coeffs]
        start = 0
        while start < len(c) and c[start] == 0:
            start += 1
        while c and c[-1] == 0:
            c.pop()
        if start >= len(c):
            low, c = 0, []
        else:
            low, c = low + start, c[start:]
        self.low, self.coeffs, self.var = low, tuple(c), var

    @classmethod
    def monomial(cls, k, c=1, var="s"):
        return cls(k, [c], var)

    def is_zero(self):
        return not self.coeffs

    @property
    def high(self):
        return self.low + len(self.coeffs) - 1

    def coeff(self, k) -> Fraction:
        i = k - self.low
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def is_unit_constant(self):
        return self.low == 0 and len(self.coeffs) == 1

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            _check_var(self, other)
            return other
        return LaurentPoly(0, [other], self.var)

    def __add__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        out = [Fraction(0)] * (hi - lo + 1)
        for k, c in enumerate(self.coeffs):
            out[self.low - lo + k] += c
        for k, c in enumerate(other.coeffs):
            out[other.low - lo + k] += c
        return LaurentPoly(lo, out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.low, [-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            other = _frac(other)
            return LaurentPoly(self.low, [c * other for c in self.coeffs], self.var)
        _check_var(self, other)
        if self.is_zero() or other.is_zero():
            return LaurentPoly(var=self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LaurentPoly(self.low + other.low, out, self.var)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return (self.low, self.coeffs, self.var) == (other.low, other.coeffs, other.var)
        return self == self._coerce(other)

    def __hash__(self):
        return hash((self.low, self.coeffs, self.var))

    def evaluate(self, x):
        return sum(c * _frac(x) ** (self.low + k) for k, c in enumerate(self.coeffs))

    def __repr__(self):
        terms = [f"{format_rational(c)}*{self.var}^{self.low + k}" for k, c in enumerate(self.coeffs) if c]
        return "LaurentPoly(" + (" + ".join(terms) or "0") + ")"


# ---------------------------------------------------------------------------
# truncated power series


class TruncSeries:
    """sum_{n <= order} coeffs[n] t^n; coefficients are Fractions or LaurentPolys."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs, var: str = "t"):
        self.coeffs = tuple(c if isinstance(c, LaurentPoly) else _frac(c) for c in coeffs)
        if not self.coeffs:
            raise UsageError("a truncated series needs at least one coefficient")
        self.var = var

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, TruncSeries) and self.coeffs == other.coeffs and self.var == other.var

    def __hash__(self):
        return hash((self.coeffs, self.var))

    def __add__(self, other):
        n = min(len(self), len(other))
        return TruncSeries([self[k] + other[k] for k in range(n)], self.var)

    def __sub__(self, other):
        n = min(len(self), len(other))
        return TruncSeries([self[k] - other[k] for k in range(n)], self.var)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries([c * other for c in self.coeffs], self.var)
        n = min(len(self), len(other))
        zero = self[0] * 0
        out = [zero] * n
        b_support = [(j, b) for j, b in enumerate(other.coeffs[:n]) if not _is_zero(b)]
        for i in range(n):
            a = self[i]
            if _is_zero(a):
                continue
            for j, b in b_support:
                if i + j >= n:
                    break
                out[i + j] = out[i + j] + a * b
        return TruncSeries(out, self.var)

    def truncate(self, order):
        return TruncSeries(self.coeffs[: order + 1], self.var)

    def invert(self) -> TruncSeries:
        return series_invert(self)

    def __repr__(self):
        return f"TruncSeries({list(self.coeffs)!r})"


def _is_zero(c):
    return c.is_zero() if isinstance(c, LaurentPoly) else c == 0


def series_invert(d: TruncSeries) -> TruncSeries:
    """Inverse of ``d`` to the same order; needs an invertible constant term."""
    c0 = d[0]
    if isinstance(c0, LaurentPoly):
        if not c0.is_unit_constant():
            raise SingularExpansionError(f"constant term {c0!r} is not a nonzero rational")
        inv0 = 1 / c0.coeffs[0]
    else:
        if c0 == 0:
            raise SingularExpansionError("zero constant term")
        inv0 = 1 / c0
    support = [(j, c) for j, c in enumerate(d.coeffs) if j and not _is_zero(c)]
    out = [c0 * 0 + inv0]
    for n in range(1, len(d)):
        acc = c0 * 0
        for j, c in support:
            if j > n:
                break
            acc = acc + c * out[n - j]
        out.append(acc * (-inv0))
    return TruncSeries(out, d.var)


# ---------------------------------------------------------------------------
# rational functions


class RatFunc:
    """numerator / denominator with denominator constant term nonzero."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: MultiPoly, denominator: MultiPoly):
        if numerator.vars != denominator.vars:
            raise UsageError("numerator and denominator use different indeterminates")
        if denominator.is_zero():
            raise ZeroDivisionError("zero denominator")
        if denominator.constant_term() == 0:
            raise SingularExpansionError("denominator has zero constant term")
        self.numerator, self.denominator = numerator, denominator

    @property
    def vars(self):
        return self.numerator.vars

    def normalized(self) -> RatFunc:
        c = self.denominator.constant_term()
        return RatFunc(self.numerator * (1 / c), self.denominator * (1 / c))

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __hash__(self):
        r = self.normalized()
        return hash((r.numerator.vars,))

    def subs(self, values) -> RatFunc:
        return RatFunc(self.numerator.subs(values), self.denominator.subs(values))

    def __repr__(self):
        return f"RatFunc(({self.numerator.to_text()}) / ({self.denominator.to_text()}))"


# ---------------------------------------------------------------------------
# exact linear algebra


def _integer_rows(M):
    rows = []
    for row in M:
        row = [_frac(x) for x in row]
        den = lcm(*(x.denominator for x in row)) if row else 1
        rows.append([int(x * den) for x in row])
    return rows


def _echelon(rows, ncols):
    """Fraction-free (Bareiss) row echelon form; returns pivot columns."""
    nrows = len(rows)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        best = None
        for i in range(r, nrows):
            v = rows[i][c]
            if v and (best is None or abs(v).bit_length() < abs(rows[best][c]).bit_length()):
                best = i
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        p = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, nrows):
            row = rows[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - f * prow[j]) // prev
            elif p != prev:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j]) // prev
            row[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return pivots


def nullspace(M, ncols: int | None = None):
    """Basis of {v : M v = 0} over the rationals, one primitive integer vector per free column."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    rows = _integer_rows(M)
    pivots = _echelon(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            row = rows[r]
            s = sum((row[j] * v[j] for j in range(c + 1, ncols) if row[j] and v[j]), Fraction(0))
            v[c] = -s / row[c]
        basis.append(tuple(primitive_vector(v)))
    return basis


def primitive_vector(v):
    """Scale to coprime integers with the first nonzero entry positive."""
    den = lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = gcd(*ints) or 1
    first = next((x for x in ints if x), 1)
    if first < 0:
        g = -g
    return [Fraction(x // g) for x in ints]


_PRIME = 2147483629  # < 2^31, so products fit in int64


def kernel_possible_mod_p(M, ncols: int) -> bool:
    """False only when M has full column rank mod a prime, hence over Q too."""
    if not M:
        return ncols > 0
    p = _PRIME
    try:
        A = np.array(
            [[(x.numerator % p) * pow(x.denominator % p, -1, p) % p for x in map(_frac, row)] for row in M],
            dtype=np.int64,
        )
    except ValueError:  # some denominator divisible by p
        return True
    nrows = A.shape[0]
    rank = 0
    for c in range(ncols):
        if rank >= nrows:
            break
        nz = np.nonzero(A[rank:, c])[0]
        if nz.size == 0:
            continue
        i = rank + nz[0]
        if i != rank:
            A[[rank, i]] = A[[i, rank]]
        inv = pow(int(A[rank, c]), -1, p)
        A[rank] = (A[rank] * inv) % p
        col = A[rank + 1 :, c].copy()
        A[rank + 1 :] = (A[rank + 1 :] - np.outer(col, A[rank]) % p) % p
        rank += 1
    return rank < ncols


def field_nullspace(M, zero, one):
    """Nullspace over an arbitrary exact field (elements support + - * /)."""
    rows = [list(r) for r in M]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not rows[i][c] == zero), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = one / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c] == zero:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    basis = []
    for f in (c for c in range(ncols) if c not in pivots):
        v = [zero] * ncols
        v[f] = one
        for k, c in enumerate(pivots):
            v[c] = zero - rows[k][f]
        basis.append(v)
    return basis
