"""Guess algebraic equations Q(t, P) = 0 and P-recursive recurrences from
exact terms, and verify them on every available term."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import UsageError
from .exact import MultiPoly, TruncSeries, UniPoly, format_rational, kernel_possible_mod_p, nullspace

DEFAULT_GUARD = 10
ALG_VARS = ("t", "P")


# ---------------------------------------------------------------------------
# algebraic equations


@dataclass(frozen=True)
class AlgebraicEquation:
    Q: MultiPoly  # in (t, P)
    deg_t: int
    deg_p: int
    verified_order: int

    def column(self, j) -> UniPoly:
        """Coefficient of P^j as a polynomial in t."""
        return UniPoly(
            [self.Q.terms.get((i, j), 0) for i in range(self.deg_t + 1)],
            "t",
        )

    def coefficient_table(self):
        """table[j][i] = coefficient of t^i P^j."""
        return [[_jsonable(self.Q.terms.get((i, j), Fraction(0))) for i in range(self.deg_t + 1)] for j in range(self.deg_p + 1)]

    def to_text(self) -> str:
        parts = []
        for j in range(self.deg_p, -1, -1):
            c = self.column(j)
            if c.is_zero():
                continue
            parts.append((c, j))
        return _join_terms(parts, _power("P")) + " = 0"

    def to_dict(self):
        return {
            "coefficients": self.coefficient_table(),
            "degT": self.deg_t,
            "degP": self.deg_p,
            "verifiedOrder": self.verified_order,
            "text": self.to_text(),
        }

    @classmethod
    def from_dict(cls, d):
        terms = {(i, j): Fraction(c) for j, row in enumerate(d["coefficients"]) for i, c in enumerate(row)}
        return cls(MultiPoly(terms, ALG_VARS), d["degT"], d["degP"], d["verifiedOrder"])


def _jsonable(c: Fraction):
    return int(c) if c.denominator == 1 else format_rational(c)


def _power(sym):
    def render(j):
        return "" if j == 0 else (sym if j == 1 else f"{sym}^{j}")

    return render


def _join_terms(parts, render_unknown, descending_poly=False) -> str:
    """Render sum of poly * unknown(j) with signs pulled out of single-sign polynomials."""
    out = []
    for poly, j in parts:
        unk = render_unknown(j)
        nz = [c for c in poly.coeffs if c]
        if len(nz) == 1 and poly.degree == 0:
            neg, mag = nz[0] < 0, abs(nz[0])
            if not unk:
                body = format_rational(mag)
            else:
                body = unk if mag == 1 else f"{format_rational(mag)}*{unk}"
        else:
            lead = poly.coeffs[-1] if descending_poly else next(c for c in poly.coeffs if c)
            neg = lead < 0
            p = -poly if neg else poly
            text = p.to_text(descending=descending_poly)
            if len(nz) == 1:
                body = text if not unk else f"{text}*{unk}"
            else:
                body = f"({text})*{unk}" if unk else f"({text})"
        out.append((neg, body))
    if not out:
        return "0"
    text = ("-" if out[0][0] else "") + out[0][1]
    for neg, body in out[1:]:
        text += f" {'-' if neg else '+'} {body}"
    return text


def _series_powers(terms, deg_p):
    P = TruncSeries(terms)
    powers = [TruncSeries([1] + [0] * (len(terms) - 1))]
    for _ in range(deg_p):
        powers.append(powers[-1] * P)
    return powers


def _algebraic_matrix(powers, deg_t, deg_p, L):
    cols = [(i, j) for j in range(deg_p + 1) for i in range(deg_t + 1)]
    M = [[powers[j][n - i] if n >= i else 0 for (i, j) in cols] for n in range(L)]
    return M, cols


def _canonical_algebraic(terms_map) -> MultiPoly:
    """Primitive integer coefficients; the term of highest P-degree, then lowest t-degree, is positive."""
    den = lcm(*(c.denominator for c in terms_map.values()))
    ints = {e: int(c * den) for e, c in terms_map.items()}
    g = gcd(*ints.values())
    lead = min(ints, key=lambda e: (-e[1], e[0]))
    if ints[lead] < 0:
        g = -g
    return MultiPoly({e: Fraction(c // g) for e, c in ints.items()}, ALG_VARS)


def _pick_vector(basis, key):
    return min(basis, key=lambda v: (sum(1 for x in v if x), key(v), tuple(v)))


def guess_algebraic(terms, deg_t: int, deg_p: int, guard: int = DEFAULT_GUARD) -> AlgebraicEquation | None:
    """Find Q with deg_t(Q) <= deg_t, deg_P(Q) <= deg_p and Q(t, P(t)) = O(t^len(terms))."""
    L = len(terms)
    need = (deg_t + 1) * (deg_p + 1) + guard
    if need > L:
        raise UsageError(f"guessing with degT={deg_t}, degP={deg_p}, guard={guard} needs {need} terms, got {L}")
    if deg_p < 1:
        raise UsageError("degP must be at least 1")
    terms = [Fraction(a) for a in terms]
    return _guess_algebraic_cell(terms, _series_powers(terms, deg_p), deg_t, deg_p)


def _guess_algebraic_cell(terms, powers, deg_t, deg_p):
    L = len(terms)
    M, cols = _algebraic_matrix(powers, deg_t, deg_p, L)
    if not kernel_possible_mod_p(M, len(cols)):
        return None
    basis = nullspace(M, len(cols))
    if not basis:
        return None

    def degree_key(v):
        used = [cols[k] for k, x in enumerate(v) if x]
        return (max(j for _, j in used), max(i for i, _ in used))

    v = _pick_vector(basis, degree_key)
    tm = {cols[k]: x for k, x in enumerate(v) if x}
    if max(j for _, j in tm) == 0:
        return None
    Q = _canonical_algebraic(tm)
    eq = AlgebraicEquation(Q, max(i for i, _ in tm), max(j for _, j in tm), -1)
    return AlgebraicEquation(Q, eq.deg_t, eq.deg_p, verify_algebraic(eq, terms))


def evaluate_algebraic(eq: AlgebraicEquation, terms) -> TruncSeries:
    """Q(t, P(t)) truncated to the available order."""
    L = len(terms)
    powers = _series_powers([Fraction(a) for a in terms], eq.deg_p)
    out = [Fraction(0)] * L
    for (i, j), c in eq.Q.terms.items():
        for n in range(i, L):
            out[n] += c * powers[j][n - i]
    return TruncSeries(out)


def verify_algebraic(eq: AlgebraicEquation, terms) -> int:
    """Largest M with Q(t, P(t)) = O(t^(M+1)); -1 if the constant term already fails."""
    residual = evaluate_algebraic(eq, terms)
    for n, c in enumerate(residual.coeffs):
        if c != 0:
            return n - 1
    return len(terms) - 1


def algebraic_schedule(max_deg_t, max_deg_p):
    """(degT, degP) cells by increasing degT + degP, smaller degP first."""
    for total in range(1, max_deg_t + max_deg_p + 1):
        for deg_p in range(1, min(total, max_deg_p) + 1):
            deg_t = total - deg_p
            if deg_t <= max_deg_t:
                yield deg_t, deg_p


def find_algebraic(terms, max_deg_t=12, max_deg_p=12, guard=DEFAULT_GUARD) -> AlgebraicEquation | None:
    """Search the schedule; cells that would violate the guard are skipped."""
    L = len(terms)
    terms = [Fraction(a) for a in terms]
    P = TruncSeries(terms)
    powers = [TruncSeries([1] + [0] * (L - 1)), P]
    for deg_t, deg_p in algebraic_schedule(max_deg_t, max_deg_p):
        if (deg_t + 1) * (deg_p + 1) + guard > L:
            continue
        while len(powers) <= deg_p:
            powers.append(powers[-1] * P)
        eq = _guess_algebraic_cell(terms, powers, deg_t, deg_p)
        if eq is not None and eq.verified_order == L - 1:
            return eq
    return None


# ---------------------------------------------------------------------------
# recurrences


@dataclass(frozen=True)
class HolonomicRecurrence:
    """sum_i coefficients[i](n) * a(n + i) = 0 for n in verified_range (inclusive)."""

    coefficients: tuple  # UniPoly in n
    verified_range: tuple = (0, -1)

    @property
    def order(self):
        return len(self.coefficients) - 1

    @property
    def degree(self):
        return max(c.degree for c in self.coefficients)

    def with_range(self, rng):
        return HolonomicRecurrence(self.coefficients, rng)

    def same_equation(self, other):
        return self.coefficients == other.coefficients

    def to_text(self) -> str:
        parts = [(c, i) for i, c in reversed(list(enumerate(self.coefficients))) if not c.is_zero()]

        def unknown(i):
            return f"a(n+{i})" if i else "a(n)"

        return _join_terms(parts, unknown, descending_poly=True) + " = 0"

    def to_dict(self):
        return {
            "order": self.order,
            "coefficients": [[_jsonable(x) for x in c.coeffs] for c in self.coefficients],
            "verifiedRange": list(self.verified_range),
            "text": self.to_text(),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(UniPoly([Fraction(x) for x in c], "n") for c in d["coefficients"]), tuple(d["verifiedRange"]))


def normalize_recurrence(polys) -> tuple:
    """Drop vanishing top coefficients; make primitive with positive leading n-coefficient of c_d."""
    polys = list(polys)
    while polys and polys[-1].is_zero():
        polys.pop()
    if not polys:
        raise UsageError("zero recurrence")
    allc = [c for p in polys for c in p.coeffs]
    den = lcm(*(c.denominator for c in allc))
    g = gcd(*(int(c * den) for c in allc))
    scale = Fraction(den, g)
    if polys[-1].lc() < 0:
        scale = -scale
    return tuple(UniPoly([c * scale for c in p.coeffs], "n") for p in polys)


def recurrence_residual(rec: HolonomicRecurrence, terms, n):
    return sum(c(n) * terms[n + i] for i, c in enumerate(rec.coefficients))


def verify_recurrence(rec: HolonomicRecurrence, terms) -> tuple:
    """(0, hi): the recurrence holds for n = 0..hi; hi = -1 if it fails at n = 0."""
    terms = [Fraction(a) for a in terms]
    d = rec.order
    for n in range(len(terms) - d):
        if recurrence_residual(rec, terms, n) != 0:
            return (0, n - 1)
    return (0, len(terms) - d - 1)


def recurrence_schedule(max_order, max_deg):
    """(order, degree) cells by increasing order + degree, smaller order first."""
    for total in range(0, max_order + max_deg + 1):
        for order in range(0, min(total, max_order) + 1):
            deg = total - order
            if deg <= max_deg:
                yield order, deg


def _recurrence_cell(terms, order, deg):
    L = len(terms)
    cols = [(i, k) for i in range(order + 1) for k in range(deg + 1)]
    M = [[n**k * terms[n + i] for (i, k) in cols] for n in range(L - order)]
    if not kernel_possible_mod_p(M, len(cols)):
        return None
    basis = nullspace(M, len(cols))
    if not basis:
        return None

    def degree_key(v):
        used = [cols[k] for k, x in enumerate(v) if x]
        return (max(i for i, _ in used), max(k for _, k in used))

    v = _pick_vector(basis, degree_key)
    polys = [UniPoly([v[cols.index((i, k))] for k in range(deg + 1)], "n") for i in range(order + 1)]
    rec = HolonomicRecurrence(normalize_recurrence(polys))
    return rec.with_range(verify_recurrence(rec, terms))


def guess_recurrence(terms, max_order=8, max_deg=12, guard=DEFAULT_GUARD, skip_infeasible=False):
    """First recurrence on the schedule that fits with ``guard`` spare equations and holds on all terms.

    With ``skip_infeasible`` the (max_order, max_deg) box may exceed the data;
    cells that would violate the guard are skipped instead of raising.
    """
    L = len(terms)
    need = (max_order + 1) * (max_deg + 1) + max_order + guard
    if need > L and not skip_infeasible:
        raise UsageError(f"guessing order<={max_order}, degree<={max_deg}, guard={guard} needs {need} terms, got {L}")
    terms = [Fraction(a) for a in terms]
    for order, deg in recurrence_schedule(max_order, max_deg):
        if (order + 1) * (deg + 1) + order + guard > L:
            continue
        rec = _recurrence_cell(terms, order, deg)
        if rec is not None and rec.verified_range[1] == L - rec.order - 1:
            return rec
    return None
