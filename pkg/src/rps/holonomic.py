"""Algebraic equation -> linear ODE -> recurrence, sequence extension and
asymptotic estimates a(n) ~ C * mu^n * n^theta."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd, lcm

import mpmath

from .errors import AsymptoticsError, DegenerateEquationError, SingularExtensionError, UsageError
from .exact import UniPoly, UniRatFunc, field_nullspace
from .guess import AlgebraicEquation, HolonomicRecurrence, _join_terms, _jsonable, normalize_recurrence

ASYMPTOTIC_DIGITS = 60
RICHARDSON_DEPTH = 4
PERIOD_WINDOW = 200


@dataclass(frozen=True)
class LinearODE:
    """sum_i coefficients[i](t) * P^(i)(t) = inhomogeneous(t)."""

    coefficients: tuple  # UniPoly in t
    inhomogeneous: UniPoly = field(default_factory=lambda: UniPoly((), "t"))

    @property
    def order(self):
        return len(self.coefficients) - 1

    def to_text(self):
        def unknown(i):
            return "P" + "'" * i

        parts = [(c, i) for i, c in reversed(list(enumerate(self.coefficients))) if not c.is_zero()]
        rhs = self.inhomogeneous.to_text() if not self.inhomogeneous.is_zero() else "0"
        return _join_terms(parts, unknown) + f" = {rhs}"

    def to_dict(self):
        return {
            "order": self.order,
            "coefficients": [[_jsonable(x) for x in c.coeffs] for c in self.coefficients],
            "inhomogeneous": [_jsonable(x) for x in self.inhomogeneous.coeffs],
            "text": self.to_text(),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            tuple(UniPoly([Fraction(x) for x in c], "t") for c in d["coefficients"]),
            UniPoly([Fraction(x) for x in d["inhomogeneous"]], "t"),
        )


# ---------------------------------------------------------------------------
# arithmetic in Q(t)[P] / (Q)


class _Quotient:
    def __init__(self, eq: AlgebraicEquation):
        self.d = eq.deg_p
        self.Q = [UniRatFunc(eq.column(j)) for j in range(self.d + 1)]
        self.zero = UniRatFunc(UniPoly((), "t"))
        self.one = UniRatFunc(UniPoly([1], "t"))

    def reduce(self, v):
        v = list(v)
        lead = self.Q[-1]
        for k in range(len(v) - 1, self.d - 1, -1):
            if v[k].is_zero():
                continue
            f = v[k] / lead
            for j in range(self.d + 1):
                v[k - self.d + j] = v[k - self.d + j] - f * self.Q[j]
        v = v[: self.d] + [self.zero] * (self.d - len(v))
        return v

    def mul(self, a, b):
        out = [self.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
        return self.reduce(out)

    def inverse(self, a):
        """Inverse of a modulo Q by the extended Euclidean algorithm over Q(t)."""

        def trim(p):
            p = list(p)
            while p and p[-1].is_zero():
                p.pop()
            return p

        def pdivmod(x, y):
            x = list(x)
            q = [self.zero] * max(len(x) - len(y) + 1, 1)
            while len(x) >= len(y) and x:
                f = x[-1] / y[-1]
                k = len(x) - len(y)
                q[k] = f
                for j, c in enumerate(y):
                    x[k + j] = x[k + j] - f * c
                x = trim(x)
            return trim(q), x

        def psub(x, y):
            n = max(len(x), len(y))
            x = x + [self.zero] * (n - len(x))
            y = y + [self.zero] * (n - len(y))
            return trim([p - q for p, q in zip(x, y)])

        def pmul(x, y):
            if not x or not y:
                return []
            out = [self.zero] * (len(x) + len(y) - 1)
            for i, p in enumerate(x):
                for j, q in enumerate(y):
                    out[i + j] = out[i + j] + p * q
            return trim(out)

        r0, r1 = trim(self.Q), trim(a)
        s0, s1 = [], [self.one]
        while r1:
            q, r = pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, psub(s0, pmul(q, s1))
        if len(r0) != 1:
            raise DegenerateEquationError("dQ/dP is not invertible modulo Q; reduce Q to its square-free part first")
        inv = [x / r0[0] for x in s0]
        return self.reduce(inv)


def algebraic_to_ode(eq: AlgebraicEquation) -> LinearODE:
    """Linear ODE with polynomial coefficients annihilating the root P(t) of Q."""
    A = _Quotient(eq)
    d = A.d
    Qcols = [eq.column(j) for j in range(d + 1)]
    dQdP = [UniRatFunc(Qcols[j] * j) for j in range(1, d + 1)]
    dQdt = [UniRatFunc(c.derivative()) for c in Qcols]
    if all(c.is_zero() for c in dQdP):
        raise DegenerateEquationError("dQ/dP vanishes identically; reduce Q to its square-free part first")
    dP = [-x for x in A.mul(A.reduce(dQdt), A.inverse(A.reduce(dQdP)))]

    def derive(v):
        out = [x.derivative() for x in v]
        # chain rule through P' for the P-powers
        chain = [A.zero] * max(d - 1, 1)
        for j in range(1, d):
            chain[j - 1] = v[j] * j
        extra = A.mul(chain, dP) if d > 1 else [A.zero]
        return [a + b for a, b in zip(out, extra)]

    P = A.reduce([A.zero, A.one])
    derivs = [P]
    for order in range(1, d + 1):
        derivs.append(derive(derivs[-1]))
        M = [[derivs[i][row] for i in range(order + 1)] for row in range(d)]
        kernel = field_nullspace(M, A.zero, A.one)
        if kernel:
            return _clear_ode(kernel[0], UniPoly((), "t"))
    # P satisfies no homogeneous relation: admit a constant column
    one_vec = A.reduce([A.one])
    M = [[one_vec[row]] + [derivs[i][row] for i in range(len(derivs))] for row in range(d)]
    kernel = field_nullspace(M, A.zero, A.one)
    if not kernel:
        raise DegenerateEquationError("no differential relation found")
    v = kernel[0]
    return _clear_ode(v[1:], -v[0])


def _clear_ode(coeffs, rhs):
    """Clear denominators, divide out the common polynomial factor, normalize content and sign."""
    allf = list(coeffs) + ([rhs] if isinstance(rhs, UniRatFunc) else [])
    den = UniPoly([1], "t")
    for f in allf:
        den = (den * f.den).divmod(den.gcd(f.den))[0]
    polys = [(f * den).num for f in coeffs]
    rhs_poly = (rhs * den).num if isinstance(rhs, UniRatFunc) else UniPoly((), "t")
    g = UniPoly((), "t")
    for p in polys + [rhs_poly]:
        if not p.is_zero():
            g = p if g.is_zero() else g.gcd(p)
    if g.degree > 0:
        polys = [p.divmod(g)[0] for p in polys]
        rhs_poly = rhs_poly.divmod(g)[0]
    while polys and polys[-1].is_zero():
        polys.pop()
    allc = [c for p in polys + [rhs_poly] for c in p.coeffs]
    dn = lcm(*(c.denominator for c in allc))
    gg = gcd(*(int(c * dn) for c in allc))
    scale = Fraction(dn, gg)
    lead = next(c for c in polys[-1].coeffs if c)
    if lead < 0:
        scale = -scale
    return LinearODE(tuple(p * scale for p in polys), rhs_poly * scale)


def ode_residual_order(ode: LinearODE, terms) -> int:
    """Largest M such that the ODE holds on the series coefficients of t^0..t^M."""
    terms = [Fraction(a) for a in terms]
    L = len(terms)
    d = ode.order

    def a(k):
        return terms[k] if k >= 0 else 0

    for n in range(L - d):
        acc = Fraction(0)
        for i, q in enumerate(ode.coefficients):
            for j, c in enumerate(q.coeffs):
                if c:
                    k = n - j
                    if k + i >= 0 and k >= 0:
                        acc += c * _falling_rise(k, i) * a(k + i)
        if acc != ode.inhomogeneous[n]:
            return n - 1
    return L - d - 1


def _falling_rise(k, i):
    """(k+1)(k+2)...(k+i)."""
    out = 1
    for r in range(1, i + 1):
        out *= k + r
    return out


def _homogenize(ode: LinearODE) -> LinearODE:
    """Differentiate past a polynomial right-hand side."""
    if ode.inhomogeneous.is_zero():
        return ode
    times = ode.inhomogeneous.degree + 1
    d = ode.order
    out = [UniPoly((), "t") for _ in range(d + times + 1)]
    for i, q in enumerate(ode.coefficients):
        qk = q
        for k in range(times + 1):
            out[i + times - k] = out[i + times - k] + qk * comb(times, k)
            qk = qk.derivative()
    return LinearODE(tuple(out))


def ode_to_recurrence(ode: LinearODE) -> HolonomicRecurrence:
    """[t^n] t^j P^(i) = (n-j+1)...(n-j+i) a(n-j+i); collect and shift so the lowest term is a(n)."""
    ode = _homogenize(ode)
    by_shift = {}
    n = UniPoly([0, 1], "n")
    for i, q in enumerate(ode.coefficients):
        for j, c in enumerate(q.coeffs):
            if not c:
                continue
            poly = UniPoly([c], "n")
            for r in range(1, i + 1):
                poly = poly * (n + (r - j))
            h = i - j
            by_shift[h] = by_shift.get(h, UniPoly((), "n")) + poly
    by_shift = {h: p for h, p in by_shift.items() if not p.is_zero()}
    if not by_shift:
        raise UsageError("the ODE has only zero coefficients")
    lo, hi = min(by_shift), max(by_shift)
    # the identity holds for every integer n (negative-index terms vanish), so shifting is safe
    polys = [by_shift.get(h, UniPoly((), "n")).shift(-lo) for h in range(lo, hi + 1)]
    return HolonomicRecurrence(normalize_recurrence(polys))


def required_initial_terms(rec: HolonomicRecurrence) -> int:
    """Number of leading terms needed so that extension never divides by zero."""
    d = rec.order
    lead = rec.coefficients[-1]
    need = d
    roots = [r for r in _nonnegative_integer_roots(lead)]
    if roots:
        need = max(need, max(roots) + d + 1)
    return need


def _nonnegative_integer_roots(p: UniPoly):
    """Nonnegative integer roots, exactly verified.

    Candidates come from high-precision complex roots of the square-free part;
    trial division up to the constant term is hopeless once it has 20+ digits.
    """
    if p.is_zero():
        return []
    c = list(p.primitive().coeffs)
    k = next(i for i, x in enumerate(c) if x)
    roots = [0] if k else []
    q = UniPoly(c[k:], p.var)
    if q.degree < 1:
        return roots
    sf, _ = q.divmod(q.gcd(q.derivative()))
    if sf.degree == 1:
        cand = {-sf.coeffs[0] / sf.coeffs[1]}
    else:
        with mpmath.workdps(50):
            zs = mpmath.polyroots([mpmath.mpf(x.numerator) / x.denominator for x in reversed(sf.coeffs)],
                                  maxsteps=400, extraprec=400)
            cand = {int(mpmath.nint(mpmath.re(z))) for z in zs if abs(mpmath.im(z)) < 0.5 and mpmath.re(z) > 0.5}
    roots += sorted(int(r) for r in cand if r > 0 and Fraction(r).denominator == 1 and p(r) == 0)
    return roots


def extend_sequence(rec: HolonomicRecurrence, initial, N: int) -> list:
    """a(0..N) from the supplied initial terms; exact."""
    seq = [Fraction(a) for a in initial[: N + 1]]
    d = rec.order
    cs = rec.coefficients
    if len(seq) < min(d, N + 1):
        raise UsageError(f"need at least {d} initial terms")
    while len(seq) <= N:
        m = len(seq) - d
        lead = cs[-1](m)
        if lead == 0:
            raise SingularExtensionError(m)
        acc = sum(cs[i](m) * seq[m + i] for i in range(d))
        seq.append(Fraction(-acc) / lead)
    return [int(x) if x.denominator == 1 else x for x in seq]


# ---------------------------------------------------------------------------
# asymptotics


@dataclass(frozen=True)
class AsymptoticEstimate:
    mu: float
    theta: float
    C: float
    period: int  # of the zero pattern
    residue: int
    step: int  # ratio stride; C is the constant on n = step_residue mod step
    step_residue: int
    deltas: dict
    reliable: bool = True
    characteristic_root: float | None = None
    terms_used: int = 0

    def to_text(self):
        body = f"a(n) ~ {self.C:.6g} * {self.mu:.10g}^n * n^({self.theta:.6g})"
        if self.period > 1:
            body += f" (support: n = {self.residue} mod {self.period})"
        if self.step > self.period:
            body += f" (for n = {self.step_residue} mod {self.step})"
        if not self.reliable:
            body += " [unreliable]"
        return body

    def to_dict(self):
        return {
            "mu": self.mu,
            "theta": self.theta,
            "C": self.C,
            "period": self.period,
            "residue": self.residue,
            "step": self.step,
            "stepResidue": self.step_residue,
            "deltas": dict(self.deltas),
            "reliable": self.reliable,
            "characteristicRoot": self.characteristic_root,
            "termsUsed": self.terms_used,
            "text": self.to_text(),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            d["mu"], d["theta"], d["C"], d["period"], d["residue"], d["step"], d["stepResidue"], dict(d["deltas"]),
            d["reliable"], d["characteristicRoot"], d["termsUsed"],
        )


def detect_period(terms, window=PERIOD_WINDOW):
    """(d, residues): smallest d making the zero pattern of the last ``window`` terms d-periodic."""
    tail_start = max(0, len(terms) - window)
    nz = [(n, terms[n] != 0) for n in range(tail_start, len(terms))]
    if not any(flag for _, flag in nz):
        raise AsymptoticsError("the sequence vanishes on the whole detection window")
    for d in range(1, len(nz) // 2 + 1):
        if all(nz[k][1] == nz[k + d][1] for k in range(len(nz) - d)):
            residues = sorted({n % d for n, flag in nz if flag})
            return d, residues
    return 1, [0]


def richardson(values, ns, depth=RICHARDSON_DEPTH):
    """Extrapolate s(n) = L + c1/n + ... to n = infinity from the last depth+1 samples."""
    xs = [mpmath.mpf(1) / n for n in ns[-(depth + 1) :]]
    ys = list(values[-(depth + 1) :])
    # Neville's scheme evaluated at x = 0
    p = ys[:]
    k = len(xs)
    for level in range(1, k):
        for i in range(k - level):
            p[i] = (xs[i + level] * p[i] - xs[i] * p[i + 1]) / (xs[i + level] - xs[i])
    return p[0]


def _extrapolate(values, ns, depth):
    """Estimate and convergence delta (depth vs depth-1, and one step back)."""
    est = richardson(values, ns, depth)
    back = richardson(values[:-1], ns[:-1], depth)
    lower = richardson(values, ns, depth - 1)
    return est, max(abs(est - back), abs(est - lower))


def characteristic_roots(rec: HolonomicRecurrence):
    top = max(c.degree for c in rec.coefficients)
    poly = [rec.coefficients[i][top] for i in range(rec.order + 1)]
    while poly and poly[-1] == 0:
        poly.pop()
    while poly and poly[0] == 0:
        poly.pop(0)
    if len(poly) < 2:
        return []
    return mpmath.polyroots([mpmath.mpf(Fraction(c).numerator) / Fraction(c).denominator for c in reversed(poly)],
                           maxsteps=200, extraprec=200)


def estimate_asymptotics(rec: HolonomicRecurrence | None, terms, depth=RICHARDSON_DEPTH) -> AsymptoticEstimate:
    """mu, theta and C on the support subsequence, by Richardson-accelerated ratio limits."""
    terms = [Fraction(a) for a in terms]
    with mpmath.workdps(ASYMPTOTIC_DIGITS):
        d0, residues = detect_period(terms)
        last = max(n for n in range(len(terms)) if terms[n] != 0)
        best = None
        for mult in (1, 2, 3, 4, 6):
            d = d0 * mult
            rho = last % d
            ns = list(range(rho, len(terms), d))
            if len(ns) < 3 * (depth + 2):
                break
            sub = [terms[n] for n in ns]
            tail = sub[len(sub) // 2 :]
            signs = {x > 0 for x in tail if x != 0}
            if len(signs) != 1 or any(x == 0 for x in tail):
                continue
            sign = 1 if signs.pop() else -1
            # early zeros (words too short to reach the target) carry no growth information
            start = max((i + 1 for i, x in enumerate(sub) if x == 0), default=0)
            ns, sub = ns[start:], sub[start:]
            est = _estimate_step(ns, sub, d, sign, depth)
            if best is None or est[4] < best[4]:
                best = est + (d, rho)
            if est[4] < mpmath.mpf(10) ** -8:
                break
        if best is None:
            raise AsymptoticsError("no support subsequence of constant sign")
        mu, theta, C, deltas, worst, step, rho = best
        roots = characteristic_roots(rec) if rec is not None else []
        char_root = None
        if roots:
            moduli = sorted((abs(r) for r in roots), key=lambda x: abs(x - mu))
            char_root = moduli[0]
            deltas["mu_vs_characteristic_root"] = float(abs(char_root - mu))
        reliable = worst < mpmath.mpf(10) ** -6 and mu > 0
        if char_root is not None and abs(char_root - mu) > max(mpmath.mpf(10) ** -6, 10 * deltas["mu"]):
            reliable = False
        return AsymptoticEstimate(
            float(mu), float(theta), float(C), d0, rho % d0, step, rho,
            {k: float(v) for k, v in deltas.items()}, bool(reliable),
            None if char_root is None else float(char_root), len(terms),
        )


def _estimate_step(ns, sub, d, sign, depth):
    mpf = mpmath.mpf
    vals = [mpf(x.numerator) / x.denominator * sign for x in sub]
    ratio = [vals[k + 1] / vals[k] for k in range(len(vals) - 1)]
    rns = ns[:-1]
    mu_d, dmu_d = _extrapolate(ratio, rns, depth)
    if mu_d <= 0:
        return mpf(0), mpf(0), mpf(0), {"mu": float("inf")}, mpf("inf")
    mu = mu_d ** (mpf(1) / d)
    dmu = dmu_d / (d * mu_d) * mu
    theta_seq = [n * (r / mu_d - 1) / d for n, r in zip(rns, ratio)]
    theta, dtheta = _extrapolate(theta_seq, rns, depth)
    logmu = mpmath.log(mu)
    c_seq = [v / mpmath.exp(n * logmu + theta * mpmath.log(n)) for n, v in zip(ns, vals) if n > 0]
    c_ns = [n for n in ns if n > 0]
    C, dC = _extrapolate(c_seq, c_ns, depth)
    C = C * sign
    deltas = {"mu": dmu, "theta": dtheta, "C": dC}
    worst = max(dmu / mu, dtheta, dC / abs(C) if C else mpf("inf"))
    return mu, theta, C, deltas, worst
