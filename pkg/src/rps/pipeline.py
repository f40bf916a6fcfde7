"""Solve counting instances into propositions and collect them into webbooks."""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace

from . import __version__
from .cluster import WeightEnumerator, build_enumerator
from .diagonal import diagonal_terms
from .errors import AsymptoticsError, DegenerateEquationError, SingularExtensionError, UnsupportedInstanceError
from .guess import AlgebraicEquation, HolonomicRecurrence, find_algebraic, guess_recurrence, verify_recurrence
from .holonomic import (
    AsymptoticEstimate,
    LinearODE,
    algebraic_to_ode,
    estimate_asymptotics,
    extend_sequence,
    ode_residual_order,
    ode_to_recurrence,
    required_initial_terms,
)
from .words import LETTER_PERMS_AND_REVERSAL, InstanceSpec, canonical_pairs, format_word, oracle_terms

log = logging.getLogger(__name__)

VERIFIED = "verified-to-order"
CROSS_CHECKED = "cross-checked-against-oracle"
ESTIMATED = "estimated-with-deltas"
FAILED = "failed"
ABSENT = "absent"


@dataclass(frozen=True)
class SolveOptions:
    terms: int = 50
    guard: int = 10
    max_deg_t: int = 12
    max_deg_p: int = 12
    max_order: int = 8
    max_deg: int = 12
    asymptotic_terms: int = 2000
    coherence_n: int = 200
    oracle_check_n: int = 100

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class Proposition:
    spec: InstanceSpec
    terms: tuple
    enumerator: WeightEnumerator | None = None
    algebraic: AlgebraicEquation | None = None
    ode: LinearODE | None = None
    ode_recurrence: HolonomicRecurrence | None = None
    recurrence: HolonomicRecurrence | None = None
    asymptotics: AsymptoticEstimate | None = None
    verification: dict = field(default_factory=dict)
    notes: str = ""
    version: str = __version__

    @property
    def ok(self):
        return all(v["status"] != FAILED for v in self.verification.values())

    def to_dict(self):
        def opt(x):
            return None if x is None else x.to_dict()

        return {
            "spec": self.spec.to_dict(),
            "terms": list(self.terms),
            "enumerator": opt(self.enumerator),
            "algebraic": opt(self.algebraic),
            "ode": opt(self.ode),
            "odeRecurrence": opt(self.ode_recurrence),
            "recurrence": opt(self.recurrence),
            "asymptotics": opt(self.asymptotics),
            "verification": self.verification,
            "notes": self.notes,
            "version": self.version,
        }

    @classmethod
    def from_dict(cls, d):
        spec = InstanceSpec.from_dict(d["spec"])

        def opt(key, loader):
            return None if d.get(key) is None else loader(d[key])

        return cls(
            spec=spec,
            terms=tuple(d["terms"]),
            enumerator=opt("enumerator", lambda x: WeightEnumerator.from_dict(x, spec)),
            algebraic=opt("algebraic", AlgebraicEquation.from_dict),
            ode=opt("ode", LinearODE.from_dict),
            ode_recurrence=opt("odeRecurrence", HolonomicRecurrence.from_dict),
            recurrence=opt("recurrence", HolonomicRecurrence.from_dict),
            asymptotics=opt("asymptotics", AsymptoticEstimate.from_dict),
            verification={k: dict(v) for k, v in d["verification"].items()},
            notes=d["notes"],
            version=d["version"],
        )


def _status(status, detail=""):
    return {"status": status, "detail": detail}


def solve_instance(spec: InstanceSpec, opts: SolveOptions | None = None) -> Proposition:
    """Run oracle, cluster/diagonal cross-check, guessers, ODE route and asymptotics."""
    opts = opts or SolveOptions()
    N = opts.terms
    terms = oracle_terms(spec, N - 1)
    work = list(terms)
    ver = {}
    notes = [f"terms from the automaton oracle; guessed objects fit with guard {opts.guard} and hold on every term used"]

    def more_terms():
        nonlocal work
        if len(work) < 2 * N:
            work = oracle_terms(spec, 2 * N - 1)
            notes.append(f"guessing budget escalated to {2 * N} terms and doubled degree/order caps")
        return work

    enumerator = None
    try:
        enumerator = build_enumerator(spec)
    except UnsupportedInstanceError as exc:
        ver["enumerator"] = _status(ABSENT, f"unsupported instance: {exc}")
    if enumerator is not None:
        diag = diagonal_terms(enumerator, N - 1)
        if diag != terms:
            bad = next(n for n, (x, y) in enumerate(zip(diag, terms)) if x != y)
            ver["enumerator"] = _status(FAILED, f"constant term disagrees with the oracle at n = {bad}")
            ver["terms"] = _status(FAILED, "aborted: enumerator and oracle disagree")
            return Proposition(spec, tuple(terms), enumerator, verification=ver, notes="; ".join(notes))
        ver["enumerator"] = _status(CROSS_CHECKED, f"constant term equals oracle for n < {N}")
        ver["terms"] = _status(CROSS_CHECKED, "constant-term expansion agrees")
    else:
        ver["terms"] = _status(VERIFIED, "oracle only")

    algebraic = find_algebraic(work, opts.max_deg_t, opts.max_deg_p, opts.guard)
    if algebraic is None:
        algebraic = find_algebraic(more_terms(), 2 * opts.max_deg_t, 2 * opts.max_deg_p, opts.guard)
    ode = ode_rec = None
    if algebraic is None:
        ver["algebraic"] = _status(ABSENT, "no equation within the degree budget")
        ver["ode"] = _status(ABSENT, "needs an algebraic equation")
    else:
        ver["algebraic"] = _status(VERIFIED, f"Q(t, P(t)) = O(t^{algebraic.verified_order + 1})")
        try:
            ode = algebraic_to_ode(algebraic)
        except DegenerateEquationError as exc:
            ver["ode"] = _status(ABSENT, str(exc))
        if ode is not None:
            order = ode_residual_order(ode, work)
            if order != len(work) - ode.order - 1:
                ver["ode"] = _status(FAILED, f"ODE fails on the series at t^{order + 1}")
                ode = None
            else:
                ver["ode"] = _status(VERIFIED, f"annihilates the series through t^{order}")
                ode_rec = ode_to_recurrence(ode)
                ode_rec = ode_rec.with_range(verify_recurrence(ode_rec, work))

    recurrence = guess_recurrence(work, opts.max_order, opts.max_deg, opts.guard, skip_infeasible=True)
    if recurrence is None:
        recurrence = guess_recurrence(more_terms(), 2 * opts.max_order, 2 * opts.max_deg, opts.guard, skip_infeasible=True)
        if ode_rec is not None:
            ode_rec = ode_rec.with_range(verify_recurrence(ode_rec, work))
    if recurrence is None:
        ver["recurrence"] = _status(ABSENT, "no recurrence within the order/degree budget")
    else:
        ver["recurrence"] = _status(VERIFIED, f"holds for n = 0..{recurrence.verified_range[1]}")

    check = oracle_terms(spec, opts.oracle_check_n)
    for name, rec in (("recurrence", recurrence), ("odeRecurrence", ode_rec)):
        if rec is None:
            continue
        try:
            ext = extend_sequence(rec, work[: required_initial_terms(rec)], opts.oracle_check_n)
        except SingularExtensionError as exc:
            ver[name] = _status(FAILED, str(exc))
            continue
        if ext != check:
            ver[name] = _status(FAILED, f"extension disagrees with the oracle before n = {opts.oracle_check_n}")
        elif name == "odeRecurrence":
            ver[name] = _status(CROSS_CHECKED, f"extension equals oracle through n = {opts.oracle_check_n}")
        else:
            ver[name]["detail"] += f"; extension equals oracle through n = {opts.oracle_check_n}"

    if recurrence is not None and ode_rec is not None and ver["odeRecurrence"]["status"] != FAILED:
        initial = work[: max(required_initial_terms(recurrence), required_initial_terms(ode_rec))]
        try:
            same = extend_sequence(recurrence, initial, opts.coherence_n) == extend_sequence(ode_rec, initial, opts.coherence_n)
        except SingularExtensionError as exc:
            same, why = False, str(exc)
        else:
            why = f"the two recurrences disagree before n = {opts.coherence_n}"
        ver["coherence"] = (_status(CROSS_CHECKED, f"both recurrences agree through n = {opts.coherence_n}")
                            if same else _status(FAILED, why))

    asym = None
    driver = next((r for r, key in ((recurrence, "recurrence"), (ode_rec, "odeRecurrence"))
                   if r is not None and ver[key]["status"] != FAILED), None)
    if driver is None:
        ver["asymptotics"] = _status(ABSENT, "needs a recurrence")
    else:
        try:
            seq = extend_sequence(driver, work, opts.asymptotic_terms)
            est = estimate_asymptotics(driver, seq)
        except (AsymptoticsError, SingularExtensionError) as exc:
            ver["asymptotics"] = _status(ABSENT, str(exc))
        else:
            if est.reliable:
                asym = est
                ver["asymptotics"] = _status(ESTIMATED, f"{opts.asymptotic_terms} terms; Richardson deltas reported")
            else:
                ver["asymptotics"] = _status(ABSENT, "ratio extrapolation did not converge")

    notes.append("semi-rigorous: guessed equations are checked, not proved")
    return Proposition(spec, tuple(terms), enumerator, algebraic, ode, ode_rec, recurrence, asym, ver, "; ".join(notes))


# ---------------------------------------------------------------------------
# webbooks


@dataclass(frozen=True)
class Webbook:
    m: int
    k: int
    propositions: tuple
    symmetry: str = LETTER_PERMS_AND_REVERSAL

    def to_dict(self):
        return {
            "m": self.m,
            "k": self.k,
            "symmetry": self.symmetry,
            "count": len(self.propositions),
            "propositions": [p.to_dict() for p in self.propositions],
            "version": __version__,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d["m"], d["k"], tuple(Proposition.from_dict(p) for p in d["propositions"]), d["symmetry"])


def webbook_specs(m, k, symmetry=LETTER_PERMS_AND_REVERSAL):
    letters = "HT" if m == 2 else None
    specs = []
    for cls_ in canonical_pairs(m, k, symmetry):
        w1, w2 = cls_.representative
        spec = InstanceSpec(m, (w1, w2), (1, -1), 0, coin_letters=letters is not None)
        specs.append(spec)
    return specs


def generate_webbook(m, k, opts: SolveOptions | None = None, symmetry=LETTER_PERMS_AND_REVERSAL,
                     workers: int | None = None, solver=None) -> Webbook:
    """One proposition per canonical pair, weights (1, -1), target 0, in representative order."""
    opts = opts or SolveOptions()
    specs = webbook_specs(m, k, symmetry)
    solver = solver or solve_instance
    workers = workers if workers is not None else min(len(specs), os.cpu_count() or 1)
    if workers <= 1:
        props = [solver(s, opts) for s in specs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            props = list(pool.map(solver, specs, [opts] * len(specs)))
    return Webbook(m, k, tuple(props), symmetry)


# ---------------------------------------------------------------------------
# text rendering


def render_proposition(p: Proposition, number: int | None = None) -> str:
    spec = p.spec
    letters = ", ".join(spec.letters)
    head = f"Proposition {number}." if number is not None else "Proposition."
    lines = [
        f"{head} Let a(n) be the number of n-letter words over {{{letters}}} with {spec.describe()}.",
        f"  First {len(p.terms)} terms: " + ", ".join(str(x) for x in p.terms),
    ]
    if p.enumerator is not None:
        names = ", ".join(f"z{i + 1} = #{w}" for i, w in enumerate(spec.words_text()))
        lines.append(f"  Weight-enumerator ({names}): F = ({p.enumerator.value.numerator.to_text()}) / "
                     f"({p.enumerator.value.denominator.to_text()})")
    if p.algebraic is not None:
        lines.append(f"  P(t) = sum a(n) t^n satisfies  {p.algebraic.to_text()}")
    if p.ode is not None:
        lines.append(f"  Differential equation:  {p.ode.to_text()}")
    if p.recurrence is not None:
        lines.append(f"  Recurrence (order {p.recurrence.order}, degree {p.recurrence.degree}):  {p.recurrence.to_text()}")
    if p.ode_recurrence is not None:
        lines.append(f"  Recurrence from the ODE (order {p.ode_recurrence.order}):  {p.ode_recurrence.to_text()}")
    if p.asymptotics is not None:
        a = p.asymptotics
        lines.append(f"  Asymptotics:  {a.to_text()}")
        lines.append("    deltas: " + ", ".join(f"{k}={v:.2e}" for k, v in sorted(a.deltas.items())))
    lines.append("  Verification:")
    for key in sorted(p.verification):
        v = p.verification[key]
        lines.append(f"    {key}: {v['status']}" + (f" ({v['detail']})" if v["detail"] else ""))
    return "\n".join(lines)


def render_webbook(book: Webbook) -> str:
    head = [
        f"Webbook for m = {book.m}, k = {book.k}: all pairs of distinct words of length {book.k} "
        f"up to {'letter permutations and reversal' if book.symmetry == LETTER_PERMS_AND_REVERSAL else 'letter permutations'}.",
        f"It contains {len(book.propositions)} propositions.",
        "",
    ]
    body = [render_proposition(p, i + 1) + "\n" for i, p in enumerate(book.propositions)]
    return "\n".join(head + body)


def summary_rows(book: Webbook):
    """Tab-delimited summary: one row per proposition."""
    rows = [["index", "w1", "w2", "degT", "degP", "rec_order", "rec_degree", "mu", "theta", "C", "period", "ok"]]
    for i, p in enumerate(book.propositions, 1):
        w1, w2 = (format_word(w, p.spec.letters) for w in p.spec.patterns)
        a, r, s = p.algebraic, p.recurrence, p.asymptotics
        rows.append([
            str(i), w1, w2,
            str(a.deg_t) if a else "", str(a.deg_p) if a else "",
            str(r.order) if r else "", str(r.degree) if r else "",
            f"{s.mu:.12g}" if s else "", f"{s.theta:.8g}" if s else "", f"{s.C:.8g}" if s else "",
            str(s.period) if s else "", "yes" if p.ok else "no",
        ])
    return rows


def sequence_lines(terms) -> str:
    """b-file style: "n a(n)" per line."""
    return "".join(f"{n} {a}\n" for n, a in enumerate(terms))


def with_terms(p: Proposition, terms) -> Proposition:
    return replace(p, terms=tuple(terms))
