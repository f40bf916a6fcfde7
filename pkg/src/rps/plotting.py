"""Figures for propositions and webbooks (PNG files, no display needed)."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .holonomic import extend_sequence  # noqa: E402

GOLDEN = (math.sqrt(5) - 1.0) / 2.0
PLOT_TERMS = 300


def new_figure(width=8.0, ncols=1):
    fig, axes = plt.subplots(ncols=ncols, figsize=(width, width * GOLDEN / (1 if ncols == 1 else 1.4)))
    return fig, axes


def _log_abs(x):
    x = abs(int(x)) if getattr(x, "denominator", 1) == 1 else abs(x)
    return math.log10(x) if x else float("nan")


def plot_proposition(prop, path, n_max=PLOT_TERMS):
    """Left: log10 a(n) with the fitted asymptotic curve.  Right: stride ratios against mu^stride."""
    seq = list(prop.terms)
    if prop.recurrence is not None:
        try:
            seq = extend_sequence(prop.recurrence, seq, n_max)
        except ArithmeticError:
            pass
    fig, (left, right) = new_figure(ncols=2, width=11)
    ns = [n for n, a in enumerate(seq) if a != 0]
    left.plot(ns, [_log_abs(seq[n]) for n in ns], ".", ms=3, label="a(n)")
    est = prop.asymptotics
    if est is not None:
        fit = [n for n in ns if n > 0 and n % est.step == est.step_residue]
        left.plot(fit, [math.log10(abs(est.C)) + n * math.log10(est.mu) + est.theta * math.log10(n) for n in fit],
                  "-", lw=1, label="C mu^n n^theta")
        d = est.step
        pairs = [(n, seq[n + d] / seq[n]) for n in range(len(seq) - d) if seq[n] != 0 and n % d == est.step_residue]
        right.plot([n for n, _ in pairs], [float(r) for _, r in pairs], ".", ms=3, label=f"a(n+{d})/a(n)")
        right.axhline(est.mu**d, color="k", lw=0.8, ls="--", label=f"mu^{d} = {est.mu**d:.6g}")
        right.legend(fontsize=8)
    right.set_xlabel("n")
    right.set_title("ratio convergence", fontsize=10)
    left.set_xlabel("n")
    left.set_ylabel("log10 a(n)")
    left.legend(fontsize=8)
    left.set_title(prop.spec.describe(), fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_webbook(book, path):
    """Growth rate and polynomial exponent per proposition."""
    fig, (left, right) = new_figure(ncols=2, width=11)
    idx = list(range(1, len(book.propositions) + 1))
    mus = [p.asymptotics.mu if p.asymptotics else float("nan") for p in book.propositions]
    thetas = [p.asymptotics.theta if p.asymptotics else float("nan") for p in book.propositions]
    left.bar(idx, mus, color="0.4")
    left.axhline(book.m, color="k", lw=0.8, ls="--")
    left.set_xlabel("proposition")
    left.set_ylabel("mu")
    right.bar(idx, thetas, color="0.6")
    right.set_xlabel("proposition")
    right.set_ylabel("theta")
    fig.suptitle(f"m = {book.m}, k = {book.k}: {len(book.propositions)} propositions", fontsize=11)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
