"""Fitting the inverse Gaussian shape to the Jug Bridge runoff data.

One identity, many estimators: f = 1 recovers the classical moment
estimator, f = 1/x the maximum-likelihood one, and fractional powers x^a
interpolate between and beyond them.  The two-step procedure tunes the
exponent against the asymptotic criteria evaluated at a pilot fit; the
search runs per branch because a = -1/2 makes the estimator degenerate.

Run:  python demos/ig_runoff_analysis.py
"""

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from steinmm import (
    IGParams, constant, ig_asym, ig_estimate, load_runoff, power,
    reciprocal, two_step,
)

OUT = "demos/output"


def main():
    data = load_runoff()
    mu_hat, ml = ig_estimate(data, reciprocal())
    _, mm = ig_estimate(data, constant())
    print(f"n = {data.n} runoff amounts, sample mean {mu_hat:.4f}")
    print(f"shape via f = 1/x (ML form):  {ml.value:.4f}")
    print(f"shape via f = 1   (MM form):  {mm.value:.4f}")

    print()
    print("tuned exponents at the pilot fit (mu, lambda) = "
          f"({mu_hat:.3f}, {ml.value:.3f}):")
    rows = []
    for branch, criterion in (("below", "variance"), ("below", "bias"),
                              ("above", "bias"), ("above", "variance")):
        ts = two_step(data, "pow", criterion, "ig_lambda", branch=branch)
        rows.append((branch, criterion, ts.tune.optimum, ts.estimate.value))
        print(f"  {criterion:>8}-optimal, branch {branch:>5}: "
              f"a* = {ts.tune.optimum:+.3f} -> lambda_hat = {ts.estimate.value:.4f}")
    print("the variance-optimal exponent below the pole is the ML weight "
          "a = -1; bias tuning nudges it upward")

    # profile the estimate and the asymptotic sd over the exponent
    pilot = IGParams(mu_hat, ml.value)
    grids = (np.linspace(-2.5, -0.52, 120), np.linspace(-0.48, 0.8, 90))
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4), sharey=False)
    for grid in grids:
        est = [ig_estimate(data, power(a))[1].value for a in grid]
        sd = [ig_asym(pilot, power(a), data.n).sd for a in grid]
        ax1.plot(grid, est, "C0")
        ax2.plot(grid, sd, "C1")
    for a_used, label in ((-1.0, "ML"), (0.0, "MM")):
        ax1.axvline(a_used, ls=":", c="gray")
    ax1.set_xlabel("exponent a")
    ax1.set_ylabel("shape estimate")
    ax1.set_title("estimate jumps across the a = -1/2 pole")
    ax2.set_xlabel("exponent a")
    ax2.set_ylabel("asymptotic sd at the pilot")
    ax2.set_title("the left branch is much more efficient")
    fig.tight_layout()
    fig.savefig(f"{OUT}/ig_runoff_profile.png", dpi=120)
    print(f"figure written to {OUT}/ig_runoff_profile.png")


if __name__ == "__main__":
    import os

    os.makedirs(OUT, exist_ok=True)
    main()
