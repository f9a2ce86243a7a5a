"""How the weight function trades bias against variance for exponential data.

The rate estimator mean f'(X) / mean f(X) collapses to 1/mean(X) for
f(x) = x, but sublinear weights damp large observations and buy a smaller
bias (and, tuned well, a smaller MSE).  This script traces the asymptotic
variance, bias, and MSE across the two parametric families x^a and
1 - u^x, marks the MSE-optimal parameters for several sample sizes, and
renders the curves to PNG.

Run:  python demos/exp_weight_tradeoffs.py
"""

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from steinmm import (
    ExpParams, TuneSpec, exp_geom_closed, exp_power_closed, optimize_weight,
)

OUT = "demos/output"


def main():
    lam = 1.0
    sizes = (10, 25, 50, 100)

    print("== power weights x^a, rate 1 ==")
    a_grid = np.linspace(0.55, 1.5, 300)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    n0 = 10
    var = [exp_power_closed(lam, a, n0).variance * n0 for a in a_grid]
    bias = [exp_power_closed(lam, a, n0).bias * n0 for a in a_grid]
    ax1.plot(a_grid, var, label="n * variance")
    ax1.plot(a_grid, bias, label="n * bias")
    ax1.axvline(1.0, ls=":", c="gray", label="a = 1 (plain 1/mean)")
    ax1.set_xlabel("a")
    ax1.legend()
    ax1.set_title("variance is flattest at a = 1; bias keeps falling")

    print(f"{'n':>4}  {'a*':>7}  {'mse(a*)':>10}  {'mse(a=1)':>10}")
    for n in sizes:
        res = optimize_weight(TuneSpec(params=ExpParams(lam), family="pow",
                                       criterion="mse", n=n,
                                       bracket=(0.5, 1.5)))
        mse = [exp_power_closed(lam, a, n).mse for a in a_grid]
        ax2.plot(a_grid, mse, label=f"n = {n}")
        ax2.plot(res.optimum, res.value, "ko", ms=4)
        print(f"{n:>4}  {res.optimum:>7.3f}  {res.value:>10.5f}"
              f"  {exp_power_closed(lam, 1.0, n).mse:>10.5f}")
    ax2.set_xlabel("a")
    ax2.set_yscale("log")
    ax2.legend()
    ax2.set_title("MSE minima sit left of a = 1")
    fig.tight_layout()
    fig.savefig(f"{OUT}/exp_power_tradeoff.png", dpi=120)

    print()
    print("== bounded weights 1 - u^x ==")
    print("the optimum now depends on the rate, so tuning needs a pilot:")
    u_grid = np.linspace(0.02, 0.998, 400)
    fig, ax = plt.subplots(figsize=(6, 4))
    for rate in (0.5, 1.0, 2.0):
        mse = [exp_geom_closed(rate, u, 25).mse for u in u_grid]
        res = optimize_weight(TuneSpec(params=ExpParams(rate), family="geom1m",
                                       criterion="mse", n=25,
                                       bracket=(0.01, 0.999)))
        ax.plot(u_grid, mse / np.min(mse), label=f"rate {rate}: u* = {res.optimum:.3f}")
        print(f"  rate {rate}: u* = {res.optimum:.3f}")
    ax.set_xlabel("u")
    ax.set_ylabel("mse / min mse")
    ax.set_ylim(1.0, 2.0)
    ax.legend()
    fig.tight_layout()
    fig.savefig(f"{OUT}/exp_geom_tradeoff.png", dpi=120)
    print(f"figures written to {OUT}/")


if __name__ == "__main__":
    import os

    os.makedirs(OUT, exist_ok=True)
    main()
