"""Dispersion estimation for the red-mite counts with geometric weights.

The moment estimator of the negative-binomial size is notoriously shaky;
weights alpha^x (the closed-form cousin of approximate ML) pull the mites
estimate from 1.18 down to about 0.97-1.01, in line with the numerically
computed ML value of 1.025 reported for these data.

Run:  python demos/nb_mites_analysis.py
"""

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from steinmm import (
    NBParams, geom_nb, identity, load_mites, nb_estimate_nu, nb_estimate_pi,
    nb_mm_estimates, nb_nu_asym, nb_pi_asym, two_step,
)

OUT = "demos/output"


def main():
    data = load_mites()
    x = data.values
    print(f"n = {data.n} leaves, mean count {x.mean():.4f}, "
          f"sample variance {x.var(ddof=0):.4f} (overdispersed)")
    nu_id = nb_estimate_nu(data, identity()).value
    pi_id = nb_estimate_pi(data, identity()).value
    nu_mm, pi_mm = nb_mm_estimates(data, ddof=1)
    print(f"identity weight (1/n variance):  nu = {nu_id:.4f}, pi = {pi_id:.4f}")
    print(f"classical form (1/(n-1)):        nu = {nu_mm:.4f}, pi = {pi_mm:.4f}")

    print()
    print("estimates across geometric weights alpha^x:")
    print(f"{'alpha':>7}  {'nu_hat':>8}  {'pi_hat':>8}")
    alphas = (0.25, 0.4, 0.53, 0.62, 0.69, 0.75, 0.9)
    for a in alphas:
        print(f"{a:>7.2f}  {nb_estimate_nu(data, geom_nb(a)).value:>8.4f}"
              f"  {nb_estimate_pi(data, geom_nb(a)).value:>8.4f}")

    print()
    print("two-step tuning (pilot = identity-weight moment fit):")
    for target in ("nb_nu", "nb_pi"):
        for criterion in ("bias", "variance"):
            ts = two_step(data, "geom", criterion, target)
            print(f"  {target} / {criterion:>8}: alpha* = {ts.tune.optimum:.3f}"
                  f" -> estimate {ts.estimate.value:.4f}")

    # n-scaled asymptotic criteria at the pilot, over alpha
    pilot = NBParams.from_mean_size(mu=float(x.mean()), nu=nu_id)
    grid = np.linspace(0.05, 0.98, 160)
    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    for ax, asym, label in ((axes[0], nb_nu_asym, "size"),
                            (axes[1], nb_pi_asym, "probability")):
        nvar = [asym(pilot, geom_nb(a), 1).variance for a in grid]
        nbias = [abs(asym(pilot, geom_nb(a), 1).bias) for a in grid]
        ax.plot(grid, nvar / np.min(nvar), label="n*variance / min")
        ax.plot(grid, nbias / np.min(nbias), label="n*|bias| / min")
        ax.set_ylim(1, 4)
        ax.set_xlabel("alpha")
        ax.set_title(f"{label} estimator criteria at the pilot")
        ax.legend()
    fig.tight_layout()
    fig.savefig(f"{OUT}/nb_mites_criteria.png", dpi=120)
    print(f"figure written to {OUT}/nb_mites_criteria.png")


if __name__ == "__main__":
    import os

    os.makedirs(OUT, exist_ok=True)
    main()
