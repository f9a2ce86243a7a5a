"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line with its runtime.  Run with ``pytest tests/test_acceptance.py
-v -s`` to see the lines as they complete."""

import time

import numpy as np
import pytest

import steinmm
from steinmm import (
    Contamination, ExpParams, IGParams, NBParams, SimSpec, TuneSpec,
    constant, delta_oracle, exp_asym, exp_cov,
    exp_lambda_map, exp_mean_vector, geom_nb,
    geom_one_minus, identity, ig_asym, ig_cov, ig_estimate, ig_lambda_map,
    ig_mean_vector, ig_ml_closed, ig_mm_closed, mu_f, mu_tilde,
    nb_cov, nb_estimate_nu, nb_estimate_pi, nb_factorial_zmoment,
    nb_mean_vector, nb_nu_asym, nb_nu_map, nb_pi_asym, nb_pi_map,
    one_plus_log, optimize_weight, power, raw_moment, reciprocal, run_sim,
    shifted_power, stein_exp, truncated_sum,
)
from steinmm import nb_pmf, reproduce
from steinmm.published import (
    EXP_OPTIMA, TABLE1, TABLE1_CONTAMINATION, TABLE2, TABLE2_EXPONENTS,
    TABLE4, TABLE4_MU,
)

SEED = 20240601


def _report(num, label, failures, t0):
    status = "PASS" if not failures else "FAIL"
    print(f"ACCEPTANCE {num:>2} [{label}]: {status} ({time.perf_counter() - t0:.1f}s)")
    assert not failures, f"criterion {num} failed: " + "; ".join(failures[:10])


def _table2_weight(wspec):
    if wspec == "const":
        return constant()
    if wspec == "recip":
        return reciprocal()
    return power(TABLE2_EXPONENTS[wspec])


def test_criterion_01_closed_form_corollaries():
    t0 = time.perf_counter()
    failures = []
    mm = ig_mm_closed(1.0, 1.0, 100)
    ml = ig_ml_closed(1.0, 1.0, 100)
    for name, got, ref in (("mm sd", mm.sd, 0.283), ("mm bias", mm.bias, 0.120),
                           ("ml sd", ml.sd, 0.141), ("ml bias", ml.bias, 0.030)):
        if round(got, 3) != ref:
            failures.append(f"{name}: {got:.6f} != {ref}")
    _report(1, "closed-form corollaries", failures, t0)


def test_criterion_02_table2_asymptotic_columns():
    t0 = time.perf_counter()
    failures = []
    for (mu, lam), block in TABLE2.items():
        params = IGParams(float(mu), float(lam))
        for wspec, per_n in block.items():
            w = _table2_weight(wspec)
            for n, (_, ref_mean, _, ref_sd) in per_n.items():
                s = ig_asym(params, w, n)
                if abs(lam + s.bias - ref_mean) > 1e-3:
                    failures.append(
                        f"({mu},{lam}) {wspec} n={n} mean {lam + s.bias:.4f}"
                        f" vs {ref_mean}")
                if abs(s.sd - ref_sd) > 1e-3:
                    failures.append(
                        f"({mu},{lam}) {wspec} n={n} sd {s.sd:.4f} vs {ref_sd}")
    _report(2, "published asymptotic columns", failures, t0)


def test_criterion_03_table2_simulation_columns():
    t0 = time.perf_counter()
    failures = []
    for (mu, lam), block in TABLE2.items():
        params = IGParams(float(mu), float(lam))
        for wspec, per_n in block.items():
            w = _table2_weight(wspec)
            for n in (250, 500):
                ref_mean, _, ref_sd, _ = per_n[n]
                r = run_sim(SimSpec(params, "ig_lambda", w, n, 10_000, SEED))
                if abs(r.mean - ref_mean) > 0.015:
                    failures.append(
                        f"({mu},{lam}) {wspec} n={n} mean {r.mean:.4f}"
                        f" vs {ref_mean}")
                if abs(r.sd - ref_sd) > 0.015:
                    failures.append(
                        f"({mu},{lam}) {wspec} n={n} sd {r.sd:.4f} vs {ref_sd}")
    _report(3, "published simulation columns", failures, t0)


def test_criterion_04_exponential_optima():
    t0 = time.perf_counter()
    failures = []
    for n, (a_ref, u_ref) in EXP_OPTIMA.items():
        a = optimize_weight(TuneSpec(params=ExpParams(1.0), family="pow",
                                     criterion="mse", n=n,
                                     bracket=(0.5, 1.5))).optimum
        u = optimize_weight(TuneSpec(params=ExpParams(1.0), family="geom1m",
                                     criterion="mse", n=n,
                                     bracket=(0.01, 0.999))).optimum
        if abs(a - a_ref) > 2e-3:
            failures.append(f"n={n}: a* {a:.4f} vs {a_ref}")
        if abs(u - u_ref) > 2e-3:
            failures.append(f"n={n}: u* {u:.4f} vs {u_ref}")
    _report(4, "mse-optimal weight parameters", failures, t0)


def test_criterion_05_contamination_study():
    t0 = time.perf_counter()
    failures = []
    frac, shift = TABLE1_CONTAMINATION
    for n, cells in TABLE1.items():
        for wspec, (ref_bias, ref_mse) in cells.items():
            r = run_sim(SimSpec(ExpParams(1.0), "exp_lambda",
                                steinmm.parse_weight(wspec), n, 10_000, SEED,
                                Contamination(frac, shift)))
            if abs(r.bias - ref_bias) > 0.015:
                failures.append(f"n={n} {wspec} bias {r.bias:.4f} vs {ref_bias}")
            if abs(r.mse - ref_mse) > 0.01:
                failures.append(f"n={n} {wspec} mse {r.mse:.4f} vs {ref_mse}")
    _report(5, "contamination bias/mse", failures, t0)


@pytest.mark.filterwarnings("ignore:criterion profile")
def test_criterion_06_nb_optimal_weights():
    t0 = time.perf_counter()
    failures = []
    for (family, nu, target, criterion), (a_ref, m_ref) in TABLE4.items():
        params = NBParams.from_mean_size(mu=TABLE4_MU, nu=nu)
        bracket = (0.01, 0.999) if family == "geom" else (-0.99, 1.5)
        res = optimize_weight(TuneSpec(params=params, family=family,
                                       criterion=criterion, n=1,
                                       bracket=bracket, target=target))
        if abs(res.optimum - a_ref) > 2e-3:
            failures.append(f"{family} nu={nu} {target}/{criterion}: "
                            f"opt {res.optimum:.4f} vs {a_ref}")
        if abs(res.value - m_ref) > 1e-2:
            failures.append(f"{family} nu={nu} {target}/{criterion}: "
                            f"min {res.value:.4f} vs {m_ref}")
    _report(6, "nb optimal weights", failures, t0)


def test_criterion_07_real_data_tables():
    t0 = time.perf_counter()
    failures = []
    for row in reproduce("table3"):
        if row["abs_dev"] > 5e-4:
            failures.append(f"runoff {row['note']}: {row['lambda_hat']:.4f}"
                            f" vs {row['published_lambda_hat']}")
    for row in reproduce("table5"):
        if row["abs_dev"] > 5e-4:
            failures.append(f"mites {row['target']} {row['weight']}: "
                            f"{row['estimate']:.4f} vs {row['published_estimate']}")
    _report(7, "real-data tables", failures, t0)


def test_criterion_08_delta_method_oracle():
    t0 = time.perf_counter()
    failures = []

    def check(label, oracle, closed, rtol):
        for field in ("variance", "bias"):
            o, c = getattr(oracle, field), getattr(closed, field)
            if abs(o - c) > rtol * abs(c) + 1e-12:
                failures.append(f"{label} {field}: {o:.8g} vs {c:.8g}")

    for lam in (0.5, 1.0, 3.0):
        p = ExpParams(lam)
        for w in (identity(), power(0.9), power(1.3), geom_one_minus(0.7),
                  one_plus_log()):
            check(f"exp lam={lam} {w.spec}",
                  delta_oracle(exp_lambda_map, exp_mean_vector(p, w),
                               exp_cov(p, w), 50),
                  exp_asym(p, w, 50), 1e-6)
    for p in (IGParams(1, 1), IGParams(3, 1), IGParams(1, 3), IGParams(3, 3)):
        for w in (constant(), power(-1 / 3), power(-2 / 3), reciprocal(),
                  power(-4 / 3)):
            check(f"ig ({p.mu},{p.lam}) {w.spec}",
                  delta_oracle(ig_lambda_map, ig_mean_vector(p, w),
                               ig_cov(p, w), 100),
                  ig_asym(p, w, 100), 1e-5)
    for nu in (1.0, 1.5, 2.5):
        p = NBParams.from_mean_size(2.5, nu)
        for w in (identity(), geom_nb(0.53), geom_nb(0.8),
                  shifted_power(-0.489)):
            z, S = nb_mean_vector(p, w), nb_cov(p, w)
            check(f"nb nu={nu} {w.spec} (size)",
                  delta_oracle(nb_nu_map, z, S, 1), nb_nu_asym(p, w, 1), 1e-5)
            check(f"nb nu={nu} {w.spec} (prob)",
                  delta_oracle(nb_pi_map, z, S, 1), nb_pi_asym(p, w, 1), 1e-5)
    _report(8, "delta-method oracle equivalence", failures, t0)


def test_criterion_09_moment_identities():
    t0 = time.perf_counter()
    failures = []

    def close(label, a, b, rtol):
        if abs(a - b) > rtol * max(abs(a), abs(b)) + 1e-12:
            failures.append(f"{label}: {a:.10g} vs {b:.10g}")

    # reciprocal-moment identity under the inverse Gaussian
    for p in (IGParams(1, 1), IGParams(3, 1), IGParams(1, 3)):
        for k in (0, 1, 2):
            close(f"recip moment k={k} ({p.mu},{p.lam})",
                  raw_moment(p, -float(k), method="quadrature"),
                  raw_moment(p, k + 1) / p.mu ** (2 * k + 1), 1e-7)
    # factorial z-moments against brute-force sums
    for nu, pi in ((1.0, 0.286), (1.5, 0.375), (2.5, 0.5)):
        p = NBParams(nu=nu, pi=pi)
        for k in (0, 1, 2, 3):
            for z in (0.25, 0.5, 0.9, 1.0):
                def falling(x, r=k):
                    out = 1.0
                    for i in range(r):
                        out *= x - i
                    return out
                brute = truncated_sum(
                    lambda x: falling(x) * z ** x * nb_pmf(p, x))
                close(f"zmoment k={k} z={z} nu={nu}",
                      nb_factorial_zmoment(p, k, z), brute, 1e-8)
    # the fifteen reciprocal-weight reductions
    from test_moments import RECIP_TABLE
    for p in (IGParams(1, 1), IGParams(3, 1)):
        for t, expected in RECIP_TABLE.items():
            close(f"recip table {t} ({p.mu},{p.lam})",
                  mu_f(p, reciprocal(), t, method="quadrature"),
                  expected(lambda r: raw_moment(p, r)), 1e-7)
    # closed against numeric weighted moments
    for lam in (0.5, 1.0, 3.0):
        p = ExpParams(lam)
        for w in (power(0.9), power(1.3), geom_one_minus(0.7)):
            for t in ((0, 1, 0), (0, 2, 0), (0, 0, 2)):
                close(f"exp closed {w.spec} {t} lam={lam}",
                      mu_f(p, w, t, method="closed"),
                      mu_f(p, w, t, method="quadrature"), 1e-7)
    for nu in (1.0, 1.5, 2.5):
        p = NBParams.from_mean_size(2.5, nu)
        for alpha in (0.25, 0.53, 0.8):
            for t in ((0, 0, 1), (1, 0, 2), (2, 1, 1), (2, 2, 0)):
                close(f"nb closed alpha={alpha} {t} nu={nu}",
                      mu_tilde(p, geom_nb(alpha), t, method="closed"),
                      mu_tilde(p, geom_nb(alpha), t, method="sum"), 1e-8)
    _report(9, "moment identities", failures, t0)


def test_criterion_10_algebraic_reductions():
    t0 = time.perf_counter()
    failures = []
    rng = np.random.default_rng(8)

    def close(label, a, b):
        if abs(a - b) > 1e-12 * max(abs(a), abs(b)):
            failures.append(f"{label}: {a!r} vs {b!r}")

    done = 0
    while done < 200:
        n = int(rng.integers(5, 80))
        x = rng.gamma(2.0, 1.5, size=n)
        xb = x.mean()
        close("exp identity", stein_exp(x, identity()).value, 1.0 / xb)
        close("ig constant", ig_estimate(x, constant())[1].value,
              xb ** 3 / x.var(ddof=0))
        close("ig reciprocal", ig_estimate(x, reciprocal())[1].value,
              xb / (xb * np.mean(1.0 / x) - 1.0))
        counts = rng.negative_binomial(2, 0.4, size=max(n, 12)).astype(float)
        if counts.var(ddof=0) > counts.mean():
            cb, s2 = counts.mean(), counts.var(ddof=0)
            close("nb size", nb_estimate_nu(counts, identity()).value,
                  cb ** 2 / (s2 - cb))
            close("nb prob", nb_estimate_pi(counts, identity()).value,
                  cb / s2)
        done += 1
    _report(10, "algebraic reductions", failures, t0)
