"""End-to-end acceptance suite.

Each test prints a single ``PASS``/``FAIL`` line for its criterion.  The
criteria are property-based: classical reduction, normalization, moment-method
agreement, the pmf recurrence, the MGF, Mittag-Leffler identities, sampling,
fitting self-consistency, and the CLI contract.
"""

import itertools
import json
import math
import time

import numpy as np
import pytest

from wright_poisson import (
    cli,
    log_gamma,
    mittag_leffler,
    mittag_leffler2,
    mittag_leffler3,
    new_wright_poisson,
    wright_series,
    WrightSpec,
    fit_m,
    fit_full,
    CountData,
)

ALPHAS = [0.5, 1.0, 1.5, 2.0, 3.0]
BETAS = [0.5, 1.0, 1.5, 2.0, 3.0]
MS = [0.1, 1.0, 5.0]
GRID = list(itertools.product(ALPHAS, BETAS, MS))


def _report(name, passed, detail):
    status = "PASS" if passed else "FAIL"
    print(f"{status} {name}: {detail}")
    assert passed, f"{name}: {detail}"


def test_criterion_01_classical_reduction():
    t0 = time.perf_counter()
    worst = 0.0
    for m in (0.1, 1.0, 5.0, 20.0):
        d = new_wright_poisson(1.0, 1.0, m)
        log_m = math.log(m)
        for r in range(51):
            ref = math.exp(r * log_m - m - math.lgamma(r + 1))
            err = abs(d.pmf(r) - ref) / ref
            worst = max(worst, err)
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and elapsed < 1.0
    _report(
        "criterion-01 classical reduction",
        ok,
        f"max rel err {worst:.3e} (tol 1e-12), {elapsed:.2f}s (< 1s)",
    )


def test_criterion_02_normalization():
    t0 = time.perf_counter()
    lo, hi = 1.0, 1.0
    for a, b, m in GRID:
        d = new_wright_poisson(a, b, m)
        total = float(np.sum(d.support_pmf()))
        lo = min(lo, total)
        hi = max(hi, total)
    elapsed = time.perf_counter() - t0
    ok = lo >= 1.0 - 1e-10 and hi <= 1.0 + 1e-12 and elapsed < 5.0
    _report(
        "criterion-02 normalization",
        ok,
        f"sum range [{lo:.15f}, {hi:.15f}], {elapsed:.2f}s (< 5s)",
    )


def test_criterion_03_mean_methods():
    t0 = time.perf_counter()
    worst = 0.0
    for a, b, m in GRID:
        rep = new_wright_poisson(a, b, m).moment_report()
        means = (rep.mean_series, rep.mean_closed_i, rep.mean_closed_ii)
        scale = max(1.0, abs(rep.mean_series))
        spread = (max(means) - min(means)) / scale
        worst = max(worst, spread)
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and elapsed < 5.0
    _report(
        "criterion-03 mean methods",
        ok,
        f"max pairwise spread {worst:.3e} (tol 1e-9, incl beta=1), "
        f"{elapsed:.2f}s (< 5s)",
    )


def test_criterion_04_second_moment_methods():
    t0 = time.perf_counter()
    worst = 0.0
    zero_terms_ok = True
    for a, b, m in GRID:
        rep = new_wright_poisson(a, b, m).moment_report()
        m2s = (rep.m2_series, rep.m2_closed_i, rep.m2_closed_ii)
        scale = max(1.0, abs(rep.m2_series))
        worst = max(worst, (max(m2s) - min(m2s)) / scale)
        # the 2Psi2 behind m2_closed_i must have exactly-zero k = 0, 1 terms
        spec = WrightSpec([(1.0, 1.0), (1.0, 1.0)], [(-1.0, 1.0), (b, a)], m)
        from wright_poisson.special import wright_term

        if wright_term(spec, 0) != 0.0 or wright_term(spec, 1) != 0.0:
            zero_terms_ok = False
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and zero_terms_ok and elapsed < 5.0
    _report(
        "criterion-04 second-moment methods",
        ok,
        f"max pairwise spread {worst:.3e} (tol 1e-9), "
        f"2Psi2 k=0,1 terms exactly zero: {zero_terms_ok}, "
        f"{elapsed:.2f}s (< 5s)",
    )


def test_criterion_05_recurrence():
    worst = 0.0
    for a, b, m in GRID:
        d = new_wright_poisson(a, b, m)
        p = d.pmf(0)
        for r in range(200):
            p = d.pmf_recurrence_step(r, p)
            direct = math.exp(d.log_pmf(r + 1))
            if direct > 1e-300:
                worst = max(worst, abs(p - direct) / direct)
    ok = worst <= 1e-12
    _report(
        "criterion-05 recurrence",
        ok,
        f"max rel err through r=200 {worst:.3e} (tol 1e-12)",
    )


def test_criterion_06_mgf():
    worst_mgf = 0.0
    worst_at0 = 0.0
    worst_fd = 0.0
    for a, b, m in GRID:
        d = new_wright_poisson(a, b, m)
        for t in (-1.0, -0.5, 0.0, 0.5, 1.0):
            closed = d.mgf(t)
            oracle = d.expectation(lambda r: math.exp(t * r))
            worst_mgf = max(worst_mgf, abs(closed - oracle) / abs(oracle))
        worst_at0 = max(worst_at0, abs(d.mgf(0.0) - 1.0))
        h = 1e-5
        fd = (d.mgf(h) - d.mgf(-h)) / (2.0 * h)
        mean = d.moment_report().mean_series
        worst_fd = max(worst_fd, abs(fd - mean) / max(1.0, abs(mean)))
    ok = worst_mgf <= 1e-10 and worst_at0 == 0.0 and worst_fd <= 1e-6
    _report(
        "criterion-06 mgf",
        ok,
        f"max rel err vs oracle {worst_mgf:.3e} (tol 1e-10), "
        f"mgf(0)-1 = {worst_at0:.1e}, "
        f"finite-diff vs mean {worst_fd:.3e} (tol 1e-6)",
    )


def test_criterion_07_mittag_leffler_identities():
    rng = np.random.default_rng(20240501)
    worst = 0.0
    for _ in range(200):
        alpha = float(rng.uniform(0.15, 3.0))
        beta = float(rng.uniform(0.15, 3.0))
        z = float(rng.uniform(-2.0, 2.0))
        checks = [
            (mittag_leffler(1.0, z).value, math.exp(z)),
            (mittag_leffler(2.0, z * z).value, math.cosh(z)),
            (
                mittag_leffler2(1.0, 2.0, z).value,
                math.expm1(z) / z if z != 0.0 else 1.0,
            ),
            (
                mittag_leffler3(alpha, beta, 1.0, z).value,
                mittag_leffler2(alpha, beta, z).value,
            ),
        ]
        for got, want in checks:
            scale = max(abs(want), 1e-15)
            worst = max(worst, abs(got - want) / scale)
    ok = worst <= 1e-12
    _report(
        "criterion-07 mittag-leffler identities",
        ok,
        f"max rel err over 200 random points {worst:.3e} (tol 1e-12)",
    )


def test_criterion_08_sampling():
    t0 = time.perf_counter()
    ok = True
    details = []
    for a, b, m in ((1.0, 1.0, 4.0), (2.0, 1.0, 1.0), (0.5, 1.5, 1.0)):
        d = new_wright_poisson(a, b, m)
        rep = d.moment_report()
        n = 100_000
        batch = d.sample(n, seed=4242)
        again = d.sample(n, seed=4242)
        deterministic = np.array_equal(batch.values, again.values)
        bound = 3.0 * math.sqrt(rep.variance / n)
        dev = abs(float(np.mean(batch.values)) - rep.mean_series)
        ok = ok and deterministic and dev <= bound
        details.append(f"({a},{b},{m}): |dev| {dev:.2e} <= {bound:.2e}")
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 10.0
    _report(
        "criterion-08 sampling",
        ok,
        "; ".join(details) + f", deterministic, {elapsed:.2f}s (< 10s)",
    )


def test_criterion_09_fitting_self_consistency():
    rng = np.random.default_rng(90210)
    counts = rng.poisson(4.0, 100_000)
    data = CountData.from_counts(counts)
    res = fit_m(data, alpha=1.0, beta=1.0)
    xbar = float(np.mean(counts))
    m_ok = abs(res.m - xbar) <= 1e-6
    full = fit_full(data)
    ll_ok = full.log_likelihood >= res.log_likelihood - 1e-3
    ok = m_ok and ll_ok and res.converged and full.converged
    _report(
        "criterion-09 fitting self-consistency",
        ok,
        f"m-hat {res.m:.8f} vs xbar {xbar:.8f} (tol 1e-6); "
        f"full ll {full.log_likelihood:.6f} >= classical "
        f"{res.log_likelihood:.6f} - 1e-3: {ll_ok}",
    )


def test_criterion_10_cli_contract(capsys):
    check_code = cli.main(["check", "--format", "json"])
    check_out = capsys.readouterr().out
    rows = json.loads(check_out)
    round_trips = json.loads(json.dumps(rows)) == rows

    bad_code = cli.main(
        ["pmf", "--alpha", "0", "--beta", "1", "--m", "1", "--r-max", "2"]
    )
    capsys.readouterr()
    json_code = cli.main(
        ["moments", "--alpha", "1", "--beta", "1", "--m", "1",
         "--format", "json"]
    )
    moments_out = capsys.readouterr().out
    moments_rows = json.loads(moments_out)
    round_trips = round_trips and (
        json.loads(json.dumps(moments_rows)) == moments_rows
    )

    ok = check_code == 0 and bad_code == 2 and json_code == 0 and round_trips
    with capsys.disabled():
        _report(
            "criterion-10 cli contract",
            ok,
            f"check exit {check_code} (want 0), malformed exit {bad_code} "
            f"(want 2), json round-trips: {round_trips}",
        )
