"""The acceptance criteria as runnable checks, grouped into ``fast`` and ``full`` suites."""

from __future__ import annotations

import tempfile
import time
import warnings
from dataclasses import dataclass, field
from math import sqrt

import numpy as np

from .lambda_sets import fejer_threshold, witness_ratio
from .littlewood_paley import khintchine_check, khintchine_constants, project, n_blocks, square_function_ratio
from .luxemburg import luxemburg_norm
from .restriction import build_lambda_set, derive_seed, monte_carlo_K, random_subset
from .torus import AllIntegers, FrequencySet, TrigPolynomial, lp_norm_even_exact, lp_norm_quadrature
from .young import complementary, matuszewska_indices, power, zygmund

__all__ = ["CriterionResult", "CRITERIA", "SUITES", "run_criterion", "run_suite", "format_table"]


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0


def _random_poly(rng, max_freq):
    F = int(rng.integers(1, max_freq + 1))
    n = np.arange(-F, F + 1)
    return TrigPolynomial(n, rng.standard_normal(len(n)) + 1j * rng.standard_normal(len(n)))


def c1_luxemburg_vs_lp(threads=1):
    rng = np.random.default_rng(1)
    polys = [_random_poly(rng, 64) for _ in range(200)]
    worst = {}
    for p in (2, 3, 4, 6):
        phi = power(p)
        worst[p] = max(
            abs(luxemburg_norm(phi, f).value - (q := lp_norm_quadrature(f, p))) / q for f in polys
        )
    return max(worst.values()) <= 1e-8, {"max_rel_err": worst}


def c2_two_frequency(threads=1):
    f = TrigPolynomial([3, 7], [1 / sqrt(2), 1 / sqrt(2)])
    val = luxemburg_norm(power(4), f).value
    exact = lp_norm_even_exact(f, 4)
    target = 1.5**0.25
    err = max(abs(val - target), abs(exact - target))
    return err <= 1e-8, {"value": val, "oracle": exact, "target": target, "err": err}


def c3_inverse_sandwich(threads=1):
    u = np.logspace(-2, 8, 50)
    out = {}
    ok = True
    for name, phi in (("u^2", power(2)), ("u^3", power(3)), ("zygmund(3,1)", zygmund(3, 1))):
        psi = complementary(phi)
        r = np.array([phi.inverse(x) * psi.inverse(x) / x for x in u])
        out[name] = [float(r.min()), float(r.max())]
        ok &= bool(r.min() >= 1 - 1e-4 and r.max() <= 2 * (1 + 1e-4))
    return ok, {"ratio_range": out}


def c4_indices(threads=1):
    cases = [(f"u^{p}", power(p), p) for p in (2, 3, 5)] + [("zygmund(3,1)", zygmund(3, 1), 3)]
    out = {}
    ok = True
    for name, phi, p in cases:
        est = matuszewska_indices(phi, u_max=1e8)
        out[name] = [est.alpha_inf, est.beta_inf]
        ok &= abs(est.alpha_inf - p) <= 0.05 and abs(est.beta_inf - p) <= 0.05
    return ok, {"alpha_beta": out}


def c5_fejer(threads=1):
    out = {}
    ok = True
    for p in (3, 4, 6):
        N0, rows = fejer_threshold(power(p), [64, 256, 1024, 4096])
        out[p] = {"N0": N0, "rows": [[N, lhs, rhs] for N, lhs, rhs in rows]}
        ok &= all(lhs <= rhs for _, lhs, rhs in rows) and N0 is not None and N0 <= 64
    return ok, out


def c6_khintchine(threads=1):
    rng = np.random.default_rng(6)
    ok = True
    out = {}
    for p in (2, 4, 6):
        A, B = khintchine_constants(p)
        ok &= B <= sqrt(p)
        lo, hi = np.inf, 0.0
        for n in range(1, 13):
            for c in (np.ones(n), rng.standard_normal(n), rng.exponential(size=n)):
                lhs, rhs = khintchine_check(c, p)
                lo, hi = min(lo, lhs / rhs), max(hi, lhs / rhs)
        ok &= lo >= A * (1 - 1e-12) and hi <= B * (1 + 1e-12)
        out[p] = {"A_p": A, "B_p": B, "ratio_range": [lo, hi]}
    return bool(ok), out


def c7_littlewood_paley(threads=1):
    rng = np.random.default_rng(7)
    polys = [_random_poly(rng, 256) for _ in range(50)]
    out = {}
    ok = True
    for name, phi in (("u^3", power(3)), ("zygmund(3,1)", zygmund(3, 1))):
        r = [square_function_ratio(phi, f) for f in polys]
        out[name] = [min(r), max(r)]
        ok &= 1 / 8 <= min(r) and max(r) <= 8
    rec = 0.0
    for f in polys:
        total = np.zeros(len(f.freqs), dtype=complex)
        for j in range(n_blocks(f)):
            pj = project(f, j)
            total[np.searchsorted(f.freqs, pj.freqs)] += pj.coeffs
        rec = max(rec, float(np.max(np.abs(total - f.coeffs))))
    out["reconstruction_err"] = rec
    return bool(ok and rec <= 1e-10), out


def c8_boundedness(threads=1, ms=range(8, 14), trials=32):
    meds = []
    for m in ms:
        st = monte_carlo_K(power(3), power(2), FrequencySet.interval(1, 2**m), trials=trials, seed=8, threads=threads)
        meds.append(st.median)
    slope = float(np.polyfit(list(ms), meds, 1)[0])
    ok = slope <= 0.05 and max(meds) <= 1.5 * min(meds)
    return ok, {"m": list(ms), "median_K": meds, "slope": slope}


def c9_density_band(threads=1):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        sc = build_lambda_set(power(2), power(4), AllIntegers(), (6, 13), trials_per_shell=4, seed=9, threads=threads)
    phi1 = power(4)
    rows = [(2**k, sc.S.count_in(-(2**k), 2**k) / phi1.inverse(2.0**k) ** 2) for k in range(7, 15)]
    r = [v for _, v in rows]
    return max(r) <= 4 * min(r) and min(r) > 0, {"rows": rows, "band": max(r) / min(r)}


def c10_witness(threads=1, c=0.2):
    phi1, phi2 = power(3), power(4)
    rows = []
    for r in range(6, 13):
        N = 2**r
        size = int(np.ceil(N ** (2 / 3) - 1e-9))
        S_r = random_subset(N, 2 * N, size, derive_seed(10, r))
        rows.append((r, witness_ratio(S_r, phi1, phi2, r), phi1.inverse(float(N)) / phi2.inverse(float(N))))
    ratios = [w for _, w, _ in rows]
    gaps = [g for _, _, g in rows]
    ok = min(ratios) >= c and all(b > a for a, b in zip(gaps, gaps[1:]))
    return ok, {"rows": rows, "c": c}


def c11_determinism(threads=1):
    from .harness import run

    cfg = {"command": "mc", "seed": 11, "phi": {"type": "power", "p": 3}, "phi0": {"type": "power", "p": 2},
           "set": {"interval": [1, 256]}, "trials": 8, "restarts": 1}
    hashes = {}
    with tempfile.TemporaryDirectory() as tmp:
        for k in (1, 8):
            rep = run(cfg, out_dir=f"{tmp}/t{k}", threads=k)
            with open(f"{tmp}/t{k}/determinism.sha256") as fh:
                hashes[k] = fh.read().strip()
            assert hashes[k] == rep.determinism_hash()
    return hashes[1] == hashes[8], {"sha256": hashes}


CRITERIA = {
    1: ("Luxemburg = L^p agreement", c1_luxemburg_vs_lp),
    2: ("exact two-frequency oracle", c2_two_frequency),
    3: ("inverse sandwich", c3_inverse_sandwich),
    4: ("index estimator", c4_indices),
    5: ("Fejer bound", c5_fejer),
    6: ("Khintchine enumeration", c6_khintchine),
    7: ("Littlewood-Paley band", c7_littlewood_paley),
    8: ("boundedness of K(J)", c8_boundedness),
    9: ("density band", c9_density_band),
    10: ("witness growth", c10_witness),
    11: ("determinism", c11_determinism),
}

SUITES = {"fast": [1, 2, 3, 4, 5, 6, 7, 9, 10, 11], "full": list(CRITERIA)}


def run_criterion(number: int, threads: int = 1) -> CriterionResult:
    name, fn = CRITERIA[number]
    t0 = time.perf_counter()
    passed, details = fn(threads=threads)
    return CriterionResult(number, name, bool(passed), details, time.perf_counter() - t0)


def run_suite(suite: str, threads: int = 1) -> list:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; expected one of {sorted(SUITES)}")
    return [run_criterion(n, threads) for n in SUITES[suite]]


def format_table(results, seconds: bool = True) -> str:
    lines = [f"{'#':>3}  {'criterion':<30} {'result':<6}" + (f" {'seconds':>8}" if seconds else "")]
    for r in results:
        line = f"{r.number:>3}  {r.name:<30} {'PASS' if r.passed else 'FAIL':<6}"
        lines.append(line + (f" {r.seconds:>8.1f}" if seconds else ""))
    return "\n".join(lines)
