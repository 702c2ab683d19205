"""Luxemburg norms on the circle, Orlicz-Hoelder and duality checks."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError
from .torus import GridFunction, TrigPolynomial, default_grid_size, evaluate_grid
from .young import YoungFunction, complementary

__all__ = [
    "NormResult",
    "modular",
    "luxemburg_norm",
    "norm_of_samples",
    "holder_check",
    "dual_pairing_norm",
]

# relative bracket width at which the root search for ||f||_Phi stops
NORM_RTOL = 1e-13


class NormResult(NamedTuple):
    value: float
    modular_at_value: float
    grid_size: int
    bisection_iters: int


def _abs_samples(g) -> np.ndarray:
    if isinstance(g, GridFunction):
        return np.abs(g.samples)
    return np.abs(np.asarray(g))


def modular(phi: YoungFunction, g, k: float) -> float:
    """``mean_j Phi(|g(x_j)| / k)`` over the grid."""
    if not k > 0:
        raise DomainError("modular needs k > 0")
    return float(np.mean(phi(_abs_samples(g) / k)))


def norm_of_samples(phi: YoungFunction, absvals: np.ndarray) -> NormResult:
    """Luxemburg norm of grid samples ``|g|`` (uniform probability measure).

    The root of ``k -> mean Phi(|g|/k) - 1`` is bracketed by
    ``[max|g| / Phi^{-1}(M), max|g| / Phi^{-1}(1)]`` (the modular is
    ``>= 1`` and ``<= 1`` there) and located with Brent's method in ``log k``.
    The returned ``k`` always satisfies ``modular(k) <= 1``.
    """
    absvals = np.asarray(absvals, dtype=float)
    M = absvals.size
    top = float(absvals.max()) if M else 0.0
    if top == 0.0:
        return NormResult(0.0, 0.0, M, 0)
    hi = top / phi.inverse(1.0)
    lo = top / phi.inverse(float(M))
    calls = 0

    def excess(logk):
        nonlocal calls
        calls += 1
        return float(np.mean(phi(absvals * np.exp(-logk)))) - 1.0

    if lo >= hi:
        k = hi
    else:
        flo, fhi = excess(np.log(lo)), excess(np.log(hi))
        if fhi >= 0:
            k = hi
        elif flo <= 0:
            k = lo
        else:
            k = float(np.exp(brentq(excess, np.log(lo), np.log(hi), xtol=NORM_RTOL, rtol=4 * np.finfo(float).eps)))
    m = excess(np.log(k)) + 1.0
    while m > 1.0:
        k *= 1.0 + 1e-14
        m = excess(np.log(k)) + 1.0
    return NormResult(k, m, M, calls)


def luxemburg_norm(phi: YoungFunction, f, M: int | None = None) -> NormResult:
    """``||f||_Phi = inf{k > 0 : mean Phi(|f|/k) <= 1}`` on a uniform grid.

    Trigonometric polynomials are translated to a centered spectrum first
    (``|f|`` is unchanged) and sampled on ``M`` points, by default
    ``max(4096, 8 F)`` rounded to a power of two where ``F`` is the centered
    maximal frequency.  Grid functions and arrays are used as given.
    """
    if isinstance(f, TrigPolynomial):
        fc = f.centered()
        if M is None:
            M = default_grid_size(fc.max_abs_freq)
        absvals = np.abs(evaluate_grid(fc, M).samples)
    else:
        absvals = _abs_samples(f)
    return norm_of_samples(phi, absvals)


def _common_abs(f, g, M):
    fs = [h for h in (f, g) if isinstance(h, TrigPolynomial)]
    if M is None:
        grids = [h.M for h in (f, g) if isinstance(h, GridFunction)]
        if grids:
            M = grids[0]
        else:
            M = default_grid_size(max(h.max_abs_freq for h in fs))
    out = []
    for h in (f, g):
        if isinstance(h, TrigPolynomial):
            out.append(np.abs(evaluate_grid(h, M).samples))
        else:
            arr = _abs_samples(h)
            if arr.size != M:
                raise ValueError("grid functions must share one grid")
            out.append(arr)
    return out


def holder_check(f, g, phi: YoungFunction, psi: YoungFunction | None = None, M: int | None = None):
    """``(mean|f g|, 2 ||f||_Phi ||g||_Psi)``; Orlicz-Hoelder says lhs <= rhs."""
    if psi is None:
        psi = complementary(phi)
    af, ag = _common_abs(f, g, M)
    lhs = float(np.mean(af * ag))
    rhs = 2.0 * norm_of_samples(phi, af).value * norm_of_samples(psi, ag).value
    return lhs, rhs


def dual_pairing_norm(
    f,
    phi: YoungFunction,
    trials: int = 16,
    seed=0,
    psi: YoungFunction | None = None,
    M: int | None = None,
) -> float:
    """Lower estimate of ``sup { int |f g| : int Psi(|g|) <= 1 }``.

    Candidates are random trigonometric polynomials rescaled to unit
    ``Psi``-modular, and the Young-equality extremizer
    ``g = Phi'(|f| / mu)`` with ``mu`` tuned so ``int Psi(g) = 1``.
    """
    if psi is None:
        psi = complementary(phi)
    if isinstance(f, TrigPolynomial):
        if M is None:
            M = default_grid_size(f.max_abs_freq)
        af = np.abs(evaluate_grid(f, M).samples)
        F = max(f.max_abs_freq, 8)
    else:
        af = _abs_samples(f)
        M = af.size
        F = 8
    if not np.any(af):
        return 0.0
    best = 0.0
    rng = np.random.default_rng(seed)
    n = np.arange(-F, F + 1)
    for _ in range(trials):
        h = TrigPolynomial(n, rng.standard_normal(len(n)) + 1j * rng.standard_normal(len(n)))
        ah = np.abs(evaluate_grid(h, M).samples)
        scale = norm_of_samples(psi, ah).value
        best = max(best, float(np.mean(af * ah)) / scale)

    def psi_mod(logmu):
        return float(np.mean(psi(phi.derivative(af * np.exp(-logmu))))) - 1.0

    ref = norm_of_samples(phi, af).value
    lo, hi = np.log(ref) - 1.0, np.log(ref) + 1.0
    while psi_mod(lo) < 0:
        lo -= 2.0
    while psi_mod(hi) > 0:
        hi += 2.0
    logmu = brentq(psi_mod, lo, hi, xtol=1e-12)
    g = phi.derivative(af * np.exp(-logmu))
    gnorm = norm_of_samples(psi, g).value
    best = max(best, float(np.mean(af * g)) / max(gnorm, 1.0))
    return best
