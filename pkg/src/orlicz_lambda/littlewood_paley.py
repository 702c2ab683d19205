"""Smooth dyadic decomposition, the Orlicz square function and Rademacher randomization.

The bump ``psi`` equals 1 on ``[-1, 1]``, vanishes outside ``(-2, 2)`` and
uses the ``exp(-1/t)`` mollifier in between.  Blocks are

    psi_0(xi) = psi(xi / 2),   psi_j(xi) = psi(xi / 2^{j+1}) - psi(xi / 2^j)  (j >= 1),

so that ``sum_{j <= J} psi_j(xi) = psi(xi / 2^{J+1})`` telescopes exactly.
"""

from __future__ import annotations

import itertools
from math import gamma, pi, sqrt

import numpy as np

from .errors import DomainError, ParameterError
from .luxemburg import luxemburg_norm, norm_of_samples
from .torus import TrigPolynomial, default_grid_size, evaluate_grid
from .young import YoungFunction

__all__ = [
    "bump",
    "psi_j",
    "n_blocks",
    "project",
    "square_function",
    "square_function_ratio",
    "rademacher",
    "randomized",
    "rademacher_randomized_norm",
    "khintchine_constants",
    "khintchine_check",
]


def _h(t):
    out = np.zeros_like(t)
    pos = t > 0
    out[pos] = np.exp(-1.0 / t[pos])
    return out


def bump(x):
    """The plateau bump ``psi``; vectorized."""
    s = np.abs(np.asarray(x, dtype=float)) - 1.0
    s = np.clip(s, 0.0, 1.0)
    a, b = _h(1.0 - s), _h(s)
    out = a / (a + b)
    return out if out.ndim else float(out)


def psi_j(j: int, xi):
    """Dyadic block ``psi_j``; ``psi_0 = psi(xi/2)`` so the blocks sum to 1."""
    if j < 0:
        raise ParameterError("j must be >= 0")
    xi = np.asarray(xi, dtype=float)
    if j == 0:
        return bump(xi / 2.0)
    return bump(xi / 2.0 ** (j + 1)) - bump(xi / 2.0**j)


def n_blocks(f: TrigPolynomial) -> int:
    """``J_max + 1`` with ``J_max = ceil(log2 F) + 1``; later blocks vanish on the spectrum."""
    F = f.max_abs_freq
    return (int(np.ceil(np.log2(F))) + 1 if F > 1 else 1) + 1


def project(f: TrigPolynomial, j: int) -> TrigPolynomial:
    """``P_j f``: multiply the coefficients by ``psi_j(n)``."""
    return TrigPolynomial(f.freqs, f.coeffs * psi_j(j, f.freqs))


def _block_samples(f: TrigPolynomial, M: int):
    return [evaluate_grid(project(f, j), M).samples for j in range(n_blocks(f))]


def square_function(f: TrigPolynomial, M: int | None = None) -> np.ndarray:
    """Samples of ``(sum_j |P_j f|^2)^{1/2}`` on a shared ``M``-point grid."""
    if M is None:
        M = default_grid_size(f.max_abs_freq)
    blocks = _block_samples(f, M)
    return np.sqrt(sum(np.abs(b) ** 2 for b in blocks))


def square_function_ratio(phi: YoungFunction, f: TrigPolynomial, M: int | None = None) -> float:
    """``||S f||_Phi / ||f||_Phi`` with ``S f`` the square function."""
    if len(f.freqs) == 0:
        raise DomainError("f is identically zero")
    if M is None:
        M = default_grid_size(f.max_abs_freq)
    sf = square_function(f, M)
    return norm_of_samples(phi, sf).value / norm_of_samples(phi, np.abs(evaluate_grid(f, M).samples)).value


def rademacher(j: int, t):
    """``r_j(t) = sign sin(2^{j+1} pi t)``, with ``t`` on a breakpoint rejected."""
    t = np.asarray(t, dtype=float)
    scaled = t * 2.0 ** (j + 1)
    if np.any(scaled == np.floor(scaled)):
        raise DomainError("t is a Rademacher breakpoint")
    # sin(pi s) > 0 exactly when floor(s) is even
    out = np.where(np.floor(scaled) % 2 == 0, 1.0, -1.0)
    return out if out.ndim else float(out)


def randomized(f: TrigPolynomial, t: float) -> TrigPolynomial:
    """``sum_j r_j(t) P_j f`` as a single coefficient multiplier."""
    mult = sum(rademacher(j, t) * psi_j(j, f.freqs) for j in range(n_blocks(f)))
    return TrigPolynomial(f.freqs, f.coeffs * mult)


def _is_breakpoint(t, J):
    s = t * 2.0 ** (J + 1)
    return s == np.floor(s)


def rademacher_randomized_norm(phi: YoungFunction, f: TrigPolynomial, t_samples: int = 16, seed=0) -> dict:
    """Norms ``||sum_j r_j(t) P_j f||_Phi`` over random ``t`` in ``[0, 1)``.

    Returns ``{"max", "mean", "norm_f", "ratio", "values", "t"}`` where
    ``ratio = max / ||f||_Phi``.  Breakpoint draws are redrawn.
    """
    if t_samples < 1:
        raise ParameterError("t_samples must be >= 1")
    rng = np.random.default_rng(seed)
    J = n_blocks(f) - 1
    ts, vals = [], []
    while len(ts) < t_samples:
        t = float(rng.random())
        if _is_breakpoint(t, J):
            continue
        ts.append(t)
        vals.append(luxemburg_norm(phi, randomized(f, t)).value)
    nf = luxemburg_norm(phi, f).value
    mx = float(max(vals))
    return {
        "max": mx,
        "mean": float(np.mean(vals)),
        "norm_f": nf,
        "ratio": mx / nf if nf > 0 else float("nan"),
        "values": vals,
        "t": ts,
    }


def khintchine_constants(p: float):
    """Sharp Khintchine constants ``(A_p, B_p)`` for Rademacher sums (Haagerup)."""
    if p < 1:
        raise ParameterError("p must be >= 1")
    gam = sqrt(2.0) * (gamma((p + 1) / 2) / sqrt(pi)) ** (1.0 / p)
    if p >= 2:
        return 1.0, gam
    # below p_0 ~ 1.847 the lower constant is 2^{1/2 - 1/p}
    return min(2.0 ** (0.5 - 1.0 / p), gam), 1.0


def khintchine_check(coeff, p: float, t_grid: int | None = None):
    """``(lhs, rhs)`` with ``lhs`` the ``L^p`` average over ``t`` and ``rhs`` the ``l^2`` norm.

    ``t_grid=None`` enumerates all ``2^n`` sign patterns exactly; an integer
    averages over the midpoints ``(i + 1/2)/t_grid``, which is the same
    thing when ``t_grid`` is a power of two ``>= 2^n``.
    """
    if p < 1:
        raise ParameterError("p must be >= 1")
    c = np.asarray(coeff, dtype=float)
    rhs = float(np.sqrt(np.sum(c**2)))
    if t_grid is None:
        signs = np.array(list(itertools.product((-1.0, 1.0), repeat=len(c))))
        sums = signs @ c
    else:
        t = (np.arange(t_grid) + 0.5) / t_grid
        sums = sum(cj * rademacher(j, t) for j, cj in enumerate(c))
    lhs = float(np.mean(np.abs(sums) ** p) ** (1.0 / p))
    return lhs, rhs
