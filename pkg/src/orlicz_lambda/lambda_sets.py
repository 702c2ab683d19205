"""Functionals of frequency sets: ``K_Phi(S)``, progression counts, density and witness ratios."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .luxemburg import luxemburg_norm, norm_of_samples
from .torus import FrequencySet, TrigPolynomial, default_grid_size, fejer_kernel
from .young import YoungFunction, complementary

__all__ = [
    "KEstimate",
    "CoefficientNorm",
    "k_phi_lower",
    "ap_density",
    "density_ratio",
    "fejer_psi_bound",
    "fejer_threshold",
    "witness_ratio",
]


@dataclass
class KEstimate:
    """Certified lower bound for ``K_Phi(S) = sup_{||a||_2 <= 1} ||sum a_n e(nx)||_Phi``."""

    lower_bound: float
    best_coeffs: np.ndarray
    restarts: int
    ascent_iters: int
    converged_fraction: float
    freqs: np.ndarray = field(repr=False, default=None)

    def to_dict(self) -> dict:
        return {
            "lower_bound": self.lower_bound,
            "restarts": self.restarts,
            "ascent_iters": self.ascent_iters,
            "converged_fraction": self.converged_fraction,
        }


class CoefficientNorm:
    """``a -> ||sum_{n in S} a_n e(n x)||_Phi`` with its gradient.

    The spectrum is centered (``|f|`` is translation invariant) and sampled
    on ``M`` points.  The gradient follows from implicit differentiation of
    ``mean Phi(|f_a| / k) = 1``:

        dk/da_n = mean(Phi'(|f|/k) sgn(f) e(-n x)) / mean(Phi'(|f|/k) |f| / k)
    """

    def __init__(self, phi: YoungFunction, S: FrequencySet, M: int | None = None):
        self.phi = phi
        self.S = S
        n = S.elems - (int(S.elems[0]) + int(S.elems[-1])) // 2
        self.M = M if M is not None else default_grid_size(int(np.max(np.abs(n))))
        self.idx = n % self.M

    def samples(self, a):
        spec = np.zeros(self.M, dtype=complex)
        spec[self.idx] = a
        return np.fft.ifft(spec) * self.M

    def value(self, a):
        return norm_of_samples(self.phi, np.abs(self.samples(a))).value

    def value_and_grad(self, a):
        f = self.samples(a)
        af = np.abs(f)
        k = norm_of_samples(self.phi, af).value
        if k == 0.0:
            return 0.0, np.zeros(len(self.idx), dtype=complex)
        dphi = self.phi.derivative(af / k)
        sgn = np.divide(f, af, out=np.zeros_like(f), where=af > 0)
        G = np.fft.fft(dphi * sgn)[self.idx] / self.M
        D = float(np.mean(dphi * af)) / k
        return k, G / D


def _ascend(obj: CoefficientNorm, a, real: bool, max_iter: int, tol: float):
    """Normalized-gradient ascent on the unit sphere.

    ``k`` is convex and 1-homogeneous, so ``k(grad/|grad|) >= |grad| >= k(a)``:
    every accepted step is an increase.
    """
    a = a / np.linalg.norm(a)
    k, G = obj.value_and_grad(a)
    for it in range(1, max_iter + 1):
        if real:
            G = G.real
        gn = np.linalg.norm(G)
        if gn == 0:
            return a, k, it, True
        a_new = G / gn
        k_new, G_new = obj.value_and_grad(a_new)
        if k_new <= k * (1.0 + tol):
            if k_new > k:
                a, k = a_new, k_new
            return a, k, it, True
        a, k, G = a_new, k_new, G_new
    return a, k, max_iter, False


def k_phi_lower(
    phi: YoungFunction,
    S: FrequencySet,
    restarts: int = 4,
    seed=0,
    max_iter: int = 50,
    tol: float = 1e-9,
    real: bool = True,
    M: int | None = None,
) -> KEstimate:
    """Multi-start projected ascent for a lower bound on ``K_Phi(S)``.

    Starts: the flat vector ``1/sqrt|S|`` and ``restarts`` Gaussian vectors
    (real unless ``real=False``); single-frequency vectors are scored
    directly.  The best vector then gets a complex phase-alignment pass.
    """
    if len(S) == 0:
        raise ValueError("S must be nonempty")
    n = len(S)
    obj = CoefficientNorm(phi, S, M)
    single = np.zeros(n, dtype=complex)
    single[0] = 1.0
    best_a, best_k = single, 1.0 / phi.inverse(1.0)
    if n == 1:
        return KEstimate(best_k, best_a, 0, 0, 1.0, S.elems)
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    starts = [np.full(n, 1.0 / np.sqrt(n), dtype=complex)]
    for child in ss.spawn(restarts):
        rng = np.random.default_rng(child)
        v = rng.standard_normal(n)
        if not real:
            v = v + 1j * rng.standard_normal(n)
        starts.append(v.astype(complex))
    iters, conv = 0, 0
    for a0 in starts:
        a, k, it, ok = _ascend(obj, a0, real, max_iter, tol)
        iters += it
        conv += ok
        if k > best_k:
            best_a, best_k = a, k
    if real:
        a, k, it, _ = _ascend(obj, best_a, False, max_iter, tol)
        iters += it
        if k > best_k:
            best_a, best_k = a, k
    best_a = best_a / np.linalg.norm(best_a)
    return KEstimate(float(best_k), best_a, restarts, iters, conv / len(starts), S.elems)


def ap_density(S: FrequencySet, N: int, b_max: int = 64) -> int:
    """``max_{1 <= b <= b_max, a} |S cap {a+b, ..., a+Nb}|``.

    Negative steps give the same progressions, so only ``b > 0`` is searched.
    For each ``b`` the set is bucketed by residue and a window of ``N``
    consecutive quotients slides over each bucket.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    e = S.elems
    if len(e) == 0:
        return 0
    best = 0
    for b in range(1, b_max + 1):
        r = e % b
        q = e // b
        q = q - q.min()
        width = int(q.max()) + N + 1
        keys = np.sort(r * width + q)
        counts = np.searchsorted(keys, keys + (N - 1), side="right") - np.arange(len(keys))
        best = max(best, int(counts.max()))
    return best


def density_ratio(S: FrequencySet, phi: YoungFunction, N_list):
    """``[(N, |S cap [-N, N]| / Phi^{-1}(N)^2) for N in N_list]``."""
    return [(int(N), S.count_in(-N, N) / phi.inverse(float(N)) ** 2) for N in N_list]


def fejer_psi_bound(phi: YoungFunction, N: int, psi: YoungFunction | None = None, M: int | None = None):
    """``(||K_N||_Psi, 2 Phi^{-1}(N))`` with ``Psi`` complementary to ``phi``."""
    if psi is None:
        psi = complementary(phi)
    lhs = luxemburg_norm(psi, fejer_kernel(N), M).value
    return lhs, 2.0 * phi.inverse(float(N))


def fejer_threshold(phi: YoungFunction, N_list, psi: YoungFunction | None = None):
    """Smallest ``N`` in ``N_list`` from which the Fejer bound holds at every listed point.

    Returns ``(N0, rows)`` with ``rows = [(N, lhs, rhs)]``; ``N0`` is ``None``
    if the bound fails at the largest ``N``.
    """
    if psi is None:
        psi = complementary(phi)
    rows = [(int(N), *fejer_psi_bound(phi, int(N), psi)) for N in sorted(N_list)]
    N0 = None
    for N, lhs, rhs in reversed(rows):
        if lhs > rhs:
            break
        N0 = N
    return N0, rows


def witness_ratio(S_r: FrequencySet, phi1: YoungFunction, phi2: YoungFunction, r: int) -> float:
    """``||sum_{S_r} e(nx)||_Phi2 * Phi2^{-1}(2^r) / Phi1^{-1}(2^r)^2``."""
    N = 2.0**r
    num = luxemburg_norm(phi2, TrigPolynomial.on_set(S_r)).value
    return num * phi2.inverse(N) / phi1.inverse(N) ** 2
