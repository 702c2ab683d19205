"""Random restrictions: Bernoulli selectors, Monte Carlo statistics of ``K_Phi(J)``
and the dyadic-shell construction of a Lambda(Phi_1)-set.

Seeds are derived as ``SeedSequence(seed, spawn_key=(...))`` so that every
trial's stream depends only on the master seed and the trial's coordinates,
never on scheduling.
"""

from __future__ import annotations

import json
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .lambda_sets import KEstimate, k_phi_lower
from .torus import FrequencySet
from .young import YoungFunction, matuszewska_indices, check_delta2_nabla2

__all__ = [
    "SelectorRun",
    "MonteCarloStats",
    "ShellConstruction",
    "derive_seed",
    "selection_density",
    "sample_restriction",
    "verify_source_condition",
    "monte_carlo_K",
    "build_lambda_set",
    "random_subset",
]


def derive_seed(seed: int, *key: int) -> np.random.SeedSequence:
    """Stream for the trial at coordinates ``key`` under master ``seed``."""
    return np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass
class SelectorRun:
    E: FrequencySet
    delta: float
    seed: int
    J: FrequencySet
    k_estimate: KEstimate | None = None


def selection_density(phi: YoungFunction, E: FrequencySet) -> float:
    """``min(1, Phi^{-1}(diam E)^2 / |E|)``."""
    if len(E) == 0:
        raise ValueError("E must be nonempty")
    return min(1.0, phi.inverse(float(E.diam)) ** 2 / len(E))


def sample_restriction(E: FrequencySet, delta: float, seed=0) -> FrequencySet:
    """Keep each element of ``E`` independently with probability ``delta``."""
    if not 0.0 <= delta <= 1.0:
        raise ParameterError("delta must lie in [0, 1]")
    keep = _rng(seed).random(len(E)) < delta
    return FrequencySet(E.elems[keep])


def verify_source_condition(phi0: YoungFunction, E: FrequencySet, restarts: int = 4, seed=0, **kw):
    """``(K-hat_{Phi0}(E), |E|^{1/2} / Phi0^{-1}(diam E))`` for ratio reporting."""
    est = k_phi_lower(phi0, E, restarts=restarts, seed=seed, **kw)
    return est.lower_bound, np.sqrt(len(E)) / phi0.inverse(float(E.diam))


@dataclass
class MonteCarloStats:
    delta: float
    values: list
    sizes: list
    mean: float
    median: float
    max: float

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "mean": self.mean,
            "median": self.median,
            "max": self.max,
            "values": self.values,
            "sizes": self.sizes,
        }


def _map(fn, items, threads):
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(it) for it in items]


def monte_carlo_K(
    phi: YoungFunction,
    phi0: YoungFunction,
    E: FrequencySet,
    trials: int = 32,
    seed: int = 0,
    restarts: int = 2,
    threads: int = 1,
    **kw,
) -> MonteCarloStats:
    """Statistics of ``K-hat_Phi(J)`` over ``trials`` draws of ``J`` at the selection density.

    ``phi0`` is the source function of the hypothesis; it does not enter
    the sampling and is accepted so callers can pass the pair together.
    Per-trial values are collected by trial index and reduced in order.
    """
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    delta = selection_density(phi, E)

    def one(t):
        J = sample_restriction(E, delta, derive_seed(seed, t, 0))
        if len(J) == 0:
            return 0.0, 0
        est = k_phi_lower(phi, J, restarts=restarts, seed=derive_seed(seed, t, 1), **kw)
        return est.lower_bound, len(J)

    out = _map(one, range(trials), threads)
    values = [v for v, _ in out]
    arr = np.array(values)
    return MonteCarloStats(
        delta=delta,
        values=values,
        sizes=[s for _, s in out],
        mean=float(np.mean(arr)),
        median=float(np.median(arr)),
        max=float(np.max(arr)),
    )


@dataclass
class Shell:
    r: int
    E_shell: FrequencySet
    S_r: FrequencySet
    delta: float
    k_est: float
    candidates: int


@dataclass
class ShellConstruction:
    r_range: tuple
    shells: list
    S: FrequencySet
    seed: int = 0
    warnings: list = field(default_factory=list)
    phi0: YoungFunction | None = None
    phi1: YoungFunction | None = None

    def to_dict(self) -> dict:
        return {
            "phi0": self.phi0.to_dict() if self.phi0 is not None else None,
            "phi1": self.phi1.to_dict() if self.phi1 is not None else None,
            "r_range": list(self.r_range),
            "seed": self.seed,
            "shells": [
                {"r": sh.r, "S_r": sh.S_r.elems.tolist(), "k_est": sh.k_est, "delta": sh.delta}
                for sh in self.shells
            ],
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "ShellConstruction":
        doc = json.loads(text)
        shells = [
            Shell(s["r"], FrequencySet(), FrequencySet(s["S_r"]), s["delta"], s["k_est"], 0) for s in doc["shells"]
        ]
        S = FrequencySet(np.concatenate([sh.S_r.elems for sh in shells])) if shells else FrequencySet()
        return cls(
            tuple(doc["r_range"]),
            shells,
            S,
            doc.get("seed", 0),
            doc.get("warnings", []),
            YoungFunction.from_dict(doc["phi0"]) if doc.get("phi0") else None,
            YoungFunction.from_dict(doc["phi1"]) if doc.get("phi1") else None,
        )


def _hypothesis_warnings(phi0, phi1):
    out = []
    d0, _ = check_delta2_nabla2(phi0)
    d1, n1 = check_delta2_nabla2(phi1)
    if not d0:
        out.append("phi0 fails the Delta_2 check")
    if not (d1 and n1):
        out.append("phi1 fails the Delta_2 / nabla_2 check")
    i0 = matuszewska_indices(phi0)
    i1 = matuszewska_indices(phi1)
    if i0.alpha_inf < 2 - 0.05:
        out.append(f"alpha(phi0) = {i0.alpha_inf:.3f} < 2")
    if i0.beta_inf >= i1.alpha_inf - 0.05:
        out.append(f"index gap beta(phi0) = {i0.beta_inf:.3f} vs alpha(phi1) = {i1.alpha_inf:.3f} is not clear")
    return out


def build_lambda_set(
    phi0: YoungFunction,
    phi1: YoungFunction,
    E,
    r_range,
    trials_per_shell: int = 4,
    seed: int = 0,
    restarts: int = 1,
    threads: int = 1,
    **kw,
) -> ShellConstruction:
    """Dyadic-shell construction ``S = union_r S_r`` with ``S_r`` inside ``E_{2^r}``.

    ``E`` is anything with a ``shell(N)`` method (a :class:`FrequencySet`,
    ``AllIntegers()`` or ``Squares()``); the outer endpoints ``+-2N`` are
    left to the next shell so that the ``S_r`` are disjoint.  For each ``r`` in the inclusive
    range, ``trials_per_shell`` candidates are drawn at density
    ``Phi1^{-1}(2^r)^2 / |E_{2^r}|`` (clamped to 1); candidates whose size
    falls outside ``[delta |E|/2, 2 delta |E|]`` are discarded unless none
    survive, and the survivor with the smallest ``K-hat_{Phi1}`` is kept.
    """
    r_lo, r_hi = r_range
    notes = _hypothesis_warnings(phi0, phi1)
    for msg in notes:
        warnings.warn(msg, stacklevel=2)

    def shell(r):
        N = 2**r
        En = E.shell(N)
        # |n| = 2N also lies in the next shell; keep shells disjoint
        En = FrequencySet(En.elems[np.abs(En.elems) != 2 * N])
        if len(En) == 0:
            return r, En, None, 0.0, float("nan"), 0
        delta_raw = phi1.inverse(float(N)) ** 2 / len(En)
        delta = min(1.0, delta_raw)
        expect = delta * len(En)
        cands = []
        for t in range(trials_per_shell):
            J = sample_restriction(En, delta, derive_seed(seed, r, t, 0))
            if len(J) == 0:
                continue
            cands.append((t, J))
        ok = [(t, J) for t, J in cands if expect / 2 <= len(J) <= 2 * expect] or cands
        if not ok:
            return r, En, FrequencySet(), delta, float("nan"), 0
        if len(ok) == 1:
            t, J = ok[0]
            return r, En, J, delta, float("nan"), 1
        scored = [
            (k_phi_lower(phi1, J, restarts=restarts, seed=derive_seed(seed, r, t, 1), **kw).lower_bound, t, J)
            for t, J in ok
        ]
        kbest, _, J = min(scored, key=lambda s: (s[0], s[1]))
        return r, En, J, delta, kbest, len(ok)

    results = _map(shell, range(r_lo, r_hi + 1), threads)
    shells = []
    for r, En, J, delta, kbest, nc in results:
        if J is None:
            msg = f"shell r={r} is empty; skipped"
            notes.append(msg)
            warnings.warn(msg, stacklevel=2)
            continue
        if delta >= 1.0:
            notes.append(f"shell r={r}: selection density clamped to 1")
        shells.append(Shell(r, En, J, delta, kbest, nc))
    S = FrequencySet(np.concatenate([sh.S_r.elems for sh in shells])) if shells else FrequencySet()
    return ShellConstruction((r_lo, r_hi), shells, S, seed, notes, phi0, phi1)


def random_subset(lo: int, hi: int, size: int, seed=0) -> FrequencySet:
    """Uniformly random ``size``-subset of ``{lo, ..., hi}``."""
    pool = np.arange(lo, hi + 1)
    if size > len(pool):
        raise ParameterError("subset larger than its range")
    return FrequencySet(_rng(seed).choice(pool, size=size, replace=False))
