"""Young functions: evaluation, inverses, complementary functions and indices.

A :class:`YoungFunction` is a piecewise description of a convex
``Phi: [0, inf) -> [0, inf)`` with ``Phi(0) = 0``.  Each piece is one of

* ``power``      -- ``c * u**p``
* ``power_log``  -- ``c * u**p * log(u)**q`` (only used for ``u > 1``)
* ``tabulated``  -- a derivative table ``(x_i, Phi'(x_i))`` interpolated
  log-log linearly and integrated in closed form, so the represented
  function is exactly convex whenever the table is nondecreasing.

Everything is immutable; all functions here are pure.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DomainError, ParameterError

__all__ = [
    "PowerPiece",
    "PowerLogPiece",
    "TabulatedPiece",
    "YoungFunction",
    "IndexEstimate",
    "ConvexifiedYoung",
    "power",
    "zygmund",
    "evaluate",
    "inverse",
    "complementary",
    "matuszewska_indices",
    "check_delta2_nabla2",
    "doubling_ratios",
    "convexify_root",
    "inverse_ratio_blowup",
    "convexity_defect",
    "growth_constants",
    "legendre_values",
]


def _as_array(u):
    arr = np.asarray(u, dtype=float)
    return arr, arr.ndim == 0


def _ret(arr, scalar):
    return float(arr) if scalar else arr


# ---------------------------------------------------------------------------
# pieces


@dataclass(frozen=True)
class PowerPiece:
    """``c * u**p``."""

    c: float
    p: float

    type = "power"

    def value(self, u):
        return self.c * u**self.p

    def deriv(self, u):
        return self.c * self.p * u ** (self.p - 1.0)

    def inverse(self, y, lo, hi):
        return (y / self.c) ** (1.0 / self.p)

    @property
    def deriv_exponent(self):
        return self.p - 1.0

    def params(self):
        return {"c": self.c, "p": self.p}


@dataclass(frozen=True)
class PowerLogPiece:
    """``c * u**p * log(u)**q`` for ``u > 1``."""

    c: float
    p: float
    q: float

    type = "power_log"

    def value(self, u):
        return self.c * u**self.p * np.log(u) ** self.q

    def deriv(self, u):
        L = np.log(u)
        return self.c * u ** (self.p - 1.0) * L ** (self.q - 1.0) * (self.p * L + self.q)

    inverse = None

    @property
    def deriv_exponent(self):
        return self.p - 1.0

    def params(self):
        return {"c": self.c, "p": self.p, "q": self.q}


class TabulatedPiece:
    """Function given by a nondecreasing derivative table.

    Between nodes the derivative is ``d_i * (u / x_i)**k_i`` (log-log linear),
    below ``x[0]`` the function is the pure power ``y_0 (u/x_0)**(k_left+1)``
    and beyond ``x[-1]`` the last node's derivative is continued with
    exponent ``k_right``.
    """

    type = "tabulated"

    def __init__(self, x, y, d, k_left, k_right):
        self.x = np.asarray(x, dtype=float)
        self.y = np.asarray(y, dtype=float)
        self.d = np.asarray(d, dtype=float)
        self.k_left = float(k_left)
        self.k_right = float(k_right)
        if not (self.x.ndim == 1 and self.x.shape == self.y.shape == self.d.shape):
            raise ParameterError("tabulated piece needs equal-length 1-D tables")
        if len(self.x) < 2 or np.any(np.diff(self.x) <= 0) or self.x[0] <= 0:
            raise ParameterError("tabulated nodes must be positive and increasing")
        if np.any(self.d <= 0):
            raise ParameterError("tabulated derivatives must be positive")
        self._lx = np.log(self.x)
        k = np.diff(np.log(self.d)) / np.diff(self._lx)
        self._k = np.append(k, self.k_right)
        for arr in (self.x, self.y, self.d, self._lx, self._k):
            arr.setflags(write=False)

    @classmethod
    def from_derivative(cls, x, d, k_left, k_right):
        """Build the table by integrating the interpolated derivative exactly."""
        x = np.asarray(x, dtype=float)
        d = np.asarray(d, dtype=float)
        lr = np.diff(np.log(x))
        k = np.diff(np.log(d)) / lr
        inc = d[:-1] * x[:-1] * np.expm1((k + 1.0) * lr) / (k + 1.0)
        y0 = d[0] * x[0] / (k_left + 1.0)
        y = y0 + np.concatenate(([0.0], np.cumsum(inc)))
        return cls(x, y, d, k_left, k_right)

    def _cells(self, u):
        return np.clip(np.searchsorted(self.x, u, side="right") - 1, 0, len(self.x) - 1)

    def value(self, u):
        u = np.asarray(u, dtype=float)
        out = np.empty_like(u)
        left = u < self.x[0]
        if np.any(left):
            out[left] = self.y[0] * (u[left] / self.x[0]) ** (self.k_left + 1.0)
        rest = ~left
        if np.any(rest):
            ur = u[rest]
            i = self._cells(ur)
            k1 = self._k[i] + 1.0
            t = np.log(ur) - self._lx[i]
            out[rest] = self.y[i] + self.d[i] * self.x[i] * np.expm1(k1 * t) / k1
        return out

    def deriv(self, u):
        u = np.asarray(u, dtype=float)
        out = np.empty_like(u)
        left = u < self.x[0]
        if np.any(left):
            s = self.k_left + 1.0
            out[left] = self.y[0] * s / self.x[0] * (u[left] / self.x[0]) ** self.k_left
        rest = ~left
        if np.any(rest):
            ur = u[rest]
            i = self._cells(ur)
            out[rest] = self.d[i] * np.exp(self._k[i] * (np.log(ur) - self._lx[i]))
        return out

    inverse = None

    @property
    def deriv_exponent(self):
        return self.k_right

    @property
    def left_deriv_exponent(self):
        return self.k_left

    def params(self):
        return {
            "x": self.x.tolist(),
            "y": self.y.tolist(),
            "d": self.d.tolist(),
            "k_left": self.k_left,
            "k_right": self.k_right,
        }

    def __eq__(self, other):
        return (
            isinstance(other, TabulatedPiece)
            and self.k_left == other.k_left
            and self.k_right == other.k_right
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.y, other.y)
            and np.array_equal(self.d, other.d)
        )

    def __hash__(self):
        return hash((self.x.tobytes(), self.y.tobytes(), self.d.tobytes()))

    def __repr__(self):
        return f"TabulatedPiece(n={len(self.x)}, x=[{self.x[0]:.3g}, {self.x[-1]:.3g}])"


_PIECE_TYPES = {
    "power": lambda p: PowerPiece(float(p["c"]), float(p["p"])),
    "power_log": lambda p: PowerLogPiece(float(p["c"]), float(p["p"]), float(p["q"])),
    "tabulated": lambda p: TabulatedPiece(p["x"], p["y"], p["d"], p["k_left"], p["k_right"]),
}


# ---------------------------------------------------------------------------
# the function object


class YoungFunction:
    """Piecewise Young function.

    Parameters
    ----------
    pieces : sequence of pieces
        Analytic forms, in order of increasing breakpoint.
    breakpoints : sequence of float
        ``breakpoints[i]`` is where ``pieces[i]`` starts; the first must be 0.
    nice : bool
        Whether the function is declared an N-function.
    name : str, optional
        Label used in reports.
    """

    def __init__(self, pieces: Sequence, breakpoints: Sequence[float], nice=True, name=None):
        if len(pieces) == 0 or len(pieces) != len(breakpoints):
            raise ParameterError("need one breakpoint per piece")
        bps = tuple(float(b) for b in breakpoints)
        if bps[0] != 0.0 or any(b1 <= b0 for b0, b1 in zip(bps, bps[1:])):
            raise ParameterError("breakpoints must start at 0 and increase")
        for piece, b in zip(pieces, bps):
            if isinstance(piece, PowerLogPiece) and b <= 1.0:
                raise ParameterError("power_log pieces need a breakpoint > 1")
        self.pieces = tuple(pieces)
        self.breakpoints = bps
        self.nice = bool(nice)
        self.name = name
        self._bp = np.array(bps[1:])
        for i, b in enumerate(bps[1:], start=1):
            left = float(self.pieces[i - 1].value(np.array(b)))
            right = float(self.pieces[i].value(np.array(b)))
            if abs(left - right) > 1e-9 * max(abs(left), abs(right), 1e-300):
                raise ParameterError(f"discontinuity at breakpoint {b}: {left} vs {right}")

    # -- evaluation --------------------------------------------------------

    def _piece_index(self, u):
        return np.searchsorted(self._bp, u, side="right")

    def _apply(self, u, method):
        arr, scalar = _as_array(u)
        if np.any(arr < 0) or np.any(np.isnan(arr)):
            raise DomainError("Young functions are defined on [0, inf)")
        flat = arr.ravel()
        out = np.zeros_like(flat)
        pos = flat > 0
        if len(self.pieces) == 1:
            out[pos] = getattr(self.pieces[0], method)(flat[pos])
        else:
            idx = self._piece_index(flat)
            for i, piece in enumerate(self.pieces):
                m = pos & (idx == i)
                if np.any(m):
                    out[m] = getattr(piece, method)(flat[m])
        return _ret(out.reshape(arr.shape), scalar)

    def __call__(self, u):
        return self._apply(u, "value")

    def derivative(self, u):
        """Right derivative ``Phi'(u+)``."""
        return self._apply(u, "deriv")

    def local_index(self, u):
        """``u Phi'(u) / Phi(u)`` for ``u > 0``."""
        u = np.asarray(u, dtype=float)
        return u * self.derivative(u) / self(u)

    def inverse(self, y):
        """``Phi^{-1}(y)`` for a strictly increasing ``Phi``."""
        arr, scalar = _as_array(y)
        if np.any(arr < 0) or np.any(np.isnan(arr)):
            raise DomainError("Phi^{-1} is defined on [0, inf)")
        flat = arr.ravel()
        out = np.zeros_like(flat)
        bvals = np.array([self(b) for b in self.breakpoints[1:]])
        idx = np.searchsorted(bvals, flat, side="right")
        bounds = self.breakpoints + (math.inf,)
        for i, piece in enumerate(self.pieces):
            m = (idx == i) & (flat > 0)
            if not np.any(m):
                continue
            if piece.inverse is not None:
                out[m] = piece.inverse(flat[m], bounds[i], bounds[i + 1])
            else:
                out[m] = _bisect_inverse(self, flat[m], bounds[i], bounds[i + 1])
        return _ret(out.reshape(arr.shape), scalar)

    # -- tails used by the conjugation ------------------------------------

    @property
    def right_deriv_exponent(self) -> float:
        return float(self.pieces[-1].deriv_exponent)

    @property
    def left_deriv_exponent(self) -> float:
        first = self.pieces[0]
        return float(getattr(first, "left_deriv_exponent", first.deriv_exponent))

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "pieces": [
                {"type": p.type, "params": p.params(), "breakpoint": b}
                for p, b in zip(self.pieces, self.breakpoints)
            ],
            "nice": self.nice,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc: dict, name=None) -> "YoungFunction":
        try:
            entries = doc["pieces"]
            pieces = [_PIECE_TYPES[e["type"]](e["params"]) for e in entries]
            bps = [float(e["breakpoint"]) for e in entries]
        except KeyError as exc:
            raise ParameterError(f"malformed Young function document: missing {exc}") from None
        return cls(pieces, bps, nice=doc.get("nice", True), name=name)

    @classmethod
    def from_json(cls, text: str) -> "YoungFunction":
        return cls.from_dict(json.loads(text))

    def __eq__(self, other):
        return (
            isinstance(other, YoungFunction)
            and self.breakpoints == other.breakpoints
            and self.nice == other.nice
            and self.pieces == other.pieces
        )

    def __hash__(self):
        return hash((self.breakpoints, self.pieces))

    def __repr__(self):
        if self.name:
            return f"YoungFunction({self.name})"
        return f"YoungFunction({list(self.pieces)!r})"


def _bisect_inverse(phi, y, lo, hi, iters=200):
    """Vectorized bisection in ``log u`` for ``phi(u) = y`` on ``[lo, hi]``."""
    y = np.asarray(y, dtype=float)
    lo_arr = np.full_like(y, lo if lo > 0 else 0.0)
    if math.isinf(hi):
        hi_arr = np.full_like(y, max(2.0 * lo, 1.0))
        for _ in range(2000):
            short = phi(hi_arr) < y
            if not np.any(short):
                break
            lo_arr = np.where(short, hi_arr, lo_arr)
            hi_arr = np.where(short, hi_arr * 16.0, hi_arr)
    else:
        hi_arr = np.full_like(y, hi)
    if lo <= 0:
        lo_arr = np.minimum(hi_arr, 1.0)
        for _ in range(2000):
            high = phi(lo_arr) > y
            if not np.any(high):
                break
            hi_arr = np.where(high, lo_arr, hi_arr)
            lo_arr = np.where(high, lo_arr / 16.0, lo_arr)
    llo, lhi = np.log(lo_arr), np.log(hi_arr)
    for _ in range(iters):
        mid = 0.5 * (llo + lhi)
        below = phi(np.exp(mid)) < y
        llo = np.where(below, mid, llo)
        lhi = np.where(below, lhi, mid)
        if np.all(lhi - llo < 1e-15):
            break
    return np.exp(0.5 * (llo + lhi))


# ---------------------------------------------------------------------------
# constructors


def power(p: float, c: float = 1.0) -> YoungFunction:
    """``Phi(u) = c u**p``."""
    if p < 1:
        raise ParameterError("power Young functions need p >= 1")
    return YoungFunction([PowerPiece(float(c), float(p))], [0.0], nice=p > 1, name=f"u^{p:g}")


def zygmund(p: float, alpha: float) -> YoungFunction:
    """``c u^2`` below ``u0`` and ``u^p log^{alpha p}(u)`` above it.

    ``u0 = exp(max(1, 2 max(-alpha, 0) p / (p - 2)))`` keeps the log branch
    convex and increasing, and ``c`` makes the function continuous.
    """
    if p <= 2:
        raise ParameterError("zygmund needs p > 2")
    L0 = max(1.0, 2.0 * max(-alpha, 0.0) * p / (p - 2.0))
    u0 = math.exp(L0)
    q = alpha * p
    c = u0 ** (p - 2.0) * L0**q
    return YoungFunction(
        [PowerPiece(c, 2.0), PowerLogPiece(1.0, float(p), q)],
        [0.0, u0],
        nice=True,
        name=f"zygmund({p:g},{alpha:g})",
    )


# ---------------------------------------------------------------------------
# module-level operations


def evaluate(phi: YoungFunction, u):
    """``Phi(u)``; raises :class:`DomainError` for negative ``u``."""
    return phi(u)


def inverse(phi: YoungFunction, y):
    """``Phi^{-1}(y)``; raises :class:`DomainError` for negative ``y``."""
    return phi.inverse(y)


def _maximizer(phi, v, iters=200):
    """Smallest ``u`` with ``Phi'(u+) >= v`` (the argmax of ``u v - Phi(u)``)."""
    v = np.asarray(v, dtype=float)
    hi = np.ones_like(v)
    for _ in range(4000):
        short = phi.derivative(hi) < v
        if not np.any(short):
            break
        hi = np.where(short, hi * 16.0, hi)
    lo = np.ones_like(v)
    for _ in range(4000):
        high = (phi.derivative(lo) >= v) & (lo > 1e-300)
        if not np.any(high):
            break
        lo = np.where(high, lo / 16.0, lo)
    lo = np.minimum(lo, hi)
    llo, lhi = np.log(lo), np.log(hi)
    for _ in range(iters):
        mid = 0.5 * (llo + lhi)
        below = phi.derivative(np.exp(mid)) < v
        llo = np.where(below, mid, llo)
        lhi = np.where(below, lhi, mid)
        if np.all(lhi - llo < 1e-15):
            break
    return np.exp(lhi)


def complementary(
    phi: YoungFunction, v_min: float = 1e-10, v_max: float = 1e14, per_decade: int = 400
) -> YoungFunction:
    """Complementary function ``Psi(v) = sup_u (u v - Phi(u))`` as a table.

    For every grid point the supremum is located where ``Phi'`` crosses ``v``
    (a subgradient bisection, exact at kinks of ``Phi``).  Since
    ``Psi'(v) = argmax``, the maximizers form the derivative table of the
    result; tails continue with the conjugate exponents of ``phi``'s end
    pieces.
    """
    if not (0 < v_min < v_max):
        raise ParameterError("need 0 < v_min < v_max")
    n = int(round(per_decade * math.log10(v_max / v_min))) + 1
    v = np.geomspace(v_min, v_max, n)
    ustar = _maximizer(phi, v)
    k_left = 1.0 / phi.left_deriv_exponent
    k_right = 1.0 / phi.right_deriv_exponent
    piece = TabulatedPiece.from_derivative(v, ustar, k_left, k_right)
    name = f"conj({phi.name})" if phi.name else None
    return YoungFunction([piece], [0.0], nice=phi.nice, name=name)


def legendre_values(phi: YoungFunction, v):
    """Direct evaluation of ``sup_u (u v - Phi(u))`` at the points ``v``."""
    v = np.asarray(v, dtype=float)
    u = _maximizer(phi, v)
    return u * v - phi(u)


class IndexEstimate(NamedTuple):
    """Estimated indices of a Young function at infinity."""

    alpha_inf: float
    beta_inf: float
    p_inf: float
    q_inf: float
    u_max: float
    slope_fit_residual: float
    regular: bool
    raw_p: float
    raw_q: float


def _extrapolate(x, r):
    """Quadratic least squares in ``x`` evaluated at 0; returns (value, residuals)."""
    A = np.vander(x, 3)
    coef, *_ = np.linalg.lstsq(A, r, rcond=None)
    return coef[-1], r - A @ coef


def matuszewska_indices(
    phi: YoungFunction,
    u_max: float = 1e8,
    window: float = 100.0,
    n_u: int = 201,
    residual_threshold: float = 1e-2,
    u_min: float | None = None,
) -> IndexEstimate:
    """Estimate ``alpha, beta, p, q`` at infinity from the window ``[u_max/window, u_max]``.

    Slowly varying corrections (``log`` factors) bias finite-window ratios by
    ``O(1 / log u)``; the estimates therefore extrapolate every windowed
    quantity quadratically in ``1 / log u`` to ``u = inf``.  Limsup/liminf are
    taken as the extrapolated trend plus the largest/smallest fit residual.
    ``u_min`` widens the window (used for the global indices).
    """
    if u_max < 1e6 and u_min is None:
        raise ParameterError("u_max must be at least 1e6")
    lo = u_max / window if u_min is None else u_min
    u = np.geomspace(lo, u_max, n_u)
    lu = np.log(u)
    x = 1.0 / lu if u_min is None else np.zeros_like(lu)
    ts = 2.0 ** np.arange(1, 11)
    logt = np.log(ts)
    log_phi = np.log(phi(u))
    sup_t, inf_t, worst = [], [], 0.0
    for t in ts:
        r = np.log(phi(t * u)) - log_phi
        if u_min is None:
            trend, res = _extrapolate(x, r)
        else:
            trend, res = 0.0, r
        sup_t.append(trend + res.max())
        inf_t.append(trend + res.min())
        worst = max(worst, float(np.ptp(res)) / math.log(t))
    beta, b0 = np.polyfit(logt, sup_t, 1)
    alpha, a0 = np.polyfit(logt, inf_t, 1)
    fit_res = max(
        np.max(np.abs(np.polyval([beta, b0], logt) - sup_t)),
        np.max(np.abs(np.polyval([alpha, a0], logt) - inf_t)),
    )
    g = phi.local_index(u)
    if u_min is None:
        g_inf, gres = _extrapolate(x, g)
    else:
        g_inf, gres = 0.0, g
    p_hat = g_inf + gres.min()
    q_hat = g_inf + gres.max()
    residual = float(max(fit_res, worst))
    return IndexEstimate(
        alpha_inf=float(alpha),
        beta_inf=float(beta),
        p_inf=float(p_hat),
        q_inf=float(q_hat),
        u_max=float(u_max),
        slope_fit_residual=residual,
        regular=residual < residual_threshold,
        raw_p=float(g.min()),
        raw_q=float(g.max()),
    )


def doubling_ratios(phi: YoungFunction, u_lo: float = 1e2, u_hi: float = 1e8, n: int = 601):
    """``(inf, sup)`` of ``Phi(2u)/Phi(u)`` over a log grid on ``[u_lo, u_hi]``."""
    u = np.geomspace(u_lo, u_hi, n)
    r = phi(2.0 * u) / phi(u)
    return float(r.min()), float(r.max())


def check_delta2_nabla2(phi: YoungFunction, u_lo: float = 1e2, u_hi: float = 1e8):
    """Heuristic ``(Delta_2, nabla_2)`` flags on ``[u_lo, u_hi]``.

    ``Delta_2`` holds when the doubling ratio stays below ``1e6``; ``nabla_2``
    when it stays above ``2 + 1e-6``.
    """
    rmin, rmax = doubling_ratios(phi, u_lo, u_hi)
    return bool(rmax < 1e6), bool(rmin > 2.0 + 1e-6)


class ConvexifiedYoung(NamedTuple):
    phi_tilde: YoungFunction
    c1: float
    c2: float
    root_convex: bool


def _gauss_cells(f, edges, order=10):
    """Integrals of ``f`` over consecutive cells ``[edges[i], edges[i+1]]``."""
    xg, wg = np.polynomial.legendre.leggauss(order)
    a, b = edges[:-1, None], edges[1:, None]
    pts = 0.5 * (b - a) * xg + 0.5 * (a + b)
    return (0.5 * (b - a) * wg * f(pts)).sum(axis=1)


def convexity_defect(phi: YoungFunction, u_lo=1e-6, u_hi=1e10, n=2001, rel_step=1e-3, transform=None):
    """Most negative normalized midpoint second difference on a log grid.

    Returns ``min((Phi(u+h) + Phi(u-h))/2 - Phi(u)) / Phi(u)`` with
    ``h = rel_step * u``.  With ``transform`` the function checked is
    ``u -> Phi(transform(u))``.
    """
    u = np.geomspace(u_lo, u_hi, n)
    h = rel_step * u
    f = phi if transform is None else (lambda s: phi(transform(s)))
    mid = f(u)
    sec = 0.5 * (f(u + h) + f(u - h)) - mid
    return float(np.min(sec / mid))


def convexify_root(
    phi: YoungFunction,
    p: float,
    u_min: float = 1e-6,
    u_max: float = 1e10,
    per_decade: int = 1000,
    strict: bool = True,
    u0: float = 10.0,
) -> ConvexifiedYoung:
    """Equivalent Young function whose composition with ``u**(1/p)`` is convex.

    Builds ``Phi_p(u) = u^p (1 + int_1^u s^{-p-1} Phi(s) ds)`` (just ``u^p`` for
    ``u <= 1``) and ``Phi_tilde(u) = int_0^u Phi_p(s)/s ds``.  ``Phi_tilde``
    is returned as a derivative table (``Phi_tilde' = Phi_p(u)/u``) together
    with the measured equivalence constants ``c1 <= Phi_tilde/Phi <= c2`` on
    ``[u0, u_max]``.  ``strict`` enforces ``1 < p < alpha_inf(phi)``.
    """
    if p <= 1:
        raise ParameterError("convexify_root needs p > 1")
    if strict:
        est = matuszewska_indices(phi)
        if p >= est.alpha_inf:
            raise ParameterError(f"need p < alpha_inf = {est.alpha_inf:.4g}")
    n = int(round(per_decade * math.log10(u_max / u_min))) + 1
    grid = np.geomspace(u_min, u_max, n)
    extra = [b for b in phi.breakpoints[1:] if u_min < b < u_max] + [1.0]
    x = np.unique(np.concatenate((grid, extra)))
    above = x[x >= 1.0]
    lt = np.log(above)

    def integrand(t):
        return np.exp(-p * t) * phi(np.exp(t))

    cells = _gauss_cells(integrand, lt)
    integral = np.concatenate(([0.0], np.cumsum(cells)))
    phi_p = np.concatenate((x[x < 1.0] ** p, above**p * (1.0 + integral)))
    d = phi_p / x
    k_right = phi.right_deriv_exponent
    piece = TabulatedPiece.from_derivative(x, d, p - 1.0, k_right)
    name = f"convexified({phi.name},{p:g})" if phi.name else None
    tilde = YoungFunction([piece], [0.0], nice=phi.nice, name=name)
    uu = np.geomspace(u0, u_max, 400)
    ratio = tilde(uu) / phi(uu)
    root_ok = convexity_defect(tilde, u_lo=u_min, u_hi=u_max, transform=lambda w: w ** (1.0 / p)) >= -1e-9
    return ConvexifiedYoung(tilde, float(ratio.min()), float(ratio.max()), bool(root_ok))


def inverse_ratio_blowup(phi1: YoungFunction, phi2: YoungFunction, u_max: float, n: int = 400) -> float:
    """``max_{1 <= u <= u_max} Phi1^{-1}(u) / Phi2^{-1}(u)`` on a log grid."""
    u = np.geomspace(1.0, u_max, n)
    return float(np.max(phi1.inverse(u) / phi2.inverse(u)))


def growth_constants(phi: YoungFunction, lower_exp: float, upper_exp: float, u_lo=10.0, u_hi=1e8, n=400):
    """Smallest ``C`` with ``u^lower_exp <= C Phi(u)`` and ``Phi(u) <= C u^upper_exp``."""
    u = np.geomspace(u_lo, u_hi, n)
    f = phi(u)
    return float(np.max(u**lower_exp / f)), float(np.max(f / u**upper_exp))
