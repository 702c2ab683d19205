"""Trigonometric polynomials on the period-1 circle ``T = R/Z``.

Characters are ``e(n x) = exp(2 pi i n x)``; grids are uniform, ``x_k = k/M``.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math

import numpy as np

from .errors import CapacityError, ParameterError

__all__ = [
    "TrigPolynomial",
    "GridFunction",
    "FrequencySet",
    "AllIntegers",
    "Squares",
    "next_pow2",
    "default_grid_size",
    "evaluate_grid",
    "fejer_kernel",
    "lp_norm_even_exact",
    "lp_norm_quadrature",
    "greedy_bh_set",
]

# largest coefficient array the exact even-exponent oracle will build
MAX_EXACT_SUPPORT = 1 << 22


def next_pow2(n: int) -> int:
    return 1 << max(0, int(n - 1).bit_length())


def default_grid_size(max_abs_freq: int) -> int:
    """Default quadrature size for nonlinear functionals.

    ``max(4096, 8 F + 4)`` rounded up to a power of two, which is at least
    ``8 F`` and at least four times the ``2 F + 1`` frequencies.
    """
    return next_pow2(max(4096, 8 * int(max_abs_freq) + 4))


class FrequencySet:
    """A finite set of integers kept as a sorted ``int64`` array."""

    def __init__(self, elems=()):
        arr = np.unique(np.asarray(list(elems) if not isinstance(elems, np.ndarray) else elems, dtype=np.int64))
        arr.setflags(write=False)
        self.elems = arr

    @classmethod
    def interval(cls, a: int, b: int) -> "FrequencySet":
        """``{a, a+1, ..., b}``."""
        return cls(np.arange(a, b + 1, dtype=np.int64))

    def __len__(self):
        return len(self.elems)

    def __iter__(self):
        return (int(n) for n in self.elems)

    def __contains__(self, n):
        i = np.searchsorted(self.elems, n)
        return bool(i < len(self.elems) and self.elems[i] == n)

    def __eq__(self, other):
        return isinstance(other, FrequencySet) and np.array_equal(self.elems, other.elems)

    def __hash__(self):
        return hash(self.elems.tobytes())

    def __repr__(self):
        if len(self) <= 8:
            return f"FrequencySet({self.elems.tolist()})"
        return f"FrequencySet(n={len(self)}, range=[{self.elems[0]}, {self.elems[-1]}])"

    @property
    def diam(self) -> int:
        """``max - min + 1`` (0 for the empty set)."""
        if len(self) == 0:
            return 0
        return int(self.elems[-1] - self.elems[0] + 1)

    def count_in(self, lo: int, hi: int) -> int:
        """``|S cap [lo, hi]|``."""
        return int(np.searchsorted(self.elems, hi, side="right") - np.searchsorted(self.elems, lo, side="left"))

    def restrict(self, lo: int, hi: int) -> "FrequencySet":
        i0 = np.searchsorted(self.elems, lo, side="left")
        i1 = np.searchsorted(self.elems, hi, side="right")
        return FrequencySet(self.elems[i0:i1])

    def shell(self, N: int) -> "FrequencySet":
        """``S cap ([-2N, -N] u [N, 2N])``."""
        return self.restrict(-2 * N, -N) | self.restrict(N, 2 * N)

    def __or__(self, other):
        return FrequencySet(np.concatenate((self.elems, other.elems)))

    def issubset(self, other) -> bool:
        return bool(np.all(np.isin(self.elems, other.elems)))

    def translate(self, m: int) -> "FrequencySet":
        return FrequencySet(self.elems + m)

    def reflect(self) -> "FrequencySet":
        return FrequencySet(-self.elems)

    def to_json(self) -> str:
        return json.dumps(self.elems.tolist())

    @classmethod
    def from_json(cls, text: str) -> "FrequencySet":
        return cls(json.loads(text))


class AllIntegers:
    """The full lattice ``Z`` as a source of dyadic shells."""

    def shell(self, N: int) -> FrequencySet:
        return FrequencySet(np.concatenate((np.arange(-2 * N, -N + 1), np.arange(N, 2 * N + 1))))

    def __repr__(self):
        return "AllIntegers()"


class Squares:
    """The perfect squares ``{k^2 : k >= 1}``; ``symmetric`` adds their negatives."""

    def __init__(self, symmetric: bool = False):
        self.symmetric = symmetric

    def restrict(self, lo: int, hi: int) -> FrequencySet:
        k = np.arange(1, math.isqrt(max(hi, -lo, 0)) + 1, dtype=np.int64)
        sq = k * k
        vals = sq[(sq >= lo) & (sq <= hi)]
        if self.symmetric:
            neg = -sq[(-sq >= lo) & (-sq <= hi)]
            vals = np.concatenate((neg, vals))
        return FrequencySet(vals)

    def shell(self, N: int) -> FrequencySet:
        return self.restrict(-2 * N, -N) | self.restrict(N, 2 * N)

    def __repr__(self):
        return f"Squares(symmetric={self.symmetric})"


class TrigPolynomial:
    """``f(x) = sum_n a_n e(n x)`` with finitely many nonzero ``a_n``.

    Parameters
    ----------
    freqs : array_like of int
        Frequencies (need not be sorted; duplicates are summed).
    coeffs : array_like of complex
        Matching amplitudes.  Exact zeros are dropped.
    """

    def __init__(self, freqs, coeffs):
        freqs = np.asarray(freqs, dtype=np.int64).ravel()
        coeffs = np.asarray(coeffs, dtype=complex).ravel()
        if freqs.shape != coeffs.shape:
            raise ParameterError("freqs and coeffs must have equal length")
        uniq, inv = np.unique(freqs, return_inverse=True)
        summed = np.zeros(len(uniq), dtype=complex)
        np.add.at(summed, inv, coeffs)
        keep = summed != 0
        self.freqs = uniq[keep]
        self.coeffs = summed[keep]
        self.freqs.setflags(write=False)
        self.coeffs.setflags(write=False)

    @classmethod
    def from_dict(cls, mapping) -> "TrigPolynomial":
        items = list(mapping.items())
        return cls([n for n, _ in items], [a for _, a in items])

    @classmethod
    def on_set(cls, S: FrequencySet, coeffs=None) -> "TrigPolynomial":
        """Polynomial supported on ``S``; all-ones coefficients by default."""
        if coeffs is None:
            coeffs = np.ones(len(S))
        return cls(S.elems, coeffs)

    @property
    def max_abs_freq(self) -> int:
        return int(np.max(np.abs(self.freqs))) if len(self.freqs) else 0

    @property
    def support(self) -> FrequencySet:
        return FrequencySet(self.freqs)

    def as_dict(self) -> dict:
        return {int(n): complex(a) for n, a in zip(self.freqs, self.coeffs)}

    def __call__(self, x):
        """Direct (non-FFT) evaluation at points ``x``."""
        x = np.asarray(x, dtype=float)
        phase = np.exp(2j * np.pi * np.multiply.outer(x, self.freqs))
        return phase @ self.coeffs

    def __add__(self, other):
        return TrigPolynomial(np.concatenate((self.freqs, other.freqs)), np.concatenate((self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, c):
        return TrigPolynomial(self.freqs, self.coeffs * c)

    __rmul__ = __mul__

    def translate(self, m: int) -> "TrigPolynomial":
        """Multiply by ``e(m x)``; ``|f|`` is unchanged."""
        return TrigPolynomial(self.freqs + m, self.coeffs)

    def l2_norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))

    def centered(self) -> "TrigPolynomial":
        """Translate so the spectrum is as symmetric about 0 as possible."""
        if len(self.freqs) == 0:
            return self
        return self.translate(-int((int(self.freqs[0]) + int(self.freqs[-1])) // 2))

    def to_json(self) -> str:
        return json.dumps([[int(n), float(a.real), float(a.imag)] for n, a in zip(self.freqs, self.coeffs)])

    @classmethod
    def from_json(cls, text: str) -> "TrigPolynomial":
        rows = json.loads(text)
        return cls([r[0] for r in rows], [complex(r[1], r[2]) for r in rows])

    def __eq__(self, other):
        return (
            isinstance(other, TrigPolynomial)
            and np.array_equal(self.freqs, other.freqs)
            and np.array_equal(self.coeffs, other.coeffs)
        )

    def __repr__(self):
        return f"TrigPolynomial(terms={len(self.freqs)}, max_abs_freq={self.max_abs_freq})"


class GridFunction:
    """Samples ``g(k/M)``, ``k = 0..M-1``, on a power-of-two grid."""

    def __init__(self, samples):
        samples = np.asarray(samples)
        M = len(samples)
        if M < 1 or M & (M - 1):
            raise ParameterError("grid size must be a power of two")
        self.samples = samples
        self.M = M

    @property
    def x(self):
        return np.arange(self.M) / self.M

    def mean(self):
        return self.samples.mean()

    def abs(self):
        return np.abs(self.samples)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["x", "re", "im"])
        for x, s in zip(self.x, self.samples):
            s = complex(s)
            w.writerow([repr(float(x)), repr(s.real), repr(s.imag)])
        return buf.getvalue()


def evaluate_grid(f: TrigPolynomial, M: int) -> GridFunction:
    """Samples of ``f`` at ``k/M`` by an inverse FFT of the wrapped coefficients.

    Raises
    ------
    ParameterError
        If ``M`` is not a power of two or ``M < 2 max|n| + 2``.
    """
    if M < 1 or M & (M - 1):
        raise ParameterError("grid size must be a power of two")
    if M < 2 * f.max_abs_freq + 2:
        raise ParameterError(f"grid of {M} points aliases frequencies up to {f.max_abs_freq}")
    spec = np.zeros(M, dtype=complex)
    np.add.at(spec, f.freqs % M, f.coeffs)
    return GridFunction(np.fft.ifft(spec) * M)


def fejer_kernel(N: int) -> TrigPolynomial:
    """``K_N(x) = sum_{|n| <= N} (1 - |n|/N) e(n x)``."""
    if N < 1:
        raise ParameterError("Fejer kernel needs N >= 1")
    n = np.arange(-(N - 1), N)
    return TrigPolynomial(n, 1.0 - np.abs(n) / N)


def lp_norm_even_exact(f: TrigPolynomial, two_n: int) -> float:
    """``||f||_{2n}`` from the coefficients of ``f^n`` (Parseval on ``f^n``).

    Raises
    ------
    CapacityError
        If the convolution of the coefficient vector would exceed
        ``MAX_EXACT_SUPPORT`` entries.
    """
    if two_n not in (2, 4, 6, 8):
        raise ParameterError("exact oracle supports 2n in {2, 4, 6, 8}")
    n = two_n // 2
    if len(f.freqs) == 0:
        return 0.0
    lo = int(f.freqs[0])
    width = int(f.freqs[-1]) - lo + 1
    if n * (width - 1) + 1 > MAX_EXACT_SUPPORT:
        raise CapacityError(f"support width {width} too large for the exact {two_n}-norm")
    dense = np.zeros(width, dtype=complex)
    dense[f.freqs - lo] = f.coeffs
    power = dense
    for _ in range(n - 1):
        power = np.convolve(power, dense)
    return float(np.sum(np.abs(power) ** 2) ** (1.0 / two_n))


def lp_norm_quadrature(f: TrigPolynomial, p: float, M: int | None = None) -> float:
    """``(mean |f(k/M)|^p)^(1/p)`` on the default (or given) grid."""
    if M is None:
        M = default_grid_size(f.max_abs_freq)
    g = evaluate_grid(f, M)
    return float(np.mean(np.abs(g.samples) ** p) ** (1.0 / p))


def greedy_bh_set(h: int, count: int) -> FrequencySet:
    """Greedy ``B_h`` set: add the least positive integer keeping all h-fold sums distinct.

    Sums are over multisets (repetition allowed), so for ``h = 2`` this is
    the greedy Sidon (Mian-Chowla) sequence.
    """
    if h < 2:
        raise ParameterError("B_h sets need h >= 2")
    elems: list[int] = []
    # sums[k] = set of k-fold multiset sums of the current elements
    sums = [{0}] + [set() for _ in range(h)]
    cand = 0
    while len(elems) < count:
        cand += 1
        new = [set() for _ in range(h + 1)]
        for k in range(1, h + 1):
            for j in range(1, k + 1):
                new[k].update(j * cand + s for s in sums[k - j])
        if sums[h].isdisjoint(new[h]) and _sizes_ok(sums, new, h, len(elems) + 1):
            elems.append(cand)
            for k in range(1, h + 1):
                sums[k] |= new[k]
    return FrequencySet(elems)


def _sizes_ok(sums, new, h, size):
    # h-fold sums are distinct iff their number equals the number of multisets
    return len(sums[h] | new[h]) == math.comb(size + h - 1, h)


def hfold_sums_distinct(S, h: int) -> bool:
    """Brute-force check that all h-element multisets of ``S`` have distinct sums."""
    seen = set()
    for combo in itertools.combinations_with_replacement(list(S), h):
        s = sum(combo)
        if s in seen:
            return False
        seen.add(s)
    return True
