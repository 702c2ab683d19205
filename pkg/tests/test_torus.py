import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orlicz_lambda.errors import CapacityError, ParameterError
from orlicz_lambda.torus import (
    AllIntegers,
    FrequencySet,
    GridFunction,
    Squares,
    TrigPolynomial,
    default_grid_size,
    evaluate_grid,
    fejer_kernel,
    greedy_bh_set,
    hfold_sums_distinct,
    lp_norm_even_exact,
    lp_norm_quadrature,
)


def random_poly(rng, F):
    n = np.arange(-F, F + 1)
    return TrigPolynomial(n, rng.standard_normal(len(n)) + 1j * rng.standard_normal(len(n)))


def test_constant_samples():
    g = evaluate_grid(TrigPolynomial([0], [1.0]), 8)
    assert np.allclose(g.samples, 1.0)


def test_single_character_samples():
    g = evaluate_grid(TrigPolynomial([1], [1.0]), 8)
    assert np.allclose(g.samples, np.exp(2j * np.pi * np.arange(8) / 8), atol=1e-15)


def test_grid_matches_direct_sum():
    rng = np.random.default_rng(3)
    f = random_poly(rng, 20)
    g = evaluate_grid(f, 64)
    assert np.allclose(g.samples, f(g.x), atol=1e-12)


def test_parseval():
    rng = np.random.default_rng(4)
    for _ in range(20):
        f = random_poly(rng, int(rng.integers(1, 65)))
        g = evaluate_grid(f, 512)
        assert np.mean(np.abs(g.samples) ** 2) == pytest.approx(np.sum(np.abs(f.coeffs) ** 2), rel=1e-12)


def test_undersized_grid_rejected():
    f = TrigPolynomial([10], [1.0])
    with pytest.raises(ParameterError):
        evaluate_grid(f, 16)
    with pytest.raises(ParameterError):
        evaluate_grid(f, 48)


def test_linearity():
    rng = np.random.default_rng(5)
    f, g = random_poly(rng, 10), random_poly(rng, 7)
    lhs = evaluate_grid(f * 2.0 + g, 64).samples
    rhs = 2.0 * evaluate_grid(f, 64).samples + evaluate_grid(g, 64).samples
    assert np.allclose(lhs, rhs, atol=1e-12)


def test_default_grid_oversampling():
    for F in (1, 100, 511, 512, 1024, 5000):
        M = default_grid_size(F)
        assert M >= max(4096, 8 * F) and M >= 4 * (2 * F + 1)
        assert M & (M - 1) == 0


@pytest.mark.parametrize("N", [1, 2, 7, 64])
def test_fejer_kernel(N):
    K = fejer_kernel(N)
    assert len(K.freqs) == 2 * N - 1
    assert K(0.0).real == pytest.approx(N, rel=1e-14)
    assert K.as_dict()[0] == 1.0
    d = K.as_dict()
    assert all(d[n] == d[-n] for n in d)
    assert evaluate_grid(K, 4096).samples.real.min() >= -1e-10


def test_lp_exact_character():
    f = TrigPolynomial([5], [1.0])
    for q in (2, 4, 6, 8):
        assert lp_norm_even_exact(f, q) == pytest.approx(1.0, rel=1e-15)


def test_lp_exact_two_frequency():
    f = TrigPolynomial([3, 7], [1 / math.sqrt(2)] * 2)
    assert lp_norm_even_exact(f, 4) == pytest.approx(1.5**0.25, rel=1e-14)


def test_lp_exact_vs_quadrature():
    rng = np.random.default_rng(6)
    for _ in range(100):
        f = random_poly(rng, int(rng.integers(1, 33)))
        assert lp_norm_even_exact(f, 4) == pytest.approx(lp_norm_quadrature(f, 4), rel=1e-9)


def test_lp_exact_capacity():
    f = TrigPolynomial([0, 10**7], [1.0, 1.0])
    with pytest.raises(CapacityError):
        lp_norm_even_exact(f, 8)


def test_lp_exact_rejects_odd():
    with pytest.raises(ParameterError):
        lp_norm_even_exact(TrigPolynomial([1], [1.0]), 3)


def brute_greedy_sidon(count):
    out = []
    k = 0
    while len(out) < count:
        k += 1
        cand = out + [k]
        sums = [a + b for a, b in itertools.combinations_with_replacement(cand, 2)]
        if len(sums) == len(set(sums)):
            out.append(k)
    return out


def test_greedy_b2_matches_oracle():
    assert greedy_bh_set(2, 4).elems.tolist() == [1, 2, 4, 8]
    assert greedy_bh_set(2, 10).elems.tolist() == brute_greedy_sidon(10)


def test_greedy_single():
    assert greedy_bh_set(2, 1).elems.tolist() == [1]


@pytest.mark.parametrize("h, count", [(2, 12), (3, 8), (4, 6)])
def test_greedy_distinct_sums(h, count):
    assert hfold_sums_distinct(greedy_bh_set(h, count), h)


def test_frequency_set_basics():
    S = FrequencySet([5, 1, 3, 3])
    assert S.elems.tolist() == [1, 3, 5]
    assert S.diam == 5
    assert S.count_in(2, 5) == 2
    assert S.translate(2).reflect().elems.tolist() == [-7, -5, -3]
    assert FrequencySet.from_json(S.to_json()) == S


def test_shells():
    assert AllIntegers().shell(4).elems.tolist() == [-8, -7, -6, -5, -4, 4, 5, 6, 7, 8]
    assert Squares().shell(8).elems.tolist() == [9, 16]
    assert Squares(symmetric=True).shell(8).elems.tolist() == [-16, -9, 9, 16]


def test_trig_poly_json_round_trip():
    rng = np.random.default_rng(8)
    f = random_poly(rng, 9)
    assert TrigPolynomial.from_json(f.to_json()) == f


def test_grid_csv():
    g = GridFunction(np.array([1.0, 1j, -1.0, -1j]))
    lines = g.to_csv().strip().splitlines()
    assert len(lines) == 5


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=1, max_size=8, unique=True), st.integers(-1000, 1000))
def test_translation_preserves_modulus(freqs, m):
    f = TrigPolynomial(freqs, np.ones(len(freqs)))
    a = np.abs(evaluate_grid(f, 4096).samples)
    b = np.abs(evaluate_grid(f.translate(m), 4096).samples)
    assert np.allclose(a, b, atol=1e-10)
