import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orlicz_lambda.errors import DomainError
from orlicz_lambda.littlewood_paley import (
    bump,
    khintchine_check,
    khintchine_constants,
    n_blocks,
    project,
    psi_j,
    rademacher,
    rademacher_randomized_norm,
    randomized,
    square_function,
    square_function_ratio,
)
from orlicz_lambda.luxemburg import luxemburg_norm
from orlicz_lambda.torus import TrigPolynomial
from orlicz_lambda.young import power, zygmund


def random_poly(rng, max_freq=200):
    F = int(rng.integers(2, max_freq + 1))
    n = np.arange(-F, F + 1)
    return TrigPolynomial(n, rng.standard_normal(len(n)) + 1j * rng.standard_normal(len(n)))


def sum_blocks(f, J):
    total = {}
    for j in range(J + 1):
        for n, a in project(f, j).as_dict().items():
            total[n] = total.get(n, 0) + a
    return total


def test_bump_shape():
    x = np.linspace(-3, 3, 6001)
    b = bump(x)
    assert np.all((b >= 0) & (b <= 1))
    assert np.array_equal(b, bump(-x))
    assert np.all(np.diff(b[x >= 0]) <= 0)
    assert bump(1.0) == 1.0 and bump(2.0) == 0.0 and bump(0.0) == 1.0


def test_block_one_at_one():
    assert psi_j(1, 1.0) == 0.0


@settings(max_examples=50, deadline=None)
@given(st.floats(-5000, 5000), st.integers(0, 12))
def test_telescoping(xi, J):
    total = sum(psi_j(j, xi) for j in range(J + 1))
    assert abs(total - bump(xi / 2.0 ** (J + 1))) <= 1e-12


@pytest.mark.parametrize("j", [1, 2, 5, 9])
def test_block_support(j):
    xi = np.linspace(-(2.0 ** (j + 4)), 2.0 ** (j + 4), 100_001)
    vals = psi_j(j, xi)
    outside = (np.abs(xi) < 2.0**j) | (np.abs(xi) > 2.0 ** (j + 2))
    assert np.all(vals[outside] == 0.0)


def test_bounded_overlap_scan():
    n = np.arange(1, 2**16 + 1)
    W = np.array([psi_j(j, n) for j in range(19)])
    assert (W != 0).sum(axis=0).max() <= 2
    s2 = (W**2).sum(axis=0)
    assert s2.min() >= 0.5 - 1e-12 and s2.max() <= 1 + 1e-12


def test_plateau_points():
    # at n = 2^{j+1} exactly one block is nonzero and it equals 1
    for j in range(13):
        n = 2 ** (j + 1)
        w = [psi_j(i, n) for i in range(16)]
        assert w[j] == 1.0 and sum(x != 0 for x in w) == 1
    # wherever a block rounds to 1 the square weight is 1 as well
    n = np.arange(1, 2**12 + 1)
    W = np.array([psi_j(j, n) for j in range(14)])
    pure = (W == 1.0).any(axis=0)
    assert np.all((W[:, pure] ** 2).sum(axis=0) == 1.0)


def test_constant_projection():
    f = TrigPolynomial([0], [2.5])
    assert project(f, 0) == f
    assert all(len(project(f, j).freqs) == 0 for j in range(1, 6))


def test_reconstruction():
    rng = np.random.default_rng(1)
    for _ in range(30):
        f = random_poly(rng)
        J = int(math.ceil(math.log2(f.max_abs_freq))) - 1
        total = sum_blocks(f, J)
        assert max(abs(total.get(n, 0) - a) for n, a in f.as_dict().items()) <= 1e-10


def test_square_function_single_frequency():
    n = 3
    f = TrigPolynomial([n], [1.0])
    weights = sum(psi_j(j, n) ** 2 for j in range(10))
    sf = square_function(f)
    assert np.allclose(sf, math.sqrt(weights), atol=1e-12)


def test_ratio_one_on_plateau():
    f = TrigPolynomial([16], [1.0])
    assert square_function_ratio(power(3), f) == pytest.approx(1.0, rel=1e-12)


def test_ratio_plancherel():
    rng = np.random.default_rng(2)
    for _ in range(10):
        f = random_poly(rng, 60)
        w = np.array([sum(psi_j(j, n) ** 2 for j in range(n_blocks(f))) for n in f.freqs])
        a2 = np.abs(f.coeffs) ** 2
        expected = math.sqrt(np.sum(a2 * w) / np.sum(a2))
        assert square_function_ratio(power(2), f) == pytest.approx(expected, rel=1e-10)
        assert w.min() - 1e-12 <= expected**2 <= w.max() + 1e-12


def test_ratio_band_zygmund():
    rng = np.random.default_rng(3)
    r = [square_function_ratio(zygmund(3, 1), random_poly(rng)) for _ in range(50)]
    assert 1 / 8 <= min(r) and max(r) <= 8


def test_ratio_rejects_zero():
    with pytest.raises(DomainError):
        square_function_ratio(power(3), TrigPolynomial([], []))


def test_rademacher_values():
    t = np.array([0.1, 0.3, 0.6, 0.9])
    assert rademacher(0, t).tolist() == [1, 1, -1, -1]
    assert np.array_equal(rademacher(2, t), np.sign(np.sin(8 * np.pi * t)))
    with pytest.raises(DomainError):
        rademacher(1, 0.25)


def test_rademacher_orthogonality():
    t = (np.arange(2**8) + 0.5) / 2**8
    R = np.array([rademacher(j, t) for j in range(7)])
    assert np.array_equal(R @ R.T / len(t), np.eye(7))


def test_randomized_single_block():
    f = TrigPolynomial([16, -16], [1.0, 0.5])
    phi = power(4)
    res = rademacher_randomized_norm(phi, f, t_samples=8, seed=1)
    assert np.allclose(res["values"], res["norm_f"], rtol=1e-12)


def test_randomized_sign_flip():
    rng = np.random.default_rng(4)
    f = random_poly(rng, 40)
    phi = power(4)
    g = randomized(f, 0.37)
    assert luxemburg_norm(phi, g * -1.0).value == luxemburg_norm(phi, g).value


def test_randomized_band():
    rng = np.random.default_rng(5)
    phi = power(4)
    ratios = [rademacher_randomized_norm(phi, random_poly(rng, 100), 6, seed=i)["ratio"] for i in range(10)]
    assert max(ratios) <= 8


def test_khintchine_trivial():
    assert khintchine_check([1.0], 3) == (1.0, 1.0)
    lhs, rhs = khintchine_check([1.0, 1.0], 2)
    assert lhs == pytest.approx(math.sqrt(2)) and rhs == pytest.approx(math.sqrt(2))


def test_khintchine_four_terms():
    lhs, rhs = khintchine_check([1, 1, 1, 1], 4)
    # E|sum|^4 = n + 3n(n-1) = 40
    assert lhs == pytest.approx(40**0.25, rel=1e-14)
    assert lhs <= 3**0.25 * rhs
    assert khintchine_constants(4)[1] == pytest.approx(3**0.25)


def test_khintchine_grid_equals_enumeration():
    c = np.random.default_rng(6).standard_normal(6)
    assert khintchine_check(c, 3, t_grid=64)[0] == pytest.approx(khintchine_check(c, 3)[0], rel=1e-12)


@pytest.mark.parametrize("p", [1, 1.5, 2, 3, 4, 6])
def test_khintchine_constants_order(p):
    A, B = khintchine_constants(p)
    assert 0 < A <= 1 <= B
    if p >= 2:
        assert B <= math.sqrt(p)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-10, 10), min_size=1, max_size=10).filter(lambda c: any(abs(x) > 1e-3 for x in c)), st.sampled_from([1, 1.5, 2, 4, 6]))
def test_khintchine_property(c, p):
    A, B = khintchine_constants(p)
    lhs, rhs = khintchine_check(c, p)
    assert A * rhs * (1 - 1e-12) <= lhs <= B * rhs * (1 + 1e-12)
