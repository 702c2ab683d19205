import json
import warnings

import numpy as np
import pytest

from orlicz_lambda.errors import ParameterError
from orlicz_lambda.lambda_sets import density_ratio
from orlicz_lambda.restriction import (
    ShellConstruction,
    build_lambda_set,
    derive_seed,
    monte_carlo_K,
    random_subset,
    sample_restriction,
    selection_density,
    verify_source_condition,
)
from orlicz_lambda.torus import AllIntegers, FrequencySet, Squares
from orlicz_lambda.young import power


def quiet_build(*args, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return build_lambda_set(*args, **kw)


def test_density_square_is_one():
    assert selection_density(power(2), FrequencySet.interval(1, 1000)) == pytest.approx(1.0)


@pytest.mark.parametrize("p", [3, 4, 6])
def test_density_power(p):
    N = 4096
    assert selection_density(power(p), FrequencySet.interval(1, N)) == pytest.approx(N ** (2 / p - 1), rel=1e-12)


def test_density_singleton_clamp():
    assert selection_density(power(3, c=0.25), FrequencySet([5])) == 1.0


def test_sample_extremes():
    E = FrequencySet.interval(1, 100)
    assert len(sample_restriction(E, 0.0, 1)) == 0
    assert sample_restriction(E, 1.0, 1) == E


def test_sample_rejects_bad_delta():
    with pytest.raises(ParameterError):
        sample_restriction(FrequencySet([1]), 1.5)
    with pytest.raises(ParameterError):
        sample_restriction(FrequencySet([1]), -0.1)


def test_sample_binomial_mean():
    E = FrequencySet.interval(1, 500)
    delta = 0.2
    sizes = np.array([len(sample_restriction(E, delta, derive_seed(0, t))) for t in range(1000)])
    se = np.sqrt(len(E) * delta * (1 - delta) / 1000)
    assert abs(sizes.mean() - delta * len(E)) <= 3 * se


def test_sample_subset_and_deterministic():
    E = FrequencySet(np.arange(0, 300, 3))
    J1 = sample_restriction(E, 0.3, derive_seed(4, 1))
    J2 = sample_restriction(E, 0.3, derive_seed(4, 1))
    assert J1 == J2 and J1.issubset(E)


def test_source_condition_interval():
    k, bound = verify_source_condition(power(2), FrequencySet.interval(1, 200))
    assert k == pytest.approx(1.0, abs=1e-9)
    assert bound == pytest.approx(1.0)


def test_source_condition_singleton():
    phi0 = power(3, c=2.0)
    k, bound = verify_source_condition(phi0, FrequencySet([42]))
    assert k == pytest.approx(1 / phi0.inverse(1.0))
    assert bound == pytest.approx(1 / phi0.inverse(1.0))


def test_source_condition_squares():
    phi0 = power(5)
    ratios = []
    for k in range(8, 14):
        N = 2**k
        E = Squares().restrict(N, 2 * N)
        km, bound = verify_source_condition(phi0, E, restarts=2)
        ratios.append(km / bound)
    assert max(ratios) / min(ratios) < 2


def test_mc_clamped_density():
    E = FrequencySet.interval(1, 64)
    st = monte_carlo_K(power(2), power(2), E, trials=8, seed=1)
    assert st.delta == 1.0
    assert np.allclose(st.values, st.values[0])
    assert st.values[0] == pytest.approx(1.0, abs=1e-9)


def test_mc_singleton_floor():
    st = monte_carlo_K(power(3), power(2), FrequencySet.interval(1, 256), trials=8, seed=2)
    assert st.mean >= 1.0
    assert all(v >= 1.0 - 1e-12 for v in st.values)


def test_mc_thread_invariance():
    E = FrequencySet.interval(1, 256)
    a = monte_carlo_K(power(3), power(2), E, trials=8, seed=3, threads=1)
    b = monte_carlo_K(power(3), power(2), E, trials=8, seed=3, threads=4)
    assert a.values == b.values and a.sizes == b.sizes


def test_mc_bounded_short_run():
    meds = [
        monte_carlo_K(power(3), power(2), FrequencySet.interval(1, 2**m), trials=8, seed=4).median for m in (8, 10)
    ]
    assert max(meds) <= 1.5 * min(meds)


def test_build_shell_size_concentration():
    sc = quiet_build(power(2), power(4), AllIntegers(), (10, 10), trials_per_shell=4, seed=5)
    (sh,) = sc.shells
    assert 16 <= len(sh.S_r) <= 64


def test_build_structure():
    sc = quiet_build(power(2), power(4), AllIntegers(), (4, 9), trials_per_shell=3, seed=6)
    for sh in sc.shells:
        N = 2**sh.r
        a = np.abs(sh.S_r.elems)
        assert np.all((a >= N) & (a < 2 * N))
    assert len(sc.S) == sum(len(sh.S_r) for sh in sc.shells)
    Ns = [2**k for k in range(5, 11)]
    r = [v for _, v in density_ratio(sc.S, power(4), Ns)]
    assert max(r) <= 4 * min(r)


def test_build_single_trial_is_plain_sampling():
    sc = quiet_build(power(2), power(4), AllIntegers(), (6, 6), trials_per_shell=1, seed=7)
    E = FrequencySet([n for n in AllIntegers().shell(64).elems if abs(n) != 128])
    delta = power(4).inverse(64.0) ** 2 / len(E)
    assert sc.shells[0].S_r == sample_restriction(E, delta, derive_seed(7, 6, 0, 0))


def test_build_warns_on_index_gap():
    with pytest.warns(UserWarning, match="index gap"):
        sc = build_lambda_set(power(3), power(3), AllIntegers(), (3, 4), trials_per_shell=1)
    assert any("index gap" in w for w in sc.warnings)


def test_build_skips_empty_shell():
    E = FrequencySet(range(100, 120))
    with pytest.warns(UserWarning, match="empty"):
        sc = build_lambda_set(power(2), power(4), E, (3, 6), trials_per_shell=1)
    assert [sh.r for sh in sc.shells] == [6]


def test_build_deterministic_and_json():
    a = quiet_build(power(2), power(4), AllIntegers(), (5, 8), trials_per_shell=2, seed=8)
    b = quiet_build(power(2), power(4), AllIntegers(), (5, 8), trials_per_shell=2, seed=8, threads=3)
    assert a.to_json() == b.to_json()
    doc = json.loads(a.to_json())
    assert set(doc) >= {"phi0", "phi1", "r_range", "shells", "seed"}
    back = ShellConstruction.from_json(a.to_json())
    assert back.S == a.S and back.phi1 == a.phi1


def test_random_subset():
    S = random_subset(64, 128, 10, seed=1)
    assert len(S) == 10 and S.elems.min() >= 64 and S.elems.max() <= 128
    with pytest.raises(ParameterError):
        random_subset(0, 3, 5)
