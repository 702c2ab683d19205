"""
Random restrictions and the dyadic-shell construction
=====================================================

Keeping each frequency of ``{1..2^m}`` with probability
``Phi^{-1}(2^m)^2 / 2^m`` gives sets whose ``K_Phi`` stays bounded as
``m`` grows.  Gluing such selections over dyadic shells of ``Z`` yields a
set with the maximal density ``|S cap [-N, N]| ~ Phi^{-1}(N)^2``.
"""

import warnings

import numpy as np

from orlicz_lambda.lambda_sets import density_ratio
from orlicz_lambda.restriction import build_lambda_set, monte_carlo_K
from orlicz_lambda.torus import AllIntegers, FrequencySet
from orlicz_lambda.young import power

for m in (8, 9, 10, 11):
    st = monte_carlo_K(power(3), power(2), FrequencySet.interval(1, 2**m), trials=8, seed=1)
    print(f"m = {m:2d}: delta = {st.delta:.3f}, mean |J| = {np.mean(st.sizes):6.1f}, median K = {st.median:.3f}")

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    sc = build_lambda_set(power(2), power(4), AllIntegers(), (6, 12), trials_per_shell=3, seed=2)
for sh in sc.shells:
    print(f"r = {sh.r:2d}: |S_r| = {len(sh.S_r):3d}, K_(u^4) estimate = {sh.k_est:.3f}")
for N, ratio in density_ratio(sc.S, power(4), [2**k for k in range(7, 14)]):
    print(f"N = {N:5d}: |S cap [-N,N]| / N^(1/2) = {ratio:.3f}")
