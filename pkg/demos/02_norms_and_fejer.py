"""
Luxemburg norms and the Fejer kernel bound
==========================================

For power functions the Luxemburg norm is the L^p norm; the two-frequency
polynomial has an exact L^4 norm.  The Fejer kernel satisfies
``||K_N||_Psi <= 2 Phi^{-1}(N)`` with a wide margin.
"""

import numpy as np

from orlicz_lambda.lambda_sets import fejer_threshold, k_phi_lower
from orlicz_lambda.luxemburg import luxemburg_norm
from orlicz_lambda.torus import FrequencySet, TrigPolynomial, greedy_bh_set, lp_norm_even_exact
from orlicz_lambda.young import power, zygmund

f = TrigPolynomial([3, 7], [2**-0.5, 2**-0.5])
print("||f||_4 =", luxemburg_norm(power(4), f).value, " exact:", lp_norm_even_exact(f, 4), " (3/2)^(1/4):", 1.5**0.25)
print("||f||_Zygmund =", luxemburg_norm(zygmund(3, 1), f).value)

N0, rows = fejer_threshold(power(3), [64, 256, 1024, 4096])
for N, lhs, rhs in rows:
    print(f"N = {N:5d}: ||K_N||_Psi = {lhs:7.3f} <= 2 Phi^-1(N) = {rhs:7.3f}")

# K_Phi on a Sidon set stays below the even-moment bound 2^{1/4}
S = greedy_bh_set(2, 12)
print("Sidon set", S.elems.tolist())
print("K_{u^4} lower bound:", k_phi_lower(power(4), S, restarts=4).lower_bound, "<= 2^(1/4) =", 2**0.25)
print("K_{u^2} on an interval:", k_phi_lower(power(2), FrequencySet.interval(1, 50)).lower_bound)
