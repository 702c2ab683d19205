"""
Littlewood-Paley square function in an Orlicz space
===================================================

The smooth dyadic blocks ``psi_j`` sum to one; the square function of a
random polynomial has Orlicz norm comparable to that of the polynomial,
and randomizing the blocks with Rademacher signs changes the norm by a
bounded factor.
"""

import numpy as np

from orlicz_lambda.littlewood_paley import khintchine_check, khintchine_constants, psi_j, rademacher_randomized_norm, square_function_ratio
from orlicz_lambda.torus import TrigPolynomial
from orlicz_lambda.young import power, zygmund

n = np.arange(0, 40)
print("blocks carrying n = 0..39:")
for j in range(5):
    print(f"  psi_{j}:", np.flatnonzero(psi_j(j, n) > 0).tolist())

rng = np.random.default_rng(0)
F = 300
f = TrigPolynomial(np.arange(-F, F + 1), rng.standard_normal(2 * F + 1) + 1j * rng.standard_normal(2 * F + 1))
for name, phi in (("u^3", power(3)), ("zygmund(3,1)", zygmund(3, 1))):
    print(f"||Sf|| / ||f|| for {name}: {square_function_ratio(phi, f):.4f}")

res = rademacher_randomized_norm(power(4), f, t_samples=8, seed=1)
print(f"randomized blocks: max/||f||_4 = {res['ratio']:.4f}")

for p in (2, 4, 6):
    lhs, rhs = khintchine_check(np.ones(12), p)
    A, B = khintchine_constants(p)
    print(f"Khintchine p = {p}: {A:.3f} <= {lhs / rhs:.4f} <= {B:.4f} <= sqrt(p) = {np.sqrt(p):.4f}")
