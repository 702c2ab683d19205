"""
Young functions, their conjugates and indices
=============================================

A Zygmund function ``u^3 log^3 u`` behaves like ``u^3`` up to a log factor:
its Matuszewska-Orlicz indices are both 3, yet its inverse separates from
the pure power one at a rate given by the Lambert W function.
"""

import numpy as np

from orlicz_lambda.young import complementary, inverse_ratio_blowup, matuszewska_indices, power, zygmund

phi = zygmund(3, 1)
print("Phi(e) =", phi(np.e), " e^3 =", np.e**3)

# the conjugate is tabulated from Legendre maximizers
psi = complementary(phi)
u = np.logspace(-2, 8, 6)
sandwich = np.array([phi.inverse(x) * psi.inverse(x) for x in u]) / u
print("Phi^-1 Psi^-1 / u on [1e-2, 1e8]:", np.round(sandwich, 4))

est = matuszewska_indices(phi)
print(f"indices: alpha = {est.alpha_inf:.4f}, beta = {est.beta_inf:.4f} (raw window p = {est.raw_p:.3f})")

# inverse gap between u^3 and the Zygmund function grows like W(u^{1/3})
for u_max in (1e3, 1e6, 1e9, 1e12):
    print(f"u_max = {u_max:.0e}: max inverse ratio = {inverse_ratio_blowup(zygmund(3, 0), phi, u_max):.3f}")

# u^3 against u^4 grows like u^{1/12}
print("u^3 vs u^4 at 1e12:", inverse_ratio_blowup(power(3), power(4), 1e12))
