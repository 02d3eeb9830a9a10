"""Adding a point mass to normalized arc length.

With no coefficients at all (every alpha is zero) the measure is uniform.
Dropping weight gamma at angle omega produces coefficients that decay like
1/n and rotate with the atom. This script prints the first few and compares
them with the closed form conj(zeta)^(n+1) / ((1-gamma)/gamma + n + 1).
"""

import numpy as np

from opuc_pointmass import PointMassSpec, decay_table, insert_point_mass

mass = PointMassSpec(omega=0.7, gamma=0.3)
n_max = 12
result = insert_point_mass(np.zeros(n_max + 1), mass, n_max)

k = np.arange(n_max + 1)
closed = np.conj(mass.zeta) ** (k + 1) / (mass.odds + k + 1)

print(f"atom at omega={mass.omega}, gamma={mass.gamma}")
print(f"{'n':>3} {'alpha_n':>28} {'|alpha_n|':>10} {'n*|alpha_n|':>12} {'K_n':>5}")
for n, a, kern in zip(k, result.alphas, result.kernel):
    print(f"{n:>3} {a.real:>13.9f}{a.imag:+13.9f}j {abs(a):>10.6f} {n * abs(a):>12.6f} {kern:>5.0f}")
print("max deviation from closed form:", np.abs(result.alphas - closed).max())

# n * |alpha_n| tends to 1, which is the 1/n decay in one number
tail = decay_table(np.zeros(5001), mass, 5000)
print("n*|alpha_n| at n=5000:", 5000 * tail[-1][1])
