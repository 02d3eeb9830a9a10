"""Three ways to get the same coefficients.

The fast update costs O(1) per degree. The running-sum formula is also
linear but carries monic values and norms. The Geronimus formula gives the
new monic polynomial directly; feeding its constant term back through
alpha_{n-1} = -conj(Phi_n(0)) recovers the coefficients a third way.
"""

import numpy as np

from opuc_pointmass import PointMassSpec, insert_point_mass, insert_point_mass_simon, perturbed_monic_value

rng = np.random.default_rng(7)
alphas = 0.8 * np.sqrt(rng.random(31)) * np.exp(2j * np.pi * rng.random(31))
mass = PointMassSpec(omega=2.1, gamma=0.45)

fast = insert_point_mass(alphas, mass, 29).alphas
simon = insert_point_mass_simon(alphas, mass, 29).alphas
geronimus = np.array([-np.conj(perturbed_monic_value(alphas, mass, n, 0.0)) for n in range(1, 31)])

print("fast vs running sum :", np.abs(fast - simon).max())
print("fast vs Geronimus   :", np.abs(fast - geronimus).max())
print()
print("first five, before and after:")
for n in range(5):
    print(f"  {n}: {alphas[n]:.6f}  ->  {fast[n]:.6f}")
