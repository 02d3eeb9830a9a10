"""Slow oracles that do not share the fast code path.

The determinant oracle builds the Gram matrix of the old monic polynomials
under the new inner product and reads each coefficient off a bordered
determinant. The moment oracle goes further back: it computes trigonometric
moments of the new measure and runs Gram-Schmidt on the Toeplitz matrix.
"""

import numpy as np

from opuc_pointmass import (
    PointMassSpec,
    alphas_from_moments,
    gram_factors,
    gram_matrix,
    insert_point_mass,
    moments_from_alphas,
    moments_of_nu,
    rank_one_inverse,
    verblunsky_via_determinant,
)

rng = np.random.default_rng(11)
alphas = 0.6 * np.sqrt(rng.random(12)) * np.exp(2j * np.pi * rng.random(12))
mass = PointMassSpec(omega=4.0, gamma=0.2)
fast = insert_point_mass(alphas, mass, 11).alphas

det = np.array([verblunsky_via_determinant(alphas, mass, n) for n in range(1, 13)])
print("determinant oracle, max diff:", np.abs(det - fast).max())

c = moments_from_alphas(alphas, 12)
via_moments = alphas_from_moments(moments_of_nu(c, mass), 12).alphas
print("moment oracle, max diff:     ", np.abs(via_moments - fast).max())

# the Gram matrix is D M D with M a rank-one perturbation of a multiple of I
d, m = gram_factors(alphas, mass, 8)
a_inv = rank_one_inverse(m) / np.outer(d, d)
print("explicit inverse vs solve:   ", np.abs(a_inv - np.linalg.inv(gram_matrix(alphas, mass, 8))).max())
print("eigenvalues of M:", np.round(np.linalg.eigvalsh(m.matrix()), 6))
