"""Starting from a measure instead of a coefficient sequence.

A measure made of finitely many atoms has finitely many coefficients inside
the disk, followed by one of modulus one. Mixing in another atom adds one
more degree of freedom; the fast update predicts the new coefficients from
the old ones, and the moment oracle confirms it.
"""

import math

import numpy as np

from opuc_pointmass import MeasureSpec, PointMassSpec, alphas_from_moments, insert_point_mass, mix_in_atom, moments

mu = MeasureSpec.normalized([(0.4, 1.0), (2.2, 2.0), (4.5, 1.0)])
mass = PointMassSpec(omega=3.0, gamma=0.25)
nu = mix_in_atom(mu, mass)
print("atoms of nu:", [(round(t, 4), round(w, 4)) for t, w in nu.atoms])

before = alphas_from_moments(moments(mu, 5), 5)
after = alphas_from_moments(moments(nu, 5), 5)
print("mu:", len(before.alphas), "coefficients, terminator", np.round(before.terminator, 6))
print("nu:", len(after.alphas), "coefficients, terminator", np.round(after.terminator, 6))

predicted = insert_point_mass(before.alphas, mass, len(before.alphas) - 1).alphas
print("predicted vs moments:", np.abs(predicted - after.alphas[: predicted.size]).max())

# a smooth weight sampled on a grid: (1 + cos theta) / (2 pi) has c_1 = 1/2
grid = 2 * math.pi * np.arange(64) / 64
smooth = MeasureSpec((), (1 + np.cos(grid)) / (2 * math.pi))
print("moments of 1 + cos:", np.round(moments(smooth, 4).real, 12))
print("its coefficients:  ", np.round(alphas_from_moments(moments(smooth, 8), 8).alphas.real, 6))
