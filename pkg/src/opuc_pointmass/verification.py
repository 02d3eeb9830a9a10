"""Invariant and cross-path suites, run by ``opuc-pointmass verify``.

Each suite draws its own random cases from a seeded generator and returns
a :class:`CheckResult`. They are deliberately plain loops: the point is to
compare independent computations, not to be fast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .insertion import (
    PointMassSpec,
    insert_point_mass,
    insert_point_mass_simon,
    perturbed_monic_value,
)
from .measures import MeasureSpec, mix_in_atom, moments, moments_from_alphas
from .oracle import (
    RankOneStructure,
    alphas_from_moments,
    block_det,
    gram_factors,
    gram_matrix,
    monic_value_via_determinant,
    moments_of_nu,
    rank_one_inverse,
    toeplitz_moment_matrix,
    verblunsky_via_determinant,
)
from .szego import cd_kernel, eval_family, norms

__all__ = ["CheckResult", "SUITES", "run_suites", "random_alphas", "random_mass"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_error: float
    tolerance: float
    cases: int

    def __post_init__(self):
        # numpy scalars would leak into CSV/JSON as np.float64(...)
        object.__setattr__(self, "max_error", float(self.max_error))
        object.__setattr__(self, "tolerance", float(self.tolerance))
        object.__setattr__(self, "cases", int(self.cases))

    @property
    def passed(self) -> bool:
        return bool(self.max_error <= self.tolerance)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: max_error={self.max_error:.3e} tol={self.tolerance:.0e} cases={self.cases}"


def random_alphas(rng: np.random.Generator, size: int, radius: float) -> np.ndarray:
    return radius * np.sqrt(rng.random(size)) * np.exp(2j * np.pi * rng.random(size))


def random_mass(rng: np.random.Generator, lo: float = 0.01, hi: float = 0.99) -> PointMassSpec:
    return PointMassSpec(rng.uniform(0.0, 2 * np.pi), rng.uniform(lo, hi))


def random_atomic(rng: np.random.Generator, max_atoms: int = 10) -> MeasureSpec:
    # jittered grid keeps atoms separated, so the Toeplitz systems stay tame
    m = int(rng.integers(2, max_atoms + 1))
    theta = 2 * np.pi * (np.arange(m) + rng.uniform(0.15, 0.85, m)) / m
    w = rng.uniform(0.2, 1.0, m)
    return MeasureSpec.normalized(zip(theta, w))


def _rel(a, b) -> float:
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))


def norm_product(rng, cases=20, n=200) -> CheckResult:
    err = 0.0
    for _ in range(cases):
        a = random_alphas(rng, n, 0.9)
        fam = eval_family(a, rng.normal() + 1j * rng.normal(), n)
        direct = np.sqrt(np.cumprod(np.concatenate(([1.0], 1.0 - np.abs(a) ** 2))))
        err = max(err, _rel([s.norm for s in fam], direct))
    return CheckResult("norm product", err, 1e-12, cases)


def circle_modulus(rng, cases=20, n=200) -> CheckResult:
    err = 0.0
    for _ in range(cases):
        a = random_alphas(rng, n, 0.9)
        fam = eval_family(a, np.exp(2j * np.pi * rng.random()), n)
        err = max(err, _rel([abs(s.phi) for s in fam], [abs(s.phi_star) for s in fam]))
    return CheckResult("circle modulus |Phi_n| = |Phi_n^*|", err, 1e-12, cases)


def reversed_at_zero(rng, cases=20, n=200) -> CheckResult:
    err = 0.0
    for _ in range(cases):
        a = random_alphas(rng, n, 0.9)
        fam = eval_family(a, 0.0, n)
        err = max(err, _rel([s.orthonormal_star for s in fam], 1.0 / norms(a, n)))
    return CheckResult("phi_n^*(0) = 1/||Phi_n||", err, 1e-12, cases)


def cd_agreement(rng, cases=100, n=50) -> CheckResult:
    err = 0.0
    for _ in range(cases):
        a = random_alphas(rng, n, 0.9)
        x, y = (0.95 * math.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random()) for _ in "xy")
        k = cd_kernel(a, x, y, int(rng.integers(0, n + 1)))
        err = max(err, abs(k.value - k.closed_form) / abs(k.value))
    return CheckResult("Christoffel-Darboux closed form", err, 1e-10, cases)


def lebesgue_closed_form(rng, cases=10, n=100) -> CheckResult:
    err = 0.0
    for _ in range(cases):
        mass = random_mass(rng)
        got = insert_point_mass(np.zeros(n + 1), mass, n).alphas
        k = np.arange(n + 1)
        want = np.conj(mass.zeta) ** (k + 1) / (mass.odds + k + 1)
        err = max(err, float(np.max(np.abs(got - want))))
    return CheckResult("Lebesgue closed form", err, 1e-12, cases)


def rotation_covariance(rng, cases=10, n=100) -> CheckResult:
    err = 0.0
    for _ in range(cases):
        mass = random_mass(rng)
        base = insert_point_mass(np.zeros(n + 1), PointMassSpec(0.0, mass.gamma), n).alphas
        got = insert_point_mass(np.zeros(n + 1), mass, n).alphas
        rot = np.exp(-1j * (np.arange(n + 1) + 1) * mass.omega) * base
        err = max(err, float(np.max(np.abs(got - rot))))
    return CheckResult("rotation covariance (Lebesgue)", err, 1e-12, cases)


def output_nontrivial(rng, cases=100, n=50) -> CheckResult:
    worst = 0.0
    for _ in range(cases):
        a = random_alphas(rng, n + 1, 0.95)
        worst = max(worst, float(np.max(np.abs(insert_point_mass(a, random_mass(rng), n).alphas))))
    # pass iff every modulus is strictly below 1
    return CheckResult("|alpha_n(dnu)| < 1", worst, np.nextafter(1.0, 0.0), cases)


def path_equivalence(rng, cases=100, length=51, n=49) -> CheckResult:
    err = 0.0
    for _ in range(cases):
        a = random_alphas(rng, length, 0.8)
        mass = random_mass(rng)
        fast = insert_point_mass(a, mass, n).alphas
        slow = insert_point_mass_simon(a, mass, n).alphas
        err = max(err, float(np.max(np.abs(fast - slow))))
    return CheckResult("closed form vs Simon formula", err, 1e-10, cases)


def geronimus_consistency(rng, cases=20, n=20) -> CheckResult:
    err = 0.0
    for _ in range(cases):
        a = random_alphas(rng, n + 1, 0.8)
        mass = random_mass(rng)
        nu = insert_point_mass(a, mass, n - 1).alphas
        z = 0.9 * math.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
        fam = eval_family(nu, z, n)
        for deg in range(n + 1):
            err = max(err, abs(fam[deg].phi - perturbed_monic_value(a, mass, deg, z)))
    return CheckResult("Geronimus polynomial vs recursion", err, 1e-9, cases)


def determinant_oracle(rng, cases=25, n=15) -> CheckResult:
    err = 0.0
    for _ in range(cases):
        a = random_alphas(rng, n, 0.8)
        mass = random_mass(rng)
        fast = insert_point_mass(a, mass, n - 1).alphas
        det = np.array([verblunsky_via_determinant(a, mass, k) for k in range(1, n + 1)])
        err = max(err, float(np.max(np.abs(fast - det))))
    return CheckResult("bordered determinant oracle", err, 1e-8, cases)


def block_det_identity(rng, cases=200) -> CheckResult:
    err = 0.0
    for i in range(cases):
        n = 1 + i % 8
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)) + 3 * n * np.eye(n)
        v = rng.normal(size=n) + 1j * rng.normal(size=n)
        w = rng.normal(size=n) + 1j * rng.normal(size=n)
        beta = complex(rng.normal(), rng.normal())
        c = np.block([[a, v[:, None]], [w[None, :], np.array([[beta]])]])
        direct = np.linalg.det(c)
        err = max(err, abs(block_det(a, v, w, beta) - direct) / abs(direct))
    return CheckResult("block determinant identity", err, 1e-9, cases)


def rank_one_inverse_check(rng, cases=12) -> CheckResult:
    # residual grows like cond(M) * eps; this domain keeps cond(M) moderate
    err = 0.0
    for n in range(1, cases + 1):
        a = random_alphas(rng, n, 0.5)
        mass = random_mass(rng, 0.1, 0.9)
        d, structure = gram_factors(a, mass, n)
        m = structure.matrix()
        minv = rank_one_inverse(structure)
        err = max(err, float(np.max(np.abs(m @ minv - np.eye(n)))))
    return CheckResult("M M^{-1} = I", err, 1e-12, cases)


def gram_inverse_check(rng, cases=12) -> CheckResult:
    err = 0.0
    for n in range(1, cases + 1):
        a = random_alphas(rng, n, 0.5)
        mass = random_mass(rng, 0.1, 0.9)
        d, structure = gram_factors(a, mass, n)
        ainv = rank_one_inverse(structure) / np.outer(d, d)
        solved = np.linalg.solve(gram_matrix(a, mass, n), np.eye(n))
        err = max(err, float(np.max(np.abs(ainv - solved))))
    return CheckResult("A^{-1} = D^{-1} M^{-1} D^{-1}", err, 1e-10, cases)


def gram_factorization(rng, cases=12) -> CheckResult:
    err = 0.0
    for n in range(1, cases + 1):
        a = random_alphas(rng, n, 0.8)
        mass = random_mass(rng)
        d, structure = gram_factors(a, mass, n)
        err = max(err, float(np.max(np.abs(np.outer(d, d) * structure.matrix() - gram_matrix(a, mass, n)))))
    return CheckResult("A = D M D", err, 1e-12, cases)


def moment_loop(rng, cases=10) -> CheckResult:
    err = 0.0
    for _ in range(cases):
        mu = random_atomic(rng)
        mass = random_mass(rng)
        size = len(mu.atoms) + 1
        base = alphas_from_moments(moments(mu, size), size)
        want = alphas_from_moments(moments_of_nu(moments(mu, size), mass), size).alphas
        count = min(base.alphas.size, want.size)
        if count <= 0:
            continue
        got = insert_point_mass(base.alphas, mass, count - 1).alphas
        err = max(err, float(np.max(np.abs(got - want[:count]))))
    return CheckResult("moment oracle loop", err, 1e-7, cases)


def orthogonality_certificate(rng, cases=10, n=8) -> CheckResult:
    err = 0.0
    roots = np.exp(2j * np.pi * np.arange(n + 1) / (n + 1))
    for _ in range(cases):
        a = random_alphas(rng, n, 0.7)
        mass = random_mass(rng)
        values = np.array([monic_value_via_determinant(a, mass, n, z) for z in roots])
        coeffs = np.fft.fft(values) / (n + 1)  # ascending powers
        t = toeplitz_moment_matrix(moments_of_nu(moments_from_alphas(a, n), mass), n + 1)
        err = max(err, float(np.max(np.abs(t[:n] @ coeffs))))
    return CheckResult("<z^j, Phi_n(dnu)>_dnu = 0", err, 1e-8, cases)


def mix_moments(rng, cases=10) -> CheckResult:
    err = 0.0
    for _ in range(cases):
        mu = MeasureSpec.normalized(
            [(t, w) for t, w in zip(rng.uniform(0, 2 * np.pi, 3), rng.uniform(0.1, 1, 3))],
            rng.uniform(0.1, 1.0, 64),
        )
        mass = random_mass(rng)
        lhs = moments(mix_in_atom(mu, mass), 16)
        rhs = moments_of_nu(moments(mu, 16), mass)
        err = max(err, float(np.max(np.abs(lhs - rhs))))
    return CheckResult("mix_in_atom vs moments_of_nu", err, 1e-13, cases)


SUITES: dict[str, Callable[[np.random.Generator], CheckResult]] = {
    "norm-product": norm_product,
    "circle-modulus": circle_modulus,
    "reversed-at-zero": reversed_at_zero,
    "cd-agreement": cd_agreement,
    "lebesgue": lebesgue_closed_form,
    "rotation": rotation_covariance,
    "nontrivial": output_nontrivial,
    "paths": path_equivalence,
    "geronimus": geronimus_consistency,
    "determinant": determinant_oracle,
    "block-det": block_det_identity,
    "rank-one": rank_one_inverse_check,
    "gram-inverse": gram_inverse_check,
    "gram-factorization": gram_factorization,
    "moment-loop": moment_loop,
    "orthogonality": orthogonality_certificate,
    "mix-moments": mix_moments,
}


def run_suites(names=None, seed: int = 0) -> list[CheckResult]:
    """Run the named suites (all by default), each with its own seeded stream."""
    names = list(SUITES) if names is None else list(names)
    seeds = np.random.SeedSequence(seed).spawn(len(names))
    return [SUITES[name](np.random.default_rng(s)) for name, s in zip(names, seeds)]
