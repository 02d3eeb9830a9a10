"""Verblunsky coefficients of a measure after inserting a point mass.

Given the coefficients of dmu and an atom (omega, gamma), the measure

    dnu = (1 - gamma) dmu + gamma delta_omega

has coefficients computable three ways:

* :func:`insert_point_mass` - the closed-form update, one streaming pass;
* :func:`insert_point_mass_simon` - Simon's weighted-sum formula;
* :func:`perturbed_monic_value` - Geronimus' formula for Phi_n(z, dnu),
  from which alpha_{n-1}(dnu) = -conj(Phi_n(0, dnu)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InsufficientDataError, OPUCError, ParameterError
from .szego import UnitCirclePoint, eval_family, verblunsky_sequence

__all__ = [
    "GAMMA_EDGE",
    "PointMassSpec",
    "InsertionResult",
    "SimonAuxiliary",
    "insert_point_mass",
    "insert_point_mass_simon",
    "perturbed_monic_value",
    "decay_table",
]

# gamma in (0, GAMMA_EDGE] or [1 - GAMMA_EDGE, 1) is refused
GAMMA_EDGE = 1e-12

# K_n(zeta) grows exponentially for generic sequences; renormalize past this
_RESCALE_AT = 1e200


@dataclass(frozen=True)
class PointMassSpec:
    """Atom of weight ``gamma`` at angle ``omega`` (radians)."""

    omega: float
    gamma: float

    def __post_init__(self):
        gamma = float(self.gamma)
        if not (GAMMA_EDGE < gamma < 1.0 - GAMMA_EDGE):
            raise ParameterError(f"gamma must lie in (0, 1), got {self.gamma!r}")
        try:
            point = UnitCirclePoint(self.omega)
        except (TypeError, ValueError) as exc:
            raise ParameterError(f"invalid angle {self.omega!r}") from exc
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "omega", point.omega)

    @property
    def zeta(self) -> complex:
        return UnitCirclePoint(self.omega).zeta

    @property
    def odds(self) -> float:
        """(1 - gamma) / gamma, the constant part of the denominator."""
        return (1.0 - self.gamma) / self.gamma


@dataclass(frozen=True)
class SimonAuxiliary:
    """Per-degree q_n = (1-gamma) + gamma K_n(zeta) and the running sum S_n."""

    q: np.ndarray
    running_sum: np.ndarray


@dataclass(frozen=True)
class InsertionResult:
    """Coefficients of dnu with per-degree diagnostics.

    ``kernel[n]`` is K_n(zeta), ``denominator[n]`` is (1-gamma)/gamma + K_n(zeta)
    and ``correction[n]`` is alpha_n(dnu) - alpha_n(dmu).
    """

    alphas: np.ndarray
    kernel: np.ndarray
    denominator: np.ndarray
    correction: np.ndarray
    mass: PointMassSpec
    auxiliary: SimonAuxiliary | None = field(default=None, repr=False)

    def __len__(self):
        return self.alphas.size


def _prepare(alphas, mass: PointMassSpec, n_max: int) -> np.ndarray:
    if not isinstance(mass, PointMassSpec):
        raise ParameterError("mass must be a PointMassSpec")
    alphas = verblunsky_sequence(alphas)
    if n_max < 0:
        raise InsufficientDataError(f"n_max must be non-negative, got {n_max}")
    if n_max + 1 > alphas.size:
        raise InsufficientDataError(
            f"alpha_{n_max}(dnu) needs alpha_0..alpha_{n_max} of dmu "
            f"({n_max + 1} coefficients), only {alphas.size} given"
        )
    return alphas


def _check_output(out: np.ndarray) -> None:
    mod = np.abs(out)
    if not np.all(mod < 1.0):
        j = int(np.flatnonzero(~(mod < 1.0))[0])
        raise OPUCError(f"numerical breakdown: |alpha_{j}(dnu)| = {mod[j]!r}")


def insert_point_mass(alphas, mass: PointMassSpec, n_max: int) -> InsertionResult:
    """alpha_0(dnu) .. alpha_{n_max}(dnu) by the closed-form update.

    alpha_n(dnu) = alpha_n + rho_n conj(phi_{n+1}(zeta)) phi_n^*(zeta)
                              / ((1-gamma)/gamma + K_n(zeta)),

    with rho_n = (1 - |alpha_n|^2)^{1/2}. Orthonormal values at zeta and the
    kernel are carried along in a single O(n_max) pass.
    """
    alphas = _prepare(alphas, mass, n_max)
    zeta = mass.zeta
    odds = mass.odds
    sqrt = math.sqrt

    out = []
    kern = []
    corr = []
    p = ps = 1.0 + 0.0j
    k = 1.0
    scale2 = 1.0  # true K_n = k * scale2
    for a in alphas[: n_max + 1].tolist():
        rho = sqrt((1.0 - a.real * a.real) - a.imag * a.imag)
        zp = zeta * p
        p_next = (zp - a.conjugate() * ps) / rho
        c = rho * p_next.conjugate() * ps / (odds + k)
        out.append(a + c)
        corr.append(c)
        kern.append(k * scale2)
        ps = (ps - a * zp) / rho
        p = p_next
        k += p.real * p.real + p.imag * p.imag
        if k > _RESCALE_AT:
            # the update is homogeneous in (phi, phi^*, sqrt(K), sqrt(odds))
            f = math.sqrt(k)
            p /= f
            ps /= f
            k = 1.0
            odds /= f * f
            scale2 *= f * f

    result = np.array(out, dtype=np.complex128)
    _check_output(result)
    kernel = np.array(kern)
    return InsertionResult(
        alphas=result,
        kernel=kernel,
        denominator=mass.odds + kernel,
        correction=np.array(corr, dtype=np.complex128),
        mass=mass,
    )


def insert_point_mass_simon(alphas, mass: PointMassSpec, n_max: int) -> InsertionResult:
    """alpha_0(dnu) .. alpha_{n_max}(dnu) by Simon's formula.

    alpha_n(dnu) = alpha_n - gamma/q_n conj(phi_{n+1}(zeta)) ||Phi_{n+1}|| S_n

    where q_n = (1-gamma) + gamma K_n(zeta) and
    S_n = sum_{j<=n} alpha_{j-1} phi_j(zeta) / ||Phi_j||, alpha_{-1} = -1.

    Works with monic values and norms, so ``1/||Phi_j||`` grows along the
    sequence; intended as an independent check, not for very long inputs.
    """
    alphas = _prepare(alphas, mass, n_max)
    zeta = mass.zeta
    gamma = mass.gamma
    sqrt = math.sqrt

    out = []
    kern = []
    corr = []
    qs = []
    sums = []
    big_phi = big_phi_star = 1.0 + 0.0j
    norm = 1.0
    k = 1.0
    s = 0.0 + 0.0j
    prev = -1.0 + 0.0j  # alpha_{-1}
    for a in alphas[: n_max + 1].tolist():
        s += prev * big_phi / (norm * norm)
        q = (1.0 - gamma) + gamma * k

        zp = zeta * big_phi
        big_phi, big_phi_star = zp - a.conjugate() * big_phi_star, big_phi_star - a * zp
        norm *= sqrt((1.0 - a.real * a.real) - a.imag * a.imag)
        phi_next = big_phi / norm

        c = -(gamma / q) * phi_next.conjugate() * norm * s
        out.append(a + c)
        corr.append(c)
        kern.append(k)
        qs.append(q)
        sums.append(s)
        k += abs(phi_next) ** 2
        prev = a

    result = np.array(out, dtype=np.complex128)
    _check_output(result)
    kernel = np.array(kern)
    return InsertionResult(
        alphas=result,
        kernel=kernel,
        denominator=mass.odds + kernel,
        correction=np.array(corr, dtype=np.complex128),
        mass=mass,
        auxiliary=SimonAuxiliary(np.array(qs), np.array(sums, dtype=np.complex128)),
    )


def perturbed_monic_value(alphas, mass: PointMassSpec, n: int, z: complex) -> complex:
    """Phi_n(z, dnu) from Geronimus' formula.

    Phi_n(z, dnu) = Phi_n(z) - Phi_n(zeta) K_{n-1}(zeta, z)
                               / ((1-gamma)/gamma + K_{n-1}(zeta, zeta))

    with K_{n-1}(zeta, z) = sum_{j<n} conj(phi_j(zeta)) phi_j(z), the
    orientation that is a polynomial in z.
    """
    if not isinstance(mass, PointMassSpec):
        raise ParameterError("mass must be a PointMassSpec")
    alphas = verblunsky_sequence(alphas)
    if n < 0 or n > alphas.size:
        raise InsufficientDataError(f"degree {n} needs {n} coefficients, {alphas.size} given")
    if n == 0:
        return 1.0 + 0.0j
    at_z = eval_family(alphas, z, n)
    at_zeta = eval_family(alphas, mass.zeta, n)
    cross = sum(s.orthonormal.conjugate() * t.orthonormal for s, t in zip(at_zeta[:n], at_z[:n]))
    diag = at_zeta[n - 1].kernel_diag
    return complex(at_z[n].phi - at_zeta[n].phi * cross / (mass.odds + diag))


def decay_table(alphas, mass: PointMassSpec, n_max: int) -> list[tuple[int, float]]:
    """Rows (n, |alpha_n(dnu)|) for n = 0..n_max."""
    res = insert_point_mass(alphas, mass, n_max)
    return [(n, float(m)) for n, m in enumerate(np.abs(res.alphas))]
