"""Point evaluation of OPUC families by the Szego recursion.

Everything here works from a Verblunsky sequence alone. Polynomials are
never expanded into coefficient vectors; a :class:`SzegoState` carries the
values of the monic polynomial, its reversal, the norm and the diagonal
Christoffel-Darboux kernel at one evaluation point, and :func:`advance`
moves it up one degree.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDataError, InvalidCoefficientError

__all__ = [
    "verblunsky_sequence",
    "UnitCirclePoint",
    "SzegoState",
    "KernelPair",
    "initial_state",
    "advance",
    "eval_family",
    "orthonormal_values",
    "norms",
    "cd_kernel",
]

TWO_PI = 2.0 * math.pi

# |1 - conj(x) y| below this selects the summation path in cd_kernel
CD_SINGULAR_TOL = 1e-12


def verblunsky_sequence(coeffs) -> np.ndarray:
    """Validate ``coeffs`` and return them as a 1-d complex128 array.

    Raises InvalidCoefficientError if any entry is non-finite or has
    modulus >= 1. An empty sequence is allowed.
    """
    arr = np.asarray(coeffs, dtype=np.complex128).reshape(-1)
    if arr.size:
        if not np.all(np.isfinite(arr)):
            raise InvalidCoefficientError("Verblunsky coefficients must be finite")
        mod = np.abs(arr)
        bad = np.flatnonzero(mod >= 1.0)
        if bad.size:
            j = int(bad[0])
            raise InvalidCoefficientError(
                f"|alpha_{j}| = {mod[j]!r} >= 1; coefficients must lie in the open unit disk"
            )
    return arr


def _check_alpha(alpha: complex) -> complex:
    alpha = complex(alpha)
    if not (cmath.isfinite(alpha) and abs(alpha) < 1.0):
        raise InvalidCoefficientError(f"|alpha| = {abs(alpha)!r} is not < 1")
    return alpha


@dataclass(frozen=True)
class UnitCirclePoint:
    """A point e^{i omega} on the unit circle, stored by its angle."""

    omega: float

    def __post_init__(self):
        omega = float(self.omega)
        if not math.isfinite(omega):
            raise ValueError("angle must be finite")
        omega = math.fmod(omega, TWO_PI)
        if omega < 0.0:
            omega += TWO_PI
        if omega >= TWO_PI:
            omega = 0.0
        object.__setattr__(self, "omega", omega)

    @property
    def zeta(self) -> complex:
        return cmath.exp(1j * self.omega)


@dataclass(frozen=True)
class SzegoState:
    """Values at ``z`` of Phi_n, Phi_n^*, ||Phi_n|| and K_n(z) at degree ``n``.

    ``kernel_diag`` is sum_{j<=n} |phi_j(z)|^2, which is K_n(z, z) for any
    z (it equals K_n(zeta) on the circle).
    """

    degree: int
    phi: complex
    phi_star: complex
    norm: float
    kernel_diag: float
    z: complex

    @property
    def orthonormal(self) -> complex:
        """phi_n(z) = Phi_n(z) / ||Phi_n||."""
        return self.phi / self.norm

    @property
    def orthonormal_star(self) -> complex:
        """phi_n^*(z) = Phi_n^*(z) / ||Phi_n||."""
        return self.phi_star / self.norm


def initial_state(z: complex) -> SzegoState:
    """Degree-0 state: Phi_0 = Phi_0^* = 1, ||Phi_0|| = 1, K_0 = 1."""
    return SzegoState(0, 1.0 + 0.0j, 1.0 + 0.0j, 1.0, 1.0, complex(z))


def advance(state: SzegoState, alpha_n: complex) -> SzegoState:
    """One step of the Szego recursion and its reversed companion.

    Phi_{n+1}(z)   = z Phi_n(z) - conj(alpha_n) Phi_n^*(z)
    Phi_{n+1}^*(z) = Phi_n^*(z) - alpha_n z Phi_n(z)
    """
    a = _check_alpha(alpha_n)
    z = state.z
    zphi = z * state.phi
    phi = zphi - a.conjugate() * state.phi_star
    phi_star = state.phi_star - a * zphi
    norm = state.norm * math.sqrt((1.0 - a.real * a.real) - a.imag * a.imag)
    kernel = state.kernel_diag + abs(phi / norm) ** 2
    return SzegoState(state.degree + 1, phi, phi_star, norm, kernel, z)


def _require(alphas: np.ndarray, n_max: int) -> None:
    if n_max < 0:
        raise InsufficientDataError(f"degree must be non-negative, got {n_max}")
    if n_max > alphas.size:
        raise InsufficientDataError(
            f"degree {n_max} needs {n_max} coefficients, only {alphas.size} given"
        )


def eval_family(alphas, z: complex, n_max: int) -> list[SzegoState]:
    """Snapshots of the Szego state at ``z`` for degrees 0..n_max."""
    alphas = verblunsky_sequence(alphas)
    _require(alphas, n_max)
    state = initial_state(z)
    out = [state]
    for a in alphas[:n_max]:
        state = advance(state, a)
        out.append(state)
    return out


def orthonormal_values(alphas, z: complex, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Arrays (phi_n(z), phi_n^*(z)) for n = 0..n_max.

    Uses the normalized recursion phi_{n+1} = (z phi_n - conj(a) phi_n^*)/rho_n
    so that long sequences with small norms do not underflow.
    """
    alphas = verblunsky_sequence(alphas)
    _require(alphas, n_max)
    z = complex(z)
    phi = np.empty(n_max + 1, dtype=np.complex128)
    phis = np.empty(n_max + 1, dtype=np.complex128)
    p, ps = 1.0 + 0.0j, 1.0 + 0.0j
    phi[0] = p
    phis[0] = ps
    for n, a in enumerate(alphas[:n_max].tolist()):
        rho = math.sqrt((1.0 - a.real * a.real) - a.imag * a.imag)
        zp = z * p
        p, ps = (zp - a.conjugate() * ps) / rho, (ps - a * zp) / rho
        phi[n + 1] = p
        phis[n + 1] = ps
    return phi, phis


def norms(alphas, n_max: int) -> np.ndarray:
    """||Phi_n|| for n = 0..n_max as a running product of (1 - |alpha_j|^2)^{1/2}."""
    alphas = verblunsky_sequence(alphas)
    _require(alphas, n_max)
    out = np.ones(n_max + 1)
    if n_max:
        a = alphas[:n_max]
        out[1:] = np.cumprod(np.sqrt((1.0 - a.real**2) - a.imag**2))
    return out


@dataclass(frozen=True)
class KernelPair:
    """K_n(x, y) = sum_{j<=n} conj(phi_j(x)) phi_j(y).

    ``value`` is the direct sum. ``closed_form`` is the two-term
    Christoffel-Darboux expression, or None when conj(x) y is (numerically) 1.
    """

    x: complex
    y: complex
    degree: int
    value: complex
    closed_form: complex | None


def cd_kernel(alphas, x: complex, y: complex, n: int) -> KernelPair:
    """Evaluate the Christoffel-Darboux kernel K_n(x, y).

    The direct sum is always returned as ``value``. When 1 - conj(x) y is
    away from zero the closed form

        (conj(phi_n^*(x)) phi_n^*(y) - conj(x) y conj(phi_n(x)) phi_n(y)) / (1 - conj(x) y)

    is also computed.
    """
    x, y = complex(x), complex(y)
    px, psx = orthonormal_values(alphas, x, n)
    if x == y:
        py, psy = px, psx
        value = complex(np.sum(px.real**2 + px.imag**2))
    else:
        py, psy = orthonormal_values(alphas, y, n)
        value = complex(np.sum(np.conj(px) * py))
    xy = x.conjugate() * y
    closed = None
    if abs(1.0 - xy) > CD_SINGULAR_TOL:
        closed = complex(
            (psx[n].conjugate() * psy[n] - xy * px[n].conjugate() * py[n]) / (1.0 - xy)
        )
    return KernelPair(x, y, n, value, closed)
