"""Slow, independent computations used to check the fast paths.

Two families of oracle live here:

* determinant oracles built from the Gram matrix of the dmu-monic
  polynomials in the dnu inner product (bordered determinants, the block
  determinant identity, and the rank-one structure of that Gram matrix);
* a moment oracle that orthogonalizes monomials directly against the
  Toeplitz matrix of trigonometric moments.

None of these share code paths with :mod:`opuc_pointmass.insertion`
beyond point evaluation by the Szego recursion.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import InsufficientDataError, OracleDegeneracyError, ParameterError
from .insertion import PointMassSpec
from .szego import eval_family, verblunsky_sequence

__all__ = [
    "ORACLE_MAX_DEGREE",
    "PIVOT_RATIO_LIMIT",
    "TERMINATOR_TOL",
    "RankOneStructure",
    "MomentAlphas",
    "lu_det",
    "gram_matrix",
    "gram_factors",
    "block_det",
    "rank_one_inverse",
    "verblunsky_via_determinant",
    "monic_value_via_determinant",
    "moment_sequence",
    "toeplitz_moment_matrix",
    "alphas_from_moments",
    "moments_of_nu",
]

ORACLE_MAX_DEGREE = 20
PIVOT_RATIO_LIMIT = 1e12
TERMINATOR_TOL = 1e-8


def _lu(a: np.ndarray):
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ParameterError(f"expected a square matrix, got shape {a.shape}")
    with warnings.catch_warnings():
        # exact singularity is reported below as OracleDegeneracyError
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=True)
    diag = np.abs(np.diag(lu))
    if diag.size and (diag.min() == 0.0 or diag.max() / diag.min() > PIVOT_RATIO_LIMIT):
        raise OracleDegeneracyError(
            f"matrix too ill-conditioned for the oracle (pivot ratio "
            f"{diag.max() / diag.min() if diag.min() else np.inf:.3g})"
        )
    return lu, piv


def lu_det(a) -> complex:
    """Determinant by partial-pivoted LU; refuses ill-conditioned input."""
    a = np.asarray(a, dtype=np.complex128)
    if a.size == 0:
        return 1.0 + 0.0j
    lu, piv = _lu(a)
    sign = (-1) ** int(np.sum(piv != np.arange(piv.size)))
    return complex(sign * np.prod(np.diag(lu)))


def _check_degree(alphas: np.ndarray, n: int, lo: int = 0) -> None:
    if n < lo:
        raise InsufficientDataError(f"degree must be >= {lo}, got {n}")
    if n > alphas.size:
        raise InsufficientDataError(f"degree {n} needs {n} coefficients, {alphas.size} given")
    if n > ORACLE_MAX_DEGREE:
        raise ParameterError(f"determinant oracle is capped at degree {ORACLE_MAX_DEGREE}")


def _monic_at(alphas: np.ndarray, z: complex, n: int) -> tuple[np.ndarray, np.ndarray]:
    fam = eval_family(alphas, z, n)
    return (
        np.array([s.phi for s in fam], dtype=np.complex128),
        np.array([s.norm for s in fam]),
    )


def _beta(alphas: np.ndarray, mass: PointMassSpec, n: int) -> np.ndarray:
    """beta[j, k] = <Phi_j, Phi_k>_{dnu} for j, k = 0..n."""
    phi, nrm = _monic_at(alphas, mass.zeta, n)
    g = mass.gamma
    return (1.0 - g) * np.diag(nrm**2).astype(np.complex128) + g * np.outer(phi.conj(), phi)


def gram_matrix(alphas, mass: PointMassSpec, n: int) -> np.ndarray:
    """The n x n matrix A with A[j, k] = beta[k, j] = <Phi_k, Phi_j>_{dnu}.

    Entrywise A[j, k] = (1-gamma) ||Phi_k||^2 delta_{jk}
                        + gamma conj(Phi_k(zeta)) Phi_j(zeta).
    Stored in this (transposed) orientation on purpose; it is Hermitian so
    a symmetry check alone would not catch a transposition.
    """
    alphas = verblunsky_sequence(alphas)
    _check_degree(alphas, n)
    if n == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    return _beta(alphas, mass, n - 1).T.copy()


@dataclass(frozen=True)
class RankOneStructure:
    """M = (1-gamma) I + gamma K P_phi, with K = sum |phi_j|^2 and P_phi the
    orthogonal projection onto the vector ``phi``."""

    gamma: float
    phi: np.ndarray

    def __post_init__(self):
        if not (0.0 < self.gamma < 1.0):
            raise ParameterError(f"gamma must lie in (0, 1), got {self.gamma!r}")
        phi = np.asarray(self.phi, dtype=np.complex128).reshape(-1)
        if not np.any(phi):
            raise ParameterError("phi must not vanish identically")
        object.__setattr__(self, "phi", phi)

    @property
    def kernel_diag(self) -> float:
        return float(np.vdot(self.phi, self.phi).real)

    @property
    def projection(self) -> np.ndarray:
        return np.outer(self.phi, self.phi.conj()) / self.kernel_diag

    def matrix(self) -> np.ndarray:
        g = self.gamma
        n = self.phi.size
        return (1.0 - g) * np.eye(n) + g * self.kernel_diag * self.projection


def rank_one_inverse(structure: RankOneStructure) -> np.ndarray:
    """M^{-1} = (1-gamma)^{-1} (I - P) + ((1-gamma) + gamma K)^{-1} P."""
    g = structure.gamma
    p = structure.projection
    eye = np.eye(structure.phi.size)
    return (eye - p) / (1.0 - g) + p / ((1.0 - g) + g * structure.kernel_diag)


def gram_factors(alphas, mass: PointMassSpec, n: int) -> tuple[np.ndarray, RankOneStructure]:
    """Norms D = diag(||Phi_j||) and the rank-one structure M with A = D M D."""
    alphas = verblunsky_sequence(alphas)
    _check_degree(alphas, n, lo=1)
    fam = eval_family(alphas, mass.zeta, n - 1)
    d = np.array([s.norm for s in fam])
    phi = np.array([s.orthonormal for s in fam], dtype=np.complex128)
    return d, RankOneStructure(mass.gamma, phi)


def block_det(a, v, w, beta: complex) -> complex:
    """det([[A, v], [w, beta]]) = det(A) (beta - w A^{-1} v), without forming C."""
    a = np.asarray(a, dtype=np.complex128)
    v = np.asarray(v, dtype=np.complex128).reshape(-1)
    w = np.asarray(w, dtype=np.complex128).reshape(-1)
    if a.shape != (v.size, v.size) or w.size != v.size:
        raise ParameterError("block shapes do not match")
    if a.size == 0:
        return complex(beta)
    lu, piv = _lu(a)
    sign = (-1) ** int(np.sum(piv != np.arange(piv.size)))
    det_a = sign * np.prod(np.diag(lu))
    x = scipy.linalg.lu_solve((lu, piv), v)
    return complex(det_a * (beta - w @ x))


def verblunsky_via_determinant(alphas, mass: PointMassSpec, n: int) -> complex:
    """alpha_{n-1}(dnu) as a bordered determinant over det(A).

    The border is the column (beta[n, 0], ..., beta[n, n-1]) and the row
    (-1, alpha_0, ..., alpha_{n-2}) with corner alpha_{n-1}. O(n^3).
    """
    alphas = verblunsky_sequence(alphas)
    _check_degree(alphas, n, lo=1)
    beta = _beta(alphas, mass, n)
    a = beta[:n, :n].T
    v = beta[n, :n]
    w = np.concatenate(([-1.0], alphas[: n - 1]))
    det_a = lu_det(a)
    return block_det(a, v, w, alphas[n - 1]) / det_a.real


def monic_value_via_determinant(alphas, mass: PointMassSpec, n: int, z: complex) -> complex:
    """Phi_n(z, dnu) as the bordered determinant with bottom row Phi_k(z, dmu)."""
    alphas = verblunsky_sequence(alphas)
    _check_degree(alphas, n)
    if n == 0:
        return 1.0 + 0.0j
    beta = _beta(alphas, mass, n)
    bottom, _ = _monic_at(alphas, z, n)
    c = np.vstack([beta[:n, :], bottom[None, :]])
    return lu_det(c) / lu_det(beta[:n, :n]).real


def moment_sequence(c) -> np.ndarray:
    """Validate trigonometric moments c_0..c_K (c_k = int e^{-ik theta} dmu)."""
    c = np.asarray(c, dtype=np.complex128).reshape(-1)
    if c.size == 0:
        raise InsufficientDataError("at least c_0 is required")
    if not np.all(np.isfinite(c)):
        raise ParameterError("moments must be finite")
    if abs(c[0] - 1.0) > 1e-12:
        raise ParameterError(f"c_0 must be 1 for a probability measure, got {c[0]!r}")
    return c


def toeplitz_moment_matrix(c, size: int) -> np.ndarray:
    """T[j, k] = <z^j, z^k>_{dmu} = c_{j-k}, using c_{-k} = conj(c_k)."""
    c = np.asarray(c, dtype=np.complex128)
    if size > c.size:
        raise InsufficientDataError(f"size {size} Toeplitz matrix needs {size} moments")
    return scipy.linalg.toeplitz(c[:size], c[:size].conj())


@dataclass(frozen=True)
class MomentAlphas:
    """Output of :func:`alphas_from_moments`.

    ``alphas`` holds the coefficients with modulus < 1; ``norms[n]`` is
    ||Phi_n|| for n = 0..len(alphas). ``terminator`` is the unimodular
    coefficient that ends a finitely supported measure, if one was reached.
    """

    alphas: np.ndarray
    norms: np.ndarray
    terminator: complex | None = None


def alphas_from_moments(moments, n_max: int) -> MomentAlphas:
    """Verblunsky coefficients alpha_0..alpha_{n_max-1} by Gram-Schmidt on moments.

    For each n the monic Phi_n = z^n + sum_{k<n} b_k z^k solves the normal
    equations T_n b = -(c_{-n}, ..., c_{-1}); then alpha_{n-1} = -conj(b_0).
    Stops early at a terminator (|alpha| within TERMINATOR_TOL of 1).
    """
    c = moment_sequence(moments)
    if n_max < 0 or n_max >= c.size:
        raise InsufficientDataError(f"{n_max} coefficients need moments c_0..c_{n_max}")
    t = toeplitz_moment_matrix(c, n_max + 1)
    out = []
    nrm = [1.0]
    for n in range(1, n_max + 1):
        lu_piv = _lu(t[:n, :n])
        b = scipy.linalg.lu_solve(lu_piv, -t[:n, n])
        alpha = -np.conj(b[0])
        if abs(alpha) >= 1.0 - TERMINATOR_TOL:
            return MomentAlphas(np.array(out, dtype=np.complex128), np.array(nrm), complex(alpha))
        out.append(alpha)
        sq = (t[n, :n] @ b + t[n, n]).real
        nrm.append(float(np.sqrt(sq)))
    return MomentAlphas(np.array(out, dtype=np.complex128), np.array(nrm))


def moments_of_nu(moments, mass: PointMassSpec) -> np.ndarray:
    """c_k(dnu) = (1-gamma) c_k(dmu) + gamma e^{-ik omega}."""
    c = moment_sequence(moments)
    k = np.arange(c.size)
    out = (1.0 - mass.gamma) * c + mass.gamma * np.exp(-1j * k * mass.omega)
    out[0] = 1.0
    return out
