"""Probability measures on the circle: atoms, sampled densities, moments.

A :class:`MeasureSpec` is a finite list of atoms plus an optional density
(with respect to d theta) sampled on the uniform grid theta_g = 2 pi g / G.
Moments c_k = int e^{-ik theta} dmu are exact for the atoms and use the
periodic trapezoid rule for the density.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np
import yaml

from .errors import ParameterError, ParseError, ResolutionError
from .insertion import PointMassSpec
from .oracle import alphas_from_moments
from .szego import TWO_PI, UnitCirclePoint, verblunsky_sequence

__all__ = [
    "ATOM_MERGE_TOL",
    "MeasureSpec",
    "CatalogEntry",
    "catalog",
    "moments",
    "moments_from_alphas",
    "mix_in_atom",
    "load_measure",
]

ATOM_MERGE_TOL = 1e-12
NORMALIZATION_TOL = 1e-12


def _circular_gap(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def _merge_atoms(atoms) -> tuple[tuple[float, float], ...]:
    merged: list[list[float]] = []
    for theta, weight in atoms:
        theta = UnitCirclePoint(theta).omega
        weight = float(weight)
        if not (math.isfinite(weight) and weight >= 0.0):
            raise ParameterError(f"atom weight must be non-negative, got {weight!r}")
        for entry in merged:
            if _circular_gap(entry[0], theta) <= ATOM_MERGE_TOL:
                entry[1] += weight
                break
        else:
            merged.append([theta, weight])
    return tuple((t, w) for t, w in merged if w > 0.0)


@dataclass(frozen=True)
class MeasureSpec:
    """Atoms ``(theta, weight)`` plus an optional sampled density ``ac_grid``.

    ``ac_grid[g]`` is the density at theta_g = 2 pi g / G, so its mass is
    (2 pi / G) * sum(ac_grid). Total mass must be 1.
    """

    atoms: tuple[tuple[float, float], ...] = ()
    ac_grid: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "atoms", _merge_atoms(self.atoms))
        if self.ac_grid is not None:
            grid = np.array(self.ac_grid, dtype=float).reshape(-1)
            if grid.size == 0 or not np.all(np.isfinite(grid)) or np.any(grid < 0):
                raise ParameterError("ac_grid must be a non-empty array of non-negative samples")
            grid.setflags(write=False)
            object.__setattr__(self, "ac_grid", grid)
        elif not self.atoms:
            raise ParameterError("a measure needs atoms, an ac_grid, or both")
        if abs(self.total_mass - 1.0) > NORMALIZATION_TOL:
            raise ParameterError(f"total mass is {self.total_mass!r}, expected 1")

    @classmethod
    def normalized(cls, atoms=(), ac_grid=None) -> "MeasureSpec":
        """Build a spec after rescaling the inputs to total mass 1."""
        atoms = [(float(t), float(w)) for t, w in atoms]
        total = sum(w for _, w in atoms)
        if ac_grid is not None:
            ac_grid = np.asarray(ac_grid, dtype=float)
            total += TWO_PI * ac_grid.sum() / ac_grid.size
        if not total > 0:
            raise ParameterError("measure has no mass")
        return cls(
            tuple((t, w / total) for t, w in atoms),
            None if ac_grid is None else ac_grid / total,
        )

    @property
    def ac_mass(self) -> float:
        if self.ac_grid is None:
            return 0.0
        return float(TWO_PI * self.ac_grid.sum() / self.ac_grid.size)

    @property
    def total_mass(self) -> float:
        return math.fsum(w for _, w in self.atoms) + self.ac_mass


def moments(measure: MeasureSpec, k_max: int) -> np.ndarray:
    """c_0..c_{k_max} of ``measure``.

    The sampled density needs G >= 4 k_max grid points; coarser grids raise
    ResolutionError.
    """
    if k_max < 0:
        raise ParameterError(f"k_max must be non-negative, got {k_max}")
    k = np.arange(k_max + 1)
    c = np.zeros(k_max + 1, dtype=np.complex128)
    for theta, weight in measure.atoms:
        c += weight * np.exp(-1j * k * theta)
    if measure.ac_grid is not None:
        g = measure.ac_grid.size
        if g < 4 * k_max:
            raise ResolutionError(f"ac_grid of size {g} resolves moments only up to k = {g // 4}")
        theta = TWO_PI * np.arange(g) / g
        c += (TWO_PI / g) * (np.exp(-1j * np.outer(k, theta)) @ measure.ac_grid)
    return c


def mix_in_atom(measure: MeasureSpec, mass: PointMassSpec) -> MeasureSpec:
    """(1 - gamma) * measure + gamma * delta_omega."""
    keep = 1.0 - mass.gamma
    atoms = [(t, keep * w) for t, w in measure.atoms] + [(mass.omega, mass.gamma)]
    grid = None if measure.ac_grid is None else keep * measure.ac_grid
    return MeasureSpec(tuple(atoms), grid)


def moments_from_alphas(alphas, k_max: int) -> np.ndarray:
    """Moments c_0..c_{k_max} of the measure with the given coefficients.

    Builds monic coefficient vectors by the Szego recursion and reads each
    new moment off <1, Phi_{n+1}> = 0. Needs ``k_max`` coefficients.
    """
    alphas = verblunsky_sequence(alphas)
    if k_max > alphas.size:
        raise ParameterError(f"moments up to c_{k_max} need {k_max} coefficients")
    c_neg = np.zeros(k_max + 1, dtype=np.complex128)  # c_{-k}
    c_neg[0] = 1.0
    phi = np.array([1.0 + 0.0j])  # ascending powers
    for n in range(k_max):
        a = alphas[n]
        star = phi[::-1].conj()
        phi = np.concatenate(([0.0], phi)) - np.conj(a) * np.concatenate((star, [0.0]))
        c_neg[n + 1] = -(phi[: n + 1] @ c_neg[: n + 1])
    return c_neg.conj()


@dataclass(frozen=True)
class CatalogEntry:
    """A named measure. ``alphas(n)`` and ``moments(k)`` are generators."""

    name: str
    description: str
    alphas: Callable[[int], np.ndarray]
    moments: Callable[[int], np.ndarray]
    measure: MeasureSpec | None = None


def _coefficient(params) -> complex:
    if "a" not in params:
        raise ParameterError("this catalog entry needs a coefficient 'a'")
    a = complex(params["a"])
    if not abs(a) < 1.0:
        raise ParameterError(f"|a| must be < 1, got {abs(a)!r}")
    return a


def catalog(name: str, **params) -> CatalogEntry:
    """Look up a named measure.

    ``lebesgue``, ``single-coefficient`` (a), ``constant-coefficient`` (a)
    and ``atomic`` (atoms=[(theta, weight), ...]).
    """
    key = name.strip().lower().replace("_", "-")
    if key == "lebesgue":
        def lebesgue_moments(k):
            c = np.zeros(k + 1, dtype=np.complex128)
            c[0] = 1.0
            return c

        return CatalogEntry(
            "lebesgue",
            "normalized arc length, alpha_n = 0",
            lambda n: np.zeros(n, dtype=np.complex128),
            lebesgue_moments,
            MeasureSpec((), np.full(4, 1.0 / TWO_PI)),
        )
    if key == "single-coefficient":
        a = _coefficient(params)

        def single(n):
            out = np.zeros(n, dtype=np.complex128)
            out[:1] = a
            return out

        return CatalogEntry(
            "single-coefficient",
            f"alpha_0 = {a}, alpha_n = 0 for n >= 1",
            single,
            lambda k: moments_from_alphas(single(k), k),
        )
    if key == "constant-coefficient":
        a = _coefficient(params)

        def constant(n):
            return np.full(n, a, dtype=np.complex128)

        return CatalogEntry(
            "constant-coefficient",
            f"alpha_n = {a} for all n",
            constant,
            lambda k: moments_from_alphas(constant(k), k),
        )
    if key == "atomic":
        if "atoms" not in params:
            raise ParameterError("atomic catalog entry needs atoms=[(theta, weight), ...]")
        spec = MeasureSpec(tuple(tuple(a) for a in params["atoms"]))

        def atomic_alphas(n):
            return alphas_from_moments(moments(spec, n), n).alphas

        return CatalogEntry(
            "atomic",
            f"{len(spec.atoms)} atoms",
            atomic_alphas,
            lambda k: moments(spec, k),
            spec,
        )
    raise ParameterError(f"unknown catalog entry {name!r}")


def load_measure(path) -> MeasureSpec:
    """Read a measure file with optional ``atoms`` and ``ac_grid`` fields.

    The file is YAML (so plain JSON works too)::

        atoms: [[0.0, 0.25], [3.14159, 0.25]]
        ac_grid: [0.0795, 0.0795, ...]
    """
    try:
        data = yaml.safe_load(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if not isinstance(data, dict) or not ({"atoms", "ac_grid"} & data.keys()):
        raise ParseError(f"{path}: expected a mapping with 'atoms' and/or 'ac_grid'")
    try:
        atoms = tuple((float(t), float(w)) for t, w in data.get("atoms") or ())
        grid = data.get("ac_grid")
        grid = None if grid is None else np.asarray(grid, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: malformed field ({exc})") from exc
    return MeasureSpec(atoms, grid)
