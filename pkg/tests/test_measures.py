import math

import numpy as np
import pytest

from conftest import lstsq_alphas
from opuc_pointmass.errors import ParameterError, ParseError, ResolutionError
from opuc_pointmass.insertion import PointMassSpec
from opuc_pointmass.measures import (
    MeasureSpec,
    catalog,
    load_measure,
    mix_in_atom,
    moments,
    moments_from_alphas,
)
from opuc_pointmass.oracle import alphas_from_moments, moments_of_nu

UNIFORM = np.full(64, 1 / (2 * math.pi))


def test_catalog_lebesgue():
    entry = catalog("lebesgue")
    np.testing.assert_array_equal(entry.alphas(4), 0)
    np.testing.assert_array_equal(entry.moments(3), [1, 0, 0, 0])


def test_catalog_atomic_moments():
    entry = catalog("atomic", atoms=[(0.0, 0.5), (math.pi, 0.5)])
    np.testing.assert_allclose(entry.moments(4), [1, 0, 1, 0, 1], atol=1e-15)
    np.testing.assert_allclose(entry.alphas(4), [0], atol=1e-15)  # stops at the terminator


def test_catalog_single_and_constant():
    np.testing.assert_array_equal(catalog("single-coefficient", a=0.5).alphas(3), [0.5, 0, 0])
    np.testing.assert_array_equal(catalog("constant_coefficient", a=0.2j).alphas(3), [0.2j] * 3)


@pytest.mark.parametrize("name", ["single-coefficient", "constant-coefficient"])
def test_catalog_rejects_bad_coefficient(name):
    with pytest.raises(ParameterError):
        catalog(name, a=1.0)
    with pytest.raises(ParameterError):
        catalog(name)


def test_catalog_unknown():
    with pytest.raises(ParameterError):
        catalog("cantor")


@pytest.mark.parametrize(
    "name,params",
    [
        ("lebesgue", {}),
        ("single-coefficient", {"a": 0.5}),
        ("single-coefficient", {"a": 0.3 - 0.6j}),
        ("constant-coefficient", {"a": 0.4j}),
        ("atomic", {"atoms": [(0.1, 0.3), (1.9, 0.3), (3.0, 0.2), (4.4, 0.1), (5.5, 0.1)]}),
    ],
)
def test_catalog_consistency(name, params):
    entry = catalog(name, **params)
    got = alphas_from_moments(entry.moments(10), 10).alphas
    want = entry.alphas(10)
    np.testing.assert_allclose(got, want[: got.size], atol=1e-8)


def test_moments_from_alphas_on_single_coefficient():
    # Phi_1 = z - 0.5 orthogonal to 1 forces c_1 = 0.5; Phi_2 = z^2 - 0.5 z gives c_2 = 0.25
    c = moments_from_alphas([0.5, 0.0], 2)
    np.testing.assert_allclose(c, [1, 0.5, 0.25])


def test_moments_from_alphas_on_atoms():
    theta = np.array([0.3, 2.0, 4.1, 5.0])
    w = np.array([0.1, 0.4, 0.3, 0.2])
    alphas = lstsq_alphas(np.exp(1j * theta), w, 3)
    want = (w * np.exp(-1j * np.outer(np.arange(4), theta))).sum(axis=1)
    np.testing.assert_allclose(moments_from_alphas(alphas, 3), want, atol=1e-12)


def test_measure_spec_normalization_and_merging():
    spec = MeasureSpec(((0.0, 0.25), (2 * math.pi, 0.25), (-math.pi, 0.5)))
    assert spec.atoms == ((0.0, 0.5), (math.pi, 0.5))
    with pytest.raises(ParameterError):
        MeasureSpec(((0.0, 0.7),))
    with pytest.raises(ParameterError):
        MeasureSpec()
    with pytest.raises(ParameterError):
        MeasureSpec(((0.0, -0.1), (1.0, 1.1)))
    spec = MeasureSpec.normalized([(0.0, 2.0)], UNIFORM)
    assert spec.total_mass == pytest.approx(1.0, abs=1e-15)


def test_moments_examples():
    c = moments(MeasureSpec(((1.2, 1.0),)), 5)
    np.testing.assert_allclose(c, np.exp(-1j * 1.2 * np.arange(6)))

    c = moments(MeasureSpec((), UNIFORM), 16)
    assert c[0] == pytest.approx(1.0, abs=1e-14)
    assert np.abs(c[1:]).max() <= 1e-14

    c = moments(MeasureSpec(((0.0, 0.5),), UNIFORM / 2), 8)
    np.testing.assert_allclose(c, [1] + [0.5] * 8, atol=1e-14)


def test_moments_resolution_guard():
    with pytest.raises(ResolutionError):
        moments(MeasureSpec((), UNIFORM), 17)


def test_smooth_density_quadrature():
    # w(theta) = (1 + cos theta)/(2 pi): c_1 = 1/2, c_k = 0 otherwise
    g = 64
    theta = 2 * math.pi * np.arange(g) / g
    c = moments(MeasureSpec((), (1 + np.cos(theta)) / (2 * math.pi)), 16)
    np.testing.assert_allclose(c, [1, 0.5] + [0] * 15, atol=1e-14)


def test_mix_in_atom_examples():
    mixed = mix_in_atom(MeasureSpec((), UNIFORM), PointMassSpec(0.0, 0.5))
    assert mixed.atoms == ((0.0, 0.5),)
    np.testing.assert_allclose(mixed.ac_grid, UNIFORM / 2)

    assert mix_in_atom(MeasureSpec(((0.0, 1.0),)), PointMassSpec(0.0, 0.5)).atoms == ((0.0, 1.0),)

    mixed = mix_in_atom(MeasureSpec(((math.pi, 1.0),)), PointMassSpec(0.0, 0.25))
    assert mixed.atoms == ((math.pi, 0.75), (0.0, 0.25))


def test_mix_in_atom_commutes_with_moments(rng):
    for _ in range(5):
        spec = MeasureSpec.normalized(
            list(zip(rng.uniform(0, 6.28, 4), rng.uniform(0.1, 1, 4))), rng.uniform(0, 1, 80)
        )
        mass = PointMassSpec(rng.uniform(0, 6.28), rng.uniform(0.05, 0.95))
        np.testing.assert_allclose(
            moments(mix_in_atom(spec, mass), 20), moments_of_nu(moments(spec, 20), mass), rtol=0, atol=1e-13
        )
        assert moments(spec, 0)[0] == pytest.approx(1.0, abs=1e-12)


def test_load_measure_yaml_and_json(tmp_path):
    p = tmp_path / "m.yaml"
    p.write_text("atoms: [[0.0, 0.5], [3.141592653589793, 0.5]]\n")
    assert len(load_measure(p).atoms) == 2

    p = tmp_path / "m.json"
    p.write_text('{"atoms": [[0.0, 0.5]], "ac_grid": [%s]}' % ", ".join([repr(0.5 / (2 * math.pi))] * 8))
    spec = load_measure(p)
    assert spec.ac_grid.size == 8


@pytest.mark.parametrize("text", ["[1, 2]", "atoms: [[0.0]]", "foo: 1", "atoms: [[0, 0.5]"])
def test_load_measure_parse_errors(tmp_path, text):
    p = tmp_path / "bad.yaml"
    p.write_text(text)
    with pytest.raises(ParseError):
        load_measure(p)
