import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opuc_pointmass.errors import InsufficientDataError, InvalidCoefficientError
from opuc_pointmass.szego import (
    UnitCirclePoint,
    advance,
    cd_kernel,
    eval_family,
    initial_state,
    norms,
    orthonormal_values,
    verblunsky_sequence,
)

disk = st.builds(
    lambda r, t: r * cmath.exp(1j * t),
    st.floats(0.0, 0.9),
    st.floats(0.0, 2 * math.pi),
)
sequences = st.lists(disk, min_size=0, max_size=60)


def monic_coefficients(alphas):
    """Coefficient vectors (ascending) of Phi_n by explicit polynomial algebra."""
    phi = np.polynomial.Polynomial([1.0 + 0j])
    out = [phi]
    for n, a in enumerate(alphas):
        star = np.polynomial.Polynomial(np.conj(phi.coef[::-1]))
        phi = np.polynomial.Polynomial([0, 1]) * phi - np.conj(a) * star
        out.append(phi)
    return out


def test_verblunsky_sequence_validation():
    assert verblunsky_sequence([]).size == 0
    assert verblunsky_sequence([0.5, 0.1j]).dtype == np.complex128
    with pytest.raises(InvalidCoefficientError):
        verblunsky_sequence([0.5, 1.0])
    with pytest.raises(InvalidCoefficientError):
        verblunsky_sequence([np.nan])


def test_unit_circle_point_canonical_angle():
    assert UnitCirclePoint(-math.pi / 2).omega == pytest.approx(3 * math.pi / 2)
    assert UnitCirclePoint(2 * math.pi).omega == 0.0
    assert abs(UnitCirclePoint(1.234).zeta) == pytest.approx(1.0, abs=1e-16)


def test_advance_examples():
    s1 = advance(initial_state(1.0), 0.5)
    assert s1.phi == pytest.approx(0.5)
    assert s1.phi_star == pytest.approx(0.5)
    assert s1.norm == pytest.approx(math.sqrt(0.75), abs=1e-15)

    s2 = advance(s1, 0.0)
    assert s2.phi == pytest.approx(0.5)  # z^2 - 0.5 z at z = 1
    assert s2.degree == 2


def test_advance_rejects_unimodular():
    with pytest.raises(InvalidCoefficientError):
        advance(initial_state(0.3), 1.0)


@pytest.mark.parametrize("z", [1.0, 0.3 - 0.2j, cmath.exp(0.7j), 2.0])
def test_lebesgue_family(z):
    for n, s in enumerate(eval_family(np.zeros(6), z, 6)):
        assert s.phi == pytest.approx(z**n)
        assert s.phi_star == 1.0
        assert s.norm == 1.0


def test_eval_family_kernel_examples():
    fam = eval_family(np.zeros(3), 1.0, 3)
    assert [s.kernel_diag for s in fam] == [1.0, 2.0, 3.0, 4.0]

    fam = eval_family([0.5, 0.0], 1.0, 2)
    assert fam[1].kernel_diag == pytest.approx(4.0 / 3.0, abs=1e-15)

    (only,) = eval_family([0.3], cmath.exp(2j), 0)
    assert (only.phi, only.kernel_diag) == (1.0, 1.0)


def test_eval_family_insufficient():
    with pytest.raises(InsufficientDataError):
        eval_family([0.1, 0.2], 1.0, 3)


def test_norms_examples():
    assert norms([0.5, 0.0], 2)[2] ** 2 == pytest.approx(0.75, abs=1e-15)
    assert norms([0.6, 0.8], 2)[2] ** 2 == pytest.approx(0.2304, abs=1e-15)
    np.testing.assert_array_equal(norms(np.zeros(5), 5), np.ones(6))


def test_companion_recursion_matches_reversal_definition(rng):
    # Phi_n^*(z) = z^n conj(Phi_n(1/conj(z)))
    alphas = 0.8 * rng.random(12) * np.exp(2j * np.pi * rng.random(12))
    polys = monic_coefficients(alphas)
    for z in [0.4 + 0.3j, 1.7 - 0.2j, cmath.exp(1.1j)]:
        fam = eval_family(alphas, z, 12)
        for n, (s, p) in enumerate(zip(fam, polys)):
            assert s.phi == pytest.approx(p(z), rel=1e-12)
            want = z**n * np.conj(p(1 / np.conj(z)))
            assert s.phi_star == pytest.approx(want, rel=1e-11)


def test_orthonormal_values_match_monic_over_norm(rng):
    alphas = 0.9 * rng.random(40) * np.exp(2j * np.pi * rng.random(40))
    z = 0.2 + 0.9j
    phi, phis = orthonormal_values(alphas, z, 40)
    fam = eval_family(alphas, z, 40)
    np.testing.assert_allclose(phi, [s.orthonormal for s in fam], rtol=1e-12)
    np.testing.assert_allclose(phis, [s.orthonormal_star for s in fam], rtol=1e-12)


@settings(max_examples=60, deadline=None)
@given(sequences, st.floats(0, 2 * math.pi))
def test_norm_product_and_circle_modulus(alphas, t):
    n = len(alphas)
    fam = eval_family(alphas, cmath.exp(1j * t), n)
    direct = np.sqrt(np.cumprod([1.0] + [1 - abs(a) ** 2 for a in alphas]))
    np.testing.assert_allclose([s.norm for s in fam], direct, rtol=1e-12)
    np.testing.assert_allclose([abs(s.phi) for s in fam], [abs(s.phi_star) for s in fam], rtol=1e-12)


@settings(max_examples=60, deadline=None)
@given(sequences)
def test_reversed_polynomial_at_zero_is_reciprocal_norm(alphas):
    n = len(alphas)
    fam = eval_family(alphas, 0.0, n)
    np.testing.assert_allclose([s.orthonormal_star for s in fam], 1 / norms(alphas, n), rtol=1e-12)


@settings(max_examples=60, deadline=None)
@given(sequences, st.floats(0, 2 * math.pi))
def test_kernel_monotone(alphas, t):
    ks = [s.kernel_diag for s in eval_family(alphas, cmath.exp(1j * t), len(alphas))]
    assert ks[0] == 1.0
    assert all(b >= a for a, b in zip(ks, ks[1:]))


def test_cd_kernel_examples():
    k = cd_kernel(np.zeros(2), 0.0, 0.5, 2)
    assert k.value == 1.0 and k.closed_form == pytest.approx(1.0)

    zeta = cmath.exp(0.4j)
    k = cd_kernel(np.zeros(4), zeta, zeta, 4)
    assert k.value == pytest.approx(5.0)
    assert k.closed_form is None  # conj(x) y = 1 selects the sum

    k = cd_kernel([0.5, 0.0], 1.0, 1.0, 1)
    assert k.value == pytest.approx(4.0 / 3.0)


@settings(max_examples=100, deadline=None)
@given(
    sequences,
    st.complex_numbers(max_magnitude=0.95),
    st.complex_numbers(max_magnitude=0.95),
)
def test_cd_closed_form_agrees_with_sum(alphas, x, y):
    k = cd_kernel(alphas, x, y, len(alphas))
    assert k.closed_form is not None
    assert abs(k.closed_form - k.value) <= 1e-10 * abs(k.value)


def test_cd_kernel_hermitian(rng):
    alphas = 0.7 * rng.random(10) * np.exp(2j * np.pi * rng.random(10))
    x, y = 0.3 + 0.4j, -0.5 + 0.1j
    assert cd_kernel(alphas, x, y, 10).value == pytest.approx(np.conj(cd_kernel(alphas, y, x, 10).value))
    assert cd_kernel(alphas, x, x, 10).value.imag == 0.0
