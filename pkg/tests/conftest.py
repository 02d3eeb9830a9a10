import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20071015)


def lstsq_alphas(nodes, weights, n):
    """Verblunsky coefficients alpha_0..alpha_{n-1} of sum_j w_j delta_{nodes_j}.

    Phi_k is the monic polynomial of least L^2 norm, found by weighted least
    squares against the lower monomials; alpha_{k-1} = -conj(Phi_k(0)).
    Shares no code with the package.
    """
    nodes = np.asarray(nodes, dtype=complex)
    sw = np.sqrt(np.asarray(weights, dtype=float))
    vander = nodes[:, None] ** np.arange(n + 1)
    out = []
    for k in range(1, n + 1):
        b, *_ = np.linalg.lstsq(sw[:, None] * vander[:, :k], -sw * vander[:, k], rcond=None)
        out.append(-np.conj(b[0]))
    return np.array(out)


def lebesgue_plus_atoms(atoms, grid=256):
    """Quadrature nodes and weights for (1 - sum w) * Lebesgue + sum w delta.

    The uniform rule with ``grid`` points integrates trigonometric
    polynomials of degree < grid exactly.
    """
    ac = 1.0 - sum(w for _, w in atoms)
    theta = 2 * np.pi * np.arange(grid) / grid
    nodes = np.concatenate([np.exp(1j * theta), [np.exp(1j * t) for t, _ in atoms]])
    weights = np.concatenate([np.full(grid, ac / grid), [w for _, w in atoms]])
    return nodes, weights
