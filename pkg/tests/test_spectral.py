import numpy as np
import pytest

from conftest import random_state
from spinbath.errors import ArgumentError, ContractError
from spinbath.model import Branch, ModelParams, build_conditional_hamiltonian, draw_couplings
from spinbath.spectral import eigendecompose, evolve_state, propagate_oracle
from spinbath.spin_algebra import single_spin_operator


def test_diagonal_input():
    dec = eigendecompose(np.diag([3.0, 1.0, 2.0]))
    np.testing.assert_array_equal(dec.eigenvalues, [1, 2, 3])
    np.testing.assert_array_equal(np.abs(dec.eigenvectors), [[0, 0, 1], [1, 0, 0], [0, 1, 0]])


def test_identity():
    dec = eigendecompose(np.eye(8))
    np.testing.assert_array_equal(dec.eigenvalues, np.ones(8))
    assert dec.residual_bound == 0
    np.testing.assert_array_equal(dec.eigenvectors, np.eye(8))


def test_two_spin_ferromagnet():
    p = ModelParams(N=2, kappa=0.0, delta=0.0, eps_sb=0.0)
    H = build_conditional_hamiltonian(p, draw_couplings(p), Branch.UNCOUPLED)
    np.testing.assert_allclose(eigendecompose(H).eigenvalues, [-0.25, -0.25, 0.25, 0.25], atol=1e-15)


def test_rejects_non_hermitian():
    with pytest.raises(ContractError):
        eigendecompose(np.array([[0.0, 1.0], [0.0, 0.0]]))


@pytest.mark.parametrize("kappa", [0.0, 0.4, 1.0])
def test_decomposition_invariants(kappa):
    p = ModelParams(N=7, kappa=kappa, delta=2.0, seed=3)
    H = build_conditional_hamiltonian(p, draw_couplings(p), Branch.COUPLED)
    dec = eigendecompose(H)
    assert np.all(np.diff(dec.eigenvalues) >= 0)
    V = dec.eigenvectors
    assert np.abs(V.conj().T @ V - np.eye(len(V))).max() <= 1e-10
    norm = np.abs(np.linalg.eigvalsh(H.toarray())).max()
    assert dec.residual_bound <= 1e-9 * norm


def test_degenerate_gauge_is_deterministic():
    # rotate a degenerate spectrum by a random unitary twice; the canonical basis must agree
    rng = np.random.default_rng(1)
    D = np.diag([0.0, 0.0, 0.0, 1.0, 2.0, 2.0])
    Q, _ = np.linalg.qr(rng.normal(size=(6, 6)))
    H = Q @ D @ Q.T
    a = eigendecompose(H)
    b = eigendecompose(H.copy())
    assert np.array_equal(a.eigenvectors, b.eigenvectors)
    # the basis inside each cluster depends only on the subspace, not on the solver's output
    P = a.eigenvectors[:, :3]
    first = P @ (P.conj().T[:, 0])
    np.testing.assert_allclose(a.eigenvectors[:, 0], first / np.linalg.norm(first), atol=1e-12)


def test_ferromagnet_eigenvectors_are_basis_states():
    p = ModelParams(N=5, kappa=0.0, delta=1.0, seed=2)
    dec = eigendecompose(build_conditional_hamiltonian(p, draw_couplings(p), Branch.COUPLED))
    assert np.all(np.isin(dec.eigenvectors, [0.0, 1.0]))


def test_evolve_t0_is_identity(rng):
    dec = eigendecompose(np.diag([0.3, -0.1, 2.0, 0.0]))
    psi = random_state(rng, 4)
    np.testing.assert_allclose(evolve_state(dec, psi, 0.0), psi, atol=1e-15)


def test_evolve_stationary_state():
    p = ModelParams(N=4, kappa=0.8, delta=1.0, seed=9)
    dec = eigendecompose(build_conditional_hamiltonian(p, draw_couplings(p), Branch.COUPLED))
    k = 5
    psi = dec.eigenvectors[:, k]
    out = evolve_state(dec, psi, 13.7)
    np.testing.assert_allclose(out, np.exp(-1j * dec.eigenvalues[k] * 13.7) * psi, atol=1e-12)
    np.testing.assert_allclose(np.abs(out), np.abs(psi), atol=1e-12)


def test_two_level_closed_form():
    d = 1.7
    H = -(d / 2) * single_spin_operator("z", 0, 1)
    dec = eigendecompose(H)
    psi = np.array([1.0, 1.0]) / np.sqrt(2)
    for t in np.linspace(0, 40, 81):
        assert abs(np.vdot(psi, evolve_state(dec, psi, t))) == pytest.approx(abs(np.cos(d * t / 4)), abs=1e-12)


def test_evolve_dimension_mismatch():
    dec = eigendecompose(np.eye(4))
    with pytest.raises(ArgumentError):
        evolve_state(dec, np.ones(3), 1.0)


def test_oracle_trivial_cases(rng):
    psi = random_state(rng, 8)
    H = np.zeros((8, 8))
    np.testing.assert_array_equal(propagate_oracle(H, psi, 25.0), psi)
    np.testing.assert_array_equal(propagate_oracle(np.eye(8), psi, 0.0), psi)


def test_oracle_two_level():
    d = 2.3
    H = -(d / 2) * single_spin_operator("z", 0, 1)
    psi = np.array([1.0, 1.0]) / np.sqrt(2)
    for t in (1.0, 10.0, 50.0):
        out = propagate_oracle(H, psi, t)
        assert abs(np.vdot(psi, out)) == pytest.approx(abs(np.cos(d * t / 4)), abs=1e-7)


@pytest.mark.parametrize("seed", range(3))
def test_unitarity_and_composition(seed, rng):
    p = ModelParams(N=6, kappa=0.6, delta=2.5, seed=seed)
    dec = eigendecompose(build_conditional_hamiltonian(p, draw_couplings(p), Branch.COUPLED))
    psi = random_state(rng, p.dim)
    for t in (0.5, 17.0, 300.0, -4.0):
        assert abs(np.linalg.norm(evolve_state(dec, psi, t)) - 1) <= 1e-10
    t1, t2 = 3.3, 41.2
    both = evolve_state(dec, evolve_state(dec, psi, t1), t2)
    np.testing.assert_allclose(evolve_state(dec, psi, t1 + t2), both, atol=1e-9)


def test_energy_conserved_along_oracle(rng):
    p = ModelParams(N=5, kappa=1.0, delta=2.0, seed=4)
    H = build_conditional_hamiltonian(p, draw_couplings(p), Branch.COUPLED)
    psi = random_state(rng, p.dim)
    e0 = np.vdot(psi, H @ psi).real
    for t in (5.0, 20.0):
        out = propagate_oracle(H, psi, t)
        assert abs(np.vdot(out, H @ out).real - e0) <= 1e-8
