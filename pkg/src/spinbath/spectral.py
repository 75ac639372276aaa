"""Dense Hermitian eigendecomposition and time evolution.

Evolution uses the propagator ``exp(-i H t)`` with hbar = 1.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import ArgumentError, CapacityError, ContractError, NumericOverflowError

MAX_DENSE_DIM = 2**14
HERMITIAN_RTOL = 1e-12
GAUGE_PIVOT_TOL = 1e-6


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residual_bound: float

    @property
    def dim(self):
        return len(self.eigenvalues)

    def ground_state(self):
        return self.eigenvectors[:, 0].copy()


def _dense(H):
    if sp.issparse(H):
        if H.shape[0] > MAX_DENSE_DIM:
            raise CapacityError(f"dimension {H.shape[0]} exceeds dense cap {MAX_DENSE_DIM}")
        return H.toarray()
    return np.asarray(H)


def energy_clusters(eigenvalues, tol):
    """Split ascending eigenvalues into runs whose consecutive gaps are < tol.

    Returns a list of (start, stop) index ranges.
    """
    if len(eigenvalues) == 0:
        return []
    breaks = np.flatnonzero(np.diff(eigenvalues) >= tol) + 1
    edges = np.concatenate(([0], breaks, [len(eigenvalues)]))
    return list(zip(edges[:-1], edges[1:]))


def default_cluster_tol(eigenvalues):
    spread = float(eigenvalues[-1] - eigenvalues[0]) if len(eigenvalues) else 0.0
    return 1e-8 * max(spread, 1.0)


def _canonical_basis(V, tol=GAUGE_PIVOT_TOL):
    """Orthonormal basis of span(V) built by projecting e_0, e_1, ... in order.

    Fixes both the basis inside a degenerate subspace and the phase of single
    vectors (first significant component made real positive).
    """
    k = V.shape[1]
    if k == 1:
        v = V[:, 0]
        j = int(np.flatnonzero(np.abs(v) > tol)[0])
        return (v * (np.conj(v[j]) / abs(v[j])))[:, None]
    M = V.conj().T  # column j holds coordinates of P e_j in the V basis
    row_norms = np.linalg.norm(M, axis=0)
    Q = np.zeros((k, k), dtype=np.result_type(V.dtype, float))
    r = 0
    for j in np.flatnonzero(row_norms > tol):
        m = M[:, j]
        m = m - Q[:, :r] @ (Q[:, :r].conj().T @ m)
        m = m - Q[:, :r] @ (Q[:, :r].conj().T @ m)
        norm = np.linalg.norm(m)
        if norm > tol:
            Q[:, r] = m / norm
            r += 1
            if r == k:
                break
    if r < k:
        raise ContractError("could not fix the gauge of a degenerate subspace")
    return V @ Q


def eigendecompose(H, cluster_tol=None):
    """Full eigendecomposition of a Hermitian matrix (sparse or dense).

    Eigenvalues come back ascending. Inside every degenerate cluster the
    eigenvectors are replaced by a canonical basis so identical input always
    gives identical output.
    """
    A = _dense(H)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ArgumentError(f"expected a square matrix, got shape {A.shape}")
    scale = max(np.abs(A).max(initial=0.0), 1.0)
    if np.abs(A - A.conj().T).max(initial=0.0) > HERMITIAN_RTOL * scale:
        raise ContractError("matrix is not Hermitian")
    if np.iscomplexobj(A) and not np.any(A.imag):
        A = np.ascontiguousarray(A.real)
    w, V = scipy.linalg.eigh(A, driver="evd")
    tol = default_cluster_tol(w) if cluster_tol is None else cluster_tol
    for start, stop in energy_clusters(w, tol):
        V[:, start:stop] = _canonical_basis(V[:, start:stop])
    residual = np.linalg.norm(A @ V - V * w, axis=0).max(initial=0.0)
    return SpectralDecomposition(eigenvalues=w, eigenvectors=V, residual_bound=float(residual))


def _as_state(decomp, psi0):
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (decomp.dim,):
        raise ArgumentError(f"state has shape {psi0.shape}, expected ({decomp.dim},)")
    return psi0


def evolve_state(decomp, psi0, t):
    """exp(-i H t) psi0 computed in the eigenbasis."""
    psi0 = _as_state(decomp, psi0)
    V = decomp.eigenvectors
    coeffs = V.conj().T @ psi0
    return V @ (np.exp(-1j * decomp.eigenvalues * t) * coeffs)


def evolve_states(decomp, psi0, times):
    """Evolved states for many times at once, shape (len(times), dim)."""
    psi0 = _as_state(decomp, psi0)
    V = decomp.eigenvectors
    coeffs = V.conj().T @ psi0
    phases = np.exp(-1j * np.outer(np.asarray(times, dtype=float), decomp.eigenvalues))
    return (phases * coeffs) @ V.T


def operator_norm_bound(H):
    """Cheap upper bound on the spectral norm of a Hermitian matrix (max column sum)."""
    if sp.issparse(H):
        return float(spla.norm(H, 1))
    return float(np.abs(H).sum(axis=0).max(initial=0.0))


def propagate_oracle(H, psi0, t, dt=None):
    """Fixed-step RK4 integration of i dpsi/dt = H psi.

    Independent of the eigendecomposition; meant as a verification oracle.
    Default step keeps ||H|| dt <= 0.02, global error O(dt**4 t).
    """
    psi = np.asarray(psi0, dtype=complex).copy()
    if t == 0:
        return psi
    H = sp.csr_matrix(H) if not sp.issparse(H) else H.tocsr()
    if H.shape != (len(psi), len(psi)):
        raise ArgumentError(f"operator shape {H.shape} does not match state length {len(psi)}")
    norm = operator_norm_bound(H)
    if norm == 0.0:
        return psi
    if dt is None:
        dt = 0.02 / norm
    n_steps = max(1, int(np.ceil(abs(t) / dt)))
    h = t / n_steps
    A = -1j * H
    for _ in range(n_steps):
        k1 = A @ psi
        k2 = A @ (psi + 0.5 * h * k1)
        k3 = A @ (psi + 0.5 * h * k2)
        k4 = A @ (psi + h * k3)
        psi = psi + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    if not np.all(np.isfinite(psi)):
        raise NumericOverflowError("oracle propagation produced non-finite amplitudes")
    return psi
