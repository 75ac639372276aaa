"""Overlap diagnostics, thermal initial states and level statistics."""

from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .dynamics import CoherenceTrace
from .errors import ArgumentError, InsufficientDataError
from .model import Branch, build_conditional_hamiltonian, build_environment_hamiltonian, draw_couplings
from .spectral import default_cluster_tol, eigendecompose, energy_clusters
from .spin_algebra import basis_magnetization

SECTOR_NEUTRAL_TOL = 1e-6


@dataclass(frozen=True)
class OverlapReport:
    overlaps: np.ndarray
    largest: float
    largest_index: int
    cluster_largest: float


def overlap_spectrum(decomp_coupled, psi0, cluster_tol=None):
    """Weights p_n = |<n|psi0>|^2 of psi0 on the coupled-branch eigenstates.

    ``cluster_largest`` sums the weights inside each (near-)degenerate energy
    cluster before taking the maximum, since the split of weight inside a
    degenerate subspace is a gauge choice.
    """
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (decomp_coupled.dim,):
        raise ArgumentError(f"state has shape {psi0.shape}, expected ({decomp_coupled.dim},)")
    p = np.abs(decomp_coupled.eigenvectors.conj().T @ psi0) ** 2
    w = decomp_coupled.eigenvalues
    tol = default_cluster_tol(w) if cluster_tol is None else cluster_tol
    cluster_sums = [p[a:b].sum() for a, b in energy_clusters(w, tol)]
    idx = int(np.argmax(p))
    return OverlapReport(
        overlaps=p,
        largest=float(p[idx]),
        largest_index=idx,
        cluster_largest=float(min(max(cluster_sums), 1.0)),
    )


def coherence_from_overlaps(report, energies_coupled, E0, times):
    """C(t) = sum_n p_n exp(i (E_n - E0) t) for a ground-state start."""
    energies_coupled = np.asarray(energies_coupled, dtype=float)
    if energies_coupled.shape != report.overlaps.shape:
        raise ArgumentError(
            f"{len(energies_coupled)} energies but {len(report.overlaps)} overlaps"
        )
    times = np.asarray(times, dtype=float)
    phases = np.exp(1j * np.outer(times, energies_coupled - E0))
    return CoherenceTrace(times=times, values=phases @ report.overlaps)


@dataclass(frozen=True)
class ThermalState:
    coefficients: np.ndarray
    temperature: float

    def vector(self, decomp_env):
        """The state expressed in the computational basis."""
        return decomp_env.eigenvectors @ self.coefficients


def boltzmann_weights(energies, T):
    if T <= 0:
        raise ArgumentError(f"temperature must be positive, got {T}")
    x = -(np.asarray(energies, dtype=float) - np.min(energies)) / T
    w = np.exp(x)
    return w / w.sum()


def thermal_initial_state(decomp_env, T, seed=0):
    """Pure state with |c_i|^2 Boltzmann-distributed and seeded random phases."""
    weights = boltzmann_weights(decomp_env.eigenvalues, T)
    rng = np.random.default_rng(seed)
    phases = rng.uniform(0.0, 2 * np.pi, size=len(weights))
    c = np.sqrt(weights) * np.exp(1j * phases)
    return ThermalState(coefficients=c / np.linalg.norm(c), temperature=float(T))


def thermal_largest_term(state, decomp_coupled, decomp_env):
    """max over (n, i) of |c_i <n_coupled|i>|^2."""
    if decomp_coupled.dim != decomp_env.dim or len(state.coefficients) != decomp_env.dim:
        raise ArgumentError("dimension mismatch between thermal state and decompositions")
    overlap = decomp_coupled.eigenvectors.conj().T @ decomp_env.eigenvectors
    terms = np.abs(overlap) ** 2 * np.abs(state.coefficients)[None, :] ** 2
    return float(terms.max())


def critical_delta(kappa, omega, N):
    """Coupling at which the random fields balance the ferromagnetic order.

    Solves kappa*omega*sqrt(N) + delta = (1 - kappa)*omega*N for delta.
    """
    if N < 1:
        raise ArgumentError(f"N must be >= 1, got {N}")
    return (1 - kappa) * omega * N - kappa * omega * np.sqrt(N)


@dataclass(frozen=True)
class EigenflowTable:
    deltas: np.ndarray
    energies: np.ndarray  # (n_delta, k_lowest)
    overlaps: np.ndarray  # (n_delta, k_lowest), weight on the unperturbed ground state
    largest: np.ndarray  # (n_delta,), over the full spectrum
    largest_index: np.ndarray
    cluster_largest: np.ndarray

    def rows(self):
        for g, d in enumerate(self.deltas):
            for n in range(self.energies.shape[1]):
                yield g, float(d), n, float(self.energies[g, n]), float(self.overlaps[g, n])


def eigenvalue_flow(params, delta_grid, k_lowest=20, realization=None):
    """Lowest coupled-branch levels and their ground-state weights versus delta.

    The coupling shape is one unit draw (delta_i in [-1, 1]) scaled by every
    grid value, so the same seed is reused across the sweep. A supplied
    realization is treated as that unit draw.
    """
    if realization is None:
        realization = draw_couplings(params.replace(delta=1.0))
    if k_lowest > params.dim:
        raise ArgumentError(f"k_lowest={k_lowest} exceeds dimension {params.dim}")
    env = eigendecompose(build_environment_hamiltonian(params, realization))
    psi0 = env.ground_state()
    grid = np.asarray(delta_grid, dtype=float)
    energies = np.empty((len(grid), k_lowest))
    overlaps = np.empty((len(grid), k_lowest))
    largest = np.empty(len(grid))
    largest_index = np.empty(len(grid), dtype=int)
    cluster = np.empty(len(grid))
    unit = realization.delta_i
    for g, d in enumerate(grid):
        scaled = type(realization)(
            delta_i=d * unit, omega_ij_alpha=realization.omega_ij_alpha, pairs=realization.pairs
        )
        coupled = eigendecompose(
            build_conditional_hamiltonian(params, scaled, Branch.COUPLED)
        )
        report = overlap_spectrum(coupled, psi0)
        energies[g] = coupled.eigenvalues[:k_lowest]
        overlaps[g] = report.overlaps[:k_lowest]
        largest[g] = report.largest
        largest_index[g] = report.largest_index
        cluster[g] = report.cluster_largest
    return EigenflowTable(grid, energies, overlaps, largest, largest_index, cluster)


def wigner_dyson_pdf(s):
    s = np.asarray(s, dtype=float)
    return (np.pi * s / 2) * np.exp(-np.pi * s * s / 4)


def wigner_dyson_cdf(s):
    s = np.asarray(s, dtype=float)
    return np.where(s > 0, -np.expm1(-np.pi * s * s / 4), 0.0)


def poisson_cdf(s):
    s = np.asarray(s, dtype=float)
    return np.where(s > 0, -np.expm1(-s), 0.0)


def unfold_spacings(eigenvalues, window_fraction=0.8):
    """Nearest-neighbour gaps from the central part of a spectrum, scaled to mean 1."""
    e = np.sort(np.asarray(eigenvalues, dtype=float))
    if not 0 < window_fraction <= 1:
        raise ArgumentError(f"window_fraction must be in (0, 1], got {window_fraction}")
    cut = int(np.floor(len(e) * (1 - window_fraction) / 2))
    e = e[cut:len(e) - cut]
    gaps = np.diff(e)
    if len(gaps) == 0:
        return gaps, 0
    mean = gaps.mean()
    if mean <= 0:
        raise InsufficientDataError("spectrum window has zero width")
    return gaps / mean, len(e)


def magnetization_sectors(decomp, N, neutral_tol=SECTOR_NEUTRAL_TOL):
    """Label each eigenstate +1, -1 or 0 by the sign of its total s^z."""
    m = basis_magnetization(N)
    expect = (np.abs(decomp.eigenvectors) ** 2).T @ m
    labels = np.sign(expect).astype(int)
    labels[np.abs(expect) < neutral_tol] = 0
    return labels


@dataclass(frozen=True)
class SpacingHistogram:
    spacings: np.ndarray
    bin_edges: np.ndarray
    densities: np.ndarray
    ks_wigner: float
    ks_poisson: float
    sector_mode: str
    window_fraction: float = 0.8
    n_levels: int = 0
    metadata: dict = field(default_factory=dict)


def _spectrum_spacings(eigenvalues, labels, window_fraction):
    if labels is None:
        return [unfold_spacings(eigenvalues, window_fraction)]
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    labels = np.asarray(labels)
    if labels.shape != eigenvalues.shape:
        raise ArgumentError("sector_labels must match eigenvalues in length")
    out = []
    for label in np.unique(labels):
        sector = eigenvalues[labels == label]
        if len(sector) >= 3:
            out.append(unfold_spacings(sector, window_fraction))
    return out


def spacing_histogram(eigenvalues, sector_labels=None, window_fraction=0.8, bins=40,
                      min_levels=50, sector_mode=None):
    """Unfolded nearest-neighbour spacing statistics.

    ``eigenvalues`` is one spectrum or a list of spectra (an ensemble); each
    spectrum, and each sector within it when ``sector_labels`` is given, is
    unfolded on its own before the spacings are pooled.
    """
    if isinstance(eigenvalues, np.ndarray) and eigenvalues.ndim == 1:
        spectra = [eigenvalues]
        label_sets = [sector_labels]
    else:
        spectra = list(eigenvalues)
        label_sets = list(sector_labels) if sector_labels is not None else [None] * len(spectra)
    if len(label_sets) != len(spectra):
        raise ArgumentError("need one set of sector labels per spectrum")
    pooled, n_levels = [], 0
    for spectrum, labels in zip(spectra, label_sets):
        for spacings, n in _spectrum_spacings(spectrum, labels, window_fraction):
            pooled.append(spacings)
            n_levels += n
    if n_levels < min_levels:
        raise InsufficientDataError(
            f"only {n_levels} levels after windowing, need at least {min_levels}"
        )
    s = np.concatenate(pooled)
    densities, edges = np.histogram(s, bins=bins, density=True)
    return SpacingHistogram(
        spacings=s,
        bin_edges=edges,
        densities=densities,
        ks_wigner=float(stats.kstest(s, wigner_dyson_cdf).statistic),
        ks_poisson=float(stats.kstest(s, poisson_cdf).statistic),
        sector_mode=sector_mode or ("whole-spectrum" if sector_labels is None else "sectored"),
        window_fraction=window_fraction,
        n_levels=n_levels,
        metadata={"unfolding": "global-mean", "window_fraction": window_fraction},
    )


def flip_symmetry_sectors(decomp, N, tol=1e-6):
    """Label eigenstates by their spin-flip parities.

    Every pair coupling s_i^a s_j^a and every z field commutes with the
    z-parity prod_i sigma_i^z, so that label is always used. The global flip
    prod_i sigma_i^x is an extra symmetry only when no z field is present;
    it is included when every eigenstate has x-parity +-1 within ``tol``.
    Returns ``(labels, resolved)`` where ``resolved`` names the parities used.
    """
    V = decomp.eigenvectors
    ups = np.round(basis_magnetization(N) + N / 2).astype(int)
    z_parity = np.round((np.abs(V) ** 2).T @ (ups % 2)).astype(int)
    labels = z_parity.copy()
    resolved = ["z-parity"]
    if N % 2 == 0:
        flipped = np.arange(2**N) ^ (2**N - 1)
        x_parity = np.einsum("bn,bn->n", V.conj(), V[flipped]).real
        if np.all(np.abs(np.abs(x_parity) - 1) < tol):
            labels = 2 * z_parity + (x_parity > 0)
            resolved.append("x-parity")
    return labels, tuple(resolved)
