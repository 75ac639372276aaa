"""Random couplings and the conditional environment Hamiltonians.

The environment Hamiltonian interpolates between an all-to-all Ising
ferromagnet (``kappa = 0``) and a random-coupling spin glass (``kappa = 1``)::

    H_E = -gamma * sum_{i<j} [(1 - kappa) s_i^z s_j^z
                              + kappa * sum_a omega_ij^a s_i^a s_j^a]
          - eps_sb * s_0^z - h_ext * sum_i s_i^z

The central spin couples diagonally; conditioned on its s^z eigenvalue
``sigma`` the environment sees ``H_E + 1/2 sum_i delta_i (sigma - 1/2) s_i^z``.
"""

from dataclasses import asdict, dataclass, field, replace
from enum import Enum
from itertools import combinations

import numpy as np
import scipy.sparse as sp

from .errors import ArgumentError, CapacityError
from .spin_algebra import AXES, single_spin_operator, total_sz, two_spin_coupling

DEFAULT_MAX_N = 14


@dataclass(frozen=True)
class ModelParams:
    N: int
    kappa: float
    delta: float
    omega: float = 1.0
    gamma: float = 1.0
    eps_sb: float = 1e-3
    h_ext: float = 0.0
    seed: int = 0
    isotropic: bool = False
    max_N: int = DEFAULT_MAX_N

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ArgumentError(f"N must be a positive integer, got {self.N}")
        if not 0.0 <= self.kappa <= 1.0:
            raise ArgumentError(f"kappa must lie in [0, 1], got {self.kappa}")
        for name in ("delta", "omega", "gamma", "eps_sb", "h_ext"):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0:
                raise ArgumentError(f"{name} must be finite and >= 0, got {value}")
        if not 0 <= int(self.seed) < 2**64:
            raise ArgumentError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    @property
    def dim(self):
        return 2**self.N

    def replace(self, **changes):
        return replace(self, **changes)

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class CouplingRealization:
    """Drawn couplings. ``omega_ij_alpha`` has shape (n_pairs, 3), rows ordered as ``pairs``."""

    delta_i: np.ndarray
    omega_ij_alpha: np.ndarray
    pairs: tuple = field(default=())

    @property
    def N(self):
        return len(self.delta_i)


class Branch(Enum):
    """Conditional evolutions of the environment, named by their effect.

    The central spin's +1/2 state leaves the environment untouched; the -1/2
    state switches on ``-1/2 sum_i delta_i s_i^z``.
    """

    UNCOUPLED = +0.5
    COUPLED = -0.5

    @property
    def sz_eigenvalue(self):
        return self.value


def _check_capacity(params):
    if params.N > params.max_N:
        raise CapacityError(
            f"N={params.N} exceeds the dense diagonalization cap of {params.max_N} spins"
        )


def draw_couplings(params):
    """Draw delta_i in [-delta, delta] and omega_ij^a in [-omega, omega].

    Uses numpy's PCG64 generator seeded with ``params.seed``. Draw order is
    fixed: N unit draws for delta_i by ascending site, then the pair couplings
    by (i, j, axis) lexicographically (one draw per pair when isotropic).
    Widths multiply unit draws, so the shape of a realization does not depend
    on delta or omega.
    """
    rng = np.random.Generator(np.random.PCG64(int(params.seed)))
    N = params.N
    pairs = tuple(combinations(range(N), 2))
    unit_delta = rng.uniform(-1.0, 1.0, size=N)
    if params.isotropic:
        unit_omega = np.repeat(rng.uniform(-1.0, 1.0, size=(len(pairs), 1)), 3, axis=1)
    else:
        unit_omega = rng.uniform(-1.0, 1.0, size=(len(pairs), 3))
    return CouplingRealization(
        delta_i=params.delta * unit_delta,
        omega_ij_alpha=params.omega * unit_omega,
        pairs=pairs,
    )


def _pair_terms(N, terms, gamma):
    """-gamma * sum of w * s_i^a s_j^a over (i, j, axis, w) terms, as one sparse matrix."""
    dim = 2**N
    rows_all, cols_all, vals_all = [], [], []
    for i, j, axis, w in terms:
        if w == 0.0:
            continue
        op = two_spin_coupling(axis, i, j, N).tocoo()
        rows_all.append(op.row)
        cols_all.append(op.col)
        vals_all.append(-gamma * w * op.data)
    if not vals_all:
        return sp.csr_matrix((dim, dim), dtype=complex)
    out = sp.coo_matrix(
        (np.concatenate(vals_all), (np.concatenate(rows_all), np.concatenate(cols_all))),
        shape=(dim, dim),
    )
    return out.tocsr()


def ising_part(N, gamma=1.0):
    """-gamma * sum_{i<j} s_i^z s_j^z."""
    return _pair_terms(N, ((i, j, "z", 1.0) for i, j in combinations(range(N), 2)), gamma)


def glass_part(N, real, gamma=1.0):
    """-gamma * sum_{i<j} sum_a omega_ij^a s_i^a s_j^a."""
    terms = (
        (i, j, axis, real.omega_ij_alpha[row, a])
        for row, (i, j) in enumerate(real.pairs)
        for a, axis in enumerate(AXES)
    )
    return _pair_terms(N, terms, gamma)


def field_part(params):
    N = params.N
    dim = 2**N
    out = sp.csr_matrix((dim, dim), dtype=complex)
    if params.eps_sb:
        out = out - params.eps_sb * single_spin_operator("z", 0, N)
    if params.h_ext:
        out = out - params.h_ext * total_sz(N)
    return out


def build_environment_hamiltonian(params, real):
    """Sparse H_E for one coupling realization."""
    _check_capacity(params)
    if real.N != params.N:
        raise ArgumentError(f"realization has {real.N} spins but params.N={params.N}")
    N, k = params.N, params.kappa
    H = field_part(params)
    if k != 1.0:
        H = H + (1.0 - k) * ising_part(N, params.gamma)
    if k != 0.0:
        H = H + k * glass_part(N, real, params.gamma)
    return H.tocsr()


def coupling_term(params, real, branch):
    """1/2 sum_i delta_i (sigma - 1/2) s_i^z for the given branch."""
    N = params.N
    factor = 0.5 * (Branch(branch).sz_eigenvalue - 0.5)
    diag = np.zeros(2**N)
    if factor != 0.0:
        bits = np.arange(2**N)
        for i, d in enumerate(real.delta_i):
            diag += d * np.where((bits >> i) & 1, 0.5, -0.5)
        diag *= factor
    return sp.diags(diag.astype(complex), format="csr")


def build_conditional_hamiltonian(params, real, branch):
    """H_E plus the system-environment term for the chosen branch."""
    H = build_environment_hamiltonian(params, real)
    if Branch(branch) is Branch.UNCOUPLED:
        return H
    return (H + coupling_term(params, real, branch)).tocsr()
