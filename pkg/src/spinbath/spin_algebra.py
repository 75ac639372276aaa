"""Spin-1/2 operators embedded in the 2**N dimensional environment space.

Basis states are labelled by an integer whose bit ``i`` is set when spin ``i``
points up (s^z = +1/2). Site 0 is the least significant bit.
"""

import numpy as np
import scipy.sparse as sp

from .errors import ArgumentError

AXES = ("x", "y", "z")


def _check_axis(axis):
    if axis not in AXES:
        raise ArgumentError(f"axis must be one of {AXES}, got {axis!r}")


def _check_site(site, N):
    if N < 1:
        raise ArgumentError(f"N must be >= 1, got {N}")
    if not 0 <= site < N:
        raise ArgumentError(f"site {site} out of range for N={N}")


def _flip_and_phase(axis, bits, site):
    """Image index and matrix element of s^axis_site acting on basis states."""
    up = (bits >> site) & 1
    if axis == "z":
        return bits, np.where(up == 1, 0.5, -0.5).astype(complex)
    flipped = bits ^ (1 << site)
    if axis == "x":
        return flipped, np.full(bits.shape, 0.5, dtype=complex)
    # s^y|up> = (i/2)|down>, s^y|down> = (-i/2)|up>
    return flipped, np.where(up == 1, 0.5j, -0.5j)


def basis_magnetization(N):
    """Total s^z of every computational basis state, shape (2**N,)."""
    bits = np.arange(2**N)
    ups = np.zeros(2**N, dtype=np.int64)
    for i in range(N):
        ups += (bits >> i) & 1
    return ups - N / 2


def single_spin_operator(axis, site, N):
    """Sparse s^axis acting on ``site`` of an N-spin register."""
    _check_axis(axis)
    _check_site(site, N)
    cols = np.arange(2**N)
    rows, vals = _flip_and_phase(axis, cols, site)
    return sp.csr_matrix((vals, (rows, cols)), shape=(2**N, 2**N))


def two_spin_coupling(axis, i, j, N):
    """Sparse product s_i^axis s_j^axis (i != j)."""
    _check_axis(axis)
    _check_site(i, N)
    _check_site(j, N)
    if i == j:
        raise ArgumentError("two_spin_coupling needs two distinct sites")
    cols = np.arange(2**N)
    mid, a = _flip_and_phase(axis, cols, j)
    rows, b = _flip_and_phase(axis, mid, i)
    return sp.csr_matrix((a * b, (rows, cols)), shape=(2**N, 2**N))


def total_sz(N):
    """Diagonal sparse operator sum_i s_i^z."""
    return sp.diags(basis_magnetization(N).astype(complex), format="csr")


def is_hermitian(op, atol=0.0):
    diff = op - op.conj().T
    if sp.issparse(diff):
        return diff.nnz == 0 or np.abs(diff.data).max() <= atol
    return np.abs(diff).max() <= atol
