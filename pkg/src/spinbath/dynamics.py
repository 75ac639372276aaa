"""Two-branch evolution of the central spin plus environment.

The composite state ``(|up> + |down>)/sqrt(2) (x) |psi0>`` evolves into
``|up>|psi_up(t)> + |down>|psi_down(t)>``. The coherence of the central spin
is carried by ``C(t) = <psi_down(t)|psi_up(t)>``, normalized so ``C(0) = 1``;
the physical off-diagonal element of the reduced density matrix is ``C(t)/2``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, NoDecayError
from .spectral import evolve_states

DEFAULT_DT_SAMPLE = 0.1
DEFAULT_T_MAX = 300.0
DEFAULT_WINDOW = (200.0, 300.0)
_TIME_CHUNK = 512


@dataclass(frozen=True)
class CoherenceTrace:
    times: np.ndarray
    values: np.ndarray

    @property
    def magnitude(self):
        return np.abs(self.values)

    def __len__(self):
        return len(self.times)


@dataclass
class CompositeState:
    up_component: np.ndarray
    down_component: np.ndarray
    weights: tuple = (1 / np.sqrt(2), 1 / np.sqrt(2))


def time_grid(t_max=DEFAULT_T_MAX, dt_sample=DEFAULT_DT_SAMPLE):
    """Uniform grid 0, dt, 2 dt, ..., t_max (inclusive up to rounding)."""
    n = int(round(t_max / dt_sample))
    return np.arange(n + 1) * dt_sample


def coherence_trace(decomp_up, decomp_down, psi0, times):
    """C(t) = <psi_down(t)|psi_up(t)> from explicit evolution of both branches."""
    if decomp_up.dim != decomp_down.dim:
        raise ArgumentError(
            f"branch dimensions differ: {decomp_up.dim} vs {decomp_down.dim}"
        )
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (decomp_up.dim,):
        raise ArgumentError(f"initial state has shape {psi0.shape}, expected ({decomp_up.dim},)")
    times = np.asarray(times, dtype=float)
    values = np.empty(len(times), dtype=complex)
    for start in range(0, len(times), _TIME_CHUNK):
        chunk = times[start:start + _TIME_CHUNK]
        up = evolve_states(decomp_up, psi0, chunk)
        down = evolve_states(decomp_down, psi0, chunk)
        values[start:start + _TIME_CHUNK] = np.einsum("ti,ti->t", down.conj(), up)
    return CoherenceTrace(times=times, values=values)


def composite_state(decomp_up, decomp_down, psi0, t, weights=None):
    """Branch states at time t packed as a CompositeState."""
    up = evolve_states(decomp_up, psi0, [t])[0]
    down = evolve_states(decomp_down, psi0, [t])[0]
    if weights is None:
        return CompositeState(up, down)
    return CompositeState(up, down, tuple(weights))


def reduced_density_matrix(state):
    """Trace out the environment: 2x2 density matrix of the central spin."""
    w_up, w_down = state.weights
    up = np.asarray(state.up_component, dtype=complex)
    down = np.asarray(state.down_component, dtype=complex)
    off = w_up * np.conj(w_down) * np.vdot(down, up)
    return np.array(
        [
            [abs(w_up) ** 2 * np.vdot(up, up).real, off],
            [np.conj(off), abs(w_down) ** 2 * np.vdot(down, down).real],
        ]
    )


def purity(rho):
    return float(np.trace(rho @ rho).real)


def efficiency_of_decoherence(trace, window=DEFAULT_WINDOW):
    """Mean of |C(t)| over samples with window[0] <= t <= window[1]."""
    t_a, t_b = window
    if t_b < t_a:
        raise ArgumentError(f"window end {t_b} precedes start {t_a}")
    slack = 1e-9 * max(1.0, abs(t_b))
    mask = (trace.times >= t_a - slack) & (trace.times <= t_b + slack)
    if not mask.any():
        raise ArgumentError(f"no trace samples inside window [{t_a}, {t_b}]")
    return float(trace.magnitude[mask].mean())


def initial_decay_time(trace):
    """Fit ln|C| = -(t/t*)**2 over the initial decay.

    Samples run from the start of the trace up to and including the first one
    where |C| < 1/e. Returns ``(t_star, rms_residual)`` of the fit in ln|C|.
    Raises NoDecayError if |C| never drops below 1/e.
    """
    mag = trace.magnitude
    below = np.flatnonzero(mag < np.exp(-1.0))
    if below.size == 0:
        raise NoDecayError("coherence never drops below 1/e within the trace")
    stop = below[0] + 1
    t = trace.times[:stop]
    y = np.log(mag[:stop])
    t2 = t * t
    denom = np.dot(t2, t2)
    if denom == 0.0:
        raise NoDecayError("no samples with t > 0 before the decay")
    rate = -np.dot(t2, y) / denom
    if rate <= 0.0:
        raise ArithmeticError("initial decay fit produced a non-positive rate")
    residual = float(np.sqrt(np.mean((y + rate * t2) ** 2)))
    return float(1.0 / np.sqrt(rate)), residual
