"""Central-spin decoherence in frustrated spin environments by exact diagonalization."""

__version__ = "0.1.0"

from .analysis import (  # noqa: E402
    OverlapReport,
    SpacingHistogram,
    ThermalState,
    coherence_from_overlaps,
    critical_delta,
    eigenvalue_flow,
    flip_symmetry_sectors,
    magnetization_sectors,
    overlap_spectrum,
    spacing_histogram,
    thermal_initial_state,
    thermal_largest_term,
)
from .dynamics import (  # noqa: E402
    CoherenceTrace,
    CompositeState,
    coherence_trace,
    efficiency_of_decoherence,
    initial_decay_time,
    reduced_density_matrix,
)
from .model import (  # noqa: E402
    Branch,
    CouplingRealization,
    ModelParams,
    build_conditional_hamiltonian,
    build_environment_hamiltonian,
    draw_couplings,
)
from .spectral import SpectralDecomposition, eigendecompose, evolve_state, propagate_oracle  # noqa: E402
