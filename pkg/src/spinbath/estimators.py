"""scikit-learn style wrappers around the simulator.

``CentralSpinDecoherence`` is fitted once per coupling realization and then
maps time grids to coherence values; ``LevelSpacingStatistics`` is fitted on
one or more spectra and maps spectra to unfolded spacings.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .analysis import (
    coherence_from_overlaps,
    overlap_spectrum,
    spacing_histogram,
    unfold_spacings,
)
from .dynamics import coherence_trace, efficiency_of_decoherence
from .model import Branch, ModelParams, build_conditional_hamiltonian, draw_couplings
from .spectral import eigendecompose


class CentralSpinDecoherence(BaseEstimator):
    """Two-branch simulator for one random realization of the model.

    ``fit`` draws the couplings and diagonalizes both conditional
    Hamiltonians. ``transform`` takes a column of times and returns |C(t)|.
    """

    def __init__(self, N=9, kappa=1.0, delta=3.0, omega=1.0, gamma=1.0, eps_sb=1e-3,
                 h_ext=0.0, seed=0, isotropic=False):
        self.N = N
        self.kappa = kappa
        self.delta = delta
        self.omega = omega
        self.gamma = gamma
        self.eps_sb = eps_sb
        self.h_ext = h_ext
        self.seed = seed
        self.isotropic = isotropic

    def _params(self):
        return ModelParams(**self.get_params())

    def fit(self, X=None, y=None):
        params = self._params()
        self.params_ = params
        self.realization_ = draw_couplings(params)
        self.uncoupled_ = eigendecompose(
            build_conditional_hamiltonian(params, self.realization_, Branch.UNCOUPLED))
        self.coupled_ = eigendecompose(
            build_conditional_hamiltonian(params, self.realization_, Branch.COUPLED))
        self.initial_state_ = self.uncoupled_.ground_state()
        self.overlap_report_ = overlap_spectrum(self.coupled_, self.initial_state_)
        self.largest_overlap_ = self.overlap_report_.largest
        return self

    def coherence(self, times, from_overlaps=False):
        """CoherenceTrace on the given times, by direct evolution or from the overlap sum."""
        check_is_fitted(self, "coupled_")
        times = np.ravel(check_array(np.reshape(times, (-1, 1)), ensure_min_samples=1))
        if from_overlaps:
            return coherence_from_overlaps(self.overlap_report_, self.coupled_.eigenvalues,
                                           self.uncoupled_.eigenvalues[0], times)
        return coherence_trace(self.uncoupled_, self.coupled_, self.initial_state_, times)

    def transform(self, X):
        return self.coherence(X).magnitude.reshape(-1, 1)

    def fit_transform(self, X, y=None):
        return self.fit().transform(X)

    def efficiency(self, window=(200.0, 300.0), dt_sample=0.1):
        n = int(round((window[1] - window[0]) / dt_sample))
        times = window[0] + np.arange(n + 1) * dt_sample
        return efficiency_of_decoherence(self.coherence(times), window)


class LevelSpacingStatistics(TransformerMixin, BaseEstimator):
    """Unfolded nearest-neighbour spacing statistics of one or more spectra.

    ``X`` is a 1-D spectrum or a list of spectra. After fitting, ``ks_wigner_``
    and ``ks_poisson_`` hold Kolmogorov-Smirnov distances of the pooled
    spacings to the Wigner-Dyson surmise and to the Poisson law.
    """

    def __init__(self, window_fraction=0.8, bins=40, min_levels=50):
        self.window_fraction = window_fraction
        self.bins = bins
        self.min_levels = min_levels

    @staticmethod
    def _spectra(X):
        if isinstance(X, np.ndarray) and X.ndim == 1:
            return [X]
        if isinstance(X, (list, tuple)) and len(X) and np.ndim(X[0]) == 0:
            return [np.asarray(X, dtype=float)]
        return [np.ravel(check_array(np.reshape(x, (-1, 1)))) for x in X]

    def fit(self, X, y=None, sector_labels=None):
        spectra = self._spectra(X)
        self.histogram_ = spacing_histogram(spectra, sector_labels, self.window_fraction,
                                            self.bins, self.min_levels)
        self.ks_wigner_ = self.histogram_.ks_wigner
        self.ks_poisson_ = self.histogram_.ks_poisson
        return self

    def transform(self, X):
        check_is_fitted(self, "histogram_")
        return np.concatenate(
            [unfold_spacings(s, self.window_fraction)[0] for s in self._spectra(X)])
