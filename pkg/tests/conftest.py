import numpy as np
import pytest

from spinbath.model import Branch, ModelParams, build_conditional_hamiltonian, draw_couplings
from spinbath.spectral import eigendecompose


def branch_pair(N, kappa, delta, seed, **kw):
    """(params, realization, uncoupled decomposition, coupled decomposition)."""
    p = ModelParams(N=N, kappa=kappa, delta=delta, seed=seed, **kw)
    real = draw_couplings(p)
    up = eigendecompose(build_conditional_hamiltonian(p, real, Branch.UNCOUPLED))
    down = eigendecompose(build_conditional_hamiltonian(p, real, Branch.COUPLED))
    return p, real, up, down


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_state(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
