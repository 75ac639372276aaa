"""Ready-made scenario configurations listed by ``spinbath scenarios``."""

PRESETS = {
    "coherence-vs-kappa": (
        "Coherence |C(t)| for ferromagnetic, intermediate and glassy environments",
        """\
scenario: evolve
N: 9
delta: 3.0
seed: 1
sweep_axis: kappa
sweep_values: [0.1, 0.5, 1.0]
ensemble: 1
""",
    ),
    "overlap-efficiency-scan": (
        "Largest overlap element versus efficiency of decoherence, random (omega, delta, kappa)",
        """\
scenario: correlation-scan
N: 7
kappa: 1.0
delta: 1.0
seed: 2
samples: 200
omega_range: [0.0, 1.0]
delta_range: [0.0, 3.0]
kappa_range: [0.0, 1.0]
""",
    ),
    "overlap-vs-kappa": (
        "Largest overlap element across the ferromagnet to spin-glass crossover",
        """\
scenario: overlap-vs-kappa
N: 9
kappa: 0.0
delta: 3.0
seed: 3
sweep_values: {start: 0.0, stop: 1.0, num: 21}
ensemble: 20
""",
    ),
    "overlap-vs-delta": (
        "Largest overlap element versus coupling strength for several kappa (run once per kappa)",
        """\
scenario: overlap-vs-delta
N: 9
kappa: 0.6
delta: 0.0
seed: 4
sweep_values: {start: 0.0, stop: 10.0, num: 51}
ensemble: 1
""",
    ),
    "eigenflow": (
        "Twenty lowest coupled-branch levels versus delta with ground-state weights",
        """\
scenario: eigenflow
N: 8
kappa: 0.5
delta: 1.0
seed: 5
sweep_values: {start: 0.0, stop: 3.0, num: 61}
k_lowest: 20
""",
    ),
    "level-spacing": (
        "Level-spacing distribution of the environment Hamiltonian",
        """\
scenario: spacing
N: 10
kappa: 1.0
delta: 0.0
eps_sb: 0.0
seed: 6
sweep_values: [1.0, 0.5]
ensemble: 10
sector_mode: symmetry
""",
    ),
    "thermal-overlap": (
        "Largest thermal overlap term versus kappa at T = 0.01, 0.1, 1",
        """\
scenario: thermal
N: 9
kappa: 1.0
delta: 2.0
seed: 7
sweep_values: {start: 0.0, stop: 1.0, num: 11}
temperatures: [0.01, 0.1, 1.0]
ensemble: 10
""",
    ),
    "field-sweep": (
        "Largest overlap element versus uniform external field in a spin glass",
        """\
scenario: field-sweep
N: 9
kappa: 1.0
delta: 3.0
seed: 8
sweep_values: {start: 0.0, stop: 15.0, num: 16}
ensemble: 10
""",
    ),
}
