"""Scenario execution and CSV/manifest output.

Every scenario is broken into independent tasks, one per
(sweep point, ensemble member). Tasks may run on a thread pool; results are
always gathered in (point index, member index) order so outputs do not depend
on scheduling.
"""

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import stats

from . import __version__
from .analysis import (
    eigenvalue_flow,
    flip_symmetry_sectors,
    magnetization_sectors,
    overlap_spectrum,
    spacing_histogram,
    thermal_initial_state,
    thermal_largest_term,
    wigner_dyson_pdf,
)
from .dynamics import coherence_trace, efficiency_of_decoherence, initial_decay_time, time_grid
from .errors import NoDecayError
from .model import Branch, build_conditional_hamiltonian, build_environment_hamiltonian, draw_couplings
from .spectral import eigendecompose

SUMMARY_COLUMNS = (
    "point_index",
    "member",
    "seed",
    "N",
    "kappa",
    "delta",
    "omega",
    "h_ext",
    "temperature",
    "largest",
    "cluster_largest",
    "efficiency",
    "t_star",
    "ks_wigner",
    "ks_poisson",
)
TRACE_COLUMNS = ("t", "re_C", "im_C", "abs_C")
EIGENFLOW_COLUMNS = ("delta", "level", "energy", "overlap")
SPACING_COLUMNS = ("bin_left", "bin_right", "density", "wigner_dyson", "poisson")


def member_seed(base_seed, index):
    """Seed of ensemble member ``index``: 64 bits from SeedSequence(base_seed, spawn_key=(index,))."""
    seq = np.random.SeedSequence(int(base_seed), spawn_key=(int(index),))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def fmt(value):
    """Render a number with 17 significant digits; None becomes an empty field."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def csv_text(columns, rows, header=None):
    lines = [f"# {k}: {v}" for k, v in (header or {}).items()]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def trace_csv(trace):
    rows = zip(trace.times, trace.values.real, trace.values.imag, trace.magnitude)
    return csv_text(TRACE_COLUMNS, rows)


def overlap_report_csv(report, energies, metadata):
    rows = ((n, e, p) for n, (e, p) in enumerate(zip(energies, report.overlaps)))
    header = dict(metadata)
    header.update(largest=fmt(report.largest), largest_index=report.largest_index,
                  cluster_largest=fmt(report.cluster_largest))
    return csv_text(("index", "energy", "overlap"), rows, header)


def spacing_csv(hist, metadata):
    left, right = hist.bin_edges[:-1], hist.bin_edges[1:]
    mid = 0.5 * (left + right)
    rows = zip(left, right, hist.densities, wigner_dyson_pdf(mid), np.exp(-mid))
    header = dict(metadata)
    header.update(
        sector_mode=hist.sector_mode,
        unfolding=hist.metadata.get("unfolding"),
        window_fraction=fmt(hist.window_fraction),
        n_spacings=len(hist.spacings),
        ks_wigner=fmt(hist.ks_wigner),
        ks_poisson=fmt(hist.ks_poisson),
    )
    return csv_text(SPACING_COLUMNS, rows, header)


@dataclass
class RunSummary:
    config: object
    records: list
    files: dict = field(default_factory=dict)
    aggregates: dict = field(default_factory=dict)
    seeds: list = field(default_factory=list)
    wall_time: float = 0.0

    def column(self, name):
        return np.array([r.get(name) for r in self.records], dtype=float)

    def provenance(self):
        return {
            "config_hash": self.config.config_hash(),
            "code_version": __version__,
            "wall_time_s": round(self.wall_time, 3),
        }


def _record(point_index, member, seed, params, **values):
    rec = dict.fromkeys(SUMMARY_COLUMNS)
    rec.update(point_index=point_index, member=member, seed=seed, N=params.N, kappa=params.kappa,
               delta=params.delta, omega=params.omega, h_ext=params.h_ext)
    rec.update(values)
    return rec


def _point(cfg, value):
    """Model parameters and temperature for one sweep value."""
    axis = cfg.sweep_axis
    if value is None or axis is None:
        return cfg.model, None
    if axis == "temperature":
        return cfg.model, float(value)
    return cfg.model.replace(**{axis: value}), None


def _branches(params):
    real = draw_couplings(params)
    up = eigendecompose(build_conditional_hamiltonian(params, real, Branch.UNCOUPLED))
    down = eigendecompose(build_conditional_hamiltonian(params, real, Branch.COUPLED))
    return real, up, down


def _file_tag(point_index, member):
    return f"p{point_index:03d}_m{member:03d}"


# Each task returns (records, files) for one (point, member).

def _task_evolve(cfg, point_index, member):
    params, _ = _point(cfg, cfg.points[point_index])
    seed = member_seed(cfg.model.seed, member)
    params = params.replace(seed=seed)
    _, up, down = _branches(params)
    psi0 = up.ground_state()
    report = overlap_spectrum(down, psi0)
    trace = coherence_trace(up, down, psi0, time_grid(cfg.t_max, cfg.dt_sample))
    try:
        t_star = initial_decay_time(trace)[0]
    except NoDecayError:
        t_star = None
    rec = _record(point_index, member, seed, params, largest=report.largest,
                  cluster_largest=report.cluster_largest,
                  efficiency=efficiency_of_decoherence(trace, cfg.window), t_star=t_star)
    files = {f"trace_{_file_tag(point_index, member)}.csv": trace_csv(trace)} if cfg.write_traces else {}
    return [rec], files


def _task_overlap(cfg, point_index, member):
    params, _ = _point(cfg, cfg.points[point_index])
    seed = member_seed(cfg.model.seed, member)
    params = params.replace(seed=seed)
    _, up, down = _branches(params)
    report = overlap_spectrum(down, up.ground_state())
    rec = _record(point_index, member, seed, params, largest=report.largest,
                  cluster_largest=report.cluster_largest)
    files = {}
    if cfg.write_overlaps:
        meta = {"scenario": cfg.scenario, "seed": seed, **{k: fmt(v) for k, v in params.to_dict().items()}}
        files[f"overlap_{_file_tag(point_index, member)}.csv"] = overlap_report_csv(
            report, down.eigenvalues, meta)
    return [rec], files


def _task_correlation(cfg, point_index, member):
    seed = member_seed(cfg.model.seed, member)
    rng = np.random.default_rng(seed)
    omega = rng.uniform(*cfg.omega_range)
    delta = rng.uniform(*cfg.delta_range)
    kappa = rng.uniform(*cfg.kappa_range)
    params = cfg.model.replace(seed=seed, omega=omega, delta=delta, kappa=kappa)
    _, up, down = _branches(params)
    psi0 = up.ground_state()
    report = overlap_spectrum(down, psi0)
    times = time_grid(cfg.t_max, cfg.dt_sample)
    times = times[times >= cfg.window[0] - 1e-9]
    trace = coherence_trace(up, down, psi0, times)
    rec = _record(point_index, member, seed, params, largest=report.largest,
                  cluster_largest=report.cluster_largest,
                  efficiency=efficiency_of_decoherence(trace, cfg.window))
    return [rec], {}


def _task_eigenflow(cfg, point_index, member):
    seed = member_seed(cfg.model.seed, member)
    params = cfg.model.replace(seed=seed)
    grid = np.array(cfg.sweep_values if cfg.sweep_values else (cfg.model.delta,), dtype=float)
    k = min(cfg.k_lowest, params.dim)
    table = eigenvalue_flow(params, grid, k)
    records = [
        _record(g, member, seed, params.replace(delta=float(d)), largest=table.largest[g],
                cluster_largest=table.cluster_largest[g])
        for g, d in enumerate(grid)
    ]
    rows = ((d, n, e, p) for _, d, n, e, p in table.rows())
    return records, {f"eigenflow_m{member:03d}.csv": csv_text(EIGENFLOW_COLUMNS, rows)}


def _spectrum_and_labels(cfg, params):
    env = eigendecompose(build_environment_hamiltonian(params, draw_couplings(params)))
    if cfg.sector_mode == "magnetization":
        return env.eigenvalues, magnetization_sectors(env, params.N), ("magnetization",)
    if cfg.sector_mode == "symmetry":
        labels, resolved = flip_symmetry_sectors(env, params.N)
        return env.eigenvalues, labels, resolved
    return env.eigenvalues, None, ()


def _task_spacing(cfg, point_index, member):
    params, _ = _point(cfg, cfg.points[point_index])
    seed = member_seed(cfg.model.seed, member)
    params = params.replace(seed=seed)
    energies, labels, resolved = _spectrum_and_labels(cfg, params)
    hist = spacing_histogram(energies, labels, cfg.window_fraction, cfg.bins, min_levels=1)
    rec = _record(point_index, member, seed, params, ks_wigner=hist.ks_wigner,
                  ks_poisson=hist.ks_poisson)
    # spectra are pooled per point after all members finish
    return [rec], {"__spectrum__": (energies, labels, resolved)}


def _task_thermal(cfg, point_index, member):
    params, temperature = _point(cfg, cfg.points[point_index])
    seed = member_seed(cfg.model.seed, member)
    params = params.replace(seed=seed)
    _, env, down = _branches(params)
    temps = (temperature,) if temperature is not None else cfg.temperatures
    records = []
    for T in temps:
        state = thermal_initial_state(env, T, seed)
        records.append(_record(point_index, member, seed, params, temperature=T,
                               largest=thermal_largest_term(state, down, env)))
    return records, {}


def _task_field(cfg, point_index, member):
    return _task_overlap(cfg, point_index, member)


TASKS = {
    "evolve": _task_evolve,
    "overlap-vs-kappa": _task_overlap,
    "overlap-vs-delta": _task_overlap,
    "correlation-scan": _task_correlation,
    "eigenflow": _task_eigenflow,
    "spacing": _task_spacing,
    "thermal": _task_thermal,
    "field-sweep": _task_field,
}


def _task_grid(cfg):
    if cfg.scenario == "correlation-scan":
        return [(0, m) for m in range(cfg.samples)]
    if cfg.scenario == "eigenflow":
        return [(0, m) for m in range(cfg.ensemble)]
    return [(p, m) for p in range(len(cfg.points)) for m in range(cfg.ensemble)]


def run_scenario(cfg, threads=1):
    """Execute a scenario; returns a RunSummary holding records and file contents."""
    start = time.perf_counter()
    task = TASKS[cfg.scenario]
    grid = _task_grid(cfg)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda pm: task(cfg, *pm), grid))
    else:
        results = [task(cfg, *pm) for pm in grid]

    records, files, spectra = [], {}, {}
    for (p, _), (recs, fs) in zip(grid, results):
        records.extend(recs)
        for name, content in fs.items():
            if name == "__spectrum__":
                spectra.setdefault(p, []).append(content)
            else:
                files[name] = content
    records.sort(key=lambda r: (r["point_index"], r["member"]))

    summary = RunSummary(config=cfg, records=records, files=files)
    summary.seeds = list(dict.fromkeys(r["seed"] for r in records))
    if cfg.scenario == "spacing":
        _pool_spacings(cfg, spectra, summary)
    if cfg.scenario == "correlation-scan":
        rho = stats.spearmanr(summary.column("largest"), summary.column("efficiency")).statistic
        summary.aggregates["spearman_largest_vs_efficiency"] = float(rho)
    summary.wall_time = time.perf_counter() - start
    return summary


def _pool_spacings(cfg, spectra, summary):
    pooled = {}
    for p in sorted(spectra):
        members = spectra[p]
        energies = [m[0] for m in members]
        labels = None if cfg.sector_mode == "none" else [m[1] for m in members]
        resolved = sorted({r for m in members for r in m[2]})
        hist = spacing_histogram(energies, labels, cfg.window_fraction, cfg.bins,
                                 sector_mode=cfg.sector_mode)
        params, _ = _point(cfg, cfg.points[p])
        meta = {"scenario": "spacing", "point_index": p, "kappa": fmt(params.kappa), "N": params.N,
                "eps_sb": fmt(params.eps_sb), "base_seed": cfg.model.seed, "ensemble": cfg.ensemble,
                "symmetries_resolved": "+".join(resolved) or "none"}
        summary.files[f"spacing_p{p:03d}.csv"] = spacing_csv(hist, meta)
        pooled[p] = {"ks_wigner": hist.ks_wigner, "ks_poisson": hist.ks_poisson,
                     "n_spacings": len(hist.spacings)}
    summary.aggregates["pooled_spacing"] = pooled


def summary_csv(summary):
    rows = ([r[c] for c in SUMMARY_COLUMNS] for r in summary.records)
    return csv_text(SUMMARY_COLUMNS, rows)


def manifest_json(summary):
    cfg = summary.config
    doc = {
        "scenario": cfg.scenario,
        "config": cfg.to_dict(),
        "config_source": cfg.source,
        "seeds": summary.seeds,
        "seed_rule": "member j uses SeedSequence(base_seed, spawn_key=(j,)).generate_state(1, uint64)",
        "aggregates": summary.aggregates,
        "files": sorted(summary.files) + ["summary.csv"],
        "provenance": summary.provenance(),
    }
    return json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n"


def write_outputs(summary, directory):
    """Write data CSVs, summary.csv and manifest.json; returns the written paths."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    contents = dict(summary.files)
    contents["summary.csv"] = summary_csv(summary)
    contents["manifest.json"] = manifest_json(summary)
    written = []
    for name in sorted(contents):
        path = out / name
        try:
            with open(path, "w", newline="") as fh:
                fh.write(contents[name])
        except OSError as err:
            raise OSError(err.errno, f"could not write {path}: {err.strerror}") from err
        written.append(os.fspath(path))
    return written
