"""Scenario configuration: a flat YAML document with strict key checking."""

import hashlib
from dataclasses import asdict, dataclass, field, fields

import yaml

from .errors import ArgumentError, ConfigParseError, ConfigValidationError
from .model import DEFAULT_MAX_N, ModelParams

SCENARIOS = (
    "evolve",
    "overlap-vs-kappa",
    "overlap-vs-delta",
    "correlation-scan",
    "eigenflow",
    "spacing",
    "thermal",
    "field-sweep",
)

SECTOR_MODES = ("none", "magnetization", "symmetry")
MODEL_KEYS = ("N", "kappa", "delta", "omega", "gamma", "eps_sb", "h_ext", "seed", "isotropic", "max_N")
SWEEPABLE = ("N", "kappa", "delta", "omega", "gamma", "eps_sb", "h_ext", "temperature")

DEFAULT_SWEEP_AXIS = {
    "evolve": "kappa",
    "overlap-vs-kappa": "kappa",
    "overlap-vs-delta": "delta",
    "correlation-scan": None,
    "eigenflow": "delta",
    "spacing": "kappa",
    "thermal": "kappa",
    "field-sweep": "h_ext",
}


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str
    model: ModelParams
    sweep_axis: str = None
    sweep_values: tuple = ()
    ensemble: int = 1
    output_dir: str = "out"
    dt_sample: float = 0.1
    t_max: float = 300.0
    window: tuple = (200.0, 300.0)
    temperatures: tuple = (0.01, 0.1, 1.0)
    k_lowest: int = 20
    window_fraction: float = 0.8
    bins: int = 40
    sector_mode: str = "none"
    samples: int = 200
    omega_range: tuple = (0.0, 1.0)
    delta_range: tuple = (0.0, 3.0)
    kappa_range: tuple = (0.0, 1.0)
    write_traces: bool = True
    write_overlaps: bool = False
    source: str = field(default="", compare=False, repr=False)

    @property
    def points(self):
        """Sweep values, or a single point at the base model when no sweep is set."""
        if self.sweep_axis is None or not self.sweep_values:
            return (None,)
        return self.sweep_values

    def config_hash(self):
        return hashlib.sha256(self.source.encode()).hexdigest()

    def to_dict(self):
        d = asdict(self)
        d.pop("source")
        return d


_RUN_KEYS = {f.name for f in fields(ScenarioConfig)} - {"model", "source"}
_ALLOWED = set(MODEL_KEYS) | _RUN_KEYS | {"sweep"}


def _yaml_line(err):
    mark = getattr(err, "problem_mark", None) or getattr(err, "context_mark", None)
    return mark.line + 1 if mark is not None else None


def _pair(name, value):
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ConfigValidationError(name, "expected a two-element list")
    a, b = (float(v) for v in value)
    if b < a:
        raise ConfigValidationError(name, f"upper bound {b} below lower bound {a}")
    return (a, b)


def _sweep_values(spec):
    """A list of values, or {start, stop, num} for an inclusive linear grid."""
    if isinstance(spec, dict):
        unknown = set(spec) - {"start", "stop", "num"}
        if unknown:
            raise ConfigValidationError("sweep_values", f"unknown keys {sorted(unknown)}")
        try:
            start, stop, num = float(spec["start"]), float(spec["stop"]), int(spec["num"])
        except KeyError as err:
            raise ConfigValidationError("sweep_values", f"missing {err.args[0]}") from None
        if num < 1:
            raise ConfigValidationError("sweep_values", "num must be >= 1")
        if num == 1:
            return (start,)
        step = (stop - start) / (num - 1)
        return tuple(start + k * step for k in range(num))
    if not isinstance(spec, (list, tuple)):
        raise ConfigValidationError("sweep_values", "expected a list or {start, stop, num}")
    return tuple(spec)


def parse_config(text):
    """Parse and validate a scenario document, filling defaults."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as err:
        raise ConfigParseError(str(getattr(err, "problem", err)), _yaml_line(err)) from None
    if doc is None:
        doc = {}
    if not isinstance(doc, dict):
        raise ConfigParseError("top level must be a mapping of keys to values", 1)
    return config_from_dict(doc, source=text)


def config_from_dict(doc, source=""):
    doc = dict(doc)
    for key in doc:
        if key not in _ALLOWED:
            raise ConfigValidationError(key, "unknown key")
    if "scenario" not in doc:
        raise ConfigValidationError("scenario", "required")
    scenario = doc.pop("scenario")
    if scenario not in SCENARIOS:
        raise ConfigValidationError("scenario", f"must be one of {', '.join(SCENARIOS)}")

    model_kw = {k: doc.pop(k) for k in MODEL_KEYS if k in doc}
    for required in ("N", "kappa", "delta"):
        if required not in model_kw:
            model_kw.setdefault(required, {"N": 9, "kappa": 1.0, "delta": 3.0}[required])
    model = _build_model(model_kw)

    # "sweep" is shorthand for {axis: values}
    if "sweep" in doc:
        sweep = doc.pop("sweep")
        if not isinstance(sweep, dict) or len(sweep) != 1:
            raise ConfigValidationError("sweep", "expected a single {axis: values} entry")
        (axis, values), = sweep.items()
        doc.setdefault("sweep_axis", axis)
        doc.setdefault("sweep_values", values)

    run = {}
    axis = doc.pop("sweep_axis", DEFAULT_SWEEP_AXIS[scenario])
    if axis is not None and axis not in SWEEPABLE:
        raise ConfigValidationError("sweep_axis", f"must be one of {', '.join(SWEEPABLE)}")
    run["sweep_axis"] = axis
    values = _sweep_values(doc.pop("sweep_values", []))
    if axis == "N":
        values = tuple(int(v) for v in values)
    else:
        values = tuple(float(v) for v in values)
    for v in values:
        try:
            if axis == "temperature":
                if v <= 0:
                    raise ArgumentError(f"temperature must be positive, got {v}")
            elif axis is not None:
                model.replace(**{axis: v})
        except ArgumentError as err:
            raise ConfigValidationError(axis, str(err)) from None
    run["sweep_values"] = values

    for key in ("ensemble", "k_lowest", "bins", "samples"):
        if key in doc:
            value = doc.pop(key)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ConfigValidationError(key, "must be an integer >= 1")
            run[key] = value
    for key in ("dt_sample", "t_max", "window_fraction"):
        if key in doc:
            value = float(doc.pop(key))
            if not value > 0:
                raise ConfigValidationError(key, "must be positive")
            run[key] = value
    if run.get("window_fraction", 0.8) > 1:
        raise ConfigValidationError("window_fraction", "must be <= 1")
    for key in ("window", "omega_range", "delta_range", "kappa_range"):
        if key in doc:
            run[key] = _pair(key, doc.pop(key))
    kr = run.get("kappa_range", (0.0, 1.0))
    if kr[0] < 0 or kr[1] > 1:
        raise ConfigValidationError("kappa_range", "must lie within [0, 1]")
    for key in ("omega_range", "delta_range"):
        if run.get(key, (0.0, 0.0))[0] < 0:
            raise ConfigValidationError(key, "must be non-negative")
    if "temperatures" in doc:
        temps = doc.pop("temperatures")
        temps = tuple(float(t) for t in (temps if isinstance(temps, list) else [temps]))
        if not temps or min(temps) <= 0:
            raise ConfigValidationError("temperatures", "must be a non-empty list of positive values")
        run["temperatures"] = temps
    if "sector_mode" in doc:
        mode = doc.pop("sector_mode")
        if mode not in SECTOR_MODES:
            raise ConfigValidationError("sector_mode", f"must be one of {', '.join(SECTOR_MODES)}")
        run["sector_mode"] = mode
    for key in ("write_traces", "write_overlaps"):
        if key in doc:
            value = doc.pop(key)
            if not isinstance(value, bool):
                raise ConfigValidationError(key, "must be true or false")
            run[key] = value
    if "output_dir" in doc:
        run["output_dir"] = str(doc.pop("output_dir"))

    window = run.get("window", (200.0, 300.0))
    if scenario in ("evolve", "correlation-scan") and window[1] > run.get("t_max", 300.0) + 1e-9:
        raise ConfigValidationError("window", "extends past t_max")
    return ScenarioConfig(scenario=scenario, model=model, source=source, **run)


def _build_model(kw):
    for key in ("N", "seed", "max_N"):
        if key in kw and (not isinstance(kw[key], int) or isinstance(kw[key], bool)):
            raise ConfigValidationError(key, "must be an integer")
    if "isotropic" in kw and not isinstance(kw["isotropic"], bool):
        raise ConfigValidationError("isotropic", "must be true or false")
    kw.setdefault("max_N", DEFAULT_MAX_N)
    for key in ("kappa", "delta", "omega", "gamma", "eps_sb", "h_ext"):
        if key in kw:
            try:
                kw[key] = float(kw[key])
            except (TypeError, ValueError):
                raise ConfigValidationError(key, "must be a number") from None
    try:
        return ModelParams(**kw)
    except ArgumentError as err:
        field_name = str(err).split(" ", 1)[0]
        raise ConfigValidationError(field_name, str(err)) from None
