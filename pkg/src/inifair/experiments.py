"""Experiment configuration, the power-offset cases and the CDF studies.

Configs are TOML files with optional sections; every omitted key takes its
default from :class:`ExperimentConfig`::

    [numerology]
    k = 1
    [users]
    subcarriers1 = [168, 120, 120]   # NUM-1 positions, far end first
    [cdf]
    instances = 200
"""
from __future__ import annotations

import csv
import dataclasses
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .analysis import CdfCurve, SirReport, empirical_cdf, estimate_sir
from .numerology import ConfigurationError, UeProfile, build_allocation, make_numerology
from .scheduler import schedule

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

ALGORITHMS = ("random", "algo1", "algo2")
UE_CLASSES = ("edge", "inner")


@dataclass(frozen=True)
class ExperimentConfig:
    # numerology
    delta_f_ref: float = 15.0
    k: int = 1
    n_ref: int = 4096
    cp_ratio: float = 1 / 16
    # users; subcarriers and powers are listed per position in allocation
    # order: NUM-1 from the far end up to its edge UE, NUM-2 from its edge UE out
    D: int = 3
    E: int = 3
    subcarriers1: tuple[int, ...] = (120, 120, 120)
    subcarriers2: tuple[int, ...] = (120, 120, 120)
    power_mode: str = "fixed"
    powers1: tuple[float, ...] = (0.0, 0.0, 0.0)
    powers2: tuple[float, ...] = (0.0, 0.0, 0.0)
    power_range: tuple[float, float] = (0.0, 10.0)
    # "subcarrier": power_db is the level on every subcarrier;
    # "ue": power_db is the UE total, spread evenly over its subcarriers
    power_reference: str = "subcarrier"
    # simulation
    trials: int = 1000
    seed: int = 0
    guard: int = 0
    # scheduling
    algorithms: tuple[str, ...] = ALGORITHMS
    r: float = 2.0
    averaging: str = "db"
    # power-offset cases
    boost_db: float = 3.0
    case2_boost_db: float = 3.0
    inner_index: int = 1  # NUM-2 position boosted in case 3
    # CDF study
    instances: int = 1000
    inner_trials: int = 50
    workers: int = 1
    # output
    out_dir: str = "out"
    preset: str = "custom"

    def __post_init__(self):
        _validate(self)

    def replace(self, **changes) -> "ExperimentConfig":
        return dataclasses.replace(self, **changes)

    def numerologies(self):
        num1 = make_numerology(0, self.delta_f_ref, self.n_ref, self.cp_ratio)
        num2 = make_numerology(self.k, self.delta_f_ref, self.n_ref, self.cp_ratio)
        return num1, num2


SECTIONS = {
    "numerology": ("delta_f_ref", "k", "n_ref", "cp_ratio"),
    "users": ("D", "E", "subcarriers1", "subcarriers2", "power_mode", "powers1", "powers2", "power_range",
              "power_reference"),
    "simulation": ("trials", "seed", "guard"),
    "scheduler": ("algorithms", "r", "averaging"),
    "cases": ("boost_db", "case2_boost_db", "inner_index"),
    "cdf": ("instances", "inner_trials", "workers"),
    "output": ("out_dir", "preset"),
}


def _validate(cfg: ExperimentConfig):
    if not cfg.r >= 1:
        raise ConfigurationError("scheduler.r", f"r must be >= 1, got {cfg.r}")
    for name in ("D", "E", "trials", "instances", "inner_trials", "workers", "n_ref"):
        value = getattr(cfg, name)
        if int(value) != value or value < 1:
            raise ConfigurationError(name, f"must be a positive integer, got {value!r}")
    if cfg.guard < 0:
        raise ConfigurationError("simulation.guard", f"must be >= 0, got {cfg.guard}")
    if len(cfg.subcarriers1) != cfg.D or len(cfg.subcarriers2) != cfg.E:
        raise ConfigurationError("users.subcarriers1", "need one subcarrier count per UE position (D and E)")
    if any(n < 1 for n in cfg.subcarriers1 + cfg.subcarriers2):
        raise ConfigurationError("users.subcarriers1", "subcarrier counts must be >= 1")
    if cfg.power_mode not in ("fixed", "uniform"):
        raise ConfigurationError("users.power_mode", f"must be 'fixed' or 'uniform', got {cfg.power_mode!r}")
    if len(cfg.powers1) != cfg.D or len(cfg.powers2) != cfg.E:
        raise ConfigurationError("users.powers1", "need one power per UE position (D and E)")
    if cfg.power_reference not in ("subcarrier", "ue"):
        raise ConfigurationError(
            "users.power_reference", f"must be 'subcarrier' or 'ue', got {cfg.power_reference!r}"
        )
    lo, hi = cfg.power_range
    if not lo <= hi:
        raise ConfigurationError("users.power_range", f"lower bound {lo} exceeds upper bound {hi}")
    for name in cfg.algorithms:
        if name not in ALGORITHMS:
            raise ConfigurationError("scheduler.algorithms", f"unknown algorithm {name!r}")
    if cfg.averaging not in ("db", "linear"):
        raise ConfigurationError("scheduler.averaging", f"must be 'db' or 'linear', got {cfg.averaging!r}")
    if cfg.inner_index < 1:
        raise ConfigurationError("cases.inner_index", f"must be >= 1, got {cfg.inner_index}")
    cfg.numerologies()


def load_config(path, base: ExperimentConfig | None = None) -> ExperimentConfig:
    """Read a TOML config; omitted keys keep the values of ``base`` (defaults if None)."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"config file not found: {path}")
    with open(path, "rb") as f:
        try:
            data = tomllib.load(f)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigurationError(str(path), f"invalid TOML: {exc}") from None
    return config_from_dict(data, source=str(path), base=base)


def config_from_dict(data: dict, source: str = "<config>", base: ExperimentConfig | None = None) -> ExperimentConfig:
    values = {}
    for section, body in data.items():
        if section not in SECTIONS:
            raise ConfigurationError(f"{source}:[{section}]", "unknown section")
        if not isinstance(body, dict):
            raise ConfigurationError(f"{source}:{section}", "expected a table")
        for key, value in body.items():
            if key not in SECTIONS[section]:
                raise ConfigurationError(f"{source}:[{section}].{key}", "unknown key")
            values[key] = tuple(value) if isinstance(value, list) else value
    try:
        return base.replace(**values) if base is not None else ExperimentConfig(**values)
    except ConfigurationError as exc:
        raise ConfigurationError(f"{source}:{exc.field}", str(exc).split(": ", 1)[1]) from None


PRESETS = {
    "fig3": dict(preset="fig3"),
    "fig4": dict(preset="fig4", power_mode="uniform"),
    "fig5a": dict(preset="fig5a", power_mode="uniform", subcarriers1=(120, 120, 168), subcarriers2=(84, 120, 120)),
    "fig5b": dict(preset="fig5b", power_mode="uniform", subcarriers1=(120, 120, 672), subcarriers2=(336, 120, 120)),
}

PRESET_TITLES = {
    "fig3": "Fig. 3 power-offset cases",
    "fig4": "Fig. 4 edge-UE SIR CDF, equal subcarriers",
    "fig5a": "Fig. 5(a) inner-UE SIR CDF, 168/84 edge subcarriers",
    "fig5b": "Fig. 5(b) inner-UE SIR CDF, 672/336 edge subcarriers",
    "custom": "custom configuration",
}


def preset(name: str, **overrides) -> ExperimentConfig:
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    return ExperimentConfig(**{**PRESETS[name], **overrides})


# ---------------------------------------------------------------- cases


def case_powers(cfg: ExperimentConfig, case_id: int):
    """Power vectors (allocation order) for one of the four offset cases."""
    p1, p2 = list(cfg.powers1), list(cfg.powers2)
    if case_id == 1:
        pass
    elif case_id == 2:
        p2[0] += cfg.case2_boost_db
    elif case_id == 3:
        if cfg.inner_index >= cfg.E:
            raise ConfigurationError("cases.inner_index", f"NUM-2 has no inner position {cfg.inner_index}")
        p2[cfg.inner_index] += cfg.boost_db
    elif case_id == 4:
        p1[-1] += cfg.boost_db
        p2[0] += cfg.boost_db
    else:
        raise ValueError(f"case id must be 1, 2, 3 or 4, got {case_id!r}")
    return p1, p2


def make_ues(cfg: ExperimentConfig, powers1, powers2):
    ues1 = [UeProfile(f"1-{i}", 1, float(p), int(n)) for i, (p, n) in enumerate(zip(powers1, cfg.subcarriers1), 1)]
    ues2 = [UeProfile(f"2-{i}", 2, float(p), int(n)) for i, (p, n) in enumerate(zip(powers2, cfg.subcarriers2), 1)]
    return ues1, ues2


def place(cfg: ExperimentConfig, order1, order2):
    """Allocate scheduled UEs; bandwidth belongs to the position, not the UE."""
    num1, num2 = cfg.numerologies()

    def at(ue, n):
        power = ue.power_db
        if cfg.power_reference == "ue":
            power -= 10 * np.log10(n)
        return dataclasses.replace(ue, n_subcarriers=int(n), power_db=float(power))

    return build_allocation(
        num1,
        num2,
        [at(ue, n) for ue, n in zip(order1, cfg.subcarriers1)],
        [at(ue, n) for ue, n in zip(order2, cfg.subcarriers2)],
        cfg.guard,
    )


def fixed_allocation(cfg: ExperimentConfig, powers1=None, powers2=None):
    ues1, ues2 = make_ues(cfg, cfg.powers1 if powers1 is None else powers1, cfg.powers2 if powers2 is None else powers2)
    return place(cfg, ues1, ues2)


def run_sir(cfg: ExperimentConfig, out_dir=None, name: str = "sir"):
    """Estimate SIR for the config's fixed power vectors."""
    alloc = fixed_allocation(cfg)
    report = estimate_sir(alloc, cfg.trials, cfg.seed)
    if out_dir is not None:
        _write_report(report, alloc, Path(out_dir), name, cfg, "fixed powers")
    return report, alloc


def run_case(cfg: ExperimentConfig, case_id: int, out_dir=None):
    """Run one power-offset case; returns ``(report, allocation)``."""
    if cfg.power_mode != "fixed":
        raise ConfigurationError("users.power_mode", "cases need fixed power mode")
    p1, p2 = case_powers(cfg, case_id)
    alloc = fixed_allocation(cfg, p1, p2)
    report = estimate_sir(alloc, cfg.trials, cfg.seed)
    if out_dir is not None:
        _write_report(report, alloc, Path(out_dir), f"case{case_id}", cfg, f"case {case_id}")
    return report, alloc


# ---------------------------------------------------------------- CDF study


@dataclass
class CdfResult:
    config: ExperimentConfig
    samples: dict[tuple[str, str, int], list[float]] = field(default_factory=dict)

    def curves(self) -> dict[tuple[str, str, int], CdfCurve]:
        return {key: empirical_cdf(v) for key, v in sorted(self.samples.items())}

    def values(self, algorithm: str, ue_class: str, numerology=None) -> np.ndarray:
        nums = (1, 2) if numerology is None else (numerology,)
        return np.concatenate([self.samples[(algorithm, ue_class, n)] for n in nums])


def _instance_seeds(seed: int, index: int):
    ss = np.random.SeedSequence([seed, index])
    power_seed, sched_seed, inner_seed = ss.generate_state(3)
    return int(power_seed), int(sched_seed), int(inner_seed)


def run_instance(cfg: ExperimentConfig, index: int):
    """One outer CDF instance: draw powers, schedule, estimate SIR.

    Returns ``{algorithm: [(ue_class, numerology, sir_db), ...]}``.
    """
    power_seed, sched_seed, inner_seed = _instance_seeds(cfg.seed, index)
    rng = np.random.default_rng(power_seed)
    lo, hi = cfg.power_range
    ues1, ues2 = make_ues(cfg, rng.uniform(lo, hi, cfg.D), rng.uniform(lo, hi, cfg.E))

    out = {}
    for algorithm in cfg.algorithms:
        decision = schedule(algorithm, ues1, ues2, r=cfg.r, seed=sched_seed, averaging=cfg.averaging)
        alloc = place(cfg, decision.order1, decision.order2)
        report = estimate_sir(alloc, cfg.inner_trials, inner_seed)
        rows = []
        for which in (1, 2):
            edge = alloc.edge1 if which == 1 else alloc.edge2
            for ue in alloc.ues(which):
                rows.append(("edge" if ue is edge else "inner", which, report.per_ue_sir_db[ue.id]))
        out[algorithm] = rows
    return out


def _run_chunk(args):
    cfg, indices = args
    return [(i, run_instance(cfg, i)) for i in indices]


def run_cdf_experiment(cfg: ExperimentConfig, out_dir=None, workers=None) -> CdfResult:
    """Per-UE SIR CDFs over random power draws for every configured algorithm."""
    if not cfg.algorithms:
        raise ValueError("at least one scheduling algorithm is required")
    if cfg.power_mode != "uniform":
        raise ConfigurationError("users.power_mode", "the CDF study needs uniform power mode")
    workers = cfg.workers if workers is None else workers

    indices = list(range(cfg.instances))
    if workers <= 1:
        results = [(i, run_instance(cfg, i)) for i in indices]
    else:
        chunks = [(cfg, indices[j::workers]) for j in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            results = [item for chunk in pool.map(_run_chunk, chunks) for item in chunk]
        results.sort(key=lambda item: item[0])

    res = CdfResult(cfg)
    for algorithm in cfg.algorithms:
        for ue_class in UE_CLASSES:
            for which in (1, 2):
                res.samples[(algorithm, ue_class, which)] = []
    for _, per_alg in results:
        for algorithm, rows in per_alg.items():
            for ue_class, which, sir in rows:
                res.samples[(algorithm, ue_class, which)].append(sir)
    res.samples = {k: v for k, v in res.samples.items() if v}

    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        write_cdf_csv(res.curves(), out_dir / f"{cfg.preset}_cdf.csv", _metadata(cfg, "cdf"))
    return res


# ---------------------------------------------------------------- CSV


def _metadata(cfg: ExperimentConfig, what: str) -> dict:
    return {
        "preset": cfg.preset,
        "reproduces": PRESET_TITLES.get(cfg.preset, cfg.preset),
        "run": what,
        "seed": cfg.seed,
        "trials": cfg.trials if what != "cdf" else cfg.inner_trials,
        "instances": cfg.instances if what == "cdf" else "",
    }


def _write_header(f, meta):
    for key, value in (meta or {}).items():
        if value != "":
            f.write(f"# {key}: {value}\n")


def write_bin_csv(report: SirReport, alloc, path, meta=None):
    with open(path, "w", newline="") as f:
        _write_header(f, meta)
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["numerology", "absolute_bin", "ue_id", "sir_db"])
        for which, b, ue_id, sir in report.bin_rows(alloc):
            w.writerow([which, b, ue_id, repr(sir)])


def write_ue_csv(report: SirReport, alloc, path, meta=None):
    with open(path, "w", newline="") as f:
        _write_header(f, meta)
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["ue_id", "per_ue_sir_db"])
        for ue in alloc.order1 + alloc.order2:
            w.writerow([ue.id, repr(report.per_ue_sir_db[ue.id])])


def write_cdf_csv(curves: dict, path, meta=None):
    with open(path, "w", newline="") as f:
        _write_header(f, meta)
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["algorithm", "ue_class", "numerology", "sir_db", "prob"])
        for (algorithm, ue_class, which), curve in sorted(curves.items()):
            for v, p in zip(curve.values, curve.probs):
                w.writerow([algorithm, ue_class, which, repr(float(v)), repr(float(p))])


def read_cdf_csv(path) -> dict[tuple[str, str, int], CdfCurve]:
    rows = {}
    with open(path, newline="") as f:
        lines = (line for line in f if not line.startswith("#"))
        for row in csv.DictReader(lines):
            key = (row["algorithm"], row["ue_class"], int(row["numerology"]))
            rows.setdefault(key, ([], []))
            rows[key][0].append(float(row["sir_db"]))
            rows[key][1].append(float(row["prob"]))
    return {k: CdfCurve(np.array(v), np.array(p)) for k, (v, p) in rows.items()}


def emit_csv(obj, path, alloc=None, meta=None):
    """Write a SIR report (per-bin rows; needs ``alloc``) or a dict of CDF curves."""
    if isinstance(obj, SirReport):
        if alloc is None:
            raise ValueError("writing a SIR report needs its allocation")
        write_bin_csv(obj, alloc, path, meta)
    elif isinstance(obj, dict):
        write_cdf_csv(obj, path, meta)
    else:
        raise TypeError(f"cannot write {type(obj).__name__} as CSV")


def _write_report(report, alloc, out_dir: Path, name: str, cfg, what: str):
    out_dir.mkdir(parents=True, exist_ok=True)
    meta = _metadata(cfg, what)
    write_bin_csv(report, alloc, out_dir / f"{name}_bins.csv", meta)
    write_ue_csv(report, alloc, out_dir / f"{name}_ues.csv", meta)


