"""Experiment configuration, figure sweeps, and CSV emission.

Config files are flat UTF-8 key=value text with dotted section prefixes
(walk.alpha=0.78, sweep.mu_values=0,0.05) and full-line # comments. CSV
output starts with #-prefixed metadata lines (the config echo, the package
version, the seed), then a header row, then data rows with LF endings.
Floats are serialized as shortest round-trip decimals, so identical configs
produce byte-identical files and the plotting frontend can parse them back
exactly.

Column contracts: delta_sweep -> delta,mu,phi; noise_sweep -> t,mu,phi;
relative_sweep -> t,mu,phi,phi_rel; distribution -> t,x,p.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from ._version import __version__
from .errors import ConfigError, ValidationError
from .measures import (
    PHI_MAX,
    PHI_MIN,
    QuantumnessSeries,
    phi,
    phi_delta_series,
    phi_relative,
)
from .walk import WalkConfig, evolve, position_distribution

SWEEP_KINDS = ("delta_sweep", "noise_sweep", "relative_sweep", "distribution")

DEFAULT_MU_VALUES = (0.0, 0.05, 0.1, 0.2)
DEFAULT_DELTA_VALUES = tuple(range(11))


@dataclass(frozen=True)
class ExperimentConfig:
    """A sweep definition on top of a base walk configuration.

    The per-point mu comes from mu_values (the walk's own mu is the base
    value, used directly by the distribution kind). t_fixed (delta sweep)
    and snapshot_times (distribution) default to the final step.
    """

    walk: WalkConfig
    sweep_kind: str = "noise_sweep"
    mu_values: tuple[float, ...] = DEFAULT_MU_VALUES
    delta_values: tuple[int, ...] = DEFAULT_DELTA_VALUES
    t_fixed: int | None = None
    snapshot_times: tuple[int, ...] | None = None
    output_path: str = ""
    emit_distributions: bool = False

    def __post_init__(self):
        if self.sweep_kind not in SWEEP_KINDS:
            raise ConfigError(
                f"unknown sweep kind {self.sweep_kind!r}; expected one of {SWEEP_KINDS}"
            )
        mus = tuple(float(m) for m in self.mu_values)
        if not mus:
            raise ConfigError("mu_values must not be empty")
        for m in mus:
            if not 0.0 <= m <= 1.0:
                raise ConfigError(f"mu value {m!r} outside [0, 1]")
        object.__setattr__(self, "mu_values", mus)
        deltas = tuple(int(d) for d in self.delta_values)
        if not deltas:
            raise ConfigError("delta_values must not be empty")
        for d in deltas:
            if d < 0:
                raise ConfigError(f"delta value {d} must be nonnegative")
        object.__setattr__(self, "delta_values", deltas)
        t_fixed = self.walk.steps if self.t_fixed is None else int(self.t_fixed)
        if not 0 <= t_fixed <= self.walk.steps:
            raise ConfigError(
                f"t_fixed {t_fixed} outside the walk range 0..{self.walk.steps}"
            )
        if self.sweep_kind == "delta_sweep" and max(deltas) > t_fixed:
            raise ConfigError(
                f"delta {max(deltas)} exceeds the fixed time {t_fixed}"
            )
        if self.sweep_kind in ("noise_sweep", "relative_sweep"):
            if self.walk.delta > self.walk.steps:
                raise ConfigError(
                    f"lag {self.walk.delta} exceeds the step count {self.walk.steps}"
                )
        object.__setattr__(self, "t_fixed", t_fixed)
        times = self.snapshot_times
        times = (self.walk.steps,) if times is None else tuple(int(t) for t in times)
        for t in times:
            if not 0 <= t <= self.walk.steps:
                raise ConfigError(
                    f"snapshot time {t} outside the walk range 0..{self.walk.steps}"
                )
        object.__setattr__(self, "snapshot_times", times)


@dataclass(frozen=True)
class SweepResult:
    """Named columns plus the metadata echoed into the CSV preamble."""

    kind: str
    columns: dict[str, np.ndarray]
    metadata: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        lengths = {name: len(col) for name, col in self.columns.items()}
        if len(set(lengths.values())) > 1:
            raise ValidationError(f"ragged sweep columns: {lengths}")
        phi_col = self.columns.get("phi")
        if phi_col is not None and len(phi_col):
            lo, hi = float(np.min(phi_col)), float(np.max(phi_col))
            if lo < PHI_MIN or hi > PHI_MAX:
                raise ValidationError(
                    f"phi column outside [{PHI_MIN}, {PHI_MAX}]: [{lo:.3e}, {hi:.3e}]"
                )

    @property
    def n_rows(self) -> int:
        return 0 if not self.columns else len(next(iter(self.columns.values())))


def _format_number(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _base_metadata(cfg: ExperimentConfig) -> dict[str, str]:
    w = cfg.walk
    meta = {
        "version": __version__,
        "sweep.kind": cfg.sweep_kind,
        "walk.steps": str(w.steps),
        "walk.alpha": repr(w.alpha),
        "walk.mu": repr(w.mu),
        "walk.delta": str(w.delta),
        "walk.coin_init": ",".join(str(c) for c in w.coin_init),
        "walk.lattice_half_width": str(w.lattice_half_width),
        "walk.channel_name": w.channel_name,
        "walk.seed": str(w.seed),
        "sweep.mu_values": ",".join(repr(m) for m in cfg.mu_values),
    }
    if w.channel_ops is not None:
        for j, op in enumerate(w.channel_ops):
            meta[f"channel.kraus.{j}"] = ";".join(
                ",".join(str(entry) for entry in row) for row in np.asarray(op)
            )
    if cfg.sweep_kind == "delta_sweep":
        meta["sweep.delta_values"] = ",".join(str(d) for d in cfg.delta_values)
        meta["sweep.t_fixed"] = str(cfg.t_fixed)
    if cfg.sweep_kind == "distribution":
        meta["sweep.snapshot_times"] = ",".join(str(t) for t in cfg.snapshot_times)
    return meta


def run_delta_sweep(cfg: ExperimentConfig) -> SweepResult:
    """Phi between rho(t_fixed) and rho(t_fixed - delta), per (mu, delta).

    Metadata gains one argmax_delta[mu=...] entry per mu naming the lag that
    maximizes phi for that noise level.
    """
    metadata = _base_metadata(cfg)
    delta_col: list[int] = []
    mu_col: list[float] = []
    phi_col: list[float] = []
    for mu in cfg.mu_values:
        history = evolve(replace(cfg.walk, steps=cfg.t_fixed, mu=mu))
        final = history.states[cfg.t_fixed]
        values = [
            phi(final, history.states[cfg.t_fixed - d]) for d in cfg.delta_values
        ]
        best = cfg.delta_values[int(np.argmax(values))]
        metadata[f"argmax_delta[mu={mu:g}]"] = str(best)
        delta_col.extend(cfg.delta_values)
        mu_col.extend([mu] * len(cfg.delta_values))
        phi_col.extend(values)
    columns = {
        "delta": np.array(delta_col, dtype=np.int64),
        "mu": np.array(mu_col, dtype=np.float64),
        "phi": np.array(phi_col, dtype=np.float64),
    }
    return SweepResult("delta_sweep", columns, metadata)


def _noise_series(cfg: ExperimentConfig) -> dict[float, QuantumnessSeries]:
    series: dict[float, QuantumnessSeries] = {}
    for mu in cfg.mu_values:
        history = evolve(replace(cfg.walk, mu=mu))
        series[mu] = phi_delta_series(history, cfg.walk.delta)
    return series


def run_noise_sweep(cfg: ExperimentConfig) -> SweepResult:
    """Phi_delta(t) for t = delta..steps, one block of rows per mu."""
    per_mu = _noise_series(cfg)
    t_col: list[int] = []
    mu_col: list[float] = []
    phi_col: list[float] = []
    for mu in cfg.mu_values:
        s = per_mu[mu]
        t_col.extend(int(t) for t in s.times)
        mu_col.extend([mu] * len(s))
        phi_col.extend(s.values)
    columns = {
        "t": np.array(t_col, dtype=np.int64),
        "mu": np.array(mu_col, dtype=np.float64),
        "phi": np.array(phi_col, dtype=np.float64),
    }
    return SweepResult("noise_sweep", columns, _base_metadata(cfg))


def run_relative_sweep(cfg: ExperimentConfig) -> SweepResult:
    """Noise sweep plus the phi_rel column (noisy / noiseless at equal t).

    Rows where the noiseless denominator vanishes are omitted; the mu=0
    block is the self-ratio and is identically 1 where defined.
    """
    per_mu = _noise_series(cfg)
    baseline = per_mu.get(0.0)
    if baseline is None:
        history = evolve(replace(cfg.walk, mu=0.0))
        baseline = phi_delta_series(history, cfg.walk.delta)
    t_col: list[int] = []
    mu_col: list[float] = []
    phi_col: list[float] = []
    rel_col: list[float] = []
    for mu in cfg.mu_values:
        s = per_mu[mu]
        rel = phi_relative(s, baseline)
        for t, ratio in zip(rel.times, rel.values):
            t_col.append(int(t))
            mu_col.append(mu)
            phi_col.append(s.value_at(int(t)))
            rel_col.append(float(ratio))
    columns = {
        "t": np.array(t_col, dtype=np.int64),
        "mu": np.array(mu_col, dtype=np.float64),
        "phi": np.array(phi_col, dtype=np.float64),
        "phi_rel": np.array(rel_col, dtype=np.float64),
    }
    return SweepResult("relative_sweep", columns, _base_metadata(cfg))


def run_distribution(cfg: ExperimentConfig) -> SweepResult:
    """Position distributions P(x) at the configured snapshot times."""
    history = evolve(cfg.walk)
    t_col: list[int] = []
    x_col: list[int] = []
    p_col: list[float] = []
    for t in cfg.snapshot_times:
        dist = position_distribution(history.states[t], t)
        positions = dist.positions()
        t_col.extend([t] * positions.size)
        x_col.extend(int(x) for x in positions)
        p_col.extend(dist.probabilities)
    columns = {
        "t": np.array(t_col, dtype=np.int64),
        "x": np.array(x_col, dtype=np.int64),
        "p": np.array(p_col, dtype=np.float64),
    }
    return SweepResult("distribution", columns, _base_metadata(cfg))


RUNNERS = {
    "delta_sweep": run_delta_sweep,
    "noise_sweep": run_noise_sweep,
    "relative_sweep": run_relative_sweep,
    "distribution": run_distribution,
}


def run_sweep(cfg: ExperimentConfig) -> SweepResult:
    return RUNNERS[cfg.sweep_kind](cfg)


def write_sweep_csv(result: SweepResult, path: str | Path) -> None:
    """Emit metadata lines, header, and rows with LF endings."""
    lines = [f"# {key}={value}" for key, value in result.metadata.items()]
    lines.append(",".join(result.columns.keys()))
    cols = list(result.columns.values())
    for i in range(result.n_rows):
        lines.append(",".join(_format_number(col[i]) for col in cols))
    text = "\n".join(lines) + "\n"
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)


def read_sweep_csv(path: str | Path) -> tuple[dict[str, str], dict[str, np.ndarray]]:
    """Parse a file written by write_sweep_csv back into metadata + columns."""
    metadata: dict[str, str] = {}
    header: list[str] | None = None
    rows: list[list[float]] = []
    with open(path, "r", encoding="utf-8") as handle:
        for raw in handle:
            line = raw.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    # Split at the last '=': emitted values never contain one,
                    # while argmax keys do (argmax_delta[mu=0]=2).
                    key, _, value = body.rpartition("=")
                    metadata[key.strip()] = value.strip()
                continue
            if header is None:
                header = [name.strip() for name in line.split(",")]
                continue
            parts = line.split(",")
            if len(parts) != len(header):
                raise ConfigError(
                    f"{path}: row has {len(parts)} fields, header has {len(header)}"
                )
            rows.append([float(p) for p in parts])
    if header is None:
        raise ConfigError(f"{path}: no header row found")
    data = np.array(rows, dtype=np.float64).reshape(len(rows), len(header))
    columns = {name: data[:, j].copy() for j, name in enumerate(header)}
    return metadata, columns


def _parse_bool(value: str, key: str) -> bool:
    lowered = value.strip().lower()
    if lowered in ("true", "1", "yes"):
        return True
    if lowered in ("false", "0", "no"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {value!r}")


def _parse_matrix(value: str, key: str) -> np.ndarray:
    try:
        rows = [
            [complex(entry.strip()) for entry in row.split(",")]
            for row in value.split(";")
        ]
        return np.array(rows, dtype=np.complex128)
    except ValueError as exc:
        raise ConfigError(f"{key}: malformed matrix {value!r} ({exc})") from exc


def parse_config_text(text: str, source: str = "<config>") -> ExperimentConfig:
    """Parse flat key=value config text into an ExperimentConfig."""
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        entries[key.strip()] = value.strip()

    walk_kwargs: dict = {}
    exp_kwargs: dict = {}
    kraus: dict[int, np.ndarray] = {}
    for key, value in entries.items():
        try:
            if key == "walk.steps":
                walk_kwargs["steps"] = int(value)
            elif key == "walk.alpha":
                walk_kwargs["alpha"] = float(value)
            elif key == "walk.mu":
                walk_kwargs["mu"] = float(value)
            elif key == "walk.delta":
                walk_kwargs["delta"] = int(value)
            elif key == "walk.coin_init":
                walk_kwargs["coin_init"] = tuple(
                    complex(c.strip()) for c in value.split(",")
                )
            elif key == "walk.lattice_half_width":
                walk_kwargs["lattice_half_width"] = int(value)
            elif key == "walk.channel_name":
                walk_kwargs["channel_name"] = value
            elif key == "walk.seed":
                walk_kwargs["seed"] = int(value)
            elif key.startswith("channel.kraus."):
                kraus[int(key.rsplit(".", 1)[1])] = _parse_matrix(value, key)
            elif key == "sweep.kind":
                exp_kwargs["sweep_kind"] = value.replace("-", "_")
            elif key == "sweep.mu_values":
                exp_kwargs["mu_values"] = tuple(
                    float(m.strip()) for m in value.split(",")
                )
            elif key == "sweep.delta_values":
                exp_kwargs["delta_values"] = tuple(
                    int(d.strip()) for d in value.split(",")
                )
            elif key == "sweep.t_fixed":
                exp_kwargs["t_fixed"] = int(value)
            elif key == "sweep.snapshot_times":
                exp_kwargs["snapshot_times"] = tuple(
                    int(t.strip()) for t in value.split(",")
                )
            elif key == "output.path":
                exp_kwargs["output_path"] = value
            elif key == "output.emit_distributions":
                exp_kwargs["emit_distributions"] = _parse_bool(value, key)
            else:
                raise ConfigError(f"{source}: unknown config key {key!r}")
        except ConfigError:
            raise
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{source}: bad value for {key}: {value!r}") from exc
    if kraus:
        walk_kwargs["channel_ops"] = tuple(
            kraus[j] for j in sorted(kraus)
        )
        walk_kwargs.setdefault("channel_name", "custom")
    walk_kwargs.setdefault("steps", 100)
    try:
        walk_cfg = WalkConfig(**walk_kwargs)
        return ExperimentConfig(walk=walk_cfg, **exp_kwargs)
    except ValidationError as exc:
        raise ConfigError(f"{source}: {exc}") from exc


def load_config(path: str | Path) -> ExperimentConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config_text(text, source=str(path))
