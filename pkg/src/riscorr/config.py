"""Flat ``key = value`` run configuration.

Lines are ``key = value``; blank lines and ``#`` comments are ignored.
``kappa`` is linear, ``kappa_db`` is converted with 10**(dB/10); the two are
mutually exclusive.  Angles accept plain floats or ``pi`` forms such as
``pi/6`` or ``6*pi``.
"""

from __future__ import annotations

import math
import re

from .analytics import db_to_linear
from .channel import SystemParams
from .experiments import ExperimentConfig, PhaseMode, Sweep
from .geometry import ArrayGeometry
from .numerics import ConfigError

KEYS = (
    "m", "n1", "n2", "kappa", "kappa_db", "paths_k", "paths_l", "realizations",
    "phase_mode", "equal_phase_value", "master_seed", "sweep", "sweep_values",
    "output_dir",
)

DEFAULT_N_SWEEP = (16, 36, 64, 100, 144, 196, 256, 324, 400, 576, 784, 1024)
DEFAULT_N_SWEEP_CODEBOOK = (16, 64, 256, 1024)
DEFAULT_M_SWEEP = (1, 2, 4, 8)
DEFAULT_KAPPA_SWEEP = tuple(float(k) for k in range(11))

_PI_FORM = re.compile(r"^([-+]?[\d.]*(?:e[-+]?\d+)?)\s*\*?\s*pi(?:\s*/\s*([\d.]+))?$")


def parse_angle(text: str) -> float:
    text = text.strip().lower()
    try:
        return float(text)
    except ValueError:
        pass
    m = _PI_FORM.match(text)
    if not m:
        raise ValueError(f"cannot parse angle {text!r}")
    coef = m.group(1)
    coef = 1.0 if coef in ("", "+") else -1.0 if coef == "-" else float(coef)
    div = float(m.group(2)) if m.group(2) else 1.0
    return coef * math.pi / div


def read_entries(source: str) -> dict[str, str]:
    entries = {}
    for lineno, raw in enumerate(source.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in KEYS:
            raise ConfigError(f"{key}: unknown configuration key")
        if key in entries:
            raise ConfigError(f"{key}: given more than once")
        entries[key] = value
    return entries


def _convert(key, value, kind):
    try:
        if kind is int:
            return int(value)
        if kind is float:
            return float(value)
        return kind(value)
    except ValueError as exc:
        raise ConfigError(f"{key}: invalid value {value!r}") from exc


def _values_list(key, text, kind):
    items = [t for t in (s.strip() for s in text.split(",")) if t]
    return tuple(_convert(key, t, kind) for t in items)


def resolve(entries: dict[str, str]) -> tuple[ExperimentConfig, str]:
    """Build the experiment config (defaults applied) and the output directory."""
    unknown = set(entries) - set(KEYS)
    if unknown:
        raise ConfigError(f"{sorted(unknown)[0]}: unknown configuration key")
    if "kappa" in entries and "kappa_db" in entries:
        raise ConfigError("kappa, kappa_db: mutually exclusive, give only one")
    get = entries.get
    if "kappa_db" in entries:
        kappa = db_to_linear(_convert("kappa_db", entries["kappa_db"], float))
    else:
        kappa = _convert("kappa", get("kappa", "5"), float)

    phase_kind = get("phase_mode", "equal")
    phase_value = _convert("equal_phase_value", get("equal_phase_value", "pi/6"), parse_angle)
    sweep_kind = get("sweep", "none")
    if sweep_kind == "n":
        vtype = int
        default = DEFAULT_N_SWEEP_CODEBOOK if phase_kind == "codebook" else DEFAULT_N_SWEEP
    elif sweep_kind == "m":
        vtype, default = int, DEFAULT_M_SWEEP
    else:
        vtype, default = float, DEFAULT_KAPPA_SWEEP if sweep_kind == "kappa" else ()
    values = _values_list("sweep_values", get("sweep_values"), vtype) if "sweep_values" in entries else default

    try:
        geometry = ArrayGeometry(
            n1=_convert("n1", get("n1", "20"), int),
            n2=_convert("n2", get("n2", "20"), int),
            m=_convert("m", get("m", "2"), int),
        )
        params = SystemParams(
            geometry=geometry,
            kappa=kappa,
            paths_k=_convert("paths_k", get("paths_k", "3"), int),
            paths_l=_convert("paths_l", get("paths_l", "3"), int),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    config = ExperimentConfig(
        params=params,
        realizations=_convert("realizations", get("realizations", "10000"), int),
        phase_mode=PhaseMode(phase_kind, phase_value),
        master_seed=_convert("master_seed", get("master_seed", "42"), int),
        sweep=Sweep(sweep_kind, values),
    )
    return config, get("output_dir", ".")


def parse_config(source: str) -> ExperimentConfig:
    return resolve(read_entries(source))[0]


def config_entries(config: ExperimentConfig, output_dir: str = ".") -> dict[str, str]:
    """Inverse of :func:`resolve`; floats are written with ``repr`` so they round-trip."""
    p = config.params
    g = p.geometry
    out = {
        "m": str(g.m),
        "n1": str(g.n1),
        "n2": str(g.n2),
        "kappa": repr(float(p.kappa)),
        "paths_k": str(p.paths_k),
        "paths_l": str(p.paths_l),
        "realizations": str(config.realizations),
        "phase_mode": config.phase_mode.kind,
        "equal_phase_value": repr(float(config.phase_mode.value)),
        "master_seed": str(config.master_seed),
        "sweep": config.sweep.kind,
    }
    if config.sweep.kind != "none":
        out["sweep_values"] = ", ".join(
            str(v) if isinstance(v, int) else repr(float(v)) for v in config.sweep.values)
    out["output_dir"] = output_dir
    return out


def format_entries(entries: dict[str, str]) -> str:
    return "".join(f"{k} = {v}\n" for k, v in entries.items())
