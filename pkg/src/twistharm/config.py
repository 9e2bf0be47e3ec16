"""Run configuration: tolerances, guardrails, TOML-style config files.

Python 3.10 has no stdlib TOML reader and the build environment pins the
dependency set, so `parse_toml_min` implements the needed subset: [section]
and [a.b] headers, key = value with strings, ints, floats, booleans, and
flat arrays, plus # comments.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from typing import Any, Dict, List, Optional


@dataclass(frozen=True)
class Tolerances:
    orthogonality: float = 1e-5
    radial_projection: float = 1e-5
    hecke_bochner: float = 1e-4
    hecke_bochner_vanishing: float = 1e-6
    weighted_fit: float = 1e-4
    calibration_stability: float = 1e-4
    expansion_slack: float = 1e-4
    parseval: float = 1e-3
    sphere_recovery: float = 1e-4
    zero_noise_floor: float = 1e-8
    cone_recovery: float = 1e-3
    slice_demo: float = 2e-2
    quadrature: float = 1e-10


@dataclass(frozen=True)
class Guardrails:
    symbolic_pq_max: int = 6
    symbolic_k_max: int = 8
    symbolic_n_max: int = 3
    numeric_n_max: int = 2
    grid_steps_max_n1: int = 256
    grid_steps_max_n2: int = 48
    slice_z_steps_max: int = 32
    slice_t_steps_max: int = 33


@dataclass(frozen=True)
class RunConfig:
    tolerances: Tolerances = field(default_factory=Tolerances)
    guardrails: Guardrails = field(default_factory=Guardrails)
    seed: int = 20250810
    threads: int = 1
    extras: Dict[str, Any] = field(default_factory=dict)


def _parse_scalar(text: str):
    text = text.strip()
    if text.startswith('"') and text.endswith('"'):
        return text[1:-1]
    if text.startswith("'") and text.endswith("'"):
        return text[1:-1]
    if text == "true":
        return True
    if text == "false":
        return False
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        pass
    raise ValueError(f"cannot parse TOML value: {text!r}")


def parse_toml_min(text: str) -> Dict[str, Any]:
    """Parse the TOML subset used by the config files into nested dicts."""
    root: Dict[str, Any] = {}
    section = root
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            section = root
            for part in line[1:-1].strip().split("."):
                section = section.setdefault(part.strip(), {})
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.split("#", 1)[0].strip() if not value.strip().startswith('"') else value.strip()
        if value.startswith("["):
            if not value.endswith("]"):
                raise ValueError(f"line {lineno}: arrays must be single-line")
            inner = value[1:-1].strip()
            section[key] = [_parse_scalar(v) for v in inner.split(",") if v.strip()] if inner else []
        else:
            section[key] = _parse_scalar(value)
    return root


def load_config(path: Optional[str] = None, tol_override: Optional[float] = None,
                seed: Optional[int] = None, threads: Optional[int] = None) -> RunConfig:
    """Build a RunConfig from an optional TOML file plus CLI overrides.

    tol_override, when given, scales no individual knob: it replaces every
    tolerance field (the blunt --tol flag); per-field values come from the
    [tolerances] section of the file.
    """
    data: Dict[str, Any] = {}
    if path:
        with open(path, "r", encoding="utf-8") as fh:
            data = parse_toml_min(fh.read())
    tol_kwargs = {}
    for f in fields(Tolerances):
        if f.name in data.get("tolerances", {}):
            tol_kwargs[f.name] = float(data["tolerances"][f.name])
    guard_kwargs = {}
    for f in fields(Guardrails):
        if f.name in data.get("guardrails", {}):
            guard_kwargs[f.name] = int(data["guardrails"][f.name])
    tols = Tolerances(**tol_kwargs)
    if tol_override is not None:
        tols = Tolerances(**{f.name: float(tol_override) for f in fields(Tolerances)})
    cfg = RunConfig(
        tolerances=tols,
        guardrails=Guardrails(**guard_kwargs),
        seed=int(seed if seed is not None else data.get("seed", RunConfig.seed)),
        threads=int(threads if threads is not None else data.get("threads", 1)),
        extras={k: v for k, v in data.items()
                if k not in ("tolerances", "guardrails", "seed", "threads")},
    )
    return cfg
