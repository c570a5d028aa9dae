"""Run configuration: JSON ingestion, algebra construction, point and grid parsing."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .pialg import PresentedAlgebra, build_matrix_order, build_quantum_affine, build_structure_constants
from .scalars import FieldSpec
from .weyl import WeylAlgebra, WeylParams, build_weyl, resolve_epsilon

FAMILIES = ("weyl", "quantum_affine_space", "matrix_order", "structure_constants")
TRACE_NAMES = ("reg", "std", "red")
MAX_GRID = 10**5


class ConfigError(ValueError):
    """Invalid configuration or command-line input."""


@dataclass
class RunConfig:
    field: FieldSpec
    family: str
    params: dict = field(default_factory=dict)
    traces: list = field(default_factory=lambda: ["reg", "red"])
    grid: Any = None
    out: str | None = None
    seed: int = 0


def _parse_field(raw) -> FieldSpec:
    if raw in (None, "rational", "QQ", "Q"):
        return FieldSpec.rational()
    if isinstance(raw, dict):
        if "prime" in raw:
            try:
                return FieldSpec.prime(int(raw["prime"]))
            except ValueError as exc:
                raise ConfigError(f"field.prime: {exc}") from None
        if raw.get("rational"):
            return FieldSpec.rational()
    raise ConfigError(f"field: expected {{\"prime\": p}} or \"rational\", got {raw!r}")


def parse_config(data: dict) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a JSON object")
    family = data.get("family")
    if family not in FAMILIES:
        raise ConfigError(f"family: expected one of {', '.join(FAMILIES)}, got {family!r}")
    F = _parse_field(data.get("field"))
    traces = data.get("traces", ["reg", "red"])
    if not isinstance(traces, list) or any(t not in TRACE_NAMES for t in traces):
        raise ConfigError(f"traces: expected a list drawn from {TRACE_NAMES}, got {traces!r}")
    seed = data.get("seed", 0)
    if not isinstance(seed, int):
        raise ConfigError("seed: expected an integer")
    params = {k: v for k, v in data.items() if k not in ("family", "field", "traces", "grid", "seed", "out")}
    known = {
        "weyl": {"lambda", "epsilon", "chi"},
        "quantum_affine_space": {"pij"},
        "matrix_order": set(),
        "structure_constants": {"structure_constants"},
    }[family]
    extra = set(params) - known
    if extra:
        raise ConfigError(f"unknown keys for family {family}: {sorted(extra)}")
    if family == "weyl":
        for key in ("lambda", "epsilon"):
            if key not in params:
                raise ConfigError(f"{key}: required for the weyl family")
    if family == "structure_constants" and "structure_constants" not in params:
        raise ConfigError("structure_constants: required for this family")
    return RunConfig(F, family, params, list(traces), data.get("grid"), data.get("out"), seed)


def load_config(path: str) -> RunConfig:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_config(data)


@dataclass
class Built:
    algebra: PresentedAlgebra
    weyl: WeylAlgebra | None = None


def build(cfg: RunConfig) -> Built:
    F = cfg.field
    p = cfg.params
    try:
        if cfg.family == "matrix_order":
            return Built(build_matrix_order(F))
        if cfg.family == "quantum_affine_space":
            return Built(build_quantum_affine(F, p.get("pij")))
        if cfg.family == "weyl":
            eps = resolve_epsilon(F, p["epsilon"])
            W = build_weyl(WeylParams(F, tuple(p["lambda"]), eps, p.get("chi")))
            return Built(W.algebra, W)
        sc = p["structure_constants"]
        products = {}
        for entry in sc.get("products", []):
            a, b, row = entry
            products[(a, b)] = row
        alg = build_structure_constants(F, sc.get("center", []), sc["labels"], products, sc.get("identity", "1"))
        return Built(alg)
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed parameters for family {cfg.family}: {exc}") from None


def parse_scalar(F: FieldSpec, text: str):
    try:
        return F(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"not a scalar: {text!r}") from None


def parse_point(A: PresentedAlgebra, text: str) -> tuple:
    """``"X1=3,Y1=0"`` -> point in the center's variable order (all variables required)."""
    values = {}
    for part in text.split(","):
        if not part.strip():
            continue
        if "=" not in part:
            raise ConfigError(f"point entry {part!r} is not NAME=VALUE")
        name, val = (s.strip() for s in part.split("=", 1))
        if name not in A.center.names:
            raise ConfigError(f"unknown center variable {name!r}; expected {', '.join(A.center.names)}")
        values[name] = parse_scalar(A.field, val)
    missing = [n for n in A.center.names if n not in values]
    if missing:
        raise ConfigError(f"point is missing variables {missing}")
    return tuple(values[n] for n in A.center.names)


def grid_points(A: PresentedAlgebra, grid) -> list[tuple]:
    """All valid central points of the grid, in lexicographic order.

    ``grid`` is None/"full" (every point over F_p) or a mapping from variable
    name to a value list (unlisted variables range over F_p).  Points that
    violate the center relations are skipped.
    """
    F = A.field
    names = A.center.names
    if grid is None or grid == "full":
        grid = {}
    if not isinstance(grid, dict):
        raise ConfigError("grid: expected \"full\" or an object of value lists")
    axes = []
    for n in names:
        if n in grid:
            axes.append(sorted({F(v) for v in grid[n]}))
        else:
            if not F.p:
                raise ConfigError(f"grid: variable {n} needs explicit values over QQ")
            axes.append(list(F.elements()))
    total = 1
    for ax in axes:
        total *= len(ax)
    if total > MAX_GRID:
        raise ConfigError(f"grid has {total} points, the budget is {MAX_GRID}")
    out = []
    for pt in itertools.product(*axes):
        try:
            A.center.check_point(pt)
        except ValueError:
            continue
        out.append(tuple(pt))
    return out
