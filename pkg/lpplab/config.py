"""
Run configuration: JSON files with a schema version, overridden by flags.
"""
import json
import os
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from types import UnionType
from typing import get_args, get_origin

from lpplab.errors import ConfigError

SCHEMA_VERSION = 1
DEFAULT_MAX_CELLS = 400_000_000
MAX_CELLS_ENV = "LPPLAB_MAX_CELLS"
# fields that change how a run executes but never what it writes
EXECUTION_FIELDS = ("workers",)


def max_cells() -> int:
    """Memory guard on the number of weight cells a single realization may touch."""
    raw = os.environ.get(MAX_CELLS_ENV)
    if raw is None:
        return DEFAULT_MAX_CELLS
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{MAX_CELLS_ENV} must be an integer, got '{raw}'")
    if value < 1:
        raise ConfigError(f"{MAX_CELLS_ENV} must be positive, got {value}")
    return value


@dataclass
class RunConfig:
    """
    Everything a subcommand needs, in one flat record echoed to every output.
    Unset optional fields fall back to the subcommand's own defaults.
    """
    schema_version: int = SCHEMA_VERSION
    family: str = "linear"
    alpha: float | None = None
    beta: float | None = None
    constant: float | None = None
    N: int | None = None
    m: int | None = None
    n: int | None = None
    r: int = 0
    s: int = 0
    tau: float = 0.0
    sigma: float = 0.0
    seed: int = 0
    samples: int = 1000
    statistic: str = "gmn"
    kernel: str = "hard-edge"
    nu: float = 0.0
    x_grid: str = "0:1:0.5"
    y_grid: str | None = None
    xi: list[float] = field(default_factory=list)
    xi_grid: str | None = None
    distribution: str = "tw"
    grid_map: str = "exp"
    order: int = 60
    nodes_per_panel: int = 16
    experiment: str = "gumbel"
    N_list: list[int] = field(default_factory=lambda: [64, 128, 256, 512])
    offsets: list[int] = field(default_factory=list)
    workers: int | None = None
    out: str = "lpplab-out"

    def to_json(self, exclude: tuple[str, ...] = ()) -> str:
        data = {key: value for key, value in asdict(self).items() if key not in exclude}
        return json.dumps(data, sort_keys=True, separators=(",", ":"))


def _field_type(f) -> tuple[type, type | None]:
    """(outer type, element type) of a RunConfig field with `| None` stripped."""
    hint = f.type
    if isinstance(hint, UnionType):
        hint = next(arg for arg in get_args(hint) if arg is not type(None))
    if get_origin(hint) is list:
        return list, get_args(hint)[0]
    return hint, None


def _coerce_number(key: str, value, expected: type):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"Field '{key}' must be a number, got {value!r}")
    if expected is int and isinstance(value, float):
        if value != int(value):
            raise ConfigError(f"Field '{key}' must be an integer, got {value!r}")
        return int(value)
    return value


def _check_types(data: dict):
    known = {f.name: f for f in fields(RunConfig)}
    for key, value in data.items():
        if key not in known:
            raise ConfigError(f"Unknown config field '{key}'")
        if value is None:
            if getattr(RunConfig(), key) is not None:
                raise ConfigError(f"Field '{key}' must not be null")
            continue
        expected, element = _field_type(known[key])
        if expected in (int, float):
            data[key] = _coerce_number(key, value, expected)
        elif expected is str and not isinstance(value, str):
            raise ConfigError(f"Field '{key}' must be a string, got {value!r}")
        elif expected is list:
            if not isinstance(value, list):
                raise ConfigError(f"Field '{key}' must be a list, got {value!r}")
            data[key] = [_coerce_number(key, item, element) for item in value]


def load_config(path: Path | None, overrides: dict | None = None) -> RunConfig:
    """
    Read a JSON config file (if any) and apply non-None overrides on top.
    """
    data = {}
    if path is not None:
        try:
            text = Path(path).read_text()
        except OSError as e:
            raise ConfigError(f"Cannot read config '{path}': {e}")
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError(
                f"Malformed config '{path}' at line {e.lineno}, column {e.colno}: {e.msg}")
        if not isinstance(data, dict):
            raise ConfigError(f"Config '{path}' must hold a JSON object")
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ConfigError(
                f"Config field 'schema_version' must be {SCHEMA_VERSION}, "
                f"got {data.get('schema_version')!r}")
    for key, value in (overrides or {}).items():
        if value is not None:
            data[key] = value
    _check_types(data)
    return RunConfig(**data)
