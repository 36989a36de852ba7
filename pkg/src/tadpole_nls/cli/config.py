"""Run configuration: defaults < key=value file < command-line flags."""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Optional

from ..errors import DomainError

ENV_OUTPUT_DIR = "TADPOLE_OUTPUT_DIR"
DEFAULT_OUTPUT_DIR = "tadpole_out"
FORMATS = ("csv", "json")


@dataclass(frozen=True)
class RunConfig:
    quad_tol: float = 1e-10
    root_tol: float = 1e-10
    grid_n: int = 400
    L_trunc_factor: float = 20.0
    output_dir: str = DEFAULT_OUTPUT_DIR
    format: str = "csv"

    def __post_init__(self):
        if not (self.quad_tol > 0 and self.root_tol > 0):
            raise DomainError("tolerances must be positive")
        if self.grid_n < 2:
            raise DomainError("grid_n must be at least 2")
        if not self.L_trunc_factor > 0:
            raise DomainError("L_trunc_factor must be positive")
        if self.format not in FORMATS:
            raise DomainError(f"format must be one of {FORMATS}")

    def hash(self) -> str:
        """Digest of everything that changes numbers; the output location is excluded."""
        d = asdict(self)
        d.pop("output_dir")
        blob = json.dumps(d, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def header_items(self) -> list[tuple[str, str]]:
        return [
            ("config_hash", self.hash()),
            ("quad_tol", repr(self.quad_tol)),
            ("root_tol", repr(self.root_tol)),
            ("grid_n", str(self.grid_n)),
            ("L_trunc_factor", repr(self.L_trunc_factor)),
        ]


_CASTS = {f.name: f.type for f in fields(RunConfig)}


def _cast(key: str, raw: str):
    kind = _CASTS[key]
    if kind in ("float", float):
        return float(raw)
    if kind in ("int", int):
        return int(raw)
    return raw


def read_config_file(path: Path) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _CASTS:
            raise DomainError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            out[key] = _cast(key, value)
        except ValueError as exc:
            raise DomainError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    return out


def build_config(config_file: Optional[str], overrides: dict) -> RunConfig:
    values: dict = {}
    env_dir = os.environ.get(ENV_OUTPUT_DIR)
    if env_dir:
        values["output_dir"] = env_dir
    if config_file:
        values.update(read_config_file(Path(config_file)))
    values.update({k: v for k, v in overrides.items() if v is not None})
    return replace(RunConfig(), **values)
