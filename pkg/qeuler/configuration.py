from __future__ import annotations

import os
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from sympy import isprime

CONFIG_ENV_VAR = "QEULER_CONFIG"
OUTPUT_FORMATS = ("json", "csv", "plain")
YAML_EXTENSIONS = (".yaml", ".yml")


@dataclass(frozen=True)
class EvalConfig:
    tol: float = 1e-10
    pole_tol: float = 1e-8
    max_terms: int = 1_000_000
    padic_prime: int = 3
    padic_precision: int = 12
    padic_level_cap: int = 12
    padic_max_summands: int = 10_000_000
    output: str = "plain"
    workers: int = 1
    cross_check: bool = False

    def __post_init__(self) -> None:
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if not self.pole_tol > 0:
            raise ValueError("pole_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")
        if self.padic_prime == 2 or not isprime(self.padic_prime):
            raise ValueError(f"padic_prime must be an odd prime, got {self.padic_prime}")
        if self.padic_precision < 1:
            raise ValueError("padic_precision must be at least 1")
        if self.padic_level_cap < 1:
            raise ValueError("padic_level_cap must be at least 1")
        if self.padic_max_summands < 1:
            raise ValueError("padic_max_summands must be at least 1")
        if self.output not in OUTPUT_FORMATS:
            raise ValueError(f"output must be one of {', '.join(OUTPUT_FORMATS)}")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")

    @classmethod
    def from_dict(cls, data: Optional[Dict[str, Any]]) -> "EvalConfig":
        if not data:
            return cls()
        known = {item.name for item in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"Unknown configuration keys: {', '.join(unknown)}")
        return cls(
            tol=float(data.get("tol", 1e-10)),
            pole_tol=float(data.get("pole_tol", 1e-8)),
            max_terms=int(data.get("max_terms", 1_000_000)),
            padic_prime=int(data.get("padic_prime", 3)),
            padic_precision=int(data.get("padic_precision", 12)),
            padic_level_cap=int(data.get("padic_level_cap", 12)),
            padic_max_summands=int(data.get("padic_max_summands", 10_000_000)),
            output=str(data.get("output", "plain")),
            workers=int(data.get("workers", 1)),
            cross_check=bool(data.get("cross_check", False)),
        )

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def merged(self, overrides: Dict[str, Any]) -> "EvalConfig":
        """Return a copy with the non-None entries of ``overrides`` applied."""
        changes = {key: value for key, value in overrides.items() if value is not None}
        if not changes:
            return self
        return EvalConfig.from_dict({**self.to_dict(), **changes})

    @classmethod
    def load(cls, config_path: Path | str) -> "EvalConfig":
        path = Path(config_path).expanduser().resolve()
        if not path.exists():
            raise FileNotFoundError(f"Config file {path} does not exist")
        return cls.from_dict(read_config_file(path))

    @classmethod
    def from_env(cls, base: Optional["EvalConfig"] = None) -> "EvalConfig":
        config = base or cls()
        location = os.environ.get(CONFIG_ENV_VAR)
        if not location:
            return config
        path = Path(location).expanduser().resolve()
        if not path.exists():
            raise FileNotFoundError(f"{CONFIG_ENV_VAR} points to {path}, which does not exist")
        return config.merged(read_config_file(path))


def read_config_file(path: Path) -> Dict[str, Any]:
    with path.open("r", encoding="utf-8") as fh:
        text = fh.read()
    if path.suffix in YAML_EXTENSIONS:
        raw = yaml.safe_load(text) or {}
        if not isinstance(raw, dict):
            raise ValueError(f"{path} must contain a mapping of configuration keys")
        return raw
    return parse_key_value(text)


def parse_key_value(text: str) -> Dict[str, Any]:
    """Parse ``key=value`` lines; values are typed the way YAML scalars are."""
    values: Dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ValueError(f"line {lineno}: expected key=value, got {line.strip()!r}")
        key, raw_value = (part.strip() for part in stripped.split("=", 1))
        if not key:
            raise ValueError(f"line {lineno}: missing key")
        values[key] = yaml.safe_load(raw_value) if raw_value else None
    return values
