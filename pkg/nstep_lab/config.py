"""
Configuration management for nstep-lab.

Handles the output directory, the default seed, numeric tolerances and
per-domain defaults from config files and environment variables.
Note: .env files are automatically loaded by the package __init__.py
"""

import os
import json
from pathlib import Path
from dataclasses import dataclass, field
from typing import Optional

DEFAULT_TOLERANCES = {
    "slack": 1e-8,
    "barycenter": 1e-9,
    "descent": 1e-9,
    "psd": 1e-9,
    "identity": 1e-10,
    "max_passes": 10_000,
    "max_iter": 100_000,
    "max_eigensolve_vertices": 4000,
}


@dataclass
class Config:
    """Configuration for nstep-lab experiments."""

    # Where --save writes reports
    output_dir: Path = field(default_factory=lambda: Path.cwd() / "nstep-results")

    # Seed used by stochastic experiments when --seed is not given
    seed: int = 0

    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    # Domain defaults
    defaults: dict = field(default_factory=lambda: {
        "random_group": {"c_abs": 64.0, "trials": 1000},
        "invariants": {"restarts": 4, "max_sweeps": 50},
        "spaces": {"oracle_h": 0.05},
    })

    @classmethod
    def from_env(cls) -> "Config":
        """Load configuration from environment variables."""
        config = cls()
        config._apply_env_overrides()
        return config

    @classmethod
    def from_file(cls, config_path: Path) -> "Config":
        """Load configuration from a JSON file."""
        if not config_path.exists():
            raise FileNotFoundError(f"Config file not found: {config_path}")

        with open(config_path, "r") as f:
            data = json.load(f)

        config = cls()
        config._apply_data(data, only_non_empty=False)
        return config

    @classmethod
    def load(cls, config_path: Optional[Path] = None) -> "Config":
        """
        Load configuration with layered priority:
        1. Specified config file (if provided)
        2. Otherwise: ~/.nstep/config.json (global defaults)
           -> merged with {cwd}/.nstep/config.json (project overrides)
           -> merged with environment variables (final overrides)
        """
        if config_path and config_path.exists():
            config = cls.from_file(config_path)
            config._apply_env_overrides()
            return config

        config = cls()

        home_config = Path.home() / ".nstep" / "config.json"
        if home_config.exists():
            config = cls.from_file(home_config)

        cwd_config = Path.cwd() / ".nstep" / "config.json"
        if cwd_config.exists():
            config._apply_file_overrides(cwd_config)

        config._apply_env_overrides()

        return config

    def _apply_env_overrides(self):
        """Apply environment variable overrides to existing config."""
        if os.getenv("NSTEP_OUTPUT_DIR"):
            self.output_dir = Path(os.getenv("NSTEP_OUTPUT_DIR"))
        if os.getenv("NSTEP_SEED"):
            self.seed = int(os.getenv("NSTEP_SEED"))
        if os.getenv("NSTEP_C_ABS"):
            self.defaults.setdefault("random_group", {})["c_abs"] = float(os.getenv("NSTEP_C_ABS"))

    def _apply_file_overrides(self, config_path: Path):
        """Apply overrides from a config file (only non-empty values)."""
        with open(config_path, "r") as f:
            data = json.load(f)
        self._apply_data(data, only_non_empty=True)

    def _apply_data(self, data: dict, only_non_empty: bool):
        if data.get("output_dir"):
            self.output_dir = Path(data["output_dir"])
        if "seed" in data and (data["seed"] is not None or not only_non_empty):
            self.seed = int(data["seed"])
        if data.get("tolerances"):
            self.tolerances.update(data["tolerances"])
        if data.get("defaults"):
            for domain, values in data["defaults"].items():
                if domain not in self.defaults:
                    self.defaults[domain] = {}
                self.defaults[domain].update(values)

    def to_dict(self) -> dict:
        return {
            "output_dir": str(self.output_dir),
            "seed": self.seed,
            "tolerances": self.tolerances,
            "defaults": self.defaults,
        }

    def save(self, config_path: Optional[Path] = None) -> Path:
        """Save configuration to a JSON file."""
        path = config_path or (Path.home() / ".nstep" / "config.json")
        path.parent.mkdir(parents=True, exist_ok=True)

        with open(path, "w") as f:
            json.dump(self.to_dict(), f, indent=2)

        print(f"Config saved to {path}")
        return path

    def validate(self) -> list[str]:
        """Validate configuration and return list of errors."""
        errors = []

        if not isinstance(self.seed, int) or self.seed < 0:
            errors.append(f"seed must be a non-negative integer, got {self.seed!r}")
        for name, value in self.tolerances.items():
            if name not in DEFAULT_TOLERANCES:
                errors.append(f"unknown tolerance {name!r}")
            elif not isinstance(value, (int, float)) or value <= 0:
                errors.append(f"tolerance {name} must be positive, got {value!r}")
        c_abs = self.get_default("random_group", "c_abs")
        if c_abs is not None and c_abs <= 0:
            errors.append(f"random_group.c_abs must be positive, got {c_abs!r}")

        return errors

    def tolerance(self, name: str) -> float:
        """A tolerance by name, falling back to the built-in default."""
        return self.tolerances.get(name, DEFAULT_TOLERANCES[name])

    def get_default(self, domain: str, key: str, fallback=None):
        """Get a domain-specific default value."""
        return self.defaults.get(domain, {}).get(key, fallback)

    def seed_for(self, args) -> int:
        """--seed if given, else the configured seed; recorded back on args for the report."""
        seed = getattr(args, "seed", None)
        if seed is None:
            seed = self.seed
            args.seed = seed
        return seed
