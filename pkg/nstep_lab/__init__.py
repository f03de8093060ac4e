"""
nstep-lab

Numerical experiments on the n-step energy of equivariant maps into CAT(0)
spaces, radial distortion of metric cones, and fixed-point constants for the
graph model of random groups.

Usage:
    python -m nstep_lab list
    python -m nstep_lab delta-mu0 --r 2
    python -m nstep_lab run:building-bounds --n-max 6 --csv bounds.csv
"""

# Load .env files before any other imports
from pathlib import Path
from dotenv import load_dotenv


def _load_env_files():
    """Load .env files: global defaults from ~/.nstep/, then project overrides from {cwd}/.nstep/."""
    home_env = Path.home() / ".nstep" / ".env"
    if home_env.exists():
        load_dotenv(home_env)

    cwd_env = Path.cwd() / ".nstep" / ".env"
    if cwd_env.exists():
        load_dotenv(cwd_env, override=True)


_load_env_files()

from .config import Config

__version__ = "1.0.0"
__all__ = [
    "Config",
    "load_env",
]


def load_env(env_path: Path = None):
    """
    Manually load a .env file.

    Args:
        env_path: Path to .env file. If None, reloads default locations.
    """
    if env_path:
        load_dotenv(env_path, override=True)
    else:
        _load_env_files()
