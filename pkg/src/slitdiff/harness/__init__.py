"""Configuration, orchestration, file output and CLI."""

from .config import ConfigError, RunConfig, parse_config
from .runner import run_bandlimit, run_compare, run_convergence, run_pattern, run_sweep

__all__ = [
    "ConfigError", "RunConfig", "parse_config",
    "run_pattern", "run_compare", "run_sweep", "run_bandlimit", "run_convergence",
]
