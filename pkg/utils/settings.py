"""
Configuration for the toolkit.

Defaults live in ``config.toml`` at the repository root; environment
variables override them (QCB_THREADS bounds parallelism, QCB_CONFIG points
at another file).
"""
import logging
import os
import sys

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - Python 3.10 backport with the same API
    import tomli as tomllib
from dataclasses import dataclass, replace
from pathlib import Path

from utils.exactalg import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "config.toml"


@dataclass(frozen=True)
class Settings:
    """Resolved settings for one run."""

    threads: int = 1
    seed: int = 42
    nmax: int = 6
    qkz_nmax: int = 5
    samples: int = 10
    sample_range: int = 1000
    height: float = 40.0
    panel_width: float = 0.25
    nodes: int = 20
    circle_nodes: int = 256
    tolerance: float = 1e-10
    max_refinements: int = 4
    log_level: str = "WARNING"


_SECTIONS = {
    "compute": {"threads": int, "seed": int},
    "verify": {"nmax": int, "qkz_nmax": int, "samples": int, "sample_range": int},
    "quadrature": {
        "height": float,
        "panel_width": float,
        "nodes": int,
        "circle_nodes": int,
        "tolerance": float,
        "max_refinements": int,
    },
}


def load_settings(path=None, environ=None):
    """
    Read settings from a TOML file and apply environment overrides.

    Parameters:
    -----------
    path : str or Path, optional
        Config file; defaults to $QCB_CONFIG or the repository config.toml
    environ : mapping, optional
        Environment to read overrides from (defaults to os.environ)

    Returns:
    --------
    Settings
        Validated settings
    """
    environ = os.environ if environ is None else environ
    path = Path(path or environ.get("QCB_CONFIG") or DEFAULT_CONFIG_PATH)

    values = {}
    if path.exists():
        try:
            with open(path, "rb") as fh:
                data = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"cannot parse {path}: {exc}") from exc
        for section, fields in _SECTIONS.items():
            for name, kind in fields.items():
                if name in data.get(section, {}):
                    values[name] = kind(data[section][name])
        if "level" in data.get("logging", {}):
            values["log_level"] = str(data["logging"]["level"]).upper()
    else:
        logger.debug("config file %s not found, using defaults", path)

    settings = Settings(**values)

    # QCB_THREADS always wins over the file
    if environ.get("QCB_THREADS"):
        try:
            settings = replace(settings, threads=int(environ["QCB_THREADS"]))
        except ValueError as exc:
            raise ConfigError(f"QCB_THREADS must be an integer, got {environ['QCB_THREADS']!r}") from exc

    validate(settings)
    return settings


def validate(settings):
    if settings.threads < 1:
        raise ConfigError(f"thread count must be positive, got {settings.threads}")
    if settings.nmax < 1 or settings.qkz_nmax < 1:
        raise ConfigError("nmax values must be at least 1")
    if settings.samples < 1:
        raise ConfigError("at least one sample per claim is required")
    if settings.height <= 0 or settings.panel_width <= 0:
        raise ConfigError("quadrature height and panel width must be positive")
    if settings.nodes < 2 or settings.circle_nodes < 4:
        raise ConfigError("too few quadrature nodes")
