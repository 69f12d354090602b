"""Weak Phi-functions: left-inverses, conjugates and the A0/A1/A2 checks.

Configs use the same key = value text as the ``orlicz`` command-line tool.
"""

import json
import pathlib
import tempfile

from ._core import (
    DomainError,
    Family,
    UnboundedError,
    UsageError,
    __version__,
    family,
    gallery,
    run,
)

__all__ = [
    "DomainError",
    "Family",
    "UnboundedError",
    "UsageError",
    "__version__",
    "check",
    "density",
    "family",
    "gallery",
    "run",
    "suite",
]


def _run_json(command, config, report):
    with tempfile.TemporaryDirectory() as out:
        code, log = run(command, config, out)
        if code == 2:
            raise UsageError(log.strip())
        data = json.loads((pathlib.Path(out) / report).read_text())
    data["exit_code"] = code
    return data


def check(config):
    """Runs the configured conditions; returns report.json as a dict plus ``exit_code``."""
    return _run_json("check", config, "report.json")


def suite(config):
    """Runs the implication suite; returns suite.json as a dict plus ``exit_code``."""
    return _run_json("suite", config, "suite.json")


def density(config):
    """Runs the mollification experiment; returns density.json as a dict plus ``exit_code``."""
    return _run_json("density", config, "density.json")
