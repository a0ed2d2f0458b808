"""Bundled example datasets and the text-file reader used by the CLI.

File format: one record per line, either ``value`` or ``value,censor`` with
censor 1 = observed event (default) and 0 = right-censored.  Blank lines and
lines starting with ``#`` are skipped.
"""

from __future__ import annotations

from importlib import resources

import numpy as np

from .errors import DomainError, ParseError
from .mle import DataSet

__all__ = ["read_dataset", "dataset_path", "load_failure_times", "load_bearing_fatigue"]


def dataset_path(name: str) -> str:
    """Filesystem path of a bundled dataset (``failure_times`` or ``bearing_fatigue``)."""
    resource = resources.files("bsps").joinpath("data", name + ".csv")
    return str(resource)


def read_dataset(path, name: str = "") -> DataSet:
    values = []
    censored = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) > 2:
                raise ParseError("line %d: expected `value` or `value,censor`" % lineno)
            try:
                value = float(parts[0])
            except ValueError:
                raise ParseError("line %d: bad value %r" % (lineno, parts[0])) from None
            if value <= 0.0:
                raise DomainError("line %d: observation %g is not positive" % (lineno, value))
            if len(parts) == 2:
                if parts[1] not in ("0", "1"):
                    raise ParseError("line %d: censor flag must be 0 or 1" % lineno)
                censored.append(int(parts[1]))
            else:
                censored.append(1)
            values.append(value)
    if not values:
        raise ParseError("no observations found in %s" % path)
    return DataSet(np.array(values), np.array(censored), name=name or str(path))


def load_failure_times() -> DataSet:
    """Failure times of 20 mechanical components (Murthy, Xie and Jiang, 2004)."""
    return read_dataset(dataset_path("failure_times"), name="failure_times")


def load_bearing_fatigue() -> DataSet:
    """Fatigue lives in hours of 10 bearings (McCool, 1974)."""
    return read_dataset(dataset_path("bearing_fatigue"), name="bearing_fatigue")
