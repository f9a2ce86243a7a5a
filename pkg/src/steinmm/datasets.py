"""Bundled example datasets (see ``data/README.md`` for provenance)."""

from __future__ import annotations

from importlib import resources

import numpy as np

from .distributions import Sample
from .errors import FixtureError

__all__ = ["load_runoff", "load_mites", "fixture_path"]


def fixture_path(name: str):
    ref = resources.files("steinmm").joinpath("data", name)
    if not ref.is_file():
        raise FixtureError(f"bundled fixture not found: data/{name}")
    return ref


def load_runoff() -> Sample:
    """Jug Bridge runoff amounts, n = 25 (inverse-Gaussian example data)."""
    text = fixture_path("runoff.csv").read_text().strip().splitlines()
    values = np.array([float(line) for line in text[1:]])
    return Sample(values, kind="ig")


def load_mites() -> Sample:
    """Red-mite counts on 150 apple leaves, expanded from frequency form."""
    text = fixture_path("mites.csv").read_text().strip().splitlines()
    values, counts = [], []
    for line in text[1:]:
        v, c = line.split(",")
        values.append(int(v))
        counts.append(int(c))
    return Sample(np.repeat(values, counts).astype(float), kind="nb")
