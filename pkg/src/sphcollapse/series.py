"""Sample series: ordered (t, r, rdot) triplets tagged with where they came from."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SOURCES = ("explicit", "oracle", "approx", "parametric")


@dataclass(frozen=True)
class SampleSeries:
    t: np.ndarray
    r: np.ndarray
    rdot: np.ndarray
    source: str

    def __post_init__(self):
        if self.source not in SOURCES:
            raise ValueError(f"unknown source {self.source!r}; expected one of {SOURCES}")
        t = np.asarray(self.t, dtype=float)
        r = np.asarray(self.r, dtype=float)
        rdot = np.asarray(self.rdot, dtype=float)
        if not (t.shape == r.shape == rdot.shape) or t.ndim != 1:
            raise ValueError("t, r and rdot must be 1-d arrays of equal length")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "rdot", rdot)

    def __len__(self):
        return self.t.shape[0]


def explicit_series(sol, n: int) -> SampleSeries:
    """``n`` uniformly spaced samples of the explicit solution on ``[0, tau]``."""
    from .collapse import evaluate_r, evaluate_rdot

    if n < 2:
        raise ValueError(f"need at least 2 samples, got {n}")
    t = np.linspace(0.0, sol.tau, n)
    return SampleSeries(t, evaluate_r(sol, t), evaluate_rdot(sol, t), "explicit")
