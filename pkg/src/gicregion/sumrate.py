"""Two-user sum-rate maximization over the power box.

The optimum is attained at one of three corners: ``(0, pbar2)``,
``(pbar1, 0)`` or ``(pbar1, pbar2)``.  Which one is decided by the position
of the full-power rate pair ``M = (R1*, R2*)`` relative to the separator
line ``R1 + R2 = R*``, ``R* = max_i 0.5*log2(1 + pbar_i)``: above it (region
A) full power wins, below it (region B) a single user transmits alone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .channel import NormalizedChannel
from .region2 import RateVector, SnrPoint2, _check2, rate_bits, snr_to_sinr, sum_rate

__all__ = [
    "SEPARATOR_TOL",
    "RegionLabel",
    "Candidate",
    "SumRateSolution",
    "r_star",
    "classify_point",
    "maximize_sum_rate",
    "grid_oracle_max",
]

SEPARATOR_TOL = 1e-9


class RegionLabel(str, enum.Enum):
    A = "A"
    B = "B"
    ON_SEPARATOR = "OnSeparator"

    def __str__(self) -> str:
        return self.value


class Candidate(NamedTuple):
    name: str
    u: SnrPoint2
    value: float


@dataclass(frozen=True)
class SumRateSolution:
    best_u: SnrPoint2
    best_value: float
    region_label: RegionLabel
    r_star: float
    corner_table: tuple[Candidate, ...]
    m_point: RateVector

    @property
    def best_name(self) -> str:
        return next(c.name for c in self.corner_table if c.u == self.best_u)


def r_star(ch: NormalizedChannel) -> float:
    """Best single-user rate ``max(0.5*log2(1+pbar1), 0.5*log2(1+pbar2))``."""
    _check2(ch)
    return float(max(rate_bits(ch.pbar[0]), rate_bits(ch.pbar[1])))


def classify_point(ch: NormalizedChannel, rates, tol: float = SEPARATOR_TOL) -> RegionLabel:
    """Side of the separator ``R1 + R2 = R*`` that a rate pair falls on."""
    r1, r2 = rates
    gap = (r1 + r2) - r_star(ch)
    if gap > tol:
        return RegionLabel.A
    if gap < -tol:
        return RegionLabel.B
    return RegionLabel.ON_SEPARATOR


def maximize_sum_rate(ch: NormalizedChannel) -> SumRateSolution:
    """Best of the three corner allocations.

    Ties go to full power, then ``(pbar1, 0)``, then ``(0, pbar2)``.
    """
    _check2(ch)
    p1, p2 = (float(p) for p in ch.pbar)
    # Listed in tie-break order.
    corners = [
        ("full_power", SnrPoint2(p1, p2)),
        ("user1_only", SnrPoint2(p1, 0.0)),
        ("user2_only", SnrPoint2(0.0, p2)),
    ]
    table = tuple(Candidate(name, u, float(sum_rate(ch, u))) for name, u in corners)
    best = table[0]
    for cand in table[1:]:
        if cand.value > best.value:
            best = cand
    s = snr_to_sinr(ch, (p1, p2))
    m = RateVector(float(rate_bits(s.s1)), float(rate_bits(s.s2)))
    return SumRateSolution(
        best_u=best.u,
        best_value=best.value,
        region_label=classify_point(ch, m),
        r_star=r_star(ch),
        corner_table=table,
        m_point=m,
    )


def grid_oracle_max(ch: NormalizedChannel, resolution: int) -> tuple[SnrPoint2, float]:
    """Brute-force sum-rate maximum on a ``resolution x resolution`` grid.

    The grid spans the whole power box, corners included.  Ties resolve to
    the first grid point in row-major order (``u1`` major).
    """
    _check2(ch)
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    p1, p2 = (float(p) for p in ch.pbar)
    a12, a21 = float(ch.a[0, 1]), float(ch.a[1, 0])
    u1 = np.linspace(0.0, p1, resolution)[:, None]
    u2 = np.linspace(0.0, p2, resolution)[None, :]
    # Evaluated independently of sum_rate on purpose.
    values = 0.5 * np.log2(1.0 + u1 / (1.0 + a12 * u2)) + 0.5 * np.log2(1.0 + u2 / (1.0 + a21 * u1))
    i, j = np.unravel_index(int(np.argmax(values)), values.shape)
    return SnrPoint2(float(u1[i, 0]), float(u2[0, j])), float(values[i, j])
