"""Randomized property checks backing ``gicregion verify``.

Each check draws its own channels from a seeded generator and returns a
:class:`CheckResult`.  :func:`run_all` runs the full set with default sizes.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from . import region2, region3, sumrate
from .channel import NormalizedChannel
from .errors import GicError
from .export import write_curve
from .feasibility import is_feasible, snr_to_sinr_n

__all__ = ["Tolerances", "CheckResult", "random_channel", "CHECKS", "run_all"]


@dataclass(frozen=True)
class Tolerances:
    roundtrip: float = 1e-10
    membership: float = 1e-9
    oracle: float = 1e-9
    closed_form: float = 1e-12
    derived: float = 1e-5
    phi_forms: float = 1e-10
    degeneration: float = 1e-14


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    failures: int = 0
    detail: str = ""
    seconds: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.checked > 0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name:<24} checked={self.checked} failures={self.failures} ({self.seconds:.2f}s)"
        if self.detail:
            text += f" {self.detail}"
        return text


def random_channel(rng: np.random.Generator, n: int, a_max: float = 2.0, pbar_max: float = 10.0) -> NormalizedChannel:
    """Cross gains uniform on ``[0, a_max]``, caps uniform on ``(0, pbar_max]``."""
    a = rng.uniform(0.0, a_max, size=(n, n))
    np.fill_diagonal(a, 0.0)
    pbar = pbar_max * (1.0 - rng.random(n))
    return NormalizedChannel(a, pbar)


def _box(rng: np.random.Generator, ch: NormalizedChannel, size: int | None = None) -> np.ndarray:
    shape = (ch.n,) if size is None else (size, ch.n)
    return rng.random(shape) * ch.pbar


def check_fixed_points(rng, tol: Tolerances, trials: int = 100) -> CheckResult:
    res = CheckResult("fixed_points")
    for _ in range(trials):
        ch = random_channel(rng, 2)
        p1, p2 = (float(p) for p in ch.pbar)
        for pt in ((p1, 0.0), (0.0, p2)):
            fwd = tuple(float(x) for x in region2.snr_to_sinr(ch, pt))
            back = tuple(float(x) for x in region2.sinr_to_snr(ch, pt))
            res.checked += 1
            res.failures += (fwd != pt) + (back != pt)
    return res


def _rel_err(x: np.ndarray, ref: np.ndarray) -> np.ndarray:
    scale = np.maximum(np.linalg.norm(ref, axis=-1), np.finfo(float).tiny)
    return np.linalg.norm(x - ref, axis=-1) / scale


def check_roundtrip2(rng, tol: Tolerances, trials: int = 10_000) -> CheckResult:
    res = CheckResult("roundtrip_2user")
    worst = 0.0
    for _ in range(trials):
        ch = random_channel(rng, 2)
        u = _box(rng, ch)
        back = np.array(region2.sinr_to_snr(ch, region2.snr_to_sinr(ch, u)), dtype=float)
        err = float(_rel_err(back, u))
        worst = max(worst, err)
        res.checked += 1
        res.failures += not err < tol.roundtrip
    res.detail = f"max_rel_err={worst:.2e}"
    return res


def check_roundtrip3(rng, tol: Tolerances, trials: int = 10_000) -> CheckResult:
    res = CheckResult("roundtrip_3user")
    worst = 0.0
    for _ in range(trials):
        ch = random_channel(rng, 3)
        u = _box(rng, ch)
        try:
            back = np.array(region3.sinr_to_snr3(ch, region3.snr_to_sinr3(ch, u)), dtype=float)
            err = float(_rel_err(back, u))
        except GicError:
            err = np.inf
        worst = max(worst, err)
        res.checked += 1
        res.failures += not err < tol.roundtrip
    res.detail = f"max_rel_err={worst:.2e}"
    return res


def check_boundary_endpoints(rng, tol: Tolerances, trials: int = 100) -> CheckResult:
    res = CheckResult("boundary_endpoints")
    for _ in range(trials):
        ch = random_channel(rng, 2)
        f0, _ = region2.boundary_f(ch, 0.0)
        f1, _ = region2.boundary_f(ch, float(ch.pbar[0]))
        res.checked += 1
        res.failures += (f0 != ch.pbar[1]) or (f1 != 0.0)
    return res


def check_hyperbola_redundancy(rng, tol: Tolerances, points: int = 10_000) -> CheckResult:
    res = CheckResult("hyperbola_redundancy")
    while res.checked < points:
        ch = random_channel(rng, 2)
        s = _box(rng, ch, 200).T
        inside = np.asarray(region2.contains(ch, s), dtype=bool)
        s1, s2 = s[0][inside], s[1][inside]
        take = min(points - res.checked, s1.size)
        s1, s2 = s1[:take], s2[:take]
        res.checked += take
        res.failures += int(np.count_nonzero(~(ch.a[0, 1] * ch.a[1, 0] * s1 * s2 < 1.0)))
    return res


def check_membership_image(rng, tol: Tolerances, channels: int = 20, grid: int = 201) -> CheckResult:
    res = CheckResult("membership_image_2user")
    for _ in range(channels):
        ch = random_channel(rng, 2)
        p1, p2 = ch.pbar
        g1, g2 = np.meshgrid(np.linspace(0, p1, grid), np.linspace(0, p2, grid), indexing="ij")
        # forward: every image of the power box is a member
        s = region2.snr_to_sinr(ch, (g1, g2))
        fwd = np.asarray(region2.contains(ch, s, tol=tol.membership), dtype=bool)
        res.checked += fwd.size
        res.failures += int(np.count_nonzero(~fwd))
        # backward: every member maps back into the power box
        inside = np.asarray(region2.contains(ch, (g1, g2)), dtype=bool)
        u1, u2 = region2.sinr_to_snr(ch, (g1[inside], g2[inside]))
        ok = (u1 >= 0) & (u2 >= 0) & (u1 <= p1 * (1 + tol.membership)) & (u2 <= p2 * (1 + tol.membership))
        res.checked += ok.size
        res.failures += int(np.count_nonzero(~ok))
    return res


def check_corner_optimality(rng, tol: Tolerances, channels: int = 200, grid: int = 101) -> CheckResult:
    res = CheckResult("corner_optimality")
    worst = -np.inf
    for _ in range(channels):
        ch = random_channel(rng, 2)
        sol = sumrate.maximize_sum_rate(ch)
        _, grid_best = sumrate.grid_oracle_max(ch, grid)
        r1, r2 = sol.m_point
        closed = max(sol.r_star, r1 + r2)
        worst = max(worst, grid_best - sol.best_value)
        label_ok = {
            sumrate.RegionLabel.A: sol.best_u == (ch.pbar[0], ch.pbar[1]),
            sumrate.RegionLabel.B: sol.best_u in ((ch.pbar[0], 0.0), (0.0, ch.pbar[1])),
            sumrate.RegionLabel.ON_SEPARATOR: True,
        }[sol.region_label]
        res.checked += 1
        res.failures += (
            grid_best > sol.best_value + tol.oracle
            or abs(sol.best_value - closed) > tol.closed_form
            or not label_ok
        )
    res.detail = f"max_grid_excess={worst:.2e}"
    return res


# Values obtained by evaluating the sum-rate formula in 30-digit arithmetic.
DERIVED_SUM_RATES = (
    (0.1, 1.9475325801058644, "full_power", sumrate.RegionLabel.A),
    (1.0, 1.1609640474436812, "single", sumrate.RegionLabel.B),
)


def check_derived_sum_rates(rng, tol: Tolerances) -> CheckResult:
    res = CheckResult("derived_sum_rates")
    for a, value, where, label in DERIVED_SUM_RATES:
        sol = sumrate.maximize_sum_rate(NormalizedChannel([[0, a], [a, 0]], [4, 4]))
        corner_ok = sol.best_name == where if where == "full_power" else sol.best_name != "full_power"
        res.checked += 1
        res.failures += abs(sol.best_value - value) > tol.derived or not corner_ok or sol.region_label != label
    return res


def _phi3_block(ch: NormalizedChannel, s1: float, s2: float) -> float:
    m = region3.build_matrix(ch, (s1, s2, 0.0))
    p3 = ch.pbar[2]
    rhs = np.array([s1 * (1 + ch.a[0, 2] * p3), s2 * (1 + ch.a[1, 2] * p3)])
    return float(p3 / (1.0 + m.b_vec @ np.linalg.solve(m.A2, rhs)))


def check_closed_form_vs_block(rng, tol: Tolerances, trials: int = 1000) -> CheckResult:
    res = CheckResult("phi3_closed_vs_block")
    worst = 0.0
    for _ in range(trials):
        ch = random_channel(rng, 3)
        u = _box(rng, ch)
        s = region3.snr_to_sinr3(ch, u)
        s1, s2 = float(s.s1), float(s.s2)
        closed = float(region3.phi3(ch, s1, s2))
        block = _phi3_block(ch, s1, s2)
        err = abs(closed - block) / abs(block)
        worst = max(worst, err)
        res.checked += 1
        res.failures += not err < tol.phi_forms
    res.detail = f"max_rel_err={worst:.2e}"
    return res


def check_degeneration(rng, tol: Tolerances, trials: int = 1000, grid: int = 101, slice_channels: int = 10) -> CheckResult:
    res = CheckResult("degeneration_3user")
    for _ in range(trials):
        ch = random_channel(rng, 3)
        s1 = rng.random() * ch.pbar[0]
        s2 = rng.random() * ch.pbar[1]
        pairs = (
            (region3.phi3(ch, s1, 0.0), region2.phi2(ch.subchannel((1, 3)), s1)),
            (region3.phi3(ch, 0.0, s2), region2.phi2(ch.subchannel((2, 3)), s2)),
        )
        for got, want in pairs:
            res.checked += 1
            res.failures += not abs(got - want) <= tol.degeneration * abs(want)
    mismatches = 0
    for _ in range(slice_channels):
        ch = random_channel(rng, 3)
        g1, g2 = np.meshgrid(
            np.linspace(0, ch.pbar[0], grid), np.linspace(0, ch.pbar[1], grid), indexing="ij"
        )
        three = region3.contains3(ch, (g1, g2, np.zeros_like(g1)))
        two = region2.contains(ch.subchannel((1, 2)), (g1, g2))
        res.checked += g1.size
        mismatches += int(np.count_nonzero(three != two))
    res.failures += mismatches
    res.detail = f"slice_mismatches={mismatches}"
    return res


def check_figure8(rng, tol: Tolerances, samples: int = 101) -> CheckResult:
    res = CheckResult("figure8_boundary")
    ch = NormalizedChannel([[0, 0.4], [0.4, 0]], [1, 1])
    curve = region2.capacity_boundary(ch, samples)
    first, last = curve[0].rates, curve[-1].rates
    res.checked += 2
    res.failures += (tuple(first) != (0.0, 0.5)) + (tuple(last) != (0.5, 0.0))
    c2 = np.array([p.rates.r2 for p in curve])
    res.checked += 1
    res.failures += bool(np.any(np.diff(c2) > 0))
    res.checked += 1
    res.failures += write_curve(curve, "csv", channel=ch) != write_curve(
        region2.capacity_boundary(ch, samples), "csv", channel=ch
    )
    return res


def check_nuser_oracle(rng, tol: Tolerances, sizes: tuple[int, ...] = (4, 5), points: int = 1000) -> CheckResult:
    res = CheckResult("nuser_oracle")
    for n in sizes:
        for _ in range(points):
            ch = random_channel(rng, n)
            u = _box(rng, ch)
            s = snr_to_sinr_n(ch, u)
            res.checked += 1
            res.failures += not is_feasible(ch, s, tol=tol.membership) or bool(np.any(s > u))
    return res


def check_channel_oracle(ch: NormalizedChannel, seed: int, tol: Tolerances, points: int = 1000) -> CheckResult:
    """n-user membership check on one given channel of any size."""
    rng = np.random.default_rng(seed)
    start = time.perf_counter()
    res = CheckResult(f"nuser_oracle[file,n={ch.n}]")
    u = _box(rng, ch, points)
    s = snr_to_sinr_n(ch, u)
    ok = np.asarray(is_feasible(ch, s, tol=tol.membership)) & np.all(s <= u, axis=-1)
    res.checked = points
    res.failures = int(np.count_nonzero(~ok))
    res.seconds = time.perf_counter() - start
    return res


CHECKS: dict[str, Callable[..., CheckResult]] = {
    "fixed_points": check_fixed_points,
    "roundtrip_2user": check_roundtrip2,
    "roundtrip_3user": check_roundtrip3,
    "boundary_endpoints": check_boundary_endpoints,
    "hyperbola_redundancy": check_hyperbola_redundancy,
    "membership_image_2user": check_membership_image,
    "corner_optimality": check_corner_optimality,
    "derived_sum_rates": check_derived_sum_rates,
    "phi3_closed_vs_block": check_closed_form_vs_block,
    "degeneration_3user": check_degeneration,
    "figure8_boundary": check_figure8,
    "nuser_oracle": check_nuser_oracle,
}


def run_check(name: str, seed: int = 0, tol: Tolerances | None = None, **kwargs) -> CheckResult:
    rng = np.random.default_rng(seed)
    start = time.perf_counter()
    res = CHECKS[name](rng, tol or Tolerances(), **kwargs)
    return replace(res, seconds=time.perf_counter() - start)


def run_all(seed: int = 0, tol: Tolerances | None = None, overrides: dict[str, dict] | None = None) -> list[CheckResult]:
    """Run every check; ``overrides`` maps check name to keyword arguments."""
    overrides = overrides or {}
    return [run_check(name, seed, tol, **overrides.get(name, {})) for name in CHECKS]
