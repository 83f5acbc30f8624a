"""CSV / JSON serialization of boundary curves, surfaces and sum-rate results.

Numbers are written with 12 significant digits.  CSV output carries its
metadata as leading ``# key=value`` lines, JSON output as a ``metadata``
object next to ``rows``.  Output is deterministic: identical input gives
identical bytes.
"""

from __future__ import annotations

import io
import json
from typing import Any, Iterable, Sequence

import numpy as np

from .channel import NormalizedChannel, channel_to_dict
from .region2 import BoundaryPoint2
from .region3 import SurfaceSample3
from .sumrate import SumRateSolution

__all__ = [
    "CURVE_HEADER",
    "SURFACE_HEADER",
    "SUMRATE_HEADER",
    "fmt_number",
    "round12",
    "write_curve",
    "write_surface",
    "write_sumrate",
]

CURVE_HEADER = ("t", "s1", "s2", "c1_bits", "c2_bits", "active_constraint")
SURFACE_HEADER = ("face", "s_a", "s_b", "s_bound")
SUMRATE_HEADER = ("candidate", "u1", "u2", "sum_rate_bits", "best")

FORMATS = ("csv", "json")


def fmt_number(x: float) -> str:
    return format(float(x), ".12g")


def round12(x: float) -> float:
    return float(fmt_number(x))


def _cell(v: Any) -> Any:
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return round12(v)
    if isinstance(v, NormalizedChannel):
        return _cell(channel_to_dict(v))
    if isinstance(v, dict):
        return {k: _cell(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_cell(x) for x in v]
    return str(v)


def _csv_text(v: Any) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return fmt_number(v)
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def _render(
    fmt: str,
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    metadata: dict[str, Any],
) -> bytes:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    meta = _cell(metadata)
    rows = [[_cell(v) for v in row] for row in rows]
    if fmt == "json":
        doc = {"metadata": meta, "columns": list(header), "rows": [dict(zip(header, r)) for r in rows]}
        return (json.dumps(doc, indent=2) + "\n").encode("utf-8")
    buf = io.StringIO(newline="")
    for key, value in meta.items():
        buf.write(f"# {key}={_csv_text(value)}\n")
    buf.write(",".join(header) + "\n")
    for r in rows:
        buf.write(",".join(_csv_text(v) for v in r) + "\n")
    return buf.getvalue().encode("utf-8")


def write_curve(
    curve: Sequence[BoundaryPoint2],
    fmt: str = "csv",
    *,
    channel: NormalizedChannel | None = None,
    spacing: str | None = None,
) -> bytes:
    """Serialize a two-user capacity boundary."""
    if not curve:
        raise ValueError("cannot serialize an empty curve")
    meta: dict[str, Any] = {"kind": "capacity_boundary"}
    if channel is not None:
        meta["channel"] = channel
    meta["samples"] = len(curve)
    if spacing is not None:
        meta["spacing"] = spacing
    rows = (
        (p.t, p.s.s1, p.s.s2, p.rates.r1, p.rates.r2, p.active_constraint.value)
        for p in curve
    )
    return _render(fmt, CURVE_HEADER, rows, meta)


def write_surface(surface: SurfaceSample3, fmt: str = "csv") -> bytes:
    """Serialize the three faces of a sampled three-user region boundary."""
    meta: dict[str, Any] = {
        "kind": "sinr_surface",
        "channel": surface.channel,
        "resolution": surface.resolution,
        "tol": surface.tol,
    }
    rows = []
    for f in surface.faces:
        meta[f"face{f.face}"] = {
            "free": list(f.free),
            "rows": len(f.points),
            "grid_points": f.grid_points,
            "clipped": f.clipped,
            "shadowed": f.shadowed,
        }
        rows.extend((f.face, a, b, c) for a, b, c in f.points)
    return _render(fmt, SURFACE_HEADER, rows, meta)


def write_sumrate(sol: SumRateSolution, fmt: str = "csv", *, channel: NormalizedChannel | None = None) -> bytes:
    """Serialize a sum-rate solution: corner table plus verdict in metadata."""
    meta: dict[str, Any] = {"kind": "sum_rate"}
    if channel is not None:
        meta["channel"] = channel
    meta.update(
        {
            "best": sol.best_name,
            "best_u": list(sol.best_u),
            "best_value_bits": sol.best_value,
            "region_label": sol.region_label.value,
            "r_star_bits": sol.r_star,
            "m_point_bits": list(sol.m_point),
        }
    )
    rows = ((c.name, c.u.u1, c.u.u2, c.value, c.u == sol.best_u) for c in sol.corner_table)
    return _render(fmt, SUMRATE_HEADER, rows, meta)
