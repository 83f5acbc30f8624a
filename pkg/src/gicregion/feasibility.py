"""Membership oracle for the n-user SINR region.

A SINR target ``s`` is achievable iff ``(I - diag(s) a) u = s`` has a
solution with ``0 <= u <= pbar``.  Nothing here is specific to two or three
users; those cases are routed to the closed-form solves of
:mod:`gicregion.region2` and :mod:`gicregion.region3`.

Arrays of points are accepted with users on the last axis.
"""

from __future__ import annotations

from typing import Literal

import numpy as np

from . import region2, region3
from .channel import NormalizedChannel
from .errors import InfeasibleSinr, SingularTransform

__all__ = ["build_matrix_n", "snr_to_sinr_n", "sinr_to_snr_n", "is_feasible"]

EPS = region2.EPS


def _points(ch: NormalizedChannel, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[-1:] != (ch.n,):
        raise ValueError(f"expected points with last axis {ch.n}, got shape {x.shape}")
    return x


def build_matrix_n(ch: NormalizedChannel, s) -> np.ndarray:
    """``I - diag(s) a``; stacked over any leading axes of ``s``."""
    s = _points(ch, s)
    return np.eye(ch.n) - s[..., :, None] * ch.a


def snr_to_sinr_n(ch: NormalizedChannel, u) -> np.ndarray:
    """``s_i = u_i / (1 + sum_j a_ij u_j)``."""
    u = _points(ch, u)
    return u / (1.0 + u @ ch.a.T)


def _lu_solve(ch: NormalizedChannel, s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    A = build_matrix_n(ch, s)
    det = np.linalg.det(A)
    ok = det > EPS
    A = np.where(ok[..., None, None], A, np.eye(ch.n))
    u = np.linalg.solve(A, s[..., :, None])[..., 0]
    return det, u


def _solve(ch: NormalizedChannel, s: np.ndarray, method: str) -> tuple[np.ndarray, np.ndarray]:
    if method == "auto" and ch.n == 2:
        s1, s2 = s[..., 0], s[..., 1]
        a12, a21 = ch.a[0, 1], ch.a[1, 0]
        det = 1.0 - a12 * a21 * s1 * s2
        with np.errstate(divide="ignore", invalid="ignore"):
            u = np.stack([s1 * (1.0 + s2 * a12) / det, s2 * (1.0 + s1 * a21) / det], axis=-1)
        return det, u
    if method == "auto" and ch.n == 3:
        with np.errstate(divide="ignore", invalid="ignore"):
            det, u1, u2, u3 = region3._solve3(ch.a, s[..., 0], s[..., 1], s[..., 2])
        return det, np.stack([u1, u2, u3], axis=-1)
    if method not in ("auto", "lu"):
        raise ValueError(f"unknown method {method!r}; expected 'auto' or 'lu'")
    return _lu_solve(ch, s)


def sinr_to_snr_n(ch: NormalizedChannel, s, method: Literal["auto", "lu"] = "auto") -> np.ndarray:
    """Solve for the SNR vector reaching SINR target ``s``.

    ``method="auto"`` uses closed-form elimination for n = 2, 3 and LU with
    partial pivoting otherwise; ``"lu"`` forces the latter.
    """
    s = _points(ch, s)
    det, u = _solve(ch, s, method)
    if np.any(det <= EPS):
        raise SingularTransform(f"det(I - diag(s) a) = {np.min(det):.3e} <= {EPS:g}")
    if np.any(u < 0):
        raise InfeasibleSinr("SINR target requires negative power")
    return u


def is_feasible(
    ch: NormalizedChannel,
    s,
    tol: float = 0.0,
    method: Literal["auto", "lu"] = "auto",
):
    """True where ``s`` is reachable within the power caps.

    ``tol`` is a relative slack on the caps.  Never raises for singular or
    infeasible targets; those are simply not members.
    """
    s = _points(ch, s)
    det, u = _solve(ch, s, method)
    with np.errstate(invalid="ignore"):
        ok = (det > EPS) & np.all(s >= 0, axis=-1)
        ok &= np.all(u >= 0, axis=-1) & np.all(u <= ch.pbar * (1.0 + tol), axis=-1)
    return ok[()]
