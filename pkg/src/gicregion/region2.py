"""Two-user SINR region and capacity region, interference treated as noise.

Notation: ``u`` is the normalized SNR vector (``u_i = g_ii p_i / sigma^2``),
``s`` the SINR vector.  The power box ``0 <= u_i <= pbar_i`` maps one to one
onto the SINR region, which is cut out by two constraints::

    s1 <= phi1(s2) = pbar1 / (1 + a12 * s2 * (1 + a21 * pbar1))
    s2 <= phi2(s1) = pbar2 / (1 + a21 * s1 * (1 + a12 * pbar2))

Rates are ``0.5 * log2(1 + s)`` bits per real channel use.

All point-valued functions broadcast: the fields of the point tuples may be
floats or numpy arrays of a common shape.
"""

from __future__ import annotations

import enum
from typing import Literal, NamedTuple

import numpy as np

from .channel import NormalizedChannel
from .errors import ChannelError, DomainError, SingularTransform

__all__ = [
    "EPS",
    "SnrPoint2",
    "SinrPoint2",
    "RateVector",
    "ActiveConstraint",
    "BoundaryPoint2",
    "rate_bits",
    "snr_to_sinr",
    "sinr_to_snr",
    "phi1",
    "phi2",
    "contains",
    "boundary_f",
    "capacity_boundary",
    "sum_rate",
]

# Margin on 1 - a12*a21*s1*s2 below which the inverse transform is refused.
EPS = 1e-12


class SnrPoint2(NamedTuple):
    u1: float
    u2: float


class SinrPoint2(NamedTuple):
    s1: float
    s2: float


class RateVector(NamedTuple):
    r1: float
    r2: float


class ActiveConstraint(str, enum.Enum):
    """Which power cap is tight at a boundary point."""

    USER_ONE_CAP = "UserOneCap"
    USER_TWO_CAP = "UserTwoCap"

    def __str__(self) -> str:
        return self.value


class BoundaryPoint2(NamedTuple):
    t: float
    s: SinrPoint2
    rates: RateVector
    active_constraint: ActiveConstraint


def _check2(ch: NormalizedChannel) -> None:
    if ch.n != 2:
        raise ChannelError(f"expected a two-user channel, got n={ch.n}")


def rate_bits(s):
    """``0.5 * log2(1 + s)``, bits per real channel use."""
    return 0.5 * np.log2(1.0 + np.asarray(s, dtype=float))[()]


def _phi(p_target, a_in, a_out, s_other):
    # Bound on the target SINR given the other user's SINR; the evaluation
    # order a_in * s * c is shared with the three-user formula so that its
    # degenerate faces reproduce these values bit for bit.
    c = 1.0 + a_out * p_target
    return p_target / (1.0 + a_in * s_other * c)


def snr_to_sinr(ch: NormalizedChannel, u) -> SinrPoint2:
    """Map SNRs to SINRs: ``s1 = u1 / (1 + a12 u2)``, ``s2 = u2 / (1 + a21 u1)``."""
    _check2(ch)
    u1, u2 = (np.asarray(x, dtype=float)[()] for x in u)
    a12, a21 = ch.a[0, 1], ch.a[1, 0]
    return SinrPoint2(u1 / (1.0 + a12 * u2), u2 / (1.0 + a21 * u1))


def sinr_to_snr(ch: NormalizedChannel, s) -> SnrPoint2:
    """Inverse of :func:`snr_to_sinr`.

    Raises
    ------
    SingularTransform
        If ``1 - a12 a21 s1 s2 <= EPS`` anywhere, i.e. the SINR pair lies on
        or beyond the hyperbola no finite power reaches.
    """
    _check2(ch)
    s1, s2 = (np.asarray(x, dtype=float)[()] for x in s)
    a12, a21 = ch.a[0, 1], ch.a[1, 0]
    det = 1.0 - a12 * a21 * s1 * s2
    if np.any(det <= EPS):
        raise SingularTransform(
            f"1 - a12*a21*s1*s2 = {np.min(det):.3e} <= {EPS:g}: SINR pair not reachable"
        )
    return SnrPoint2(s1 * (1.0 + s2 * a12) / det, s2 * (1.0 + s1 * a21) / det)


def phi1(ch: NormalizedChannel, s2):
    """Largest SINR of user 1 compatible with user 1's cap, given ``s2``."""
    _check2(ch)
    s2 = np.asarray(s2, dtype=float)[()]
    return _phi(ch.pbar[0], ch.a[0, 1], ch.a[1, 0], s2)


def phi2(ch: NormalizedChannel, s1):
    """Largest SINR of user 2 compatible with user 2's cap, given ``s1``."""
    _check2(ch)
    s1 = np.asarray(s1, dtype=float)[()]
    return _phi(ch.pbar[1], ch.a[1, 0], ch.a[0, 1], s1)


def contains(ch: NormalizedChannel, s, tol: float = 0.0):
    """Membership in the two-user SINR region.

    ``tol`` is a relative slack on both constraints.  The hyperbola
    ``s2 < 1 / (a12 a21 s1)`` is implied by the two constraints and is not
    tested.
    """
    s1, s2 = (np.asarray(x, dtype=float)[()] for x in s)
    ok = (s1 >= 0) & (s2 >= 0)
    ok &= s1 <= phi1(ch, s2) * (1.0 + tol)
    ok &= s2 <= phi2(ch, s1) * (1.0 + tol)
    return ok


def boundary_f(ch: NormalizedChannel, t: float) -> tuple[float, ActiveConstraint]:
    """Upper boundary of the SINR region above ``s1 = t``.

    Returns ``(f(t), active)`` where ``f(t)`` is the min of user 2's cap
    bound and user 1's cap bound solved for ``s2``.  At ``t = 0`` the
    second branch is infinite and ``f(0) = pbar2``.  With ``a12 = 0`` user 1
    never constrains ``s2``, so ``f(pbar1) = phi2(pbar1)`` rather than 0.
    """
    _check2(ch)
    t = float(t)
    p1 = float(ch.pbar[0])
    if not 0.0 <= t <= p1:
        raise DomainError(f"t={t!r} outside [0, pbar1={p1!r}]")
    a12, a21 = float(ch.a[0, 1]), float(ch.a[1, 0])
    two_cap = float(phi2(ch, t))
    if t > 0.0 and a12 > 0.0:
        one_cap = (p1 - t) / (a12 * t * (1.0 + a21 * p1))
    else:
        one_cap = np.inf
    if two_cap <= one_cap:
        return two_cap, ActiveConstraint.USER_TWO_CAP
    return one_cap, ActiveConstraint.USER_ONE_CAP


def _sample_t(p1: float, num_samples: int, spacing: str) -> np.ndarray:
    if spacing == "t":
        t = np.linspace(0.0, p1, num_samples)
    elif spacing == "rate":
        c = np.linspace(0.0, float(rate_bits(p1)), num_samples)
        t = np.expm1(2.0 * c * np.log(2.0))
    else:
        raise ValueError(f"unknown spacing {spacing!r}; expected 't' or 'rate'")
    t[0] = 0.0
    t[-1] = p1
    return np.clip(t, 0.0, p1)


def capacity_boundary(
    ch: NormalizedChannel,
    num_samples: int,
    spacing: Literal["t", "rate"] = "t",
) -> list[BoundaryPoint2]:
    """Sample the capacity-region boundary ``(C1, C2)`` parametrized by ``t = s1``.

    ``spacing="t"`` is uniform in ``t``; ``spacing="rate"`` is uniform in
    ``C1``.  Both endpoints ``t = 0`` and ``t = pbar1`` are always present.
    If ``pbar1 == 0`` the curve collapses to the single point ``t = 0``.
    """
    _check2(ch)
    if num_samples < 2:
        raise ValueError(f"num_samples must be >= 2, got {num_samples}")
    p1 = float(ch.pbar[0])
    ts = _sample_t(p1, num_samples, spacing) if p1 > 0 else np.zeros(1)
    out = []
    for t in ts:
        f, active = boundary_f(ch, t)
        out.append(
            BoundaryPoint2(
                float(t),
                SinrPoint2(float(t), f),
                RateVector(float(rate_bits(t)), float(rate_bits(f))),
                active,
            )
        )
    return out


def sum_rate(ch: NormalizedChannel, u):
    """``C1 + C2`` at SNR allocation ``u`` within the power box."""
    _check2(ch)
    u1, u2 = (np.asarray(x, dtype=float)[()] for x in u)
    p1, p2 = ch.pbar
    if np.any(u1 < 0) or np.any(u2 < 0) or np.any(u1 > p1) or np.any(u2 > p2):
        raise DomainError(f"allocation outside the power box [0,{p1:g}]x[0,{p2:g}]")
    s = snr_to_sinr(ch, (u1, u2))
    return rate_bits(s.s1) + rate_bits(s.s2)
