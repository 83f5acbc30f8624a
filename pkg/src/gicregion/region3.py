"""Three-user SINR region.

The SNR vector solves the linear system ``A3 u = s`` with
``A3 = I - diag(s) a``::

    A3 = [[ A2     , -a ],        A2 = [[1, -s1 a12], [-s2 a21, 1]]
          [-s3 b^T ,  1 ]]        a  = (s1 a13, s2 a23),  b = (a31, a32)

Eliminating ``u3`` through ``A2`` turns the cap ``u3 <= pbar3`` into an
explicit bound ``s3 <= phi3(s1, s2)``.  The bounds on ``s1`` and ``s2`` are
the same formula on a relabeled channel; the region is the intersection of
the three.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .channel import NormalizedChannel
from .errors import ChannelError, InfeasibleSinr, SingularTransform
from .region2 import EPS, contains as contains2

__all__ = [
    "FACE_ORDERS",
    "SnrPoint3",
    "SinrPoint3",
    "InterferenceMatrix3",
    "SurfaceFace",
    "SurfaceSample3",
    "build_matrix",
    "sinr_to_snr3",
    "snr_to_sinr3",
    "phi3",
    "phi1_3u",
    "phi2_3u",
    "phi_face",
    "pair_determinants",
    "contains3",
    "sample_surface",
]

# Relabeling (1-based) that moves face user i to position 3; the two free
# users keep their natural order in positions 1 and 2.
FACE_ORDERS = {1: (2, 3, 1), 2: (1, 3, 2), 3: (1, 2, 3)}


class SnrPoint3(NamedTuple):
    u1: float
    u2: float
    u3: float


class SinrPoint3(NamedTuple):
    s1: float
    s2: float
    s3: float


def _check3(ch: NormalizedChannel) -> None:
    if ch.n != 3:
        raise ChannelError(f"expected a three-user channel, got n={ch.n}")


def _arrays(p):
    return tuple(np.asarray(x, dtype=float)[()] for x in p)


@dataclass(frozen=True)
class InterferenceMatrix3:
    A3: np.ndarray
    A2: np.ndarray
    a_vec: np.ndarray
    b_vec: np.ndarray
    s3: float

    def assemble(self) -> np.ndarray:
        """Rebuild ``A3`` from its blocks."""
        top = np.hstack([self.A2, -self.a_vec[:, None]])
        bottom = np.hstack([-self.s3 * self.b_vec, [1.0]])
        return np.vstack([top, bottom])


def build_matrix(ch: NormalizedChannel, s) -> InterferenceMatrix3:
    _check3(ch)
    s = np.asarray(s, dtype=float)
    A3 = np.eye(3) - s[:, None] * ch.a
    return InterferenceMatrix3(
        A3=A3,
        A2=A3[:2, :2].copy(),
        a_vec=np.array([s[0] * ch.a[0, 2], s[1] * ch.a[1, 2]]),
        b_vec=ch.a[2, :2].copy(),
        s3=float(s[2]),
    )


def _solve3(a: np.ndarray, s1, s2, s3):
    # Cramer's rule on A3 = I - diag(s) a.  Returns (det, u1, u2, u3).
    x12, x13 = s1 * a[0, 1], s1 * a[0, 2]
    x21, x23 = s2 * a[1, 0], s2 * a[1, 2]
    x31, x32 = s3 * a[2, 0], s3 * a[2, 1]
    det = 1.0 - x23 * x32 - x12 * x21 - x13 * x31 - x12 * x23 * x31 - x13 * x21 * x32
    u1 = ((1.0 - x23 * x32) * s1 + (x12 + x13 * x32) * s2 + (x13 + x12 * x23) * s3) / det
    u2 = ((x21 + x23 * x31) * s1 + (1.0 - x13 * x31) * s2 + (x23 + x13 * x21) * s3) / det
    u3 = ((x31 + x21 * x32) * s1 + (x32 + x12 * x31) * s2 + (1.0 - x12 * x21) * s3) / det
    return det, u1, u2, u3


def sinr_to_snr3(ch: NormalizedChannel, s) -> SnrPoint3:
    """SNR vector producing the SINR target ``s``.

    Raises
    ------
    SingularTransform
        ``det A3 <= EPS``.
    InfeasibleSinr
        The solution has a negative component: ``s`` is outside the cone of
        SINR vectors reachable with non-negative powers.
    """
    _check3(ch)
    s1, s2, s3 = _arrays(s)
    with np.errstate(divide="ignore", invalid="ignore"):
        det, u1, u2, u3 = _solve3(ch.a, s1, s2, s3)
    if np.any(det <= EPS):
        raise SingularTransform(f"det A3 = {np.min(det):.3e} <= {EPS:g}")
    if np.any(u1 < 0) or np.any(u2 < 0) or np.any(u3 < 0):
        raise InfeasibleSinr("SINR target requires negative power")
    return SnrPoint3(u1, u2, u3)


def snr_to_sinr3(ch: NormalizedChannel, u) -> SinrPoint3:
    _check3(ch)
    u1, u2, u3 = _arrays(u)
    a = ch.a
    return SinrPoint3(
        u1 / (1.0 + a[0, 1] * u2 + a[0, 2] * u3),
        u2 / (1.0 + a[1, 0] * u1 + a[1, 2] * u3),
        u3 / (1.0 + a[2, 0] * u1 + a[2, 1] * u2),
    )


def _phi_last(ch: NormalizedChannel, x, y):
    # Bound on s3 given (s1, s2) = (x, y), and the (1,2) pair determinant.
    a, p3 = ch.a, ch.pbar[2]
    det12 = 1.0 - a[0, 1] * a[1, 0] * x * y
    c1 = 1.0 + a[0, 2] * p3
    c2 = 1.0 + a[1, 2] * p3
    t1 = (a[2, 0] + y * a[2, 1] * a[1, 0]) * x * c1
    t2 = (a[2, 1] + x * a[2, 0] * a[0, 1]) * y * c2
    return p3 * det12 / (det12 + t1 + t2), det12


def phi_face(ch: NormalizedChannel, face: int, x, y):
    """Bound on ``s_face`` given the other two SINRs in increasing user order."""
    _check3(ch)
    x, y = _arrays((x, y))
    value, det = _phi_last(ch.permute(FACE_ORDERS[face]), x, y)
    if np.any(det <= EPS):
        raise SingularTransform(f"pairwise determinant {np.min(det):.3e} <= {EPS:g}")
    return value


def phi3(ch: NormalizedChannel, s1, s2):
    """Largest ``s3`` compatible with ``u3 <= pbar3`` given ``s1``, ``s2``."""
    return phi_face(ch, 3, s1, s2)


def phi1_3u(ch: NormalizedChannel, s2, s3):
    return phi_face(ch, 1, s2, s3)


def phi2_3u(ch: NormalizedChannel, s1, s3):
    return phi_face(ch, 2, s1, s3)


def pair_determinants(ch: NormalizedChannel, s) -> tuple:
    """``1 - a_ij a_ji s_i s_j`` for the pairs (2,3), (1,3), (1,2)."""
    _check3(ch)
    s1, s2, s3 = _arrays(s)
    a = ch.a
    return (
        1.0 - a[1, 2] * a[2, 1] * s2 * s3,
        1.0 - a[0, 2] * a[2, 0] * s1 * s3,
        1.0 - a[0, 1] * a[1, 0] * s1 * s2,
    )


def contains3(ch: NormalizedChannel, s, tol: float = 0.0):
    """Membership in the three-user SINR region.

    Each face constraint is only a bound where its pair determinant is
    positive, so points with a non-positive pair determinant are rejected
    outright.
    """
    _check3(ch)
    sv = _arrays(s)
    ok = (sv[0] >= 0) & (sv[1] >= 0) & (sv[2] >= 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        for face in (1, 2, 3):
            i = face - 1
            j, k = (m for m in range(3) if m != i)
            bound, det = _phi_last(ch.permute(FACE_ORDERS[face]), sv[j], sv[k])
            ok &= det > EPS
            ok &= sv[i] <= bound * (1.0 + tol)
    return ok


@dataclass(frozen=True)
class SurfaceFace:
    """Samples of the region boundary where user ``face``'s cap is tight.

    ``points`` has columns ``(s_a, s_b, s_bound)``: the SINRs of the free
    users ``free`` (increasing order) and the bound on ``s_face``.
    """

    face: int
    free: tuple[int, int]
    points: np.ndarray
    grid_points: int
    clipped: int
    shadowed: int


@dataclass(frozen=True)
class SurfaceSample3:
    channel: NormalizedChannel
    resolution: int
    tol: float
    faces: tuple[SurfaceFace, ...]

    def face(self, i: int) -> SurfaceFace:
        return self.faces[i - 1]

    def as_sinr_points(self, i: int) -> np.ndarray:
        """Face ``i`` samples as full ``(s1, s2, s3)`` rows."""
        f = self.face(i)
        out = np.empty_like(f.points)
        j, k = f.free
        out[:, j - 1] = f.points[:, 0]
        out[:, k - 1] = f.points[:, 1]
        out[:, i - 1] = f.points[:, 2]
        return out


def sample_surface(ch: NormalizedChannel, resolution: int, tol: float = 1e-9) -> SurfaceSample3:
    """Sample the three boundary faces of the SINR region.

    For face ``i`` the free pair ``(s_j, s_k)`` runs over a row-major
    ``resolution x resolution`` grid on ``[0, pbar_j] x [0, pbar_k]``.  Grid
    points outside the two-user region of pair ``(j, k)`` are clipped, and
    points where another user's cap binds first (the face bound would leave
    the region) are shadowed; neither produces a row.
    """
    _check3(ch)
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    faces = []
    for face in (1, 2, 3):
        j, k = (m for m in (1, 2, 3) if m != face)
        sj, sk = np.meshgrid(
            np.linspace(0.0, ch.pbar[j - 1], resolution),
            np.linspace(0.0, ch.pbar[k - 1], resolution),
            indexing="ij",
        )
        sj, sk = sj.ravel(), sk.ravel()
        inside = np.asarray(contains2(ch.subchannel((j, k)), (sj, sk)), dtype=bool)
        sj, sk = sj[inside], sk[inside]
        bound, _ = _phi_last(ch.permute(FACE_ORDERS[face]), sj, sk)
        full = [None, None, None]
        full[face - 1], full[j - 1], full[k - 1] = bound, sj, sk
        active = np.asarray(contains3(ch, full, tol=tol), dtype=bool)
        pts = np.column_stack([sj[active], sk[active], bound[active]]) if active.any() else np.empty((0, 3))
        faces.append(
            SurfaceFace(
                face=face,
                free=(j, k),
                points=pts,
                grid_points=resolution * resolution,
                clipped=int((~inside).sum()),
                shadowed=int((~active).sum()),
            )
        )
    return SurfaceSample3(ch, resolution, tol, tuple(faces))
