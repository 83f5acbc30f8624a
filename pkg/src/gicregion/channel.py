"""Channel descriptions and their reduction to normalized form.

Every formula downstream works on :class:`NormalizedChannel`: cross-gain
ratios ``a[i, j] = g[i, j] / g[j, j]`` and normalized SNR caps
``pbar[i] = g[i, i] * P[i] / noise_variance``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

import numpy as np

from .errors import ChannelError

__all__ = [
    "RawChannel",
    "NormalizedChannel",
    "normalize",
    "two_user",
    "three_user",
    "channel_from_dict",
    "channel_to_dict",
    "load_channel",
]


def _frozen(x: Any) -> np.ndarray:
    arr = np.array(x, dtype=float)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class RawChannel:
    """Physical channel: power gains ``g[i, j] = |h[i, j]|**2``, noise, caps."""

    gains: np.ndarray
    noise_variance: float
    power_caps: np.ndarray

    def __post_init__(self) -> None:
        g = _frozen(self.gains)
        p = _frozen(self.power_caps)
        if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] < 2:
            raise ChannelError(f"gains must be an n x n matrix with n >= 2, got shape {g.shape}")
        n = g.shape[0]
        if p.shape != (n,):
            raise ChannelError(f"power_caps must have length {n}, got shape {p.shape}")
        if not np.all(np.isfinite(g)) or not np.all(np.isfinite(p)):
            raise ChannelError("gains and power_caps must be finite")
        for i in range(n):
            if not g[i, i] > 0:
                raise ChannelError(f"direct gain g[{i + 1},{i + 1}] must be > 0, got {g[i, i]!r}")
        bad = np.argwhere(g < 0)
        if bad.size:
            i, j = bad[0]
            raise ChannelError(f"gain g[{i + 1},{j + 1}] must be >= 0, got {g[i, j]!r}")
        if not (np.isfinite(self.noise_variance) and self.noise_variance > 0):
            raise ChannelError(f"noise_variance must be > 0, got {self.noise_variance!r}")
        neg = np.flatnonzero(p < 0)
        if neg.size:
            raise ChannelError(f"power cap P[{neg[0] + 1}] must be >= 0, got {p[neg[0]]!r}")
        object.__setattr__(self, "gains", g)
        object.__setattr__(self, "power_caps", p)
        object.__setattr__(self, "noise_variance", float(self.noise_variance))

    @property
    def n(self) -> int:
        return self.gains.shape[0]


@dataclass(frozen=True)
class NormalizedChannel:
    """Normalized n-user channel.

    ``a`` is n x n with a zero diagonal; ``a[i, j]`` (0-based) scales the
    interference user ``j`` causes at receiver ``i``.  ``pbar[i]`` is the
    SNR cap of user ``i``.  A zero cap is legal and silences that user.
    """

    a: np.ndarray
    pbar: np.ndarray

    def __post_init__(self) -> None:
        a = np.array(self.a, dtype=float)
        p = np.array(self.pbar, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 2:
            raise ChannelError(f"a must be an n x n matrix with n >= 2, got shape {a.shape}")
        n = a.shape[0]
        if p.shape != (n,):
            raise ChannelError(f"pbar must have length {n}, got shape {p.shape}")
        if not np.all(np.isfinite(a)) or not np.all(np.isfinite(p)):
            raise ChannelError("a and pbar must be finite")
        np.fill_diagonal(a, 0.0)
        bad = np.argwhere(a < 0)
        if bad.size:
            i, j = bad[0]
            raise ChannelError(f"cross-gain ratio a[{i + 1},{j + 1}] must be >= 0, got {a[i, j]!r}")
        neg = np.flatnonzero(p < 0)
        if neg.size:
            raise ChannelError(f"pbar[{neg[0] + 1}] must be >= 0, got {p[neg[0]]!r}")
        a.flags.writeable = False
        p.flags.writeable = False
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "pbar", p)

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def permute(self, order: Sequence[int]) -> NormalizedChannel:
        """Relabel users: new user ``p`` is old user ``order[p]`` (1-based)."""
        idx = np.asarray(order, dtype=int) - 1
        if sorted(idx.tolist()) != list(range(self.n)):
            raise ChannelError(f"{tuple(order)} is not a permutation of 1..{self.n}")
        return NormalizedChannel(self.a[np.ix_(idx, idx)], self.pbar[idx])

    def swap(self) -> NormalizedChannel:
        """Two-user index swap {1, 2} -> {2, 1}."""
        if self.n != 2:
            raise ChannelError("swap() is defined for two-user channels")
        return self.permute((2, 1))

    def subchannel(self, users: Sequence[int]) -> NormalizedChannel:
        """Channel restricted to ``users`` (1-based), other users silent."""
        idx = np.asarray(users, dtype=int) - 1
        return NormalizedChannel(self.a[np.ix_(idx, idx)], self.pbar[idx])

    def to_raw(self) -> RawChannel:
        """Raw channel with unit direct gains and unit noise normalizing back to ``self``."""
        g = self.a.copy()
        np.fill_diagonal(g, 1.0)
        return RawChannel(g, 1.0, self.pbar.copy())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NormalizedChannel):
            return NotImplemented
        return np.array_equal(self.a, other.a) and np.array_equal(self.pbar, other.pbar)

    def __hash__(self) -> int:
        return hash((self.a.tobytes(), self.pbar.tobytes()))


def normalize(raw: RawChannel) -> NormalizedChannel:
    """Reduce a physical channel to normalized variables."""
    g = raw.gains
    a = g / np.diag(g)[np.newaxis, :]
    pbar = np.diag(g) * raw.power_caps / raw.noise_variance
    return NormalizedChannel(a, pbar)


def two_user(a12: float, a21: float, pbar1: float, pbar2: float) -> NormalizedChannel:
    return NormalizedChannel([[0.0, a12], [a21, 0.0]], [pbar1, pbar2])


def three_user(
    a12: float, a13: float, a21: float, a23: float, a31: float, a32: float,
    pbar1: float, pbar2: float, pbar3: float,
) -> NormalizedChannel:
    return NormalizedChannel(
        [[0.0, a12, a13], [a21, 0.0, a23], [a31, a32, 0.0]],
        [pbar1, pbar2, pbar3],
    )


_RAW_KEYS = {"gains", "noise_variance", "power_caps"}
_NORM_KEYS = {"a", "pbar"}


def channel_from_dict(doc: Mapping[str, Any]) -> NormalizedChannel:
    """Parse the JSON channel format (raw or pre-normalized form)."""
    if not isinstance(doc, Mapping):
        raise ChannelError("channel description must be a JSON object")
    keys = set(doc)
    has_raw = bool(keys & _RAW_KEYS)
    has_norm = bool(keys & _NORM_KEYS)
    if has_raw == has_norm:
        raise ChannelError(
            "channel description must use exactly one form: "
            "{gains, noise_variance, power_caps} or {a, pbar}"
        )
    try:
        if has_raw:
            missing = _RAW_KEYS - keys
            if missing:
                raise ChannelError(f"raw channel description missing {sorted(missing)}")
            ch = normalize(RawChannel(doc["gains"], float(doc["noise_variance"]), doc["power_caps"]))
        else:
            missing = _NORM_KEYS - keys
            if missing:
                raise ChannelError(f"normalized channel description missing {sorted(missing)}")
            a = np.array(doc["a"], dtype=float)
            if a.ndim == 2 and a.shape[0] == a.shape[1] and np.any(np.diag(a) != 0):
                raise ChannelError("normalized form requires a zero diagonal in a")
            ch = NormalizedChannel(a, doc["pbar"])
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ChannelError):
            raise
        raise ChannelError(f"malformed channel description: {exc}") from exc
    if "n" in doc and doc["n"] != ch.n:
        raise ChannelError(f"declared n={doc['n']!r} does not match matrix size {ch.n}")
    return ch


def channel_to_dict(ch: NormalizedChannel) -> dict[str, Any]:
    return {"n": ch.n, "a": ch.a.tolist(), "pbar": ch.pbar.tolist()}


def load_channel(path: str | os.PathLike[str]) -> NormalizedChannel:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ChannelError(f"{path}: invalid JSON ({exc})") from exc
    return channel_from_dict(doc)
