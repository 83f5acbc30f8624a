"""SINR and capacity regions of the Gaussian interference channel.

Interference is treated as Gaussian noise.  Two- and three-user regions
have closed forms; any user count is handled by a linear-solve membership
oracle.
"""

from .channel import NormalizedChannel, RawChannel, load_channel, normalize, three_user, two_user
from .errors import ChannelError, DomainError, GicError, InfeasibleSinr, SingularTransform

__version__ = "0.1.0"

__all__ = [
    "NormalizedChannel",
    "RawChannel",
    "normalize",
    "two_user",
    "three_user",
    "load_channel",
    "GicError",
    "ChannelError",
    "DomainError",
    "SingularTransform",
    "InfeasibleSinr",
]
