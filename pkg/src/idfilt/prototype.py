"""Chebyshev lowpass prototype values and passband arithmetic.

Element values come from the closed-form equal-ripple recursion, so any
(order, ripple) pair is supported rather than a fixed lookup table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError

__all__ = ["BandSpec", "Prototype", "chebyshev_gvalues", "fractional_bandwidth"]


def fractional_bandwidth(f1: float, f2: float, f0: float) -> float:
    """Return (f2 - f1) / f0.

    f1 and f2 are the passband edges in Hz, f0 the center. All three must
    be positive and f1 <= f2.
    """
    if f0 <= 0 or f1 <= 0 or f2 <= 0:
        raise DomainError("frequencies must be positive")
    if f1 > f2:
        raise DomainError(f"band edges out of order: f1={f1} > f2={f2}")
    return (f2 - f1) / f0


@dataclass(frozen=True)
class BandSpec:
    """Passband specification for a bandpass design.

    f0 defaults to the arithmetic mean of the edges when not given
    explicitly. The fractional bandwidth w = (f2 - f1)/f0 must land in
    (0, 1); wider bands are outside the narrowband synthesis this
    toolkit is built on.
    """

    n: int
    ripple_db: float
    f1: float
    f2: float
    f0: float | None = None
    z0: float = 50.0

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"order must be >= 1, got {self.n}")
        if self.ripple_db <= 0:
            raise DomainError("ripple_db must be positive")
        if not 0 < self.f1 < self.f2:
            raise DomainError(f"need 0 < f1 < f2, got f1={self.f1}, f2={self.f2}")
        if self.z0 <= 0:
            raise DomainError("system impedance must be positive")
        if self.f0 is None:
            object.__setattr__(self, "f0", 0.5 * (self.f1 + self.f2))
        if self.f0 <= 0:
            raise DomainError("center frequency must be positive")
        w = (self.f2 - self.f1) / self.f0
        if not 0 < w < 1:
            raise DomainError(f"fractional bandwidth {w:.4f} outside (0, 1)")

    @classmethod
    def from_center(cls, n: int, ripple_db: float, f0: float, w: float,
                    z0: float = 50.0) -> "BandSpec":
        """Build a spec from center frequency and fractional bandwidth."""
        if f0 <= 0:
            raise DomainError("center frequency must be positive")
        if not 0 < w < 1:
            raise DomainError(f"fractional bandwidth {w} outside (0, 1)")
        return cls(n=n, ripple_db=ripple_db,
                   f1=f0 * (1 - 0.5 * w), f2=f0 * (1 + 0.5 * w), f0=f0, z0=z0)

    @property
    def w(self) -> float:
        return fractional_bandwidth(self.f1, self.f2, self.f0)


@dataclass(frozen=True)
class Prototype:
    """Lowpass prototype element values g_0 .. g_{n+1}."""

    g: tuple = field(default_factory=tuple)

    def __post_init__(self):
        g = tuple(float(x) for x in self.g)
        object.__setattr__(self, "g", g)
        if len(g) < 3:
            raise DomainError("prototype needs at least g_0, g_1, g_2")
        if g[0] != 1.0:
            raise DomainError(f"g_0 must be 1, got {g[0]}")
        if any(x <= 0 for x in g):
            raise DomainError("all element values must be positive")

    @property
    def n(self) -> int:
        return len(self.g) - 2

    def __iter__(self):
        return iter(self.g)

    def __getitem__(self, j):
        return self.g[j]


def chebyshev_gvalues(n: int, ripple_db: float) -> Prototype:
    """Equal-ripple lowpass prototype values for order n.

    Uses the standard recursion

        beta  = ln coth(ripple_db / 17.37)
        gamma = sinh(beta / 2n)
        a_k   = sin((2k - 1) pi / 2n)
        b_k   = gamma^2 + sin^2(k pi / n)
        g_1   = 2 a_1 / gamma
        g_k   = 4 a_{k-1} a_k / (b_{k-1} g_{k-1})

    with g_0 = 1 and g_{n+1} = coth^2(beta/4) for even n, 1 for odd n.
    """
    if n < 1:
        raise DomainError(f"order must be >= 1, got {n}")
    if ripple_db <= 0:
        raise DomainError("ripple_db must be positive")

    beta = math.log(1.0 / math.tanh(ripple_db / 17.37))
    gamma = math.sinh(beta / (2.0 * n))
    a = [math.sin((2 * k - 1) * math.pi / (2.0 * n)) for k in range(1, n + 1)]
    b = [gamma * gamma + math.sin(k * math.pi / n) ** 2 for k in range(1, n + 1)]

    g = [1.0, 2.0 * a[0] / gamma]
    for k in range(2, n + 1):
        g.append(4.0 * a[k - 2] * a[k - 1] / (b[k - 2] * g[k - 1]))
    # odd orders terminate in a matched load exactly
    g.append(1.0 if n % 2 else 1.0 / math.tanh(beta / 4.0) ** 2)
    return Prototype(tuple(g))
