"""Quasi-static microstrip analysis and physical length conversions.

The line model is the Hammerstad-Jensen closed form (zero thickness).
It is smooth in w/h, so no special handling is needed around w/h = 1.
Dispersion is deliberately out of scope; everything here is the same
fidelity as the quarter-wave and half-wave length formulas it feeds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .errors import DomainError, SynthesisError

__all__ = [
    "C0", "Substrate", "LineParams",
    "analyze_line", "synthesize_width",
    "quarter_wave_length", "zero_stub_length", "stub_zero_frequency",
]

C0 = 299792458.0
# free-space impedance, ohms
ETA0 = 376.730313668


@dataclass(frozen=True)
class Substrate:
    """Dielectric substrate plus an optional lumped loss model.

    qu is the unloaded resonator quality factor; None means lossless.
    Metal thickness t is carried but not used by the zero-thickness model.
    """

    eps_r: float
    h: float
    t: float = 0.0
    qu: float | None = None

    def __post_init__(self):
        if self.eps_r < 1:
            raise DomainError(f"eps_r must be >= 1, got {self.eps_r}")
        if self.h <= 0:
            raise DomainError("substrate height must be positive")
        if self.t < 0:
            raise DomainError("metal thickness cannot be negative")
        if self.qu is not None and self.qu <= 0:
            raise DomainError("Qu must be positive when given")


@dataclass(frozen=True)
class LineParams:
    width: float
    z0: float
    eps_eff: float

    def __post_init__(self):
        if self.width <= 0 or self.z0 <= 0:
            raise DomainError("width and impedance must be positive")
        if self.eps_eff < 1:
            raise DomainError("effective permittivity must be >= 1")


def analyze_line(width: float, sub: Substrate) -> LineParams:
    """Characteristic impedance and effective permittivity of a microstrip."""
    if width <= 0:
        raise DomainError("width must be positive")
    u = width / sub.h
    er = sub.eps_r

    a = (1.0
         + math.log((u ** 4 + (u / 52.0) ** 2) / (u ** 4 + 0.432)) / 49.0
         + math.log(1.0 + (u / 18.1) ** 3) / 18.7)
    b = 0.564 * ((er - 0.9) / (er + 3.0)) ** 0.053
    eps_eff = 0.5 * (er + 1.0) + 0.5 * (er - 1.0) * (1.0 + 10.0 / u) ** (-a * b)

    fu = 6.0 + (2.0 * math.pi - 6.0) * math.exp(-((30.666 / u) ** 0.7528))
    z0_air = ETA0 / (2.0 * math.pi) * math.log(fu / u + math.sqrt(1.0 + (2.0 / u) ** 2))
    return LineParams(width=width, z0=z0_air / math.sqrt(eps_eff), eps_eff=eps_eff)


def synthesize_width(z0_target: float, sub: Substrate) -> float:
    """Width whose analyzed impedance matches z0_target within 0.01 ohm.

    Bracketed root find over width in [h/100, 100h]. Targets outside the
    impedance range of that bracket raise SynthesisError.
    """
    if z0_target <= 0:
        raise DomainError("target impedance must be positive")
    lo, hi = sub.h / 100.0, 100.0 * sub.h

    def err(wd):
        return analyze_line(wd, sub).z0 - z0_target

    e_lo, e_hi = err(lo), err(hi)
    # impedance falls with width, so the bracket must straddle zero
    if e_lo < 0 or e_hi > 0:
        raise SynthesisError(
            f"{z0_target:.2f} ohm not reachable for widths in [h/100, 100h] "
            f"(range {analyze_line(hi, sub).z0:.2f} .. {analyze_line(lo, sub).z0:.2f})")
    width = brentq(err, lo, hi, xtol=1e-12, rtol=1e-14)
    achieved = analyze_line(width, sub).z0
    if abs(achieved - z0_target) > 0.01:
        raise SynthesisError(
            f"root find stopped {abs(achieved - z0_target):.4f} ohm off target")
    return float(width)


def quarter_wave_length(f0: float, eps_eff: float) -> float:
    """Physical length that is a quarter wavelength at f0."""
    if f0 <= 0:
        raise DomainError("frequency must be positive")
    if eps_eff < 1:
        raise DomainError("effective permittivity must be >= 1")
    return C0 / (4.0 * f0 * math.sqrt(eps_eff))


def zero_stub_length(f_zero: float, eps_re: float) -> float:
    """Length of a both-ends-shorted stub whose transmission zero sits at f_zero.

    A shunt stub of length l grounded at the far end blocks transmission
    where it is a half wavelength: l = c / (2 f sqrt(eps_re)).
    """
    if f_zero <= 0:
        raise DomainError("zero frequency must be positive")
    if eps_re < 1:
        raise DomainError("effective permittivity must be >= 1")
    return C0 / (2.0 * f_zero * math.sqrt(eps_re))


def stub_zero_frequency(length: float, eps_re: float) -> float:
    """Inverse of zero_stub_length: f = c / (2 l sqrt(eps_re))."""
    if length <= 0:
        raise DomainError("length must be positive")
    if eps_re < 1:
        raise DomainError("effective permittivity must be >= 1")
    return C0 / (2.0 * length * math.sqrt(eps_re))
