"""Inter-resonator couplings, external Q, tap placement, coupling regime.

The narrowband design chain is: prototype values and fractional bandwidth
fix the adjacent coupling coefficients and the external Q; the external Q
fixes where the feed line taps onto the end resonator; comparing the end
coupling against the critical value K = 1/Qe + 1/Qu classifies the design
as under-, critically or overcoupled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ExtractionError, InfeasibleTapError
from .prototype import Prototype

__all__ = [
    "CouplingSet", "TapDesign",
    "coupling_coefficients", "coupling_matrix", "external_q", "qe_from_phase",
    "tap_position", "design_tap", "critical_coupling", "classify_coupling",
]


@dataclass(frozen=True)
class CouplingSet:
    """Adjacent couplings k, the tridiagonal matrix M and external Qs."""

    k: tuple
    M: np.ndarray
    qe_in: float
    qe_out: float

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(float(x) for x in self.k))
        M = np.asarray(self.M, dtype=float)
        M.setflags(write=False)
        object.__setattr__(self, "M", M)
        if self.qe_in <= 0 or self.qe_out <= 0:
            raise DomainError("external Q must be positive")


@dataclass(frozen=True)
class TapDesign:
    """Tap geometry on the end resonator.

    length is the full resonator length, tap the distance of the feed
    connection from the short-circuited end. ratio = tap/length.
    """

    z0: float
    z0l: float
    length: float
    tap: float

    def __post_init__(self):
        if self.z0 <= 0 or self.z0l <= 0:
            raise DomainError("impedances must be positive")
        if not 0 < self.tap < self.length:
            raise DomainError(
                f"tap must lie inside the resonator: tap={self.tap}, length={self.length}")

    @property
    def ratio(self) -> float:
        return self.tap / self.length


def _gvalues(g) -> tuple:
    if isinstance(g, Prototype):
        return g.g
    return tuple(float(x) for x in g)


def coupling_coefficients(g, w: float) -> list:
    """k_j = w / sqrt(g_j * g_{j+1}) for j = 1 .. n-1."""
    if w <= 0:
        raise DomainError("fractional bandwidth must be positive")
    gv = _gvalues(g)
    n = len(gv) - 2
    if n < 2:
        raise DomainError("need at least two resonators for adjacent couplings")
    return [w / math.sqrt(gv[j] * gv[j + 1]) for j in range(1, n)]


def coupling_matrix(k) -> np.ndarray:
    """Symmetric tridiagonal n x n matrix with k on the super/sub diagonal."""
    kv = [float(x) for x in k]
    if not kv:
        raise DomainError("coupling list is empty")
    n = len(kv) + 1
    M = np.zeros((n, n))
    for j, kj in enumerate(kv):
        M[j, j + 1] = M[j + 1, j] = kj
    return M


def external_q(g0: float, g1: float, w: float) -> float:
    """Qe = g0 * g1 / w for the input; feed the last pair for the output."""
    if g0 <= 0 or g1 <= 0:
        raise DomainError("prototype values must be positive")
    if w <= 0:
        raise DomainError("fractional bandwidth must be positive")
    return g0 * g1 / w


def qe_from_phase(response, f0: float) -> float:
    """Extract external Q from the reflection phase of a singly loaded resonator.

    Qe = f0 / df where df spans the +-90 degree phase points relative to
    the phase at f0. The response grid must bracket both crossings;
    crossings are located by linear interpolation.
    """
    freq = np.asarray(response.freq, dtype=float)
    phase = np.unwrap(np.angle(np.asarray(response.s11)))
    if not freq[0] <= f0 <= freq[-1]:
        raise ExtractionError(f"f0={f0} outside the response grid")
    phi0 = float(np.interp(f0, freq, phase))

    def crossing(target):
        d = phase - target
        sign = np.sign(d)
        idx = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
        hits = [float(freq[i] - d[i] * (freq[i + 1] - freq[i]) / (d[i + 1] - d[i]))
                for i in idx]
        hits += [float(freq[i]) for i in np.nonzero(d == 0)[0]]
        if not hits:
            raise ExtractionError(
                f"phase crossing at {math.degrees(target - phi0):+.0f} deg "
                "not bracketed by the grid")
        # closest crossing to f0; resonator phase sweeps many cycles off resonance
        return min(hits, key=lambda f: abs(f - f0))

    f_plus = crossing(phi0 + 0.5 * math.pi)
    f_minus = crossing(phi0 - 0.5 * math.pi)
    df = abs(f_minus - f_plus)
    if df == 0:
        raise ExtractionError("degenerate phase crossings")
    return f0 / df


def tap_position(qe: float, z0: float, z0l: float) -> float:
    """Tap ratio l/L realizing the given external Q.

    Solves sin^2(pi l / 2L) = pi z0 / (4 qe z0l) on the principal branch,
    with l measured from the short-circuited end. Taps at or beyond the
    open end are rejected.
    """
    if qe <= 0 or z0 <= 0 or z0l <= 0:
        raise DomainError("tap inputs must be positive")
    arg = math.pi * z0 / (4.0 * qe * z0l)
    if arg > 1.0:
        raise InfeasibleTapError(
            f"external Q {qe:.3f} too small for a tapped feed (needs sin^2 = {arg:.3f})")
    ratio = (2.0 / math.pi) * math.asin(math.sqrt(arg))
    if not 0.0 < ratio < 1.0:
        raise InfeasibleTapError(f"tap ratio {ratio} is not an interior point")
    return ratio


def design_tap(qe: float, z0: float, z0l: float, length: float) -> TapDesign:
    """TapDesign for a resonator of the given physical length."""
    if length <= 0:
        raise DomainError("resonator length must be positive")
    ratio = tap_position(qe, z0, z0l)
    return TapDesign(z0=z0, z0l=z0l, length=length, tap=ratio * length)


def critical_coupling(qe: float, qu: float | None = None) -> float:
    """K = 1/Qe + 1/Qu; pass qu=None for a lossless (unbounded Qu) resonator."""
    if qe <= 0:
        raise DomainError("Qe must be positive")
    if qu is not None and qu <= 0:
        raise DomainError("Qu must be positive when given")
    k = 1.0 / qe
    if qu is not None and math.isfinite(qu):
        k += 1.0 / qu
    return k


def classify_coupling(k_end: float, qe: float, qu: float | None = None,
                      tol: float = 0.01) -> str:
    """Compare the end coupling against K = 1/Qe + 1/Qu.

    Returns 'critical' within +-tol relative, 'over' above, 'under' below.
    The 1% default matches what coupling extraction from swept responses
    can resolve.
    """
    if k_end <= 0:
        raise DomainError("end coupling must be positive")
    if tol < 0:
        raise DomainError("tolerance must be non-negative")
    K = critical_coupling(qe, qu)
    rel = (k_end - K) / K
    if abs(rel) <= tol:
        return "critical"
    return "over" if rel > 0 else "under"
