"""Two S-parameter engines plus response metrics and zero detection.

The cascade engine chain-multiplies ABCD matrices of distributed elements
and converts to S at the reference impedance. The coupling-matrix engine
solves the narrowband lowpass-mapped network per frequency point. Both
are vectorized over the grid; sweeps can be evaluated in disjoint grid
chunks against the same immutable net and merged in order, so concurrent
chunk workers need no locking.

Conventions: dB means 20*log10|S|; attenuation is -dB(S21), positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, MetricsError
from .microstrip import C0

__all__ = [
    "SeriesLine", "ShuntShortStub", "ShuntOpenStub", "IdealInverter",
    "ShuntAdmittance", "CircuitNet", "FrequencyResponse", "ResponseMetrics",
    "element_abcd", "cascade_sweep", "cm_response", "find_zeros", "metrics",
    "default_grid", "ripple_band", "central_band",
]

# admittance clamp at stub resonance poles, siemens
Y_CLAMP = 1e15


def _check_line(z0, eps_eff, length):
    if z0 <= 0:
        raise DomainError("characteristic impedance must be positive")
    if eps_eff < 1:
        raise DomainError("effective permittivity must be >= 1")
    if length < 0:
        raise DomainError("length cannot be negative")


@dataclass(frozen=True)
class SeriesLine:
    z0: float
    eps_eff: float
    length: float

    def __post_init__(self):
        _check_line(self.z0, self.eps_eff, self.length)


@dataclass(frozen=True)
class ShuntShortStub:
    """Shunt stub grounded at the far end.

    ground_inductance (henries) models an imperfect via; zero keeps the
    ideal short.
    """

    z0: float
    eps_eff: float
    length: float
    ground_inductance: float = 0.0

    def __post_init__(self):
        _check_line(self.z0, self.eps_eff, self.length)
        if self.ground_inductance < 0:
            raise DomainError("ground inductance cannot be negative")


@dataclass(frozen=True)
class ShuntOpenStub:
    z0: float
    eps_eff: float
    length: float

    def __post_init__(self):
        _check_line(self.z0, self.eps_eff, self.length)


@dataclass(frozen=True)
class IdealInverter:
    """Frequency-independent admittance inverter of value j (siemens)."""

    j: float

    def __post_init__(self):
        if self.j <= 0:
            raise DomainError("inverter value must be positive")


@dataclass(frozen=True)
class ShuntAdmittance:
    y: complex

    def __post_init__(self):
        if not (math.isfinite(self.y.real) and math.isfinite(self.y.imag)):
            raise DomainError("shunt admittance must be finite")


@dataclass(frozen=True)
class CircuitNet:
    """Ordered two-port cascade; immutable once built."""

    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if not self.elements:
            raise DomainError("circuit net is empty")


@dataclass(frozen=True)
class FrequencyResponse:
    """Swept two-port S-parameters on a strictly increasing grid.

    s22 is carried when the network computes it; None falls back to the
    symmetric assumption at serialization time. flagged lists grid
    indices where the solver hit a singular point.
    """

    freq: np.ndarray
    s11: np.ndarray
    s21: np.ndarray
    zref: float = 50.0
    s22: np.ndarray | None = None
    flagged: tuple = ()

    def __post_init__(self):
        freq = np.asarray(self.freq, dtype=float)
        if freq.ndim != 1 or freq.size < 1:
            raise DomainError("frequency grid must be a 1-D array")
        if np.any(np.diff(freq) <= 0):
            raise DomainError("frequency grid must be strictly increasing")
        if self.zref <= 0:
            raise DomainError("reference impedance must be positive")
        object.__setattr__(self, "freq", freq)
        object.__setattr__(self, "s11", np.asarray(self.s11, dtype=complex))
        object.__setattr__(self, "s21", np.asarray(self.s21, dtype=complex))
        if self.s22 is not None:
            object.__setattr__(self, "s22", np.asarray(self.s22, dtype=complex))
        if self.s11.shape != freq.shape or self.s21.shape != freq.shape:
            raise DomainError("S-parameter arrays must match the grid shape")

    def s21_db(self) -> np.ndarray:
        return 20.0 * np.log10(np.maximum(np.abs(self.s21), 1e-300))

    def s11_db(self) -> np.ndarray:
        return 20.0 * np.log10(np.maximum(np.abs(self.s11), 1e-300))

    def slice(self, fmin: float, fmax: float) -> "FrequencyResponse":
        """Restriction of the response to [fmin, fmax]."""
        m = (self.freq >= fmin) & (self.freq <= fmax)
        if not np.any(m):
            raise DomainError(f"no grid points in [{fmin}, {fmax}]")
        idx = np.nonzero(m)[0]
        flagged = tuple(int(np.searchsorted(idx, i)) for i in self.flagged
                        if idx[0] <= i <= idx[-1])
        return FrequencyResponse(
            freq=self.freq[m], s11=self.s11[m], s21=self.s21[m], zref=self.zref,
            s22=None if self.s22 is None else self.s22[m], flagged=flagged)


def default_grid(f0: float, points: int = 1601) -> np.ndarray:
    """Linear grid over [0.5 f0, 1.6 f0], network-analyzer style."""
    if f0 <= 0:
        raise DomainError("center frequency must be positive")
    if points < 2:
        raise DomainError("grid needs at least 2 points")
    return np.linspace(0.5 * f0, 1.6 * f0, points)


def ripple_band(f0: float, w: float) -> tuple:
    """Passband edges of the narrowband mapping at ripple level.

    The lowpass variable Omega = (1/w)(f/f0 - f0/f) hits -1/+1 at these
    frequencies; they are geometrically, not arithmetically, centered.
    """
    if f0 <= 0 or w <= 0:
        raise DomainError("f0 and w must be positive")
    r = math.sqrt(1.0 + 0.25 * w * w)
    return (f0 * (r - 0.5 * w), f0 * (r + 0.5 * w))


def central_band(band: tuple, fraction: float) -> tuple:
    """Central sub-interval covering the given fraction of a band."""
    f1, f2 = band
    if not 0 < fraction <= 1:
        raise DomainError("fraction must be in (0, 1]")
    mid, half = 0.5 * (f1 + f2), 0.5 * (f2 - f1) * fraction
    return (mid - half, mid + half)


def _theta(eps_eff, length, f):
    return 2.0 * math.pi * np.asarray(f, dtype=float) * math.sqrt(eps_eff) * length / C0


def _clamp_imag(y):
    yi = np.clip(np.nan_to_num(np.imag(y), nan=0.0,
                               posinf=Y_CLAMP, neginf=-Y_CLAMP),
                 -Y_CLAMP, Y_CLAMP)
    return np.real(np.nan_to_num(y, posinf=0.0, neginf=0.0)) + 1j * yi


def _shunt_mats(y):
    y = np.asarray(y)
    out = np.zeros(y.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = 1.0
    out[..., 1, 1] = 1.0
    out[..., 1, 0] = y
    return out


def element_abcd(el, f):
    """ABCD matrix of one element, vectorized over frequency.

    Scalar f returns shape (2, 2); an array returns (..., 2, 2). Stub
    admittances near a cot/tan pole are clamped at 1e15 S so a grid point
    on the resonance stays finite.
    """
    f_arr = np.asarray(f, dtype=float)
    if np.any(f_arr <= 0):
        raise DomainError("frequencies must be positive")

    if isinstance(el, SeriesLine):
        th = _theta(el.eps_eff, el.length, f_arr)
        c, s = np.cos(th), np.sin(th)
        out = np.empty(f_arr.shape + (2, 2), dtype=complex)
        out[..., 0, 0] = c
        out[..., 0, 1] = 1j * el.z0 * s
        out[..., 1, 0] = 1j * s / el.z0
        out[..., 1, 1] = c
    elif isinstance(el, ShuntShortStub):
        th = _theta(el.eps_eff, el.length, f_arr)
        if el.ground_inductance:
            # line terminated in the via inductance instead of an ideal short
            zl = 1j * 2.0 * math.pi * f_arr * el.ground_inductance
            t = np.tan(th)
            zin = el.z0 * (zl + 1j * el.z0 * t) / (el.z0 + 1j * zl * t)
            with np.errstate(divide="ignore", invalid="ignore"):
                y = np.where(np.abs(zin) > 0, 1.0 / zin, Y_CLAMP + 0j)
        else:
            with np.errstate(divide="ignore", invalid="ignore"):
                y = -1j / (el.z0 * np.tan(th))
        out = _shunt_mats(_clamp_imag(y))
    elif isinstance(el, ShuntOpenStub):
        th = _theta(el.eps_eff, el.length, f_arr)
        y = 1j * np.tan(th) / el.z0
        out = _shunt_mats(_clamp_imag(y))
    elif isinstance(el, IdealInverter):
        out = np.zeros(f_arr.shape + (2, 2), dtype=complex)
        out[..., 0, 1] = -1j / el.j
        out[..., 1, 0] = -1j * el.j
    elif isinstance(el, ShuntAdmittance):
        out = _shunt_mats(np.broadcast_to(complex(el.y), f_arr.shape).copy())
    else:
        raise DomainError(f"unknown element type {type(el).__name__}")
    return out


def _abcd_to_s(abcd, zref):
    a = abcd[..., 0, 0]
    b = abcd[..., 0, 1] / zref
    c = abcd[..., 1, 0] * zref
    d = abcd[..., 1, 1]
    den = a + b + c + d
    s11 = (a + b - c - d) / den
    s21 = 2.0 / den
    s22 = (-a + b - c + d) / den
    return s11, s21, s22


def cascade_sweep(net: CircuitNet, grid, zref: float = 50.0,
                  chunks: int = 1) -> FrequencyResponse:
    """Sweep a cascade over the grid and convert to S-parameters.

    chunks > 1 evaluates the grid in contiguous pieces and merges them in
    order; results are identical to a single-chunk sweep. All elements
    here are reciprocal, so S12 equals S21 exactly and only S21 is stored.
    """
    if not isinstance(net, CircuitNet):
        net = CircuitNet(tuple(net))
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 1:
        raise DomainError("grid must be a 1-D array")
    if chunks < 1:
        raise DomainError("chunks must be >= 1")

    parts = []
    for piece in np.array_split(grid, min(chunks, grid.size)):
        if piece.size == 0:
            continue
        abcd = element_abcd(net.elements[0], piece)
        for el in net.elements[1:]:
            abcd = abcd @ element_abcd(el, piece)
        parts.append(_abcd_to_s(abcd, zref))
    s11 = np.concatenate([p[0] for p in parts])
    s21 = np.concatenate([p[1] for p in parts])
    s22 = np.concatenate([p[2] for p in parts])
    return FrequencyResponse(freq=grid, s11=s11, s21=s21, zref=zref, s22=s22)


def cm_response(M, qe_in: float, qe_out: float, w: float, f0: float,
                qu: float | None = None, grid=None,
                zref: float = 50.0) -> FrequencyResponse:
    """Narrowband coupling-matrix response.

    Solves A(Omega) x = e per point with
    A = (Omega - j/(w Qu)) I - j R + M/w, R = diag(1/(w Qe_in), 0, ...,
    1/(w Qe_out)). Lossless responses are unitary to solver precision.
    Singular grid points (possible only in pathological lossless cases)
    are flagged in the result, not fatal.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DomainError("M must be square")
    if not np.allclose(M, M.T, atol=1e-12):
        raise DomainError("M must be symmetric")
    if qe_in <= 0 or qe_out <= 0 or w <= 0 or f0 <= 0:
        raise DomainError("Qe, w and f0 must be positive")
    if qu is not None and qu <= 0:
        raise DomainError("Qu must be positive when given")
    if grid is None:
        grid = default_grid(f0)
    grid = np.asarray(grid, dtype=float)

    n = M.shape[0]
    r1 = 1.0 / (w * qe_in)
    rn = 1.0 / (w * qe_out)
    R = np.zeros((n, n))
    R[0, 0] = r1
    R[-1, -1] = rn
    delta = 0.0 if qu is None or not math.isfinite(qu) else 1.0 / (w * qu)

    omega = (grid / f0 - f0 / grid) / w
    A = ((omega[:, None, None] - 1j * delta) * np.eye(n)
         - 1j * R + M / w)
    rhs = np.zeros((n, 2), dtype=complex)
    rhs[0, 0] = 1.0
    rhs[-1, 1] = 1.0

    flagged = []
    try:
        X = np.linalg.solve(A, rhs)
    except np.linalg.LinAlgError:
        X = np.empty((grid.size, n, 2), dtype=complex)
        for i in range(grid.size):
            try:
                X[i] = np.linalg.solve(A[i], rhs)
            except np.linalg.LinAlgError:
                X[i] = np.nan
                flagged.append(i)

    s11 = 1.0 + 2j * r1 * X[:, 0, 0]
    s21 = -2j * math.sqrt(r1 * rn) * X[:, -1, 0]
    s22 = 1.0 + 2j * rn * X[:, -1, 1]
    return FrequencyResponse(freq=grid, s11=s11, s21=s21, zref=zref,
                             s22=s22, flagged=tuple(flagged))


def find_zeros(resp: FrequencyResponse, floor_db: float) -> list:
    """Transmission-zero candidates: local |S21| minima below floor_db.

    Each strict local minimum on the dB curve below the floor is refined
    by fitting a parabola through the three surrounding dB samples; the
    refined frequency is clamped to that three-point span. Returns Hz in
    ascending order; an empty list is a valid outcome.
    """
    db = resp.s21_db()
    freq = resp.freq
    zeros = []
    for i in range(1, db.size - 1):
        if db[i] >= floor_db:
            continue
        if not (db[i] < db[i - 1] and db[i] < db[i + 1]):
            continue
        x0, x1, x2 = freq[i - 1], freq[i], freq[i + 1]
        y0, y1, y2 = db[i - 1], db[i], db[i + 1]
        # parabola vertex through the three points (general spacing)
        d01, d02, d12 = x0 - x1, x0 - x2, x1 - x2
        denom = d01 * d02 * d12
        aa = (y0 * d12 - y1 * d02 + y2 * d01) / denom
        if aa <= 0:
            zeros.append(float(x1))
            continue
        bb = (-y0 * (x1 + x2) * d12 + y1 * (x0 + x2) * d02
              - y2 * (x0 + x1) * d01) / denom
        vertex = -0.5 * bb / aa
        zeros.append(float(min(max(vertex, x0), x2)))
    return zeros


@dataclass(frozen=True)
class ResponseMetrics:
    """Passband figures of a swept response.

    atten_at(f) interpolates attenuation (positive dB) at any frequency
    inside the grid.
    """

    f_center: float
    bw3db_fractional: float
    il_mid_db: float
    rl_min_passband_db: float
    band: tuple
    _freq: np.ndarray = field(repr=False, default=None)
    _s21_db: np.ndarray = field(repr=False, default=None)

    def atten_at(self, f: float) -> float:
        if not self._freq[0] <= f <= self._freq[-1]:
            raise MetricsError(f"probe {f} outside the swept grid")
        return float(-np.interp(f, self._freq, self._s21_db))


def _cross_3db(freq, db, start, step, level):
    """March from start in step direction to the first crossing of level."""
    i = start
    while 0 <= i + step < freq.size:
        j = i + step
        if db[j] <= level:
            # linear interpolation on the dB curve
            frac = (level - db[i]) / (db[j] - db[i])
            return float(freq[i] + frac * (freq[j] - freq[i]))
        i = j
    raise MetricsError("3-dB edge not bracketed by the grid")


def metrics(resp: FrequencyResponse, band: tuple) -> ResponseMetrics:
    """IL, RL and 3-dB bandwidth of a bandpass response.

    band is the passband interval used for IL and RL. The 3-dB edges are
    found by walking outward from the in-band |S21| peak and
    interpolating the -3 dB crossings, so they may land outside band.
    """
    f1, f2 = band
    freq = resp.freq
    if f1 >= f2:
        raise MetricsError("band edges out of order")
    if f1 < freq[0] or f2 > freq[-1]:
        raise MetricsError(
            f"band [{f1}, {f2}] outside the swept grid [{freq[0]}, {freq[-1]}]")

    db21 = resp.s21_db()
    db11 = resp.s11_db()
    inband = (freq >= f1) & (freq <= f2)
    if not np.any(inband):
        raise MetricsError("no grid points inside the band")

    peak_rel = int(np.argmax(db21[inband]))
    peak = int(np.nonzero(inband)[0][peak_rel])
    level = db21[peak] - 3.0
    flo = _cross_3db(freq, db21, peak, -1, level)
    fhi = _cross_3db(freq, db21, peak, +1, level)
    f_center = 0.5 * (flo + fhi)

    return ResponseMetrics(
        f_center=f_center,
        bw3db_fractional=(fhi - flo) / f_center,
        il_mid_db=float(-np.max(db21[inband])),
        rl_min_passband_db=float(-np.max(db11[inband])),
        band=(float(f1), float(f2)),
        _freq=freq, _s21_db=db21)
