"""Filter structure: resonators, tapped ends, zero stubs, circuit lowering.

Interior resonators are quarter-wave short-circuited stubs joined by
ideal admittance inverters. The tapped end resonator is lowered to its
narrowband equivalent: a single shunt resonator whose susceptance slope
b_end = Qe * Y0 reproduces the external loading the tap provides. A
literal tap model (shorted section plus an open remainder hanging on the
node) adds a spurious transmission zero where the open section goes
quarter-wave, well below 2 f0, which the structure must not have; the
slope-equivalent form keeps the passband physics and stays clean in the
stopband.

With a ZeroPlan, each end node instead carries two short-circuited stubs
whose lengths set the two transmission zeros. Their characteristic
admittances are solved from a 2x2 linear system so the pair still
resonates at f0 with the same slope b_end; this pins down the end-line
width change that zero loading would otherwise leave free.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from . import coupling as _coupling
from .coupling import CouplingSet, TapDesign, design_tap
from .errors import BuildError, DomainError, PlanError
from .microstrip import LineParams, Substrate, quarter_wave_length, \
    stub_zero_frequency, zero_stub_length
from .netsim import CircuitNet, IdealInverter, SeriesLine, ShuntShortStub
from .prototype import BandSpec, Prototype, chebyshev_gvalues

__all__ = [
    "ZeroPlan", "FilterLayout", "plan_zeros", "build_circuit", "make_layout",
    "end_stub_admittances", "replace_zero_lengths", "DEFAULT_FEED_LENGTH",
]

# feed line stretch between the port and the tap node, meters
DEFAULT_FEED_LENGTH = 300e-6


@dataclass(frozen=True)
class ZeroPlan:
    """Transmission-zero targets, tuning windows and stub lengths.

    Lengths are tied to the targets by l = c/(2 f sqrt(eps_re)); the low
    zero needs the longer stub. Window bounds are kept for the tuner.
    The zero frequencies must straddle the passband; that is checked when
    the plan joins a FilterLayout, where the band is known.
    """

    f_zero_low: float
    f_zero_high: float
    window_low: tuple
    window_high: tuple
    l_low: float
    l_high: float
    eps_re: float

    def __post_init__(self):
        object.__setattr__(self, "window_low", tuple(map(float, self.window_low)))
        object.__setattr__(self, "window_high", tuple(map(float, self.window_high)))
        if self.eps_re < 1:
            raise PlanError("eps_re must be >= 1")
        if not 0 < self.f_zero_low < self.f_zero_high:
            raise PlanError("zero targets must satisfy 0 < low < high")
        for name, (a, b) in (("window_low", self.window_low),
                             ("window_high", self.window_high)):
            if not 0 < a <= b:
                raise PlanError(f"{name} must be an ordered positive interval")
        # windows are closed; allow 1 ulp-scale slack for length round-trips
        def inside(f, win):
            tol = 1e-9 * f
            return win[0] - tol <= f <= win[1] + tol

        if not inside(self.f_zero_low, self.window_low):
            raise PlanError(
                f"low target {self.f_zero_low} outside window {self.window_low}")
        if not inside(self.f_zero_high, self.window_high):
            raise PlanError(
                f"high target {self.f_zero_high} outside window {self.window_high}")
        if self.window_low[1] >= self.window_high[0]:
            raise PlanError("zero windows must not overlap")
        for name, l, f in (("l_low", self.l_low, self.f_zero_low),
                           ("l_high", self.l_high, self.f_zero_high)):
            want = zero_stub_length(f, self.eps_re)
            if abs(l - want) > 1e-9 * want:
                raise PlanError(f"{name}={l} inconsistent with its target frequency")
        if not self.l_low > self.l_high:
            raise PlanError("low-side stub must be the longer one")


def plan_zeros(window_low, window_high, target_low: float, target_high: float,
               eps_re: float) -> ZeroPlan:
    """Build a ZeroPlan from windows and targets, lengths via the half-wave rule."""
    if target_low >= target_high:
        raise PlanError(
            f"targets out of order: low {target_low} >= high {target_high}")
    return ZeroPlan(
        f_zero_low=float(target_low), f_zero_high=float(target_high),
        window_low=tuple(window_low), window_high=tuple(window_high),
        l_low=zero_stub_length(target_low, eps_re),
        l_high=zero_stub_length(target_high, eps_re),
        eps_re=float(eps_re))


def end_stub_admittances(f0: float, b_end: float, f_zero_low: float,
                         f_zero_high: float) -> tuple:
    """Characteristic admittances (Y_low, Y_high) of the end stub pair.

    Each stub contributes -Y cot(pi f / fz) at the node. The pair must
    resonate at f0 (total susceptance zero) with susceptance slope
    parameter b_end there, which is two linear conditions in (Y_low,
    Y_high). Zeros straddling the passband make the system well posed.
    """
    if not f_zero_low < f0 < f_zero_high:
        raise PlanError("zeros must straddle f0 for the end pair to resonate")
    th_l = math.pi * f0 / f_zero_low
    th_h = math.pi * f0 / f_zero_high
    A = np.array([
        [1.0 / math.tan(th_l), 1.0 / math.tan(th_h)],
        [(math.pi * f0 / (2.0 * f_zero_low)) / math.sin(th_l) ** 2,
         (math.pi * f0 / (2.0 * f_zero_high)) / math.sin(th_h) ** 2],
    ])
    y = np.linalg.solve(A, np.array([0.0, b_end]))
    if y[0] <= 0 or y[1] <= 0:
        raise PlanError(
            f"zero placement needs non-physical stub admittances {y}")
    return (float(y[0]), float(y[1]))


@dataclass(frozen=True)
class FilterLayout:
    """Complete structural description ready for circuit lowering.

    end_stub_y holds the zero-stub characteristic admittances, solved
    once when the layout is created. Retuning stub lengths later keeps
    these frozen, which is the hardware situation: widths are printed,
    only lengths get trimmed.
    """

    band: BandSpec
    proto: Prototype
    couplings: CouplingSet
    tap: TapDesign
    zeros: ZeroPlan | None = None
    substrate: Substrate | None = None
    lines: tuple = ()
    end_line: LineParams | None = None
    z0l: float = 50.0
    feed_length: float = DEFAULT_FEED_LENGTH
    end_stub_y: tuple | None = None
    via_inductance: float = 0.0

    def __post_init__(self):
        if self.z0l <= 0:
            raise DomainError("resonator impedance must be positive")
        if self.feed_length < 0:
            raise DomainError("feed length cannot be negative")
        if self.via_inductance < 0:
            raise DomainError("via inductance cannot be negative")
        if self.proto.n != self.band.n:
            raise BuildError(
                f"prototype order {self.proto.n} != band order {self.band.n}")
        if len(self.couplings.k) != self.band.n - 1:
            raise BuildError("coupling list length does not match the order")
        if self.zeros is not None:
            z = self.zeros
            if not z.f_zero_low < self.band.f1:
                raise PlanError(
                    f"low zero {z.f_zero_low} not below the passband edge {self.band.f1}")
            if not z.f_zero_high > self.band.f2:
                raise PlanError(
                    f"high zero {z.f_zero_high} not above the passband edge {self.band.f2}")
            if z.window_low[1] >= self.band.f1 or z.window_high[0] <= self.band.f2:
                raise PlanError("zero windows overlap the passband")
            if self.end_stub_y is None:
                y = end_stub_admittances(self.band.f0, self._b_end,
                                         z.f_zero_low, z.f_zero_high)
                object.__setattr__(self, "end_stub_y", y)

    @property
    def _b_end(self) -> float:
        # slope parameter the tapped end presents, b = Qe * Y0
        return self.couplings.qe_in / self.band.z0

    @property
    def _b_int(self) -> float:
        # quarter-wave shorted stub slope parameter, b = pi Y0l / 4
        return math.pi / (4.0 * self.z0l)

    @property
    def qu(self) -> float | None:
        return None if self.substrate is None else self.substrate.qu

    def end_resonator_length(self) -> float | None:
        """Total end resonator length l_low + l_high, None without zeros."""
        if self.zeros is None:
            return None
        return self.zeros.l_low + self.zeros.l_high


def make_layout(band: BandSpec, z0l: float = 50.0,
                substrate: Substrate | None = None,
                zeros: ZeroPlan | None = None,
                feed_length: float = DEFAULT_FEED_LENGTH,
                via_inductance: float = 0.0) -> FilterLayout:
    """Run the synthesis chain for a band and assemble the layout."""
    proto = chebyshev_gvalues(band.n, band.ripple_db)
    w = band.w
    k = _coupling.coupling_coefficients(proto, w)
    M = _coupling.coupling_matrix(k)
    qe_in = _coupling.external_q(proto[0], proto[1], w)
    qe_out = _coupling.external_q(proto[band.n + 1], proto[band.n], w)
    cset = CouplingSet(k=tuple(k), M=M, qe_in=qe_in, qe_out=qe_out)

    eps_for_length = zeros.eps_re if zeros is not None else 1.0
    length = quarter_wave_length(band.f0, eps_for_length)
    tap = design_tap(qe_in, band.z0, z0l, length)

    return FilterLayout(band=band, proto=proto, couplings=cset, tap=tap,
                        zeros=zeros, substrate=substrate, z0l=z0l,
                        feed_length=feed_length, via_inductance=via_inductance)


def _quarter_stub(layout: FilterLayout, z0: float) -> ShuntShortStub:
    # electrical length 90 deg at f0; air-equivalent length keeps theta(f) linear
    return ShuntShortStub(z0=z0, eps_eff=1.0,
                          length=quarter_wave_length(layout.band.f0, 1.0),
                          ground_inductance=layout.via_inductance)


def _end_node(layout: FilterLayout) -> list:
    if layout.zeros is None:
        # slope-equivalent tapped end: one quarter-wave stub with b = Qe Y0
        y_end = 4.0 * layout._b_end / math.pi
        return [_quarter_stub(layout, 1.0 / y_end)]
    y_low, y_high = layout.end_stub_y
    z = layout.zeros
    return [
        ShuntShortStub(z0=1.0 / y_low, eps_eff=z.eps_re, length=z.l_low,
                       ground_inductance=layout.via_inductance),
        ShuntShortStub(z0=1.0 / y_high, eps_eff=z.eps_re, length=z.l_high,
                       ground_inductance=layout.via_inductance),
    ]


def build_circuit(layout: FilterLayout) -> CircuitNet:
    """Lower a layout to the ordered two-port cascade.

    Feed line, end node (one slope-equivalent stub, or the zero pair),
    inverter-coupled interior quarter-wave stubs, mirrored end node, feed
    line. Inverters are J = k sqrt(b_j b_{j+1}) with the end slope b_end
    = Qe Y0 and interior slope pi Y0l / 4; for interior pairs this is the
    plain k * b value.
    """
    if layout.zeros is not None:
        z = layout.zeros
        want_low = zero_stub_length(z.f_zero_low, z.eps_re)
        if abs(z.l_low - want_low) > 1e-9 * want_low:
            raise BuildError("zero plan lengths drifted from their targets")

    n = layout.band.n
    b_end, b_int = layout._b_end, layout._b_int
    k = layout.couplings.k
    feed = SeriesLine(z0=layout.band.z0, eps_eff=1.0, length=layout.feed_length)

    elements = [feed]
    elements += _end_node(layout)
    for j in range(1, n):
        bj = b_end if j == 1 else b_int
        bj1 = b_end if j == n - 1 else b_int
        elements.append(IdealInverter(j=k[j - 1] * math.sqrt(bj * bj1)))
        if j == n - 1:
            elements += _end_node(layout)
        else:
            elements.append(_quarter_stub(layout, layout.z0l))
    elements.append(feed)
    return CircuitNet(tuple(elements))


def replace_zero_lengths(layout: FilterLayout, l_low: float,
                         l_high: float) -> FilterLayout:
    """Layout with retuned stub lengths, stub admittances kept frozen.

    Zero targets follow the lengths through the half-wave rule so the
    plan invariants stay satisfied.
    """
    if layout.zeros is None:
        raise BuildError("layout has no zero plan to retune")
    z = layout.zeros
    new_plan = ZeroPlan(
        f_zero_low=stub_zero_frequency(l_low, z.eps_re),
        f_zero_high=stub_zero_frequency(l_high, z.eps_re),
        window_low=z.window_low, window_high=z.window_high,
        l_low=float(l_low), l_high=float(l_high), eps_re=z.eps_re)
    return dataclasses.replace(layout, zeros=new_plan)
