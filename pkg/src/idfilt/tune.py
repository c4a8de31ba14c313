"""Zero-stub tuning and A/B design comparison.

tune_zeros trims the two stub lengths inside their windows to meet
stopband attenuation targets. The stub characteristic admittances stay
frozen at their planned values while lengths move, which is what bench
tuning does to hardware; pushing lengths far from the plan therefore
detunes the end resonator and the objective's hump penalty pushes back,
encoding the overcoupling guard.

The optimizer is plain golden-section coordinate descent on (l_low,
l_high). Two bounded scalars do not justify anything fancier, and a
deterministic search keeps runs reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coupling import classify_coupling
from .errors import ComparisonError, DomainError, PlanError
from .microstrip import C0, zero_stub_length
from .netsim import FrequencyResponse, cascade_sweep, central_band, \
    default_grid, find_zeros, ripple_band
from .topology import FilterLayout, build_circuit, replace_zero_lengths

__all__ = ["TuneReport", "detect_hump", "tune_zeros", "compare_designs"]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

# severity band and allowance used inside the tuning objective: the
# central 60% of the ripple band, with half a dB of headroom over the
# design ripple for distributed-vs-lumped model deviation. A healthy
# plan scores exactly zero; a genuinely overcoupled one does not.
HUMP_BAND_FRACTION = 0.6
HUMP_MARGIN_DB = 0.5


def detect_hump(resp: FrequencyResponse, band: tuple, ripple_db: float) -> float:
    """Passband flatness excess over the design ripple, in dB.

    severity = max(0, (max - min of in-band |S21| dB) - ripple_db).
    Zero means the band is as flat as the ripple allows.
    """
    f1, f2 = band
    if ripple_db < 0:
        raise DomainError("ripple_db cannot be negative")
    m = (resp.freq >= f1) & (resp.freq <= f2)
    if not np.any(m):
        raise DomainError(f"band [{f1}, {f2}] contains no grid points")
    db = resp.s21_db()[m]
    return float(max(0.0, (db.max() - db.min()) - ripple_db))


@dataclass(frozen=True)
class TuneReport:
    """Outcome of a tuning run.

    zero frequencies are the detected sweep minima of the final design;
    the trace lists the objective after the initial evaluation and after
    each accepted iteration, so it never increases.
    """

    l_low: float
    l_high: float
    f_zero_low: float
    f_zero_high: float
    hump_severity_db: float
    coupling_class: str
    objective_trace: tuple
    achieved_db: tuple
    infeasible: bool

    def __post_init__(self):
        if self.hump_severity_db < 0:
            raise DomainError("hump severity cannot be negative")

    def to_dict(self) -> dict:
        return {
            "l_low_um": self.l_low * 1e6,
            "l_high_um": self.l_high * 1e6,
            "f_zero_low_ghz": self.f_zero_low / 1e9,
            "f_zero_high_ghz": self.f_zero_high / 1e9,
            "hump_severity_db": self.hump_severity_db,
            "coupling_class": self.coupling_class,
            "objective_trace": list(self.objective_trace),
            "achieved_db": [list(pair) for pair in self.achieved_db],
            "infeasible": self.infeasible,
        }


def _golden_min(fun, lo: float, hi: float, tol: float):
    """Golden-section minimum of fun on [lo, hi]; returns (x, fun(x))."""
    if hi < lo:
        lo, hi = hi, lo
    if hi - lo <= tol:
        x = 0.5 * (lo + hi)
        return x, fun(x)
    a, b = lo, hi
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = fun(x1), fun(x2)
    while b - a > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = fun(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = fun(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def _end_pair_slope(layout: FilterLayout) -> float:
    """Susceptance slope parameter b = (f0/2) dB/df of the frozen end pair."""
    z = layout.zeros
    y_low, y_high = layout.end_stub_y
    f0 = layout.band.f0

    def b_total(f):
        th_l = 2.0 * math.pi * f * math.sqrt(z.eps_re) * z.l_low / C0
        th_h = 2.0 * math.pi * f * math.sqrt(z.eps_re) * z.l_high / C0
        return -y_low / math.tan(th_l) - y_high / math.tan(th_h)

    h = 1e-6 * f0
    return 0.5 * f0 * (b_total(f0 + h) - b_total(f0 - h)) / (2.0 * h)


def tune_zeros(layout: FilterLayout, atten_targets, max_iter: int = 40,
               penalty: float = 100.0, grid=None,
               zref: float | None = None) -> TuneReport:
    """Meet attenuation targets by moving zero-stub lengths in their windows.

    atten_targets is a list of (frequency Hz, attenuation dB) pairs. The
    objective is sum of squared shortfalls plus penalty * severity^2 of
    the passband hump; iteration stops when it drops below 1e-6, at
    max_iter, or after three rounds without improvement (reported as
    infeasible rather than raised, since the best found design is still
    useful).
    """
    if layout.zeros is None:
        raise PlanError("layout has no zero plan to tune")
    targets = [(float(f), float(db)) for f, db in atten_targets]
    if not targets:
        raise DomainError("need at least one attenuation target")
    if max_iter < 0:
        raise DomainError("max_iter cannot be negative")
    band = layout.band
    rb = ripple_band(band.f0, band.w)
    for f, _ in targets:
        if rb[0] <= f <= rb[1]:
            raise DomainError(f"target frequency {f} lies inside the passband")
    if grid is None:
        grid = default_grid(band.f0)
    grid = np.asarray(grid, dtype=float)
    if zref is None:
        zref = band.z0

    z = layout.zeros
    hump_band = central_band(rb, HUMP_BAND_FRACTION)
    allow_db = band.ripple_db + HUMP_MARGIN_DB
    # window bounds in length space; frequency windows map inverted
    lo_bounds = sorted((zero_stub_length(z.window_low[0], z.eps_re),
                        zero_stub_length(z.window_low[1], z.eps_re)))
    hi_bounds = sorted((zero_stub_length(z.window_high[0], z.eps_re),
                        zero_stub_length(z.window_high[1], z.eps_re)))

    def evaluate(l_low, l_high):
        cand = replace_zero_lengths(layout, l_low, l_high)
        resp = cascade_sweep(build_circuit(cand), grid, zref=zref)
        db = resp.s21_db()
        obj = 0.0
        achieved = []
        for f, want in targets:
            got = float(-np.interp(f, resp.freq, db))
            achieved.append((f, got))
            obj += max(0.0, want - got) ** 2
        sev = detect_hump(resp, hump_band, allow_db)
        obj += penalty * sev * sev
        return obj, achieved, sev, resp

    l_low, l_high = z.l_low, z.l_high
    best_obj, achieved, severity, resp = evaluate(l_low, l_high)
    trace = [best_obj]
    infeasible = False

    if best_obj >= 1e-6:
        tol_lo = max(1e-4 * (lo_bounds[1] - lo_bounds[0]), 1e-9)
        tol_hi = max(1e-4 * (hi_bounds[1] - hi_bounds[0]), 1e-9)
        stall = 0
        for _ in range(max_iter):
            improved = False
            x, obj = _golden_min(lambda v: evaluate(v, l_high)[0],
                                 lo_bounds[0], lo_bounds[1], tol_lo)
            if obj < best_obj - 1e-12:
                l_low, best_obj, improved = x, obj, True
            x, obj = _golden_min(lambda v: evaluate(l_low, v)[0],
                                 hi_bounds[0], hi_bounds[1], tol_hi)
            if obj < best_obj - 1e-12:
                l_high, best_obj, improved = x, obj, True
            trace.append(best_obj)
            stall = 0 if improved else stall + 1
            if best_obj < 1e-6:
                break
            if stall >= 3:
                # search is stuck above threshold; hand back the best found
                infeasible = True
                break
        best_obj, achieved, severity, resp = evaluate(l_low, l_high)

    final = replace_zero_lengths(layout, l_low, l_high)
    fz_low = _detect_in_window(resp, final.zeros.window_low,
                               final.zeros.f_zero_low)
    fz_high = _detect_in_window(resp, final.zeros.window_high,
                                final.zeros.f_zero_high)

    b_pair = _end_pair_slope(final)
    k_end = layout.couplings.k[0]
    cls = "indeterminate"
    if b_pair > 0:
        qe_eff = b_pair * band.z0
        j12 = k_end * math.sqrt(layout._b_end * layout._b_int)
        k_eff = j12 / math.sqrt(b_pair * layout._b_int)
        cls = classify_coupling(k_eff, qe_eff, layout.qu)

    return TuneReport(
        l_low=float(l_low), l_high=float(l_high),
        f_zero_low=fz_low, f_zero_high=fz_high,
        hump_severity_db=severity, coupling_class=cls,
        objective_trace=tuple(trace),
        achieved_db=tuple((f, a) for f, a in achieved),
        infeasible=infeasible)


def _detect_in_window(resp: FrequencyResponse, window: tuple,
                      analytic: float) -> float:
    """Detected zero nearest the analytic one, searched around the window.

    Falls back to the analytic frequency when the sweep misses the notch
    (coarse grid or window clipped by the grid span).
    """
    lo = max(window[0] * 0.98, float(resp.freq[0]))
    hi = min(window[1] * 1.02, float(resp.freq[-1]))
    if lo >= hi:
        return float(analytic)
    found = find_zeros(resp.slice(lo, hi), floor_db=-20.0)
    if not found:
        return float(analytic)
    return float(min(found, key=lambda f: abs(f - analytic)))


def compare_designs(respA: FrequencyResponse, respB: FrequencyResponse,
                    probes) -> list:
    """Attenuation of two responses at probe frequencies and the B - A delta.

    Returns one dict per probe: {"f", "atten_a_db", "atten_b_db",
    "delta_db"}. Probes must lie inside both grids.
    """
    probes = [float(p) for p in probes]
    if not probes:
        raise ComparisonError("no probe frequencies given")
    dbA, dbB = respA.s21_db(), respB.s21_db()
    rows = []
    for p in probes:
        for resp in (respA, respB):
            if not resp.freq[0] <= p <= resp.freq[-1]:
                raise ComparisonError(f"probe {p} outside a response grid")
        a = float(-np.interp(p, respA.freq, dbA))
        b = float(-np.interp(p, respB.freq, dbB))
        rows.append({"f": p, "atten_a_db": a, "atten_b_db": b,
                     "delta_db": b - a})
    return rows
