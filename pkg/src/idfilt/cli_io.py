"""Config ingestion, Touchstone/CSV export and the command-line surface.

Config documents are JSON with explicit unit suffixes on every
dimensioned field (GHz, um, ohm at the boundary, SI inside). Unknown
fields are rejected rather than ignored; a missing suffix gets a
pointed error instead of a silent unit guess.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from .errors import (ComparisonError, ConfigError, DomainError, FilterError,
                     TouchstoneError)
from .microstrip import Substrate
from .netsim import (FrequencyResponse, cascade_sweep, cm_response,
                     default_grid, find_zeros, metrics, ripple_band)
from .prototype import BandSpec
from .topology import (DEFAULT_FEED_LENGTH, FilterLayout, ZeroPlan,
                       build_circuit, make_layout, plan_zeros)
from .tune import compare_designs, tune_zeros

__all__ = ["DesignConfig", "load_config", "serialize_config",
           "write_touchstone", "read_touchstone", "write_csv", "main"]

SCHEMA_VERSION = 1

# stems of dimensioned fields and the suffixed spelling the schema wants
_UNIT_HINTS = {
    "f0": "f0_ghz", "f1": "f1_ghz", "f2": "f2_ghz", "f": "f_ghz",
    "z0": "z0_ohm", "z0l": "z0l_ohm", "h": "h_um", "t": "t_um",
    "feed": "feed_um", "targets": "targets_ghz", "probes": "probes_ghz",
    "start": "start_ghz", "stop": "stop_ghz", "atten": "atten_db",
    "window_low": "window_low_ghz", "window_high": "window_high_ghz",
    "ripple": "ripple_db",
}


def _reject_unknown(section: str, doc: dict, allowed):
    for key in doc:
        if key not in allowed:
            hint = _UNIT_HINTS.get(key)
            if hint and hint in allowed:
                raise ConfigError(
                    f"{section}: field '{key}' missing required unit suffix; "
                    f"use '{hint}'")
            raise ConfigError(f"{section}: unknown field '{key}'")


def _number(section: str, doc: dict, key: str, default=None, required=False):
    if key not in doc:
        if required:
            raise ConfigError(f"{section}: missing required field '{key}'")
        return default
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{section}: field '{key}' must be a number")
    return float(v)


def _pair(section: str, doc: dict, key: str):
    v = doc.get(key)
    if not (isinstance(v, list) and len(v) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool)
                    for x in v)):
        raise ConfigError(f"{section}: field '{key}' must be a pair of numbers")
    return [float(v[0]), float(v[1])]


def _parse_band(doc) -> dict:
    if not isinstance(doc, dict):
        raise ConfigError("band: must be an object")
    _reject_unknown("band", doc, {"n", "ripple_db", "f0_ghz", "w",
                                  "f1_ghz", "f2_ghz", "z0_ohm"})
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ConfigError("band: 'n' must be an integer >= 1")
    ripple = _number("band", doc, "ripple_db", required=True)
    z0 = _number("band", doc, "z0_ohm", default=50.0)
    f0 = _number("band", doc, "f0_ghz")
    w = _number("band", doc, "w")
    f1 = _number("band", doc, "f1_ghz")
    f2 = _number("band", doc, "f2_ghz")

    if f1 is not None and f2 is not None:
        if f1 >= f2:
            raise ConfigError(
                "band: need f1_ghz < f2_ghz (BandSpec edge-order invariant)")
        f0_calc = 0.5 * (f1 + f2)
        if f0 is None:
            f0 = f0_calc
        elif abs(f0 - f0_calc) > 1e-9 * f0_calc:
            raise ConfigError("band: f0_ghz inconsistent with f1_ghz/f2_ghz")
        w_calc = (f2 - f1) / f0
        if w is None:
            w = w_calc
        elif abs(w - w_calc) > 1e-9:
            raise ConfigError("band: w inconsistent with the band edges")
    elif f0 is not None and w is not None:
        f1 = f0 * (1.0 - 0.5 * w)
        f2 = f0 * (1.0 + 0.5 * w)
    else:
        raise ConfigError(
            "band: give f1_ghz and f2_ghz, or f0_ghz with w")
    if ripple <= 0:
        raise ConfigError("band: ripple_db must be positive")
    if not 0 < w < 1:
        raise ConfigError(f"band: fractional bandwidth {w:.4f} outside (0, 1)")
    return {"n": n, "ripple_db": ripple, "f0_ghz": f0, "w": w,
            "f1_ghz": f1, "f2_ghz": f2, "z0_ohm": z0}


def _parse_resonator(doc) -> dict:
    if doc is None:
        doc = {}
    if not isinstance(doc, dict):
        raise ConfigError("resonator: must be an object")
    _reject_unknown("resonator", doc, {"z0l_ohm", "feed_um"})
    z0l = _number("resonator", doc, "z0l_ohm", default=50.0)
    feed = _number("resonator", doc, "feed_um",
                   default=DEFAULT_FEED_LENGTH * 1e6)
    if z0l <= 0:
        raise ConfigError("resonator: z0l_ohm must be positive")
    if feed < 0:
        raise ConfigError("resonator: feed_um cannot be negative")
    return {"z0l_ohm": z0l, "feed_um": feed}


def _parse_substrate(doc):
    if doc is None:
        return None
    if not isinstance(doc, dict):
        raise ConfigError("substrate: must be an object")
    _reject_unknown("substrate", doc, {"eps_r", "h_um", "t_um", "qu"})
    out = {
        "eps_r": _number("substrate", doc, "eps_r", required=True),
        "h_um": _number("substrate", doc, "h_um", required=True),
        "t_um": _number("substrate", doc, "t_um", default=0.0),
        "qu": _number("substrate", doc, "qu"),
    }
    if out["eps_r"] < 1:
        raise ConfigError("substrate: eps_r must be >= 1")
    if out["h_um"] <= 0:
        raise ConfigError("substrate: h_um must be positive")
    if out["qu"] is not None and out["qu"] <= 0:
        raise ConfigError("substrate: qu must be positive when given")
    return out


def _parse_zeros(doc):
    if doc is None:
        return None
    if not isinstance(doc, dict):
        raise ConfigError("zeros: must be an object")
    _reject_unknown("zeros", doc, {"targets_ghz", "window_low_ghz",
                                   "window_high_ghz", "eps_re"})
    targets = _pair("zeros", doc, "targets_ghz")
    out = {
        "targets_ghz": targets,
        "window_low_ghz": _pair("zeros", doc, "window_low_ghz"),
        "window_high_ghz": _pair("zeros", doc, "window_high_ghz"),
        "eps_re": _number("zeros", doc, "eps_re", required=True),
    }
    if out["eps_re"] < 1:
        raise ConfigError("zeros: eps_re must be >= 1")
    if targets[0] >= targets[1]:
        raise ConfigError("zeros: targets_ghz must be ordered low < high")
    return out


def _parse_grid(doc, band: dict) -> dict:
    if doc is None:
        f0 = band["f0_ghz"]
        return {"start_ghz": 0.5 * f0, "stop_ghz": 1.6 * f0, "points": 1601}
    if not isinstance(doc, dict):
        raise ConfigError("grid: must be an object")
    _reject_unknown("grid", doc, {"start_ghz", "stop_ghz", "points"})
    start = _number("grid", doc, "start_ghz", required=True)
    stop = _number("grid", doc, "stop_ghz", required=True)
    points = doc.get("points", 1601)
    if not isinstance(points, int) or isinstance(points, bool) or points < 2:
        raise ConfigError("grid: 'points' must be an integer >= 2")
    if not 0 < start < stop:
        raise ConfigError("grid: need 0 < start_ghz < stop_ghz")
    return {"start_ghz": start, "stop_ghz": stop, "points": points}


def _parse_probes(doc):
    if doc is None:
        return []
    if not (isinstance(doc, list)
            and all(isinstance(x, (int, float)) and not isinstance(x, bool)
                    for x in doc)):
        raise ConfigError("probes_ghz: must be a list of numbers")
    return [float(x) for x in doc]


def _parse_tune(doc):
    if doc is None:
        return None
    if not isinstance(doc, dict):
        raise ConfigError("tune: must be an object")
    _reject_unknown("tune", doc, {"targets", "max_iter"})
    raw = doc.get("targets")
    if not isinstance(raw, list) or not raw:
        raise ConfigError("tune: 'targets' must be a non-empty list")
    targets = []
    for i, t in enumerate(raw):
        sec = f"tune.targets[{i}]"
        if not isinstance(t, dict):
            raise ConfigError(f"{sec}: must be an object")
        _reject_unknown(sec, t, {"f_ghz", "atten_db"})
        targets.append({"f_ghz": _number(sec, t, "f_ghz", required=True),
                        "atten_db": _number(sec, t, "atten_db", required=True)})
    max_iter = doc.get("max_iter", 40)
    if not isinstance(max_iter, int) or isinstance(max_iter, bool) or max_iter < 0:
        raise ConfigError("tune: 'max_iter' must be a non-negative integer")
    return {"targets": targets, "max_iter": max_iter}


@dataclass(frozen=True)
class DesignConfig:
    """Validated design document.

    resolved is the fully normalized config (defaults applied, boundary
    units) and serializes back to a loadable document unchanged.
    """

    resolved: dict

    def band_spec(self) -> BandSpec:
        b = self.resolved["band"]
        return BandSpec(n=b["n"], ripple_db=b["ripple_db"],
                        f1=b["f1_ghz"] * 1e9, f2=b["f2_ghz"] * 1e9,
                        f0=b["f0_ghz"] * 1e9, z0=b["z0_ohm"])

    def substrate(self) -> Substrate | None:
        s = self.resolved["substrate"]
        if s is None:
            return None
        return Substrate(eps_r=s["eps_r"], h=s["h_um"] * 1e-6,
                         t=s["t_um"] * 1e-6, qu=s["qu"])

    def zero_plan(self) -> ZeroPlan | None:
        z = self.resolved["zeros"]
        if z is None:
            return None
        return plan_zeros(
            window_low=[x * 1e9 for x in z["window_low_ghz"]],
            window_high=[x * 1e9 for x in z["window_high_ghz"]],
            target_low=z["targets_ghz"][0] * 1e9,
            target_high=z["targets_ghz"][1] * 1e9,
            eps_re=z["eps_re"])

    def layout(self) -> FilterLayout:
        r = self.resolved["resonator"]
        return make_layout(self.band_spec(), z0l=r["z0l_ohm"],
                           substrate=self.substrate(), zeros=self.zero_plan(),
                           feed_length=r["feed_um"] * 1e-6)

    def grid_array(self) -> np.ndarray:
        g = self.resolved["grid"]
        return np.linspace(g["start_ghz"] * 1e9, g["stop_ghz"] * 1e9,
                           g["points"])

    def probes(self) -> list:
        return [x * 1e9 for x in self.resolved["probes_ghz"]]

    def tune_settings(self):
        t = self.resolved["tune"]
        if t is None:
            return None
        return ([(x["f_ghz"] * 1e9, x["atten_db"]) for x in t["targets"]],
                t["max_iter"])


def load_config(path) -> DesignConfig:
    """Load and validate a JSON design document."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ConfigError(f"cannot read config: {e}") from e
    if not text.strip():
        raise ConfigError(f"{path}: empty config file")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: invalid JSON ({e})") from e
    return parse_config(doc)


def parse_config(doc) -> DesignConfig:
    if not isinstance(doc, dict):
        raise ConfigError("config root must be a JSON object")
    _reject_unknown("config", doc, {"schema", "band", "resonator", "substrate",
                                    "zeros", "grid", "probes_ghz", "tune"})
    if doc.get("schema") != SCHEMA_VERSION:
        raise ConfigError(
            f"config: 'schema' must be {SCHEMA_VERSION}, got {doc.get('schema')!r}")
    if "band" not in doc:
        raise ConfigError("config: missing required section 'band'")

    band = _parse_band(doc["band"])
    resolved = {
        "schema": SCHEMA_VERSION,
        "band": band,
        "resonator": _parse_resonator(doc.get("resonator")),
        "substrate": _parse_substrate(doc.get("substrate")),
        "zeros": _parse_zeros(doc.get("zeros")),
        "grid": _parse_grid(doc.get("grid"), band),
        "probes_ghz": _parse_probes(doc.get("probes_ghz")),
        "tune": _parse_tune(doc.get("tune")),
    }
    cfg = DesignConfig(resolved=resolved)
    # cross-section checks happen where the objects meet the band
    if resolved["zeros"] is not None:
        cfg.layout()
    return cfg


def serialize_config(cfg: DesignConfig) -> str:
    """Canonical JSON text of the resolved config; reloads identically."""
    return canonical_json(cfg.resolved)


def canonical_json(obj) -> str:
    """Deterministic JSON: sorted keys, fixed layout, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


# -- S-parameter files -------------------------------------------------

def _resp_columns(resp: FrequencyResponse):
    s22 = resp.s22 if resp.s22 is not None else resp.s11
    return resp.s11, resp.s21, resp.s21, s22


def write_touchstone(resp: FrequencyResponse, path) -> None:
    """Two-port Touchstone v1.1, RI format, frequencies in GHz."""
    s11, s21, s12, s22 = _resp_columns(resp)
    zref = resp.zref
    lines = [
        f"! 2-port S-parameters, {resp.freq.size} points",
        f"! reference impedance {zref:g} ohm",
        f"# GHz S RI R {zref:g}",
    ]
    for i in range(resp.freq.size):
        vals = [resp.freq[i] / 1e9]
        for s in (s11, s21, s12, s22):
            vals += [s[i].real, s[i].imag]
        lines.append(" ".join(f"{v:.9g}" for v in vals))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_touchstone(path) -> FrequencyResponse:
    """Read a two-port Touchstone v1.1 file (RI, MA or DB formats)."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.readlines()

    unit_scale = {"GHZ": 1e9, "MHZ": 1e6, "KHZ": 1e3, "HZ": 1.0}
    scale, fmt, zref = 1e9, "MA", 50.0
    seen_option = False
    rows = []
    for ln, line in enumerate(raw, start=1):
        body = line.split("!", 1)[0].strip()
        if not body:
            continue
        if body.startswith("#"):
            if seen_option:
                continue
            seen_option = True
            toks = body[1:].split()
            i = 0
            while i < len(toks):
                t = toks[i].upper()
                if t in unit_scale:
                    scale = unit_scale[t]
                elif t == "S":
                    pass
                elif t in ("RI", "MA", "DB"):
                    fmt = t
                elif t == "R":
                    if i + 1 >= len(toks):
                        raise TouchstoneError(f"line {ln}: option 'R' needs a value")
                    try:
                        zref = float(toks[i + 1])
                    except ValueError as e:
                        raise TouchstoneError(
                            f"line {ln}: bad reference impedance {toks[i+1]!r}") from e
                    i += 1
                else:
                    raise TouchstoneError(f"line {ln}: unknown option token {t!r}")
                i += 1
            continue
        parts = body.split()
        if len(parts) != 9:
            raise TouchstoneError(
                f"line {ln}: expected 9 columns for a 2-port point, got {len(parts)}")
        try:
            nums = [float(p) for p in parts]
        except ValueError as e:
            raise TouchstoneError(f"line {ln}: non-numeric data") from e
        rows.append(nums)

    if not rows:
        raise TouchstoneError(f"{path}: no data points found")

    arr = np.array(rows)
    freq = arr[:, 0] * scale
    pairs = arr[:, 1:].reshape(-1, 4, 2)
    if fmt == "RI":
        s = pairs[:, :, 0] + 1j * pairs[:, :, 1]
    else:
        mag = pairs[:, :, 0]
        if fmt == "DB":
            mag = 10.0 ** (mag / 20.0)
        s = mag * np.exp(1j * np.radians(pairs[:, :, 1]))
    try:
        return FrequencyResponse(freq=freq, s11=s[:, 0], s21=s[:, 1],
                                 zref=zref, s22=s[:, 3])
    except DomainError as e:
        raise TouchstoneError(f"{path}: {e}") from e


def write_csv(resp: FrequencyResponse, path) -> None:
    """Flat CSV: freq_hz,s11_re,s11_im,s21_re,s21_im,s21_db."""
    db = resp.s21_db()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("freq_hz,s11_re,s11_im,s21_re,s21_im,s21_db\n")
        for i in range(resp.freq.size):
            fh.write(",".join(f"{v:.12g}" for v in (
                resp.freq[i], resp.s11[i].real, resp.s11[i].imag,
                resp.s21[i].real, resp.s21[i].imag, db[i])) + "\n")


# -- CLI ---------------------------------------------------------------

def _parse_freq_token(text: str) -> float:
    t = text.strip()
    for suffix, scale in (("ghz", 1e9), ("mhz", 1e6), ("khz", 1e3), ("hz", 1.0)):
        if t.lower().endswith(suffix):
            body = t[:-len(suffix)]
            break
    else:
        body, scale = t, 1.0
    try:
        return float(body) * scale
    except ValueError:
        raise ConfigError(f"cannot parse frequency {text!r}") from None


def _parse_grid_flag(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError("--grid wants START:STOP:POINTS, e.g. 8GHz:18GHz:1201")
    start, stop = _parse_freq_token(parts[0]), _parse_freq_token(parts[1])
    try:
        points = int(parts[2])
    except ValueError:
        raise ConfigError(f"--grid points {parts[2]!r} is not an integer") from None
    if points < 2 or not 0 < start < stop:
        raise ConfigError("--grid needs 0 < start < stop and points >= 2")
    return np.linspace(start, stop, points)


def _parse_probes_flag(text: str) -> list:
    vals = [_parse_freq_token(p) for p in text.split(",") if p.strip()]
    if not vals:
        raise ConfigError("--probes list is empty")
    return vals


def _grid_for(cfg: DesignConfig, args) -> np.ndarray:
    if args.grid:
        return _parse_grid_flag(args.grid)
    return cfg.grid_array()


def _note(args, msg: str) -> None:
    if not args.quiet:
        print(msg, file=sys.stderr)


def _emit(payload: dict) -> None:
    sys.stdout.write(canonical_json(payload))


def _simulate_response(cfg: DesignConfig, engine: str, grid) -> FrequencyResponse:
    layout = cfg.layout()
    if engine == "cascade":
        return cascade_sweep(build_circuit(layout), grid, zref=layout.band.z0)
    c = layout.couplings
    return cm_response(c.M, c.qe_in, c.qe_out, layout.band.w, layout.band.f0,
                       qu=layout.qu, grid=grid, zref=layout.band.z0)


def _cmd_synth(args) -> int:
    cfg = load_config(args.config)
    layout = cfg.layout()
    c = layout.couplings
    out = {
        "resolved": cfg.resolved,
        "prototype_g": list(layout.proto.g),
        "coupling_k": list(c.k),
        "coupling_matrix": c.M.tolist(),
        "qe_in": c.qe_in,
        "qe_out": c.qe_out,
        "tap": {"ratio": layout.tap.ratio,
                "resonator_length_um": layout.tap.length * 1e6,
                "tap_offset_um": layout.tap.tap * 1e6},
        "zero_stubs": None,
    }
    if layout.zeros is not None:
        z = layout.zeros
        y_low, y_high = layout.end_stub_y
        out["zero_stubs"] = {
            "l_low_um": z.l_low * 1e6,
            "l_high_um": z.l_high * 1e6,
            "y_low_s": y_low,
            "y_high_s": y_high,
            "end_resonator_length_um": layout.end_resonator_length() * 1e6,
        }
    _emit(out)
    return 0


def _cmd_simulate(args) -> int:
    cfg = load_config(args.config)
    grid = _grid_for(cfg, args)
    resp = _simulate_response(cfg, args.engine, grid)
    band = cfg.band_spec()
    rb = ripple_band(band.f0, band.w)
    m = metrics(resp, rb)
    _note(args, f"{args.engine} sweep: {grid.size} points, "
                f"{grid[0]/1e9:.3f} to {grid[-1]/1e9:.3f} GHz")
    if args.out:
        write_touchstone(resp, args.out)
        _note(args, f"wrote {args.out}")
    if args.csv:
        write_csv(resp, args.csv)
        _note(args, f"wrote {args.csv}")
    probes = cfg.probes()
    _emit({
        "engine": args.engine,
        "f_center_ghz": m.f_center / 1e9,
        "bw3db_fractional": m.bw3db_fractional,
        "il_mid_db": m.il_mid_db,
        "rl_min_passband_db": m.rl_min_passband_db,
        "passband_ghz": [rb[0] / 1e9, rb[1] / 1e9],
        "atten_probes": [{"f_ghz": p / 1e9, "atten_db": m.atten_at(p)}
                         for p in probes],
    })
    return 0


# stopband scan window for zero detection, Hz; keeps the second
# harmonic of the longest stub out of the report
ZERO_SCAN = (8e9, 20e9)


def _cmd_zeros(args) -> int:
    cfg = load_config(args.config)
    grid = _grid_for(cfg, args)
    layout = cfg.layout()
    resp = cascade_sweep(build_circuit(layout), grid, zref=layout.band.z0)
    lo = max(ZERO_SCAN[0], float(grid[0]))
    hi = min(ZERO_SCAN[1], float(grid[-1]))
    detected = find_zeros(resp.slice(lo, hi), floor_db=-30.0) if lo < hi else []
    analytic = []
    if layout.zeros is not None:
        analytic = [layout.zeros.f_zero_low, layout.zeros.f_zero_high]
    _emit({
        "analytic_ghz": [f / 1e9 for f in analytic],
        "detected_ghz": [f / 1e9 for f in detected],
        "scan_ghz": [lo / 1e9, hi / 1e9],
        "floor_db": -30.0,
    })
    return 0


def _cmd_tune(args) -> int:
    cfg = load_config(args.config)
    settings = cfg.tune_settings()
    if settings is None:
        raise ConfigError("config has no 'tune' section")
    layout = cfg.layout()
    if layout.zeros is None:
        raise ConfigError("config has no 'zeros' section to tune")
    targets, max_iter = settings
    grid = _grid_for(cfg, args)
    report = tune_zeros(layout, targets, max_iter=max_iter, grid=grid)
    payload = report.to_dict()
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(canonical_json(payload))
        _note(args, f"wrote {args.report}")
    _emit(payload)
    if report.infeasible:
        _note(args, "tune: infeasible, best found returned")
        return 3
    return 0


def _cmd_compare(args) -> int:
    cfg_a = load_config(args.config_a)
    cfg_b = load_config(args.config_b)
    grid = _parse_grid_flag(args.grid) if args.grid else cfg_a.grid_array()
    resp_a = _simulate_response(cfg_a, "cascade", grid)
    resp_b = _simulate_response(cfg_b, "cascade", grid)
    if args.probes:
        probes = _parse_probes_flag(args.probes)
    else:
        probes = cfg_a.probes()
    if not probes:
        raise ComparisonError(
            "no probes: pass --probes or set probes_ghz in the first config")
    rows = compare_designs(resp_a, resp_b, probes)
    _emit({"probes": [
        {"f_ghz": r["f"] / 1e9, "atten_a_db": r["atten_a_db"],
         "atten_b_db": r["atten_b_db"], "delta_db": r["delta_db"]}
        for r in rows]})
    return 0


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid", metavar="START:STOP:POINTS", default=None,
                        help="override the sweep grid, e.g. 8GHz:18GHz:1201")
    common.add_argument("--quiet", "-q", action="store_true",
                        help="suppress progress notes on stderr")
    common.add_argument("--seed", type=int, default=None,
                        help="reserved; the tuner is deterministic")

    p = argparse.ArgumentParser(prog="idfilt",
                                description="Interdigital bandpass filter "
                                            "synthesis and simulation")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("synth", parents=[common],
                        help="print prototype, couplings, tap and stub sizes")
    sp.add_argument("config")
    sp.set_defaults(func=_cmd_synth)

    sp = sub.add_parser("simulate", parents=[common],
                        help="sweep a design and report passband metrics")
    sp.add_argument("config")
    sp.add_argument("--engine", choices=("cascade", "cm"), default="cascade")
    sp.add_argument("--out", metavar="RESP.S2P", default=None)
    sp.add_argument("--csv", metavar="RESP.CSV", default=None)
    sp.set_defaults(func=_cmd_simulate)

    sp = sub.add_parser("zeros", parents=[common],
                        help="analytic and detected transmission zeros")
    sp.add_argument("config")
    sp.set_defaults(func=_cmd_zeros)

    sp = sub.add_parser("tune", parents=[common],
                        help="tune zero stubs to attenuation targets")
    sp.add_argument("config")
    sp.add_argument("--report", metavar="REPORT.JSON", default=None)
    sp.set_defaults(func=_cmd_tune)

    sp = sub.add_parser("compare", parents=[common],
                        help="attenuation delta between two designs")
    sp.add_argument("config_a")
    sp.add_argument("config_b")
    sp.add_argument("--probes", metavar="F1,F2,...", default=None)
    sp.set_defaults(func=_cmd_compare)
    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, FilterError) as e:
        if isinstance(e, TouchstoneError):
            print(f"idfilt: {e}", file=sys.stderr)
            return 4
        print(f"idfilt: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"idfilt: {e}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
