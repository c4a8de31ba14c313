"""Synthesis and circuit-level simulation of tapped-line interdigital
bandpass filters with stub-loaded transmission zeros."""

from .coupling import (CouplingSet, TapDesign, classify_coupling,
                       coupling_coefficients, coupling_matrix,
                       critical_coupling, design_tap, external_q,
                       qe_from_phase, tap_position)
from .errors import (BuildError, ComparisonError, ConfigError, DomainError,
                     ExtractionError, FilterError, InfeasibleTapError,
                     MetricsError, PlanError, SynthesisError, TouchstoneError)
from .microstrip import (C0, LineParams, Substrate, analyze_line,
                         quarter_wave_length, stub_zero_frequency,
                         synthesize_width, zero_stub_length)
from .netsim import (CircuitNet, FrequencyResponse, IdealInverter,
                     ResponseMetrics, SeriesLine, ShuntAdmittance,
                     ShuntOpenStub, ShuntShortStub, cascade_sweep,
                     central_band, cm_response, default_grid, element_abcd,
                     find_zeros, metrics, ripple_band)
from .prototype import BandSpec, Prototype, chebyshev_gvalues, \
    fractional_bandwidth
from .topology import (FilterLayout, ZeroPlan, build_circuit,
                       end_stub_admittances, make_layout, plan_zeros,
                       replace_zero_lengths)
from .tune import TuneReport, compare_designs, detect_hump, tune_zeros
from .cli_io import (DesignConfig, load_config, read_touchstone,
                     serialize_config, write_csv, write_touchstone)

__version__ = "0.1.0"
