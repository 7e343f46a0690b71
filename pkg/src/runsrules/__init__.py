"""Exact run-length analysis for Shewhart charts with supplementary runs rules.

The package reduces every scheme to a finite automaton over zone labels,
imbeds it in an absorbing Markov chain and reads ARL, SD, percentiles and
SIR off the transient part of that chain.  A Monte Carlo simulator that
bypasses the chain entirely is included as an independent check.
"""

from runsrules.gauss import ShiftedProcess, ZonePartition, normal_cdf, zone_probabilities
from runsrules.rules import Kind, SchemeSpec, parse_scheme, required_window, signals
from runsrules.automaton import (
    LabeledAutomaton,
    build_automaton,
    build_we_automaton,
    build_window_automaton,
    minimize,
)
from runsrules.engine import (
    CannotSignalError,
    RunLengthSummary,
    TransientChain,
    arl,
    chain_for,
    chain_from,
    percentile,
    percentiles,
    sd,
    sir,
    summarize,
    survival,
)
from runsrules.calibrate import CalibrationError, CalibrationResult, calibrate_limit
from runsrules.mc import SimulationEstimate, estimate, simulate_run_length

__all__ = [
    "CalibrationError",
    "CalibrationResult",
    "CannotSignalError",
    "Kind",
    "LabeledAutomaton",
    "RunLengthSummary",
    "SchemeSpec",
    "ShiftedProcess",
    "SimulationEstimate",
    "TransientChain",
    "ZonePartition",
    "arl",
    "build_automaton",
    "build_we_automaton",
    "build_window_automaton",
    "calibrate_limit",
    "chain_for",
    "chain_from",
    "estimate",
    "minimize",
    "normal_cdf",
    "parse_scheme",
    "percentile",
    "percentiles",
    "required_window",
    "sd",
    "signals",
    "simulate_run_length",
    "sir",
    "summarize",
    "survival",
    "zone_probabilities",
]

__version__ = "0.1.0"
