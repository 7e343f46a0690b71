"""Control-limit calibration to a target in-control ARL.

The in-control ARL of an r/m or M-r/m scheme is continuous and strictly
increasing in the half-width ``L``, so a bracket-and-bisect search on
``log ARL(L) - log target`` is robust.  Each step is one linear solve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from runsrules.automaton import build_automaton
from runsrules.engine import arl, chain_from
from runsrules.gauss import zone_probabilities
from runsrules.rules import Kind, SchemeSpec

INITIAL_BRACKET = (0.1, 4.0)
MIN_WIDTH = 1e-9
MAX_LIMIT = 40.0


class CalibrationError(ArithmeticError):
    """Calibration target unreachable or the ARL curve misbehaved."""


@dataclass(frozen=True)
class CalibrationResult:
    limit: float
    achieved_arl0: float
    iterations: int
    bracket_width: float


def in_control_arl(scheme: SchemeSpec, limit: float) -> float:
    s = scheme.with_limit(limit)
    return arl(chain_from(build_automaton(s), zone_probabilities(s.partition(), 0.0)))


def arl_floor(scheme: SchemeSpec) -> float:
    """Limit of the in-control ARL as ``L`` shrinks to zero.

    With ``L = 0`` every point is either ``U`` or ``d`` with probability one
    half each, so this is the ARL of the labels-only pattern.
    """
    a = build_automaton(scheme)
    return arl(chain_from(a, [0.5, 0.0, 0.0, 0.5]))


def calibrate_limit(scheme: SchemeSpec, target_arl0: float, tol: float = 1e-6) -> CalibrationResult:
    """Find ``L`` such that the in-control ARL equals ``target_arl0``.

    The bracket starts at ``INITIAL_BRACKET`` and is widened geometrically
    until it straddles the target; bisection then runs until the relative
    ARL error is at most ``tol`` or the bracket is narrower than 1e-9.
    """
    if scheme.kind is Kind.WESTERN_ELECTRIC:
        raise CalibrationError("Western Electric limits are fixed at 1, 2 and 3 sigma")
    if not target_arl0 > 0 or not math.isfinite(target_arl0):
        raise CalibrationError(f"invalid target ARL {target_arl0}")
    floor = arl_floor(scheme)
    if target_arl0 <= floor:
        raise CalibrationError(
            f"target ARL {target_arl0} is not above the floor {floor:.6g} of scheme {scheme.name}"
        )
    goal = math.log(target_arl0)

    def f(limit):
        return math.log(in_control_arl(scheme, limit)) - goal

    lo, hi = INITIAL_BRACKET
    f_lo, f_hi = f(lo), f(hi)
    iterations = 2
    while f_lo > 0:
        lo /= 2
        f_lo = f(lo)
        iterations += 1
        if lo < 1e-12:
            raise CalibrationError("could not bracket the target from below")
    while f_hi < 0:
        lo, f_lo = hi, f_hi
        hi *= 2
        if hi > MAX_LIMIT:
            raise CalibrationError(f"target ARL {target_arl0} needs a limit beyond {MAX_LIMIT}")
        f_hi = f(hi)
        iterations += 1

    while True:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        iterations += 1
        if not f_lo <= f_mid <= f_hi:
            raise CalibrationError(
                f"in-control ARL not monotone in the limit near {mid:.9f}; engine bug?"
            )
        if f_mid <= 0:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
        if abs(math.expm1(f_mid)) <= tol or hi - lo <= MIN_WIDTH:
            return CalibrationResult(mid, target_arl0 * math.exp(f_mid), iterations, hi - lo)
