"""Scheme grammar, zone alphabets and the windowed signal predicates.

The predicates here define every scheme's behavior.  The automata in
:mod:`runsrules.automaton` and the simulator in :mod:`runsrules.mc` are both
checked against them.

Zone labels
-----------
``r/m`` and ``M-r/m`` schemes cut the axis at ``[-L, 0, L]``::

    d : x <= -L      l : -L < x <= 0      u : 0 < x <= L      U : x > L

The Western Electric chart cuts at the 1, 2 and 3 sigma lines on both sides
of the center line; labels are ``"<side><band>"`` with side ``U``/``L`` and
band ``0`` (|z| <= 1) to ``3`` (|z| > 3).  A point on the center line is a
lower-side point.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from runsrules.gauss import ZonePartition

MAX_WINDOW = 12

RM_ALPHABET = ("d", "l", "u", "U")
WE_ALPHABET = ("L3", "L2", "L1", "L0", "U0", "U1", "U2", "U3")
WE_CUTS = (-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0)

# integer codes used by the vectorized predicate; NO_LABEL pads missing history
NO_LABEL = -1
_D, _L, _SMALL_U, _U = range(4)


class SchemeError(ValueError):
    """Malformed or out-of-range scheme description."""


class Kind(enum.Enum):
    BASIC = "Basic"
    MODIFIED = "Modified"
    WESTERN_ELECTRIC = "WesternElectric"


@dataclass(frozen=True)
class SchemeSpec:
    """A runs-rule scheme plus (optionally) its control-limit half-width.

    ``r`` and ``m`` apply to Basic and Modified schemes; ``we_run_length``
    is the same-side run length of the fourth Western Electric rule.
    Western Electric limits are fixed at 3 sigma, so ``limit`` is ignored
    for that kind.
    """

    kind: Kind
    r: int = 1
    m: int = 1
    we_run_length: int = 8
    limit: float | None = None

    def __post_init__(self):
        if self.kind is Kind.WESTERN_ELECTRIC:
            if self.we_run_length not in (8, 9):
                raise SchemeError(f"we_run_length must be 8 or 9, got {self.we_run_length}")
        else:
            if self.r < 1 or self.m < 1:
                raise SchemeError(f"r and m must be positive, got r={self.r}, m={self.m}")
            if self.r > self.m:
                raise SchemeError(f"r must not exceed m, got {self.r}/{self.m}")
            if self.m > MAX_WINDOW:
                raise SchemeError(f"window m={self.m} exceeds the cap of {MAX_WINDOW}")
        if self.limit is not None and not self.limit > 0:
            raise SchemeError(f"limit must be positive, got {self.limit}")

    @property
    def name(self) -> str:
        if self.kind is Kind.WESTERN_ELECTRIC:
            return "C1234"
        prefix = "M-" if self.kind is Kind.MODIFIED else ""
        return f"{prefix}{self.r}/{self.m}"

    def __str__(self) -> str:
        return self.name

    def with_limit(self, limit: float) -> SchemeSpec:
        return replace(self, limit=float(limit))

    @property
    def shape(self) -> SchemeSpec:
        """The scheme with its limit stripped (automaton cache key)."""
        return replace(self, limit=None)

    @property
    def alphabet(self) -> tuple[str, ...]:
        return WE_ALPHABET if self.kind is Kind.WESTERN_ELECTRIC else RM_ALPHABET

    def partition(self) -> ZonePartition:
        if self.kind is Kind.WESTERN_ELECTRIC:
            return ZonePartition(WE_CUTS, WE_ALPHABET)
        if self.limit is None:
            raise SchemeError(f"scheme {self.name} has no control limit set")
        return ZonePartition([-self.limit, 0.0, self.limit], RM_ALPHABET)


_RM_PATTERN = re.compile(r"(M-)?(\d+)/(\d+)")


def parse_scheme(text: str, *, we_run_length: int = 8) -> SchemeSpec:
    """Parse ``"r/m"``, ``"M-r/m"``, ``"C1234"`` or ``"WE"``.

    >>> parse_scheme("M-4/5")
    SchemeSpec(kind=<Kind.MODIFIED: 'Modified'>, r=4, m=5, we_run_length=8, limit=None)
    """
    if text in ("C1234", "WE"):
        return SchemeSpec(Kind.WESTERN_ELECTRIC, we_run_length=we_run_length)
    match = _RM_PATTERN.fullmatch(text)
    if match is None:
        raise SchemeError(f"cannot parse scheme {text!r}; expected r/m, M-r/m or C1234")
    kind = Kind.MODIFIED if match.group(1) else Kind.BASIC
    return SchemeSpec(kind, r=int(match.group(2)), m=int(match.group(3)))


def required_window(scheme: SchemeSpec) -> int:
    """Number of most recent labels the predicate needs to see."""
    if scheme.kind is Kind.WESTERN_ELECTRIC:
        return max(3, 5, scheme.we_run_length)
    return scheme.m


def _modified_side(window: Sequence[str], r: int, beyond: str, inside: str) -> bool:
    # walk back from the newest label while the pattern stays on one side
    if not window or window[-1] != beyond:
        return False
    count = 0
    for label in reversed(window):
        if label == beyond:
            count += 1
            if count >= r:
                return True
        elif label != inside:
            return False
    return False


def _we_signal(window: Sequence[str], run_length: int) -> bool:
    sides = [label[0] for label in window]
    bands = [int(label[1]) for label in window]
    if bands[-1] == 3:
        return True
    for side in ("U", "L"):
        last3 = [b for s, b in zip(sides[-3:], bands[-3:]) if s == side]
        if sum(b >= 2 for b in last3) >= 2:
            return True
        last5 = [b for s, b in zip(sides[-5:], bands[-5:]) if s == side]
        if sum(b >= 1 for b in last5) >= 4:
            return True
        if len(window) >= run_length and all(s == side for s in sides[-run_length:]):
            return True
    return False


def signals(scheme: SchemeSpec, window: Sequence[str]) -> bool:
    """Whether the scheme signals at the newest label of ``window``.

    ``window`` holds the labels of the most recent observations, oldest
    first, and is at most :func:`required_window` long (shorter while the
    chart is starting up).
    """
    width = required_window(scheme)
    if len(window) > width:
        raise ValueError(f"window of length {len(window)} exceeds required window {width}")
    if not window:
        return False
    if scheme.kind is Kind.WESTERN_ELECTRIC:
        return _we_signal(window, scheme.we_run_length)
    if scheme.kind is Kind.BASIC:
        return window.count("U") >= scheme.r or window.count("d") >= scheme.r
    return _modified_side(window, scheme.r, "U", "u") or _modified_side(window, scheme.r, "d", "l")


def signals_array(scheme: SchemeSpec, windows: np.ndarray) -> np.ndarray:
    """Vectorized :func:`signals` over integer-coded windows.

    ``windows`` has shape ``(..., required_window(scheme))`` and holds zone
    indices into ``scheme.alphabet``, oldest first; missing history at the
    old end is padded with ``NO_LABEL``.  Returns a boolean array of the
    leading shape.
    """
    w = np.asarray(windows)
    if scheme.kind is Kind.WESTERN_ELECTRIC:
        upper = w >= 4
        lower = (w >= 0) & (w <= 3)
        newest = w[..., -1]
        out = (newest == 0) | (newest == 7)
        out |= np.count_nonzero(w[..., -3:] >= 6, axis=-1) >= 2
        last3 = w[..., -3:]
        out |= np.count_nonzero((last3 >= 0) & (last3 <= 1), axis=-1) >= 2
        last5 = w[..., -5:]
        out |= np.count_nonzero(last5 >= 5, axis=-1) >= 4
        out |= np.count_nonzero((last5 >= 0) & (last5 <= 2), axis=-1) >= 4
        n = scheme.we_run_length
        out |= upper[..., -n:].all(axis=-1) | lower[..., -n:].all(axis=-1)
        return out
    if scheme.kind is Kind.BASIC:
        return (np.count_nonzero(w == _U, axis=-1) >= scheme.r) | (
            np.count_nonzero(w == _D, axis=-1) >= scheme.r
        )
    return _modified_array(w, scheme.r, _U, _SMALL_U) | _modified_array(w, scheme.r, _D, _L)


def _modified_array(w: np.ndarray, r: int, beyond: int, inside: int) -> np.ndarray:
    breaker = (w != beyond) & (w != inside)
    # True at positions newer than the most recent breaker
    after_break = np.cumsum(breaker[..., ::-1], axis=-1)[..., ::-1] == 0
    hits = np.count_nonzero((w == beyond) & after_break, axis=-1)
    return (w[..., -1] == beyond) & (hits >= r)


def signal_matrix(scheme: SchemeSpec, history: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """Signal flags for a block of new labels given the preceding history.

    ``history`` has shape ``(n, required_window - 1)`` (padded with
    ``NO_LABEL``), ``labels`` shape ``(n, t)``.  Entry ``[i, j]`` tells
    whether the predicate holds at ``labels[i, j]``.  Same answers as
    :func:`signals_array` on every window, computed with prefix sums
    instead of materialized windows.
    """
    width = required_window(scheme)
    full = np.concatenate([history, labels], axis=1)
    h, t = history.shape[1], labels.shape[1]
    assert h == width - 1
    newest = full[:, h:]

    def windowed(mask, k):
        # number of True entries among the last k positions ending at each new label
        c = np.zeros((mask.shape[0], mask.shape[1] + 1), dtype=np.int16)
        np.cumsum(mask, axis=1, out=c[:, 1:])
        return c[:, h + 1:] - c[:, h + 1 - k:h + 1 - k + t]

    if scheme.kind is Kind.WESTERN_ELECTRIC:
        out = (newest == 0) | (newest == 7)
        out |= windowed(full >= 6, 3) >= 2
        out |= windowed((full >= 0) & (full <= 1), 3) >= 2
        out |= windowed(full >= 5, 5) >= 4
        out |= windowed((full >= 0) & (full <= 2), 5) >= 4
        n = scheme.we_run_length
        out |= windowed(full >= 4, n) == n
        out |= windowed((full >= 0) & (full <= 3), n) == n
        return out
    m, r = scheme.m, scheme.r
    if scheme.kind is Kind.BASIC:
        return (windowed(full == _U, m) >= r) | (windowed(full == _D, m) >= r)
    return _modified_matrix(full, h, m, r, _U, _SMALL_U) | _modified_matrix(full, h, m, r, _D, _L)


def _modified_matrix(full: np.ndarray, h: int, m: int, r: int, beyond: int, inside: int) -> np.ndarray:
    rows, cols = full.shape
    hit = full == beyond
    breaker = ~hit & (full != inside)
    idx = np.arange(cols, dtype=np.int16)
    last_break = np.maximum.accumulate(np.where(breaker, idx, -1), axis=1)
    pos = idx[h:]
    start = np.maximum(last_break[:, h:] + 1, pos - m + 1)
    c = np.zeros((rows, cols + 1), dtype=np.int16)
    np.cumsum(hit, axis=1, out=c[:, 1:])
    count = c[:, h + 1:] - np.take_along_axis(c, start, axis=1)
    return hit[:, h:] & (count >= r)
