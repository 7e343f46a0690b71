"""Standard normal kernel and zone probabilities for a shifted process.

Observations are N(shift, 1).  A :class:`ZonePartition` splits the real
line at strictly increasing cut points; zone ``i`` is the half-open
interval ``(cuts[i-1], cuts[i]]`` so a value lying exactly on a cut falls
into the zone below it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

_SQRT2 = math.sqrt(2.0)


def normal_cdf(x: float) -> float:
    """Standard normal CDF.

    Uses the complementary error function on the side of the tail so that
    both tails keep full relative precision; absolute error is at the level
    of double rounding (well below 1e-15).
    """
    return 0.5 * math.erfc(-x / _SQRT2)


@dataclass(frozen=True)
class ShiftedProcess:
    """Normal process with unit standard deviation and mean ``shift``."""

    shift: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.shift):
            raise ValueError(f"shift must be finite, got {self.shift!r}")


@dataclass(frozen=True)
class ZonePartition:
    """Ordered cut points with one label per resulting interval."""

    cuts: tuple[float, ...]
    labels: tuple[str, ...]

    def __init__(self, cuts: Sequence[float], labels: Sequence[str]):
        cuts = tuple(float(c) for c in cuts)
        labels = tuple(labels)
        if len(labels) != len(cuts) + 1:
            raise ValueError(
                f"need {len(cuts) + 1} labels for {len(cuts)} cuts, got {len(labels)}"
            )
        if any(not math.isfinite(c) for c in cuts):
            raise ValueError("cut points must be finite")
        if any(b <= a for a, b in zip(cuts, cuts[1:])):
            raise ValueError(f"cut points must be strictly increasing: {cuts}")
        object.__setattr__(self, "cuts", cuts)
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.labels)

    def classify(self, x):
        """Zone index (or array of indices) of ``x`` under the tie convention."""
        idx = np.searchsorted(self.cuts, x, side="left")
        return int(idx) if np.ndim(idx) == 0 else idx

    def mirrored(self) -> ZonePartition:
        """Partition reflected through zero, labels reversed."""
        return ZonePartition([-c for c in reversed(self.cuts)], self.labels[::-1])


def zone_probabilities(partition: ZonePartition, process: ShiftedProcess | float) -> np.ndarray:
    """Probability of each zone of ``partition`` for a N(shift, 1) observation.

    Upper-tail differences are taken through the survival function, so
    zones far above the mean do not lose their mass to cancellation.
    """
    shift = process.shift if isinstance(process, ShiftedProcess) else ShiftedProcess(process).shift
    z = [c - shift for c in partition.cuts]
    cdf = np.array([0.0] + [normal_cdf(v) for v in z] + [1.0])
    sf = np.array([1.0] + [normal_cdf(-v) for v in z] + [0.0])
    probs = np.empty(len(partition))
    for i in range(len(partition)):
        lo, hi = i, i + 1
        # pick whichever representation avoids subtracting two numbers near 1
        if lo > 0 and z[lo - 1] >= 0:
            probs[i] = sf[lo] - sf[hi]
        else:
            probs[i] = cdf[hi] - cdf[lo]
    np.clip(probs, 0.0, 1.0, out=probs)
    return probs
