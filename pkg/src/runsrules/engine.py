"""Exact run-length distribution of a scheme via Markov chain imbedding.

The compiled automaton together with the zone probabilities gives an
absorbing Markov chain.  Only its transient block ``Q`` is kept; with
``N`` the run length and ``1`` a vector of ones,

* ``E[N]``   solves ``(I - Q) a = 1``,
* ``E[N^2]`` solves ``(I - Q) s = 1 + 2 Q a``,
* ``P(N > n) = e_0' Q^n 1``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg

from runsrules.automaton import SIGNAL, LabeledAutomaton, build_automaton
from runsrules.gauss import zone_probabilities
from runsrules.rules import SchemeSpec

logger = logging.getLogger(__name__)

DENSE_LIMIT = 3000
PERCENTILE_CAP = 10_000_000
DEFAULT_LEVELS = (0.05, 0.25, 0.50, 0.75, 0.95)


class CannotSignalError(ArithmeticError):
    """The scheme cannot signal under this observation distribution."""


@dataclass(frozen=True, eq=False)
class TransientChain:
    """Transient block of an absorbing chain started in state ``initial``.

    ``Q`` is a CSR matrix of one-step probabilities between transient
    states and ``absorb[i]`` the probability of signaling from state ``i``
    on the next observation.
    """

    Q: sp.csr_matrix
    absorb: np.ndarray
    initial: int = 0

    @property
    def size(self) -> int:
        return self.Q.shape[0]

    @cached_property
    def _QT(self) -> sp.csr_matrix:
        return self.Q.T.tocsr()

    @cached_property
    def can_signal(self) -> bool:
        """Whether every transient state can eventually lead to a signal."""
        QT = self.Q.T.tocsr()
        good = self.absorb > 0
        frontier = np.flatnonzero(good)
        while frontier.size:
            preds = np.unique(QT[frontier].indices)
            preds = preds[~good[preds]]
            good[preds] = True
            frontier = preds
        return bool(good.all())

    def require_signal(self) -> None:
        if not self.can_signal:
            raise CannotSignalError("scheme cannot signal under this distribution")

    @cached_property
    def _solve(self):
        self.require_signal()
        n = self.size
        if n <= DENSE_LIMIT:
            lu = scipy.linalg.lu_factor(np.eye(n) - self.Q.toarray(), check_finite=False)
            return lambda b: scipy.linalg.lu_solve(lu, b, check_finite=False)
        return scipy.sparse.linalg.splu((sp.identity(n, format="csc") - self.Q).tocsc()).solve

    @cached_property
    def expected_remaining(self) -> np.ndarray:
        """Expected run length from every transient state."""
        a = self._solve(np.ones(self.size))
        if not np.all(np.isfinite(a)):
            raise CannotSignalError("linear system for the ARL is singular")
        return a


def chain_from(a: LabeledAutomaton, zone_probs: Sequence[float]) -> TransientChain:
    """Imbed automaton ``a`` driven by i.i.d. labels with ``zone_probs``.

    Transient states unreachable from the start under these probabilities
    are pruned.  A chain that can never signal is still returned; the
    statistics raise :class:`CannotSignalError` on it.
    """
    p = np.asarray(zone_probs, dtype=float)
    if p.shape != (len(a.alphabet),):
        raise ValueError(
            f"got {p.size} zone probabilities for an alphabet of {len(a.alphabet)} labels"
        )
    table = a.transitions
    live = p > 0
    dest = table[:, live]
    prob = np.broadcast_to(p[live], dest.shape)

    # states reachable from the start through positive-probability labels
    seen = np.zeros(a.state_count, dtype=bool)
    seen[0] = True
    frontier = np.array([0])
    while frontier.size:
        nxt = np.unique(dest[frontier])
        nxt = nxt[nxt != SIGNAL]
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    keep = np.flatnonzero(seen)
    remap = np.full(a.state_count, -1)
    remap[keep] = np.arange(keep.size)

    dest, prob = dest[keep], prob[keep]
    rows = np.repeat(np.arange(keep.size), dest.shape[1]).reshape(dest.shape)
    to_signal = dest == SIGNAL
    absorb = np.bincount(rows[to_signal], weights=prob[to_signal], minlength=keep.size)
    Q = sp.csr_matrix(
        (prob[~to_signal], (rows[~to_signal], remap[dest[~to_signal]])),
        shape=(keep.size, keep.size),
    )
    Q.sum_duplicates()
    return TransientChain(Q, absorb, 0)


def chain_for(scheme: SchemeSpec, shift: float) -> TransientChain:
    """Chain of ``scheme`` (limit set) for a process shifted by ``shift``."""
    probs = zone_probabilities(scheme.partition(), shift)
    return chain_from(build_automaton(scheme), probs)


def arl(chain: TransientChain) -> float:
    """Average run length from the start state."""
    return float(chain.expected_remaining[chain.initial])


def sd(chain: TransientChain) -> float:
    """Standard deviation of the run length."""
    a = chain.expected_remaining
    s = chain._solve(1.0 + 2.0 * (chain.Q @ a))
    var = float(s[chain.initial] - a[chain.initial] ** 2)
    if var < 0:
        if var < -1e-9 * max(1.0, s[chain.initial]):
            raise ArithmeticError(f"negative run-length variance {var}")
        var = 0.0
    return math.sqrt(var)


def survival(chain: TransientChain, n: int) -> float:
    """``P(N > n)`` by ``n`` vector-matrix products."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    v = np.zeros(chain.size)
    v[chain.initial] = 1.0
    QT = chain._QT
    for _ in range(n):
        v = QT @ v
    return float(v.sum())


def survival_curve(chain: TransientChain, n_max: int) -> np.ndarray:
    """``P(N > n)`` for ``n = 0 .. n_max``."""
    out = np.empty(n_max + 1)
    v = np.zeros(chain.size)
    v[chain.initial] = 1.0
    QT = chain._QT
    out[0] = 1.0
    for n in range(1, n_max + 1):
        v = QT @ v
        out[n] = v.sum()
    return out


def percentiles(chain: TransientChain, levels: Sequence[float]) -> dict[float, int]:
    """Smallest ``n >= 1`` with ``P(N <= n) >= level``, for each level."""
    for level in levels:
        if not 0 < level < 1:
            raise ValueError(f"percentile level must lie in (0, 1), got {level}")
    chain.require_signal()
    pending = sorted(set(levels))
    found: dict[float, int] = {}
    v = np.zeros(chain.size)
    v[chain.initial] = 1.0
    QT = chain._QT
    n = 0
    while pending:
        n += 1
        if n > PERCENTILE_CAP:
            raise ArithmeticError(
                f"percentile search exceeded {PERCENTILE_CAP} steps; chain is pathological"
            )
        v = QT @ v
        cdf = 1.0 - v.sum()
        while pending and cdf >= pending[0]:
            found[pending.pop(0)] = n
    return {level: found[level] for level in levels}


def percentile(chain: TransientChain, level: float) -> int:
    return percentiles(chain, [level])[level]


def sir(chain: TransientChain) -> float:
    """Semi-interquartile range of the run length."""
    q = percentiles(chain, [0.25, 0.75])
    return (q[0.75] - q[0.25]) / 2


@dataclass(frozen=True)
class RunLengthSummary:
    arl: float
    sd: float
    percentiles: dict[float, int] = field(default_factory=dict)
    sir: float | None = None


def summarize(
    scheme: SchemeSpec, shift: float, levels: Sequence[float] = DEFAULT_LEVELS
) -> RunLengthSummary:
    """All run-length statistics of ``scheme`` at one shift."""
    chain = chain_for(scheme, shift)
    pct = percentiles(chain, levels) if levels else {}
    spread = None
    if 0.25 in pct and 0.75 in pct:
        spread = (pct[0.75] - pct[0.25]) / 2
    return RunLengthSummary(arl(chain), sd(chain), pct, spread)
