"""Monte Carlo run lengths straight from the scheme definition.

Nothing here touches the automata or the linear algebra: observations are
drawn, labeled with the zone partition and fed to the predicates of
:mod:`runsrules.rules`.

Random streams
--------------
Replications are simulated in fixed blocks of ``BLOCK_SIZE``.  Block ``j``
of a run seeded with ``seed`` draws from
``numpy.random.Generator(PCG64(SeedSequence(seed, spawn_key=(j,))))``,
which is what ``SeedSequence(seed).spawn(...)[j]`` yields.  Block
boundaries do not depend on the number of workers, so results are
bit-identical whatever the parallelism.
"""

from __future__ import annotations

import math
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from runsrules.engine import DEFAULT_LEVELS
from runsrules.rules import NO_LABEL, SchemeSpec, required_window, signal_matrix, signals

BLOCK_SIZE = 10_000
FIRST_CHUNK = 16
MAX_CHUNK = 256
MAX_OBSERVATIONS = 100_000_000
MIN_REPLICATIONS = 1000


class SimulationCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SimulationEstimate:
    mean: float
    sd: float
    standard_error: float
    replications: int
    seed: int
    percentile_estimates: dict[float, int] = field(default_factory=dict)


def block_stream(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))


def simulate_run_length(scheme: SchemeSpec, shift: float, stream: np.random.Generator) -> int:
    """One run length, one observation at a time through :func:`signals`."""
    partition = scheme.partition()
    labels = partition.labels
    window = deque(maxlen=required_window(scheme))
    for t in range(1, MAX_OBSERVATIONS + 1):
        x = shift + stream.standard_normal()
        window.append(labels[partition.classify(x)])
        if signals(scheme, tuple(window)):
            return t
    raise SimulationCapExceeded(f"no signal within {MAX_OBSERVATIONS} observations")


def label_array(cuts: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Zone indices of ``x``; a value on a cut goes to the zone below it."""
    out = np.zeros(x.shape, dtype=np.int8)
    for c in cuts:
        out += x > c
    return out


def simulate_block(scheme: SchemeSpec, shift: float, size: int, stream: np.random.Generator) -> np.ndarray:
    """Run lengths of ``size`` independent charts, advanced in lockstep.

    All still-running charts draw a chunk of observations at a time (the
    chunk doubles each round, from ``FIRST_CHUNK`` up to ``MAX_CHUNK``);
    charts that signal inside a chunk are retired with the index of their
    first signal.
    """
    cuts = scheme.partition().cuts
    width = required_window(scheme)
    out = np.zeros(size, dtype=np.int64)
    active = np.arange(size)
    history = np.full((size, width - 1), NO_LABEL, dtype=np.int8)
    elapsed = 0
    chunk = FIRST_CHUNK
    while active.size:
        if elapsed >= MAX_OBSERVATIONS:
            raise SimulationCapExceeded(f"no signal within {MAX_OBSERVATIONS} observations")
        x = stream.standard_normal((active.size, chunk))
        if shift:
            x += shift
        labels = label_array(cuts, x)
        hit = signal_matrix(scheme, history, labels)
        done = hit.any(axis=1)
        out[active[done]] = elapsed + hit[done].argmax(axis=1) + 1
        keep = ~done
        if width > 1:
            history = np.concatenate([history[keep], labels[keep]], axis=1)[:, -(width - 1):]
        else:
            history = history[keep]
        active = active[keep]
        elapsed += chunk
        chunk = min(2 * chunk, MAX_CHUNK)
    return out


def _run_block(args):
    scheme, shift, size, seed, block = args
    return simulate_block(scheme, shift, size, block_stream(seed, block))


def simulate_many(
    scheme: SchemeSpec, shift: float, replications: int, seed: int, workers: int = 1
) -> np.ndarray:
    """Run lengths of ``replications`` charts, in block order."""
    sizes = [BLOCK_SIZE] * (replications // BLOCK_SIZE)
    if replications % BLOCK_SIZE:
        sizes.append(replications % BLOCK_SIZE)
    jobs = [(scheme, shift, size, seed, j) for j, size in enumerate(sizes)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_block, jobs))
    else:
        parts = [_run_block(job) for job in jobs]
    return np.concatenate(parts)


def empirical_percentiles(run_lengths: np.ndarray, levels: Sequence[float]) -> dict[float, int]:
    """Smallest observed ``n`` whose empirical CDF reaches each level."""
    ordered = np.sort(run_lengths)
    total = ordered.size
    out = {}
    for level in levels:
        # integer rank avoids float noise in level * total
        rank = max(1, math.ceil(round(level * total, 9)))
        out[level] = int(ordered[rank - 1])
    return out


def estimate(
    scheme: SchemeSpec,
    shift: float,
    replications: int,
    seed: int,
    levels: Sequence[float] = DEFAULT_LEVELS,
    workers: int = 1,
) -> SimulationEstimate:
    """Simulated ARL, SD and percentiles with their standard error."""
    if replications < MIN_REPLICATIONS:
        raise ValueError(f"need at least {MIN_REPLICATIONS} replications, got {replications}")
    runs = simulate_many(scheme, shift, replications, seed, workers)
    mean = float(runs.mean())
    spread = float(runs.std(ddof=1))
    return SimulationEstimate(
        mean=mean,
        sd=spread,
        standard_error=spread / math.sqrt(replications),
        replications=replications,
        seed=seed,
        percentile_estimates=empirical_percentiles(runs, levels),
    )
