"""Compile schemes into deterministic automata over zone labels.

Every automaton stores its transition table as an integer array of shape
``(state_count, len(alphabet))``; the entry ``SIGNAL`` (-1) marks a move
into the absorbing out-of-control state.  State 0 is always the start
state (no observations yet).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterable, Sequence

import numpy as np

from runsrules.rules import Kind, SchemeSpec, WE_ALPHABET, signals

SIGNAL = -1


@dataclass(frozen=True, eq=False)
class LabeledAutomaton:
    alphabet: tuple[str, ...]
    transitions: np.ndarray
    state_keys: tuple[Hashable, ...]

    def __post_init__(self):
        t = self.transitions
        if t.ndim != 2 or t.shape != (len(self.state_keys), len(self.alphabet)):
            raise ValueError("transition table does not match states x alphabet")
        if t.size and (t.min() < SIGNAL or t.max() >= len(self.state_keys)):
            raise ValueError("transition table references an unknown state")
        t.setflags(write=False)

    @property
    def state_count(self) -> int:
        return len(self.state_keys)

    @property
    def initial(self) -> int:
        return 0

    def step(self, state: int, label: str) -> int:
        return int(self.transitions[state, self.alphabet.index(label)])

    def first_signal(self, labels: Iterable[str]) -> int | None:
        """1-based index of the label at which the automaton signals, if any."""
        index = {a: i for i, a in enumerate(self.alphabet)}
        state = 0
        for t, label in enumerate(labels, start=1):
            state = self.transitions[state, index[label]]
            if state == SIGNAL:
                return t
        return None


def _explore(alphabet: Sequence[str], start: Hashable, move) -> LabeledAutomaton:
    """Breadth-first discovery of the states reachable from ``start``.

    ``move(key, label)`` returns the successor key or ``None`` for SIGNAL.
    """
    ids = {start: 0}
    keys = [start]
    rows = []
    queue = deque([start])
    while queue:
        key = queue.popleft()
        row = []
        for label in alphabet:
            nxt = move(key, label)
            if nxt is None:
                row.append(SIGNAL)
                continue
            if nxt not in ids:
                ids[nxt] = len(keys)
                keys.append(nxt)
                queue.append(nxt)
            row.append(ids[nxt])
        rows.append(row)
    table = np.array(rows, dtype=np.int64).reshape(len(keys), len(alphabet))
    return LabeledAutomaton(tuple(alphabet), table, tuple(keys))


def build_window_automaton(scheme: SchemeSpec) -> LabeledAutomaton:
    """Automaton whose states are the last ``m - 1`` labels seen.

    Each transition appends the new label, asks :func:`signals` about the
    implied window and otherwise keeps the most recent ``m - 1`` labels.
    Start-up states carry genuinely shorter histories.
    """
    if scheme.kind is Kind.WESTERN_ELECTRIC:
        raise ValueError("use build_we_automaton for the Western Electric chart")
    keep = scheme.m - 1

    def move(history, label):
        window = history + (label,)
        if signals(scheme, window):
            return None
        return window[-keep:] if keep else ()

    return _explore(scheme.alphabet, (), move)


def build_we_automaton(we_run_length: int = 8) -> LabeledAutomaton:
    """Compressed automaton for the four Western Electric rules.

    A state is ``(last four labels, same-side run length)``.  Rules 1 to 3
    look back at most five points, so four stored labels plus the new one
    suffice; rule 4 only needs the length of the current run on one side,
    capped at ``we_run_length - 1``.  Band-3 labels signal immediately and
    are never stored.
    """
    scheme = SchemeSpec(Kind.WESTERN_ELECTRIC, we_run_length=we_run_length)
    cap = we_run_length - 1

    def move(key, label):
        last, run = key
        window = last + (label,)
        if signals(scheme, window):
            return None
        run = run + 1 if last and last[-1][0] == label[0] else 1
        if run > cap:
            return None
        return window[-4:], run

    return _explore(WE_ALPHABET, ((), 0), move)


def minimize(a: LabeledAutomaton) -> LabeledAutomaton:
    """Merge behaviorally equivalent states by partition refinement.

    SIGNAL is the only accepting state.  Classes are renumbered in order of
    first appearance so the start state stays at index 0.  States that
    cannot be reached from the start are dropped.
    """
    a = _reachable(a)
    n = a.state_count
    block = np.zeros(n, dtype=np.int64)
    count = 1
    while True:
        succ = np.where(a.transitions == SIGNAL, -1, block[np.maximum(a.transitions, 0)])
        signature = np.column_stack([block, succ])
        _, first, inverse = np.unique(signature, axis=0, return_index=True, return_inverse=True)
        # relabel by first appearance for a stable, start-first numbering
        order = np.argsort(first, kind="stable")
        rank = np.empty_like(order)
        rank[order] = np.arange(len(order))
        new_block = rank[inverse.ravel()]
        if len(first) == count:
            block = new_block
            break
        block, count = new_block, len(first)
    reps = np.array([np.flatnonzero(block == b)[0] for b in range(count)])
    table = a.transitions[reps]
    table = np.where(table == SIGNAL, SIGNAL, block[np.maximum(table, 0)])
    keys = tuple(a.state_keys[i] for i in reps)
    return LabeledAutomaton(a.alphabet, np.ascontiguousarray(table), keys)


def _reachable(a: LabeledAutomaton) -> LabeledAutomaton:
    seen = np.zeros(a.state_count, dtype=bool)
    seen[0] = True
    frontier = [0]
    while frontier:
        nxt = np.unique(a.transitions[frontier])
        nxt = nxt[(nxt != SIGNAL)]
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = list(nxt)
    if seen.all():
        return a
    keep = np.flatnonzero(seen)
    remap = np.full(a.state_count, SIGNAL)
    remap[keep] = np.arange(len(keep))
    table = a.transitions[keep]
    table = np.where(table == SIGNAL, SIGNAL, remap[np.maximum(table, 0)])
    return LabeledAutomaton(a.alphabet, table, tuple(a.state_keys[i] for i in keep))


@lru_cache(maxsize=None)
def _build_cached(shape: SchemeSpec, minimized: bool) -> LabeledAutomaton:
    if shape.kind is Kind.WESTERN_ELECTRIC:
        raw = build_we_automaton(shape.we_run_length)
    else:
        raw = build_window_automaton(shape)
    return minimize(raw) if minimized else raw


def build_automaton(scheme: SchemeSpec, minimized: bool = True) -> LabeledAutomaton:
    """Automaton for any scheme, cached on the scheme shape (limit ignored)."""
    return _build_cached(scheme.shape, minimized)
