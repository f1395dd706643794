"""Sweep execution, observables, termination detection, and run orchestration.

A run starts from one word per vertex (a seed-derived random placement by
default), repeatedly executes sweeps planned by the update scheme, records
the two observables after every completed sweep, and stops on global
consensus, on an exact configuration cycle (deterministic schemes only),
or when the sweep budget runs out. Identical RunParams give bit-identical
results.
"""

from __future__ import annotations

import enum
import warnings
import zlib
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .dynamics import Configuration, init_configuration
from .scheduling import (
    Sequential,
    SweepPlan,
    UpdateScheme,
    assignment_rng,
    fixed_order,
    plan_sweep,
    sweep_rng,
)
from .topology import Graph


def execute_sweep(cfg: Configuration, g: Graph, plan: SweepPlan) -> None:
    """Run one sweep in place, honoring the plan's batch visibility.

    One-by-one plans commit after every vertex; batched plans evaluate the
    whole batch against the frozen pre-batch conveyed words and commit at
    the batch boundary. Counters stay coherent throughout.
    """
    if plan.one_by_one:
        cfg.mem = _kernels.run_one_by_one(
            g.indptr, g.indices, plan.order, cfg.conveyed, cfg.mem, cfg.mem_len,
            cfg.union_counts, cfg.totals, g.max_degree,
        )
    else:
        for batch in plan.batches:
            frozen = cfg.conveyed.copy()
            cfg.mem = _kernels.run_batch(
                g.indptr, g.indices, batch, frozen, cfg.conveyed, cfg.mem, cfg.mem_len,
                cfg.union_counts, cfg.totals, g.max_degree,
            )


def n_words(cfg: Configuration) -> int:
    """Total word count: the sum of all memory sizes."""
    return cfg.word_total


def n_different(cfg: Configuration) -> int:
    """Number of different words present across all memories."""
    return cfg.distinct_words


def detect_cycle(history) -> Optional[tuple]:
    """First (start, period) such that history[start + period] == history[start].

    history is any sequence of configuration fingerprints; entries are
    trusted to collide only for equal configurations (CycleDetector feeds
    full serialized states).
    """
    seen = {}
    for i, fp in enumerate(history):
        if fp in seen:
            return seen[fp], i - seen[fp]
        seen[fp] = i
    return None


class CycleDetector:
    """Exact-cycle watch for deterministic schemes.

    Keeps one compressed snapshot per fingerprint; a fingerprint hit is
    confirmed against the stored full state, so hash collisions can never
    produce a false cycle.
    """

    def __init__(self):
        self._snapshots = {}

    def observe(self, sweep: int, cfg: Configuration) -> Optional[tuple]:
        """Record cfg at this sweep; returns (start, period) on first recurrence."""
        raw = cfg.serialize()
        digest = cfg.fingerprint()
        for first_sweep, packed in self._snapshots.get(digest, ()):
            if zlib.decompress(packed) == raw:
                return first_sweep, sweep - first_sweep
        self._snapshots.setdefault(digest, []).append((sweep, zlib.compress(raw, 1)))
        return None


class Termination(enum.Enum):
    CONSENSUS = "consensus"
    CYCLE = "cycle"
    BUDGET = "budget"


@dataclass(frozen=True)
class TerminationReport:
    """Why and when a run stopped."""

    reason: Termination
    sweeps: int
    consensus_word: Optional[int] = None
    cycle_start: Optional[int] = None
    cycle_period: Optional[int] = None


@dataclass(frozen=True)
class TimeSeries:
    """Observable rows (sweep t, total words, distinct words), t=0 included."""

    t: np.ndarray
    nw: np.ndarray
    nd: np.ndarray

    def __len__(self) -> int:
        return len(self.t)

    @classmethod
    def from_rows(cls, rows) -> "TimeSeries":
        arr = np.asarray(rows, dtype=np.int64).reshape(-1, 3)
        return cls(t=arr[:, 0], nw=arr[:, 1], nd=arr[:, 2])


@dataclass(frozen=True)
class RunParams:
    """Everything a single run needs; seed fixes the whole trajectory.

    initial is "random" (seed-derived word placement), "identity"
    (vertex u starts with word u), an explicit permutation, or a prebuilt
    Configuration (copied, not mutated). detect_cycles None means
    "deterministic schemes only". debug_checks recomputes the counters
    from scratch after every sweep and asserts they match.
    """

    graph: Graph
    scheme: UpdateScheme
    seed: int = 0
    max_sweeps: int = 2000
    stop_on_consensus: bool = True
    record_every: int = 1
    initial: object = "random"
    detect_cycles: Optional[bool] = None
    debug_checks: bool = False

    def __post_init__(self):
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be >= 1")
        if self.record_every < 1:
            raise ValueError("record_every must be >= 1")


def _initial_configuration(params: RunParams) -> Configuration:
    g, spec = params.graph, params.initial
    if isinstance(spec, Configuration):
        if spec.n != g.n:
            raise ValueError(f"initial configuration has {spec.n} vertices, graph has {g.n}")
        return spec.copy()
    if isinstance(spec, str):
        if spec == "random":
            return init_configuration(g, assignment_rng(params.seed).permutation(g.n))
        if spec == "identity":
            return init_configuration(g, np.arange(g.n))
        raise ValueError(f"unknown initial spec {spec!r}")
    return init_configuration(g, spec)


def _is_consensus(cfg: Configuration) -> bool:
    # counters make this O(1); the O(n) array check below confirms the
    # all-singleton shared-word structure before we report a fixed point
    if cfg.distinct_words != 1 or cfg.word_total != cfg.n:
        return False
    return bool(np.all(cfg.mem_len == 1) and np.all(cfg.conveyed == cfg.conveyed[0]))


def run(params: RunParams) -> tuple:
    """Execute one run; returns (TimeSeries, TerminationReport)."""
    g = params.graph
    cfg = _initial_configuration(params)
    scheme = params.scheme
    if isinstance(scheme, Sequential):
        scheme = Sequential(order=fixed_order(scheme, g.n, params.seed))

    watch_cycles = params.detect_cycles
    if watch_cycles is None:
        watch_cycles = scheme.deterministic
    detector = CycleDetector() if watch_cycles else None

    on_lattice_start = cfg.word_total == g.n  # soft 5n bound only meaningful then
    rows = [(0, cfg.word_total, cfg.distinct_words)]
    if params.stop_on_consensus and _is_consensus(cfg):
        report = TerminationReport(Termination.CONSENSUS, 0, consensus_word=int(cfg.conveyed[0]))
        return TimeSeries.from_rows(rows), report
    if detector is not None:
        detector.observe(0, cfg)

    report = None
    for t in range(1, params.max_sweeps + 1):
        plan = plan_sweep(scheme, g.n, sweep_rng(params.seed, t))
        execute_sweep(cfg, g, plan)
        if params.debug_checks:
            cfg.check_counters()
            if on_lattice_start and cfg.word_total > 5 * g.n:
                warnings.warn(f"total word count exceeded 5n at sweep {t}", stacklevel=2)
        if params.stop_on_consensus and _is_consensus(cfg):
            report = TerminationReport(Termination.CONSENSUS, t, consensus_word=int(cfg.conveyed[0]))
        elif detector is not None:
            hit = detector.observe(t, cfg)
            if hit is not None:
                start, period = hit
                report = TerminationReport(Termination.CYCLE, t, cycle_start=start, cycle_period=period)
        if t % params.record_every == 0 or report is not None or t == params.max_sweeps:
            rows.append((t, cfg.word_total, cfg.distinct_words))
        if report is not None:
            break
    if report is None:
        report = TerminationReport(Termination.BUDGET, params.max_sweeps)
    return TimeSeries.from_rows(rows), report
