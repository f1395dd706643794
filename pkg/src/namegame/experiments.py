"""Experiment fan-out, aggregation over seeds, and CSV output.

An experiment is `runs` independent runs of the same protocol with seeds
base_seed, base_seed+1, ... Observables are normalized by the vertex
count and averaged per sweep over the runs still alive (not yet
terminated) at that sweep; runs_alive records how many that is, so either
averaging convention can be recovered downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .engine import RunParams, run
from .scheduling import AlphaAsynchronous, FullyAsynchronous, Sequential, UpdateScheme, scheme_label
from .topology import Graph, build_periodic_lattice, read_edge_list

CSV_HEADER = "t,nw_mean,nw_std,nd_mean,nd_std,runs_alive"


@dataclass(frozen=True)
class ExperimentSpec:
    """A full experiment: graph source, scheme, seed fan-out, and output options."""

    scheme: UpdateScheme
    lattice: Optional[int] = None
    graph_path: Optional[str] = None
    runs: int = 100
    base_seed: int = 0
    max_sweeps: int = 2000
    stop_on_consensus: bool = False
    record_every: int = 1
    initial: str = "random"
    normalize_x_by_alpha: bool = False
    out_prefix: Optional[str] = None
    svg: bool = False

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if (self.lattice is None) == (self.graph_path is None):
            raise ValueError("exactly one of lattice or graph_path must be given")
        if self.normalize_x_by_alpha and not isinstance(self.scheme, AlphaAsynchronous):
            raise ValueError("normalize_x_by_alpha requires an alpha-async scheme")

    def build_graph(self) -> Graph:
        if self.lattice is not None:
            return build_periodic_lattice(self.lattice)
        return read_edge_list(self.graph_path)


@dataclass(frozen=True)
class AggregateSeries:
    """Per-sweep statistics of the normalized observables over the alive runs.

    t is int64 sweep indices, or float64 pre-divided by alpha when the
    experiment normalizes the x axis. Means and stds (population std) are
    of n_w/n and n_d/n over the runs alive at each t.
    """

    t: np.ndarray
    nw_mean: np.ndarray
    nw_std: np.ndarray
    nd_mean: np.ndarray
    nd_std: np.ndarray
    runs_alive: np.ndarray
    label: str = ""

    def __len__(self) -> int:
        return len(self.t)

    def __eq__(self, other):
        if not isinstance(other, AggregateSeries):
            return NotImplemented
        return self.label == other.label and all(
            np.array_equal(getattr(self, f), getattr(other, f))
            for f in ("t", "nw_mean", "nw_std", "nd_mean", "nd_std", "runs_alive")
        )


def run_experiment(spec: ExperimentSpec) -> AggregateSeries:
    """Execute all runs of the experiment and aggregate them per sweep."""
    g = spec.build_graph()
    series = []
    for i in range(spec.runs):
        params = RunParams(
            graph=g,
            scheme=spec.scheme,
            seed=spec.base_seed + i,
            max_sweeps=spec.max_sweeps,
            stop_on_consensus=spec.stop_on_consensus,
            record_every=spec.record_every,
            initial=spec.initial,
        )
        ts, _report = run(params)
        series.append(ts)
    return aggregate(series, n=g.n, label=scheme_label(spec.scheme),
                     alpha=_x_alpha(spec))


def _x_alpha(spec: ExperimentSpec) -> Optional[float]:
    if spec.normalize_x_by_alpha:
        return spec.scheme.alpha
    return None


def aggregate(series, n: int, label: str = "", alpha: Optional[float] = None) -> AggregateSeries:
    """Combine per-run time series: normalize by n, average over alive runs.

    A run is alive at t while its series still has a row there; finished
    runs stop contributing rather than being padded with final values.
    """
    all_t = np.unique(np.concatenate([ts.t for ts in series]))
    index = {int(t): i for i, t in enumerate(all_t)}
    nw = np.full((len(series), len(all_t)), np.nan)
    nd = np.full_like(nw, np.nan)
    for row, ts in enumerate(series):
        cols = [index[int(t)] for t in ts.t]
        nw[row, cols] = ts.nw / n
        nd[row, cols] = ts.nd / n
    alive = np.count_nonzero(~np.isnan(nw), axis=0).astype(np.int64)
    with np.errstate(invalid="ignore"):
        stats = (np.nanmean(nw, axis=0), np.nanstd(nw, axis=0),
                 np.nanmean(nd, axis=0), np.nanstd(nd, axis=0))
    t_out = all_t if alpha is None else all_t / alpha
    return AggregateSeries(t_out, *stats, runs_alive=alive, label=label)


def format_csv(series: AggregateSeries, command: Optional[str] = None) -> str:
    """Render the aggregate as CSV text (full-precision floats, LF endings).

    command, when given, is recorded as a leading `# ...` comment so the
    output documents the invocation that produced it.
    """
    lines = []
    if command:
        lines.append(f"# {command}")
    lines.append(CSV_HEADER)
    t_is_int = np.issubdtype(series.t.dtype, np.integer)
    for i in range(len(series)):
        t = str(int(series.t[i])) if t_is_int else repr(float(series.t[i]))
        lines.append(",".join((
            t,
            repr(float(series.nw_mean[i])),
            repr(float(series.nw_std[i])),
            repr(float(series.nd_mean[i])),
            repr(float(series.nd_std[i])),
            str(int(series.runs_alive[i])),
        )))
    return "\n".join(lines) + "\n"


def write_csv(series: AggregateSeries, path, command: Optional[str] = None) -> None:
    """format_csv to a file; I/O failures name the path and the OS reason."""
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(format_csv(series, command))
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def read_csv(path, label: str = "") -> AggregateSeries:
    """Parse a write_csv file back; values round-trip exactly."""
    rows = []
    t_floats = False
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line == CSV_HEADER:
                continue
            fields = line.split(",")
            if len(fields) != 6:
                raise ValueError(f"{path}: malformed row {line!r}")
            t_floats = t_floats or "." in fields[0] or "e" in fields[0]
            rows.append([float(x) for x in fields])
    if not rows:
        return AggregateSeries(*(np.array([]) for _ in range(5)),
                               runs_alive=np.array([], dtype=np.int64), label=label)
    arr = np.asarray(rows, dtype=np.float64)
    t = arr[:, 0] if t_floats else arr[:, 0].astype(np.int64)
    return AggregateSeries(t, arr[:, 1], arr[:, 2], arr[:, 3], arr[:, 4],
                           runs_alive=arr[:, 5].astype(np.int64), label=label)
