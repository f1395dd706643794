"""Word-consensus dynamics on networks.

Agents on a graph each hold a memory of words and convey one of them.
Hearing only unknown words makes an agent add them all; hearing at least
one known word makes it collapse to the smallest heard word.  Depending on
the update scheme this reaches a one-word consensus or gets trapped in
cycles; this package simulates the process and aggregates the observables.
"""

from .dynamics import (
    AgentState,
    Configuration,
    apply_local_rule,
    commit_state,
    init_configuration,
    is_fixed_point,
    split_conveyed,
)
from .engine import (
    CycleDetector,
    RunParams,
    Termination,
    TerminationReport,
    TimeSeries,
    detect_cycle,
    n_different,
    n_words,
    run,
)
from .experiments import (
    AggregateSeries,
    ExperimentSpec,
    aggregate,
    format_csv,
    read_csv,
    run_experiment,
    write_csv,
)
from .figures import emit_svg
from .scheduling import (
    AlphaAsynchronous,
    FullyAsynchronous,
    Sequential,
    Synchronous,
    SweepPlan,
    fixed_order,
    parse_scheme,
    plan_sweep,
    scheme_label,
)
from .topology import (
    DisconnectedGraphError,
    DuplicateEdgeError,
    Graph,
    GraphValidationError,
    SelfLoopError,
    build_graph_from_edges,
    build_periodic_lattice,
    neighborhood,
    read_edge_list,
)

__version__ = "0.1.0"

__all__ = [
    "AgentState",
    "AggregateSeries",
    "AlphaAsynchronous",
    "Configuration",
    "CycleDetector",
    "DisconnectedGraphError",
    "DuplicateEdgeError",
    "ExperimentSpec",
    "FullyAsynchronous",
    "Graph",
    "GraphValidationError",
    "RunParams",
    "SelfLoopError",
    "Sequential",
    "SweepPlan",
    "Synchronous",
    "Termination",
    "TerminationReport",
    "TimeSeries",
    "aggregate",
    "apply_local_rule",
    "build_graph_from_edges",
    "build_periodic_lattice",
    "commit_state",
    "detect_cycle",
    "emit_svg",
    "fixed_order",
    "format_csv",
    "init_configuration",
    "is_fixed_point",
    "n_different",
    "n_words",
    "neighborhood",
    "parse_scheme",
    "plan_sweep",
    "read_csv",
    "read_edge_list",
    "run",
    "run_experiment",
    "scheme_label",
    "split_conveyed",
    "write_csv",
]
