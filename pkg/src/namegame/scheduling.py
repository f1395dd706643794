"""Update schemes: which vertices update in a sweep, and what they see.

A sweep is the unit of simulated time. For the two one-by-one schemes
(sequential, fully asynchronous) a sweep is n single-vertex updates, each
reading all earlier commits; for the synchronous and alpha-asynchronous
schemes a sweep is one batch whose members all read the frozen pre-batch
state. SweepPlan makes that visibility contract explicit.

Randomness is drawn from named streams derived from (run seed, purpose,
sweep index) via numpy SeedSequence, so any sweep's plan can be
regenerated independently of execution order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# spawn-key tags for the per-run random streams
_ASSIGNMENT_STREAM = 0
_ORDER_STREAM = 1
_SWEEP_STREAM = 2


def _stream(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


def assignment_rng(seed: int) -> np.random.Generator:
    """Stream for the initial word placement of a run."""
    return _stream(seed, _ASSIGNMENT_STREAM)


def order_rng(seed: int) -> np.random.Generator:
    """Stream for the run-long fixed order of the sequential scheme."""
    return _stream(seed, _ORDER_STREAM)


def sweep_rng(seed: int, sweep: int) -> np.random.Generator:
    """Stream for one sweep's plan, positioned by (seed, sweep index)."""
    return _stream(seed, _SWEEP_STREAM, sweep)


class UpdateScheme:
    """Base class; concrete schemes say how plan_sweep fills a SweepPlan."""

    deterministic = False
    one_by_one = False


@dataclass(frozen=True)
class Sequential(UpdateScheme):
    """One-by-one updates in a fixed order, the same every sweep.

    order is "raster" (ascending vertex id), "random" (a seed-derived
    permutation fixed for the whole run), or an explicit permutation.
    """

    order: object = "raster"
    deterministic = True
    one_by_one = True


@dataclass(frozen=True)
class FullyAsynchronous(UpdateScheme):
    """n uniform single-vertex picks per sweep.

    sampling is "replacement" (independent uniform picks; some vertices may
    be skipped, others repeat within a sweep) or "permutation" (a fresh
    random permutation each sweep).
    """

    sampling: str = "replacement"
    one_by_one = True

    def __post_init__(self):
        if self.sampling not in ("replacement", "permutation"):
            raise ValueError(f"unknown sampling mode {self.sampling!r}")


@dataclass(frozen=True)
class Synchronous(UpdateScheme):
    """All vertices update at once against the frozen pre-sweep state."""

    deterministic = True


@dataclass(frozen=True)
class AlphaAsynchronous(UpdateScheme):
    """Each vertex updates independently with probability alpha per sweep.

    alpha = 1 reproduces the synchronous scheme exactly.
    """

    alpha: float = field(default=1.0)

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")

    @property
    def deterministic(self):
        # alpha = 1 fires every vertex every sweep, so nothing is random
        return self.alpha == 1.0


@dataclass(frozen=True)
class SweepPlan:
    """The vertices visited in one sweep, grouped into visibility batches.

    Vertices within a batch all read the same pre-batch configuration;
    commits become visible between batches. one_by_one means every element
    of order is its own batch; otherwise order is a single batch (possibly
    empty under alpha-asynchronous updating when no vertex fires).
    """

    order: np.ndarray
    one_by_one: bool

    @property
    def batches(self) -> tuple:
        if self.one_by_one:
            return tuple(self.order[i : i + 1] for i in range(len(self.order)))
        if len(self.order) == 0:
            return ()
        return (self.order,)


def fixed_order(scheme: Sequential, n: int, seed: int) -> np.ndarray:
    """Resolve a Sequential scheme's order to a concrete permutation."""
    if isinstance(scheme.order, str):
        if scheme.order == "raster":
            return np.arange(n, dtype=np.int32)
        if scheme.order == "random":
            return order_rng(seed).permutation(n).astype(np.int32)
        raise ValueError(f"unknown sequential order {scheme.order!r}")
    perm = np.asarray(scheme.order, dtype=np.int64)
    if perm.shape != (n,) or not np.array_equal(np.sort(perm), np.arange(n)):
        raise ValueError(f"sequential order must be a permutation of 0..{n - 1}")
    return perm.astype(np.int32)


def plan_sweep(scheme: UpdateScheme, n: int, rng: np.random.Generator) -> SweepPlan:
    """Plan one sweep. Sequential and Synchronous plans never consume rng."""
    if isinstance(scheme, Sequential):
        if isinstance(scheme.order, str) and scheme.order == "random":
            raise ValueError("resolve Sequential(order='random') with fixed_order() first")
        return SweepPlan(order=fixed_order(scheme, n, seed=0), one_by_one=True)
    if isinstance(scheme, FullyAsynchronous):
        if scheme.sampling == "replacement":
            order = rng.integers(0, n, size=n, dtype=np.int32)
        else:
            order = rng.permutation(n).astype(np.int32)
        return SweepPlan(order=order, one_by_one=True)
    if isinstance(scheme, Synchronous):
        return SweepPlan(order=np.arange(n, dtype=np.int32), one_by_one=False)
    if isinstance(scheme, AlphaAsynchronous):
        fires = rng.random(n) < scheme.alpha
        return SweepPlan(order=np.flatnonzero(fires).astype(np.int32), one_by_one=False)
    raise TypeError(f"unknown scheme {scheme!r}")


def parse_scheme(text: str) -> UpdateScheme:
    """Parse the CLI scheme grammar:
    sequential | fully-async | synchronous | alpha-async:<float>.
    """
    if text == "sequential":
        return Sequential()
    if text == "fully-async":
        return FullyAsynchronous()
    if text == "synchronous":
        return Synchronous()
    if text.startswith("alpha-async:"):
        raw = text.split(":", 1)[1]
        try:
            alpha = float(raw)
        except ValueError:
            raise ValueError(f"unparsable alpha {raw!r} in scheme {text!r}") from None
        return AlphaAsynchronous(alpha)
    raise ValueError(
        f"unknown scheme {text!r}; expected sequential, fully-async, synchronous, or alpha-async:<p>"
    )


def scheme_label(scheme: UpdateScheme) -> str:
    """Inverse of parse_scheme, for legends and CSV headers."""
    if isinstance(scheme, Sequential):
        return "sequential"
    if isinstance(scheme, FullyAsynchronous):
        return "fully-async"
    if isinstance(scheme, Synchronous):
        return "synchronous"
    if isinstance(scheme, AlphaAsynchronous):
        return f"alpha-async:{scheme.alpha:g}"
    raise TypeError(f"unknown scheme {scheme!r}")
