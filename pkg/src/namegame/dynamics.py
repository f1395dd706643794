"""Agent state and the add-or-collapse local rule.

Words are plain non-negative integer ids; every agent shares the same
total order on them (integer <). Each vertex keeps a nonempty memory of
words plus the single word it conveys to its neighbors. When a vertex is
updated it looks at the words its neighbors currently convey: if any of
them is unknown, all unknown ones are added to its memory (the conveyed
word does not change); if every heard word is already known, the memory
collapses to the smallest heard word, which becomes the conveyed word.

Configuration stores the population state in flat arrays (shared with the
numba kernels) and keeps the aggregate counters - total word count and
per-word membership counts - incrementally up to date.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from ._kernels import canonical_words
from .topology import Graph

_INITIAL_CAPACITY = 8


@dataclass(frozen=True)
class AgentState:
    """A vertex state: the memory set and the conveyed word (a member of it)."""

    memory: frozenset
    conveyed: int

    def __post_init__(self):
        object.__setattr__(self, "memory", frozenset(int(w) for w in self.memory))
        object.__setattr__(self, "conveyed", int(self.conveyed))
        if not self.memory:
            raise ValueError("memory must be nonempty")
        if self.conveyed not in self.memory:
            raise ValueError(f"conveyed word {self.conveyed} not in memory {sorted(self.memory)}")
        if min(self.memory) < 0:
            raise ValueError("word ids must be non-negative")


class Configuration:
    """Population state: one AgentState per vertex plus cached counters.

    Attributes conveyed, mem, mem_len, union_counts and totals are the raw
    arrays the sweep kernels operate on; totals[0] is the total word count
    (sum of memory sizes) and totals[1] the number of distinct words in
    the union of all memories.
    """

    def __init__(self, conveyed, mem, mem_len, word_count):
        self.conveyed = conveyed
        self.mem = mem
        self.mem_len = mem_len
        self.word_count = int(word_count)
        self.union_counts = np.zeros(self.word_count, dtype=np.int64)
        self.totals = np.zeros(2, dtype=np.int64)
        self._recount()

    @classmethod
    def from_states(cls, states, word_count=None) -> "Configuration":
        """Build from explicit per-vertex states ((memory, conveyed) pairs accepted)."""
        normalized = [s if isinstance(s, AgentState) else AgentState(frozenset(s[0]), s[1]) for s in states]
        if not normalized:
            raise ValueError("need at least one vertex state")
        n = len(normalized)
        if word_count is None:
            word_count = max(max(s.memory) for s in normalized) + 1
        capacity = max(_INITIAL_CAPACITY, max(len(s.memory) for s in normalized))
        conveyed = np.empty(n, dtype=np.int32)
        mem = np.zeros((n, capacity), dtype=np.int32)
        mem_len = np.empty(n, dtype=np.int32)
        for u, s in enumerate(normalized):
            if max(s.memory) >= word_count:
                raise ValueError(f"vertex {u} holds word >= word_count {word_count}")
            words = sorted(s.memory)
            mem[u, : len(words)] = words
            mem_len[u] = len(words)
            conveyed[u] = s.conveyed
        return cls(conveyed, mem, mem_len, word_count)

    def _recount(self) -> None:
        all_words = np.concatenate([self.mem[u, : self.mem_len[u]] for u in range(self.n)])
        counts = np.bincount(all_words, minlength=self.word_count).astype(np.int64)
        self.union_counts[:] = counts
        self.totals[0] = int(self.mem_len.sum())
        self.totals[1] = int(np.count_nonzero(counts))

    @property
    def n(self) -> int:
        return len(self.conveyed)

    @property
    def word_total(self) -> int:
        """Total number of words held across all memories."""
        return int(self.totals[0])

    @property
    def distinct_words(self) -> int:
        """Number of different words present in the union of all memories."""
        return int(self.totals[1])

    def state(self, u: int) -> AgentState:
        return AgentState(frozenset(int(w) for w in self.mem[u, : self.mem_len[u]]), int(self.conveyed[u]))

    def states(self) -> list:
        return [self.state(u) for u in range(self.n)]

    def copy(self) -> "Configuration":
        dup = object.__new__(Configuration)
        dup.conveyed = self.conveyed.copy()
        dup.mem = self.mem.copy()
        dup.mem_len = self.mem_len.copy()
        dup.word_count = self.word_count
        dup.union_counts = self.union_counts.copy()
        dup.totals = self.totals.copy()
        return dup

    def ensure_capacity(self, capacity: int) -> None:
        if capacity <= self.mem.shape[1]:
            return
        new_cap = self.mem.shape[1]
        while new_cap < capacity:
            new_cap *= 2
        widened = np.zeros((self.n, new_cap), dtype=np.int32)
        widened[:, : self.mem.shape[1]] = self.mem
        self.mem = widened

    def serialize(self) -> bytes:
        """Canonical byte form of the full state (memories sorted per vertex)."""
        flat = np.empty(self.word_total, dtype=np.int32)
        canonical_words(self.mem, self.mem_len, flat)
        return b"".join(
            (
                np.int64(self.n).tobytes(),
                self.mem_len.tobytes(),
                self.conveyed.tobytes(),
                flat.tobytes(),
            )
        )

    def fingerprint(self) -> bytes:
        return hashlib.blake2b(self.serialize(), digest_size=16).digest()

    def check_counters(self) -> None:
        """Assert the incremental counters match a from-scratch recount."""
        expected_counts = self.union_counts.copy()
        expected_totals = self.totals.copy()
        self._recount()
        if not np.array_equal(expected_counts, self.union_counts) or not np.array_equal(
            expected_totals, self.totals
        ):
            raise AssertionError("incremental counters diverged from recomputed values")

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.n == other.n and self.serialize() == other.serialize()

    def __hash__(self):
        return hash(self.fingerprint())


def init_configuration(g: Graph, assignment) -> Configuration:
    """Start-of-run state: vertex u gets the singleton state of assignment[u].

    assignment must be a permutation of 0..n-1, so initially every vertex
    conveys a different word and both observables equal n.
    """
    assignment = np.asarray(assignment, dtype=np.int64)
    n = g.n
    if assignment.shape != (n,) or not np.array_equal(np.sort(assignment), np.arange(n)):
        raise ValueError(f"assignment must be a permutation of 0..{n - 1}")
    conveyed = assignment.astype(np.int32)
    mem = np.zeros((n, _INITIAL_CAPACITY), dtype=np.int32)
    mem[:, 0] = conveyed
    mem_len = np.ones(n, dtype=np.int32)
    return Configuration(conveyed, mem, mem_len, word_count=n)


def split_conveyed(cfg: Configuration, g: Graph, u: int):
    """Words conveyed by u's neighbors, split into (known, unknown)."""
    heard = {int(cfg.conveyed[v]) for v in g.neighbors(u)}
    memory = {int(w) for w in cfg.mem[u, : cfg.mem_len[u]]}
    unknown = heard - memory
    return heard - unknown, unknown


def apply_local_rule(cfg: Configuration, g: Graph, u: int) -> AgentState:
    """The next state of u under the add-or-collapse rule (pure; cfg untouched)."""
    known, unknown = split_conveyed(cfg, g, u)
    memory = frozenset(int(w) for w in cfg.mem[u, : cfg.mem_len[u]])
    if unknown:
        return AgentState(memory | unknown, int(cfg.conveyed[u]))
    smallest = min(known)
    return AgentState(frozenset((smallest,)), smallest)


def commit_state(cfg: Configuration, u: int, state: AgentState) -> None:
    """Write state into cfg.states[u], updating the cached counters by the delta."""
    if max(state.memory) >= cfg.word_count:
        raise ValueError(f"word {max(state.memory)} out of range for word_count {cfg.word_count}")
    old = {int(w) for w in cfg.mem[u, : cfg.mem_len[u]]}
    new = set(state.memory)
    for w in new - old:
        if cfg.union_counts[w] == 0:
            cfg.totals[1] += 1
        cfg.union_counts[w] += 1
    for w in old - new:
        cfg.union_counts[w] -= 1
        if cfg.union_counts[w] == 0:
            cfg.totals[1] -= 1
    cfg.totals[0] += len(new) - len(old)
    cfg.ensure_capacity(len(new))
    words = sorted(new)
    cfg.mem[u, : len(words)] = words
    cfg.mem_len[u] = len(words)
    cfg.conveyed[u] = state.conveyed


def is_fixed_point(cfg: Configuration, g: Graph) -> bool:
    """True iff no vertex would change state; on connected graphs this is
    exactly global consensus (every vertex a singleton of one shared word)."""
    return all(apply_local_rule(cfg, g, u) == cfg.state(u) for u in range(cfg.n))
