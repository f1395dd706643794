"""Slow, obviously-correct reference dynamics.

A second, independent transcription of the word game: plain Python sets and
lists, no arrays, no incremental bookkeeping.  The test suite holds the fast
engine to exact agreement with this module, so keep it dumb on purpose.
"""

from itertools import combinations

from namegame.topology import Graph


class NaiveState:
    """memories[u] is a set of words, conveyed[u] a member of it."""

    def __init__(self, memories, conveyed):
        assert len(memories) == len(conveyed)
        for mem, word in zip(memories, conveyed):
            assert word in mem
        self.memories = [set(m) for m in memories]
        self.conveyed = list(conveyed)

    @classmethod
    def fresh(cls, assignment):
        return cls([{w} for w in assignment], list(assignment))

    def copy(self):
        return NaiveState(self.memories, self.conveyed)

    def key(self):
        return tuple(
            (frozenset(m), w) for m, w in zip(self.memories, self.conveyed)
        )

    def __eq__(self, other):
        return self.key() == other.key()

    def n_words(self):
        return sum(len(m) for m in self.memories)

    def n_different(self):
        return len(set().union(*self.memories))

    def is_consensus(self):
        words = set(self.conveyed)
        return len(words) == 1 and all(m == words for m in self.memories)


def heard_words(g: Graph, conveyed, u):
    """Words arriving at u: neighbors' conveyed words, never u's own."""
    return [conveyed[v] for v in g.neighbors(u)]


def apply_rule(state: NaiveState, heard, u):
    """Mutate vertex u: add every unknown heard word, or collapse to min."""
    unknown = [w for w in heard if w not in state.memories[u]]
    if unknown:
        state.memories[u].update(unknown)
    else:
        low = min(heard)
        state.memories[u] = {low}
        state.conveyed[u] = low


def run_sweep(g: Graph, state: NaiveState, plan):
    """Advance one sweep.

    Every batch reads a frozen copy of the conveyed words taken at batch
    start; commits land before the next batch.  One-by-one schemes arrive
    here as singleton batches, which makes each update immediately visible.
    """
    for batch in plan.batches:
        frozen = list(state.conveyed)
        for u in batch:
            apply_rule(state, heard_words(g, frozen, u), u)


def is_fixed_point(g: Graph, state: NaiveState):
    for u in range(g.n):
        probe = state.copy()
        apply_rule(probe, heard_words(g, probe.conveyed, u), u)
        if probe != state:
            return False
    return True


def enumerate_states(n, words):
    """Yield every NaiveState on n vertices over the given word pool."""
    pool = sorted(words)
    per_vertex = []
    for size in range(1, len(pool) + 1):
        for subset in combinations(pool, size):
            for conveyed in subset:
                per_vertex.append((set(subset), conveyed))

    def rec(prefix):
        if len(prefix) == n:
            yield NaiveState([m for m, _ in prefix], [w for _, w in prefix])
            return
        for choice in per_vertex:
            yield from rec(prefix + [choice])

    yield from rec([])
