"""Numba kernels for the sweep hot path.

State layout shared with dynamics.Configuration: conveyed[u] is the word
vertex u transmits, mem[u, :mem_len[u]] its memory (unsorted), and the
incremental counters are union_counts[w] (how many memories contain w)
plus totals = [total word count, distinct word count].

Kernels mutate everything in place except mem, which may be reallocated
when a row outgrows its capacity; callers must rebind mem to the return
value.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _grow(mem, need):
    cap = mem.shape[1]
    new_cap = cap
    while new_cap < need:
        new_cap *= 2
    out = np.zeros((mem.shape[0], new_cap), dtype=mem.dtype)
    out[:, :cap] = mem
    return out


@njit(cache=True)
def _update_vertex(u, indptr, indices, conveyed_read, conveyed, mem, mem_len, union_counts, totals, heard):
    """Apply the add-or-collapse rule to u and commit the result.

    conveyed_read is the array neighbor words are read from: the live
    conveyed array for one-by-one updates, a frozen pre-batch copy for
    batched updates. heard is scratch of length >= 2 * degree(u): the
    first half collects the deduplicated heard words, the tail the
    unknown ones.
    """
    lo = indptr[u]
    hi = indptr[u + 1]
    k = 0
    for j in range(lo, hi):
        w = conveyed_read[indices[j]]
        seen = False
        for s in range(k):
            if heard[s] == w:
                seen = True
                break
        if not seen:
            heard[k] = w
            k += 1

    mlen = mem_len[u]
    n_new = 0
    for s in range(k):
        w = heard[s]
        known = False
        for i in range(mlen):
            if mem[u, i] == w:
                known = True
                break
        if not known:
            heard[k + n_new] = w
            n_new += 1

    if n_new > 0:
        # addition: memory grows, conveyed word unchanged
        if mlen + n_new > mem.shape[1]:
            mem = _grow(mem, mlen + n_new)
        for i in range(n_new):
            w = heard[k + i]
            mem[u, mlen + i] = w
            if union_counts[w] == 0:
                totals[1] += 1
            union_counts[w] += 1
        mem_len[u] = mlen + n_new
        totals[0] += n_new
    else:
        # collapse: memory becomes the smallest heard word
        mn = heard[0]
        for s in range(1, k):
            if heard[s] < mn:
                mn = heard[s]
        for i in range(mlen):
            w = mem[u, i]
            union_counts[w] -= 1
            if union_counts[w] == 0:
                totals[1] -= 1
        totals[0] -= mlen
        mem[u, 0] = mn
        mem_len[u] = 1
        if union_counts[mn] == 0:
            totals[1] += 1
        union_counts[mn] += 1
        totals[0] += 1
        conveyed[u] = mn
    return mem


@njit(cache=True)
def run_one_by_one(indptr, indices, order, conveyed, mem, mem_len, union_counts, totals, max_deg):
    """Update the vertices of `order` one at a time; each sees all prior commits."""
    heard = np.empty(2 * max_deg, dtype=np.int32)
    for idx in range(order.shape[0]):
        mem = _update_vertex(
            order[idx], indptr, indices, conveyed, conveyed, mem, mem_len, union_counts, totals, heard
        )
    return mem


@njit(cache=True)
def run_batch(indptr, indices, batch, frozen, conveyed, mem, mem_len, union_counts, totals, max_deg):
    """Update every vertex of `batch` against the frozen pre-batch conveyed words."""
    heard = np.empty(2 * max_deg, dtype=np.int32)
    for idx in range(batch.shape[0]):
        mem = _update_vertex(
            batch[idx], indptr, indices, frozen, conveyed, mem, mem_len, union_counts, totals, heard
        )
    return mem


@njit(cache=True)
def canonical_words(mem, mem_len, out):
    """Flatten memories into `out`, each row sorted ascending (for hashing)."""
    pos = 0
    for u in range(mem.shape[0]):
        row_len = mem_len[u]
        base = pos
        for i in range(row_len):
            w = mem[u, i]
            j = pos
            while j > base and out[j - 1] > w:
                out[j] = out[j - 1]
                j -= 1
            out[j] = w
            pos += 1
    return pos
