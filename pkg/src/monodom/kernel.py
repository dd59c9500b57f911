"""Vectorized batch evaluation of domination properties.

Campaigns stream instances as uint8 code arrays of shape (batch, pairs) and
evaluate whole batches at once.  Per-colour adjacency is kept as bit-rows
(row i = bitmask of vertices beaten by i in that colour) and monochromatic
reachability comes from repeated squaring of the bit-row matrix.  For n <= 5
the per-colour closure is a single table lookup: each pair is in one of three
states per colour (absent, forward, backward), so there are only 3^pairs
colour subgraphs, and their closures are precomputed once.

Everything here is a pure function of the code array; the pure-Python engine
in the domination module computes the same quantities one instance at a time
and serves as the cross-check oracle.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .core import pair_slots
from .enumeration import SAMPLE_BLOCK_ROWS, EnumerationSpec, sample_block

LUT_VERTEX_LIMIT = 5

_BIT_DTYPE = np.uint32


def batch_codes(spec: EnumerationSpec, start: int, size: int) -> np.ndarray:
    """Codes of `size` consecutive shard positions starting at `start`.

    Shard positions count the instances belonging to this spec's shard, in
    increasing global-index order; the result has shape (size, pairs) and
    matches enumeration one instance at a time.
    """
    k, m = spec.shard
    P = len(pair_slots(spec.n))
    out = np.empty((size, P), dtype=np.uint8)
    for s, code in spec.pinned.items():
        out[:, s] = code
    free = spec.free_slots
    if not free:
        return out
    if spec.mode == "sampled":
        positions = np.arange(start, start + size, dtype=np.int64) * m + k
        blocks, rows = np.divmod(positions, SAMPLE_BLOCK_ROWS)
        free_cols = np.array(free, dtype=np.intp)
        for b in np.unique(blocks):
            sel = np.flatnonzero(blocks == b)
            out[sel[:, None], free_cols[None, :]] = sample_block(spec, int(b))[rows[sel]]
        return out
    first = k + start * m
    idx = np.arange(first, first + size * m, m, dtype=np.uint64)
    scale = np.uint64(1)
    base = np.uint64(spec.base)
    for s in free:
        out[:, s] = (idx // scale) % base
        scale = scale * base
    return out


def decode_rows(codes: np.ndarray, n: int, colours: int = 3) -> list[np.ndarray]:
    """Per-colour adjacency bit-rows, one (batch, n) array per colour."""
    slots = pair_slots(n)
    B = codes.shape[0]
    rows = [np.zeros((B, n), dtype=_BIT_DTYPE) for _ in range(colours)]
    col = codes % colours
    rev = codes >= colours
    for s, (i, j) in enumerate(slots):
        for c in range(colours):
            here = col[:, s] == c
            fwd = here & ~rev[:, s]
            bwd = here & rev[:, s]
            rows[c][:, i] |= fwd.astype(_BIT_DTYPE) << j
            rows[c][:, j] |= bwd.astype(_BIT_DTYPE) << i
    return rows


def closure_rows(adj: np.ndarray, n: int) -> np.ndarray:
    """Reachability bit-rows by repeated squaring (paths of length >= 1)."""
    reach = adj.copy()
    for _ in range(max(1, (n - 1).bit_length())):
        nxt = reach.copy()
        for j in range(n):
            via = (reach >> j) & 1
            nxt |= via * reach[:, j : j + 1]
        if np.array_equal(nxt, reach):
            break
        reach = nxt
    return reach


# -- small-order closure tables -------------------------------------------------


_LUT_CACHE: dict[int, np.ndarray] = {}


def _reach_table(n: int) -> np.ndarray:
    """Closure rows for every colour subgraph on n vertices.

    Entry index is the base-3 pair-state integer (0 absent, 1 forward,
    2 backward; slot 0 least significant); value is the n reach bit-rows.
    """
    if n not in _LUT_CACHE:
        slots = pair_slots(n)
        M = 3 ** len(slots)
        states = np.arange(M, dtype=np.uint32)
        adj = np.zeros((M, n), dtype=_BIT_DTYPE)
        for s, (i, j) in enumerate(slots):
            st = (states // 3**s) % 3
            adj[:, i] |= (st == 1).astype(_BIT_DTYPE) << j
            adj[:, j] |= (st == 2).astype(_BIT_DTYPE) << i
        _LUT_CACHE[n] = closure_rows(adj, n)
    return _LUT_CACHE[n]


def reach_by_colour(codes: np.ndarray, n: int, colours: int = 3) -> list[np.ndarray]:
    """Per-colour reachability rows for a code batch."""
    if n <= LUT_VERTEX_LIMIT:
        table = _reach_table(n)
        col = codes % colours
        rev = (codes >= colours).astype(np.uint32)
        P = codes.shape[1]
        weights = (3 ** np.arange(P, dtype=np.uint32))[None, :]
        out = []
        for c in range(colours):
            state = (col == c) * (1 + rev)
            out.append(table[(state * weights).sum(axis=1, dtype=np.uint32)])
        return out
    return [closure_rows(adj, n) for adj in decode_rows(codes, n, colours)]


def any_reach(codes: np.ndarray, n: int, colours: int = 3) -> np.ndarray:
    """Bit-rows of the dominates relation (reachable in some colour)."""
    per = reach_by_colour(codes, n, colours)
    out = per[0].copy()
    for r in per[1:]:
        out |= r
    return out


# -- masks -----------------------------------------------------------------------


def rainbow_triangle_mask(
    codes: np.ndarray, n: int, colours: int = 3, require_cyclic: bool = True
) -> np.ndarray:
    """Which instances contain a rainbow (default: cyclic rainbow) triangle."""
    B = codes.shape[0]
    found = np.zeros(B, dtype=bool)
    if n < 3 or colours < 3:
        return found
    col = codes % colours
    rev = codes >= colours
    for i, j, k in combinations(range(n), 3):
        s1, s2, s3 = (
            _slot_cache(n)[(i, j)],
            _slot_cache(n)[(i, k)],
            _slot_cache(n)[(j, k)],
        )
        c1, c2, c3 = col[:, s1], col[:, s2], col[:, s3]
        rainbow = (c1 != c2) & (c1 != c3) & (c2 != c3)
        if require_cyclic:
            o1, o2, o3 = rev[:, s1], rev[:, s2], rev[:, s3]
            rainbow &= (o1 == o3) & (o2 != o1)
        found |= rainbow
        if found.all():
            break
    return found


_SLOT_CACHE: dict[int, dict[tuple[int, int], int]] = {}


def _slot_cache(n: int) -> dict[tuple[int, int], int]:
    if n not in _SLOT_CACHE:
        _SLOT_CACHE[n] = {pair: s for s, pair in enumerate(pair_slots(n))}
    return _SLOT_CACHE[n]


def dominating_vertex_mask(reach: np.ndarray, n: int) -> np.ndarray:
    """Which instances have a vertex dominating all others."""
    full = _BIT_DTYPE((1 << n) - 1)
    selfbits = (_BIT_DTYPE(1) << np.arange(n, dtype=_BIT_DTYPE))[None, :]
    return ((reach | selfbits) == full).any(axis=1)


def qualifying_cycle_mask(reach: np.ndarray, n: int) -> np.ndarray:
    """Which instances carry a Hamilton cycle on which every vertex dominates
    exactly the non-predecessors.

    Such a cycle exists iff every vertex fails to dominate exactly one vertex
    and the resulting predecessor map is a single n-cycle; the cycle arcs are
    then forced (u not dominated by v implies the arc u -> v).
    """
    B = reach.shape[0]
    if n < 3:
        return np.zeros(B, dtype=bool)
    full = _BIT_DTYPE((1 << n) - 1)
    selfbits = (_BIT_DTYPE(1) << np.arange(n, dtype=_BIT_DTYPE))[None, :]
    nd = full & ~(reach | selfbits)
    singleton = (nd != 0) & ((nd & (nd - 1)) == 0)
    ok = singleton.all(axis=1)
    pred = np.zeros((B, n), dtype=np.int8)
    for j in range(n):
        pred[nd == (1 << j)] = j
    pos = np.zeros(B, dtype=np.int8)
    rows = np.arange(B)
    for step in range(1, n + 1):
        pos = pred[rows, pos]
        if step < n:
            ok &= pos != 0
    ok &= pos == 0
    return ok


def cover_order_tiers(reach: np.ndarray, n: int, k_max: int = 3) -> np.ndarray:
    """Smallest covering-set order per instance, tested up to min(k_max, 3).

    A set covers when the union of its members' dominated sets plus the
    members themselves is everything.  Returns 0 where no set of order
    <= min(k_max, 3) covers; callers fall back to the per-instance engine.
    """
    B = reach.shape[0]
    full = _BIT_DTYPE((1 << n) - 1)
    selfbits = (_BIT_DTYPE(1) << np.arange(n, dtype=_BIT_DTYPE))[None, :]
    covered = reach | selfbits
    order = np.zeros(B, dtype=np.uint8)
    order[(covered == full).any(axis=1)] = 1
    if k_max >= 2:
        pend = order == 0
        for i, j in combinations(range(n), 2):
            if not pend.any():
                break
            two = (covered[pend, i] | covered[pend, j]) == full
            idx = np.flatnonzero(pend)[two]
            order[idx] = 2
            pend[idx] = False
    if k_max >= 3:
        pend = order == 0
        for i, j, k in combinations(range(n), 3):
            if not pend.any():
                break
            three = (covered[pend, i] | covered[pend, j] | covered[pend, k]) == full
            idx = np.flatnonzero(pend)[three]
            order[idx] = 3
            pend[idx] = False
    return order


_POPCOUNT8 = np.array([bin(v).count("1") for v in range(8)], dtype=np.uint8)


def two_colour_vertices_mask(codes: np.ndarray, n: int, colours: int = 3) -> np.ndarray:
    """Which instances have every vertex incident to at most two colours."""
    B = codes.shape[0]
    acc = np.zeros((B, n), dtype=np.uint8)
    col = codes % colours
    for s, (i, j) in enumerate(pair_slots(n)):
        bit = np.uint8(1) << col[:, s].astype(np.uint8)
        acc[:, i] |= bit
        acc[:, j] |= bit
    return (_POPCOUNT8[acc] <= 2).all(axis=1)
