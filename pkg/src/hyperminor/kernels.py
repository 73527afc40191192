"""Hot inner loops, each with a numba path and a pure-numpy path.

The public names (``cheeger_scan``, ``connected_mask_table``,
``apply_generators``, ``encode_states``) dispatch on ``_accel.USE_NUMBA``.
Both variants are importable directly so they can be cross-checked.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import _accel

__all__ = [
    "cheeger_scan",
    "cheeger_scan_numpy",
    "cheeger_scan_numba",
    "connected_mask_table",
    "connected_mask_table_numpy",
    "connected_mask_table_numba",
    "neighbor_mask_table",
    "apply_generators",
    "apply_generators_numpy",
    "apply_generators_numba",
    "encode_states",
]

_CHUNK = 1 << 20


def _mask_key(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


# ---------------------------------------------------------------------------
# Exhaustive Cheeger scan
# ---------------------------------------------------------------------------

def _cheeger_scan_loop(n, eu, ev, max_size):
    best_b = -1
    best_s = 1
    best_m = 0
    m = eu.shape[0]
    for mask in range(1, 1 << n):
        s = 0
        x = mask
        while x:
            x &= x - 1
            s += 1
        if s > max_size:
            continue
        b = 0
        for e in range(m):
            b += ((mask >> eu[e]) ^ (mask >> ev[e])) & 1
        if best_b < 0:
            take = True
        else:
            lhs = b * best_s
            rhs = best_b * s
            if lhs < rhs:
                take = True
            elif lhs > rhs:
                take = False
            else:
                # lexicographic order on the sorted member tuples
                diff = mask ^ best_m
                low = diff & -diff
                above = ~((low << 1) - 1)
                if mask & low:
                    take = (best_m & above) != 0
                else:
                    take = (mask & above) == 0
        if take:
            best_b = b
            best_s = s
            best_m = mask
    return best_b, best_s, best_m


_cheeger_scan_nb = _accel.njit(_cheeger_scan_loop)


def cheeger_scan_numba(n: int, edges: np.ndarray, max_size: int) -> tuple[int, int, int]:
    if _cheeger_scan_nb is None:
        raise RuntimeError("numba is not installed")
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    b, s, m = _cheeger_scan_nb(n, edges[:, 0].copy(), edges[:, 1].copy(), max_size)
    return int(b), int(s), int(m)


def cheeger_scan_numpy(n: int, edges: np.ndarray, max_size: int) -> tuple[int, int, int]:
    """Return ``(boundary, size, mask)`` of the lexicographically least
    minimum-ratio subset among all nonempty subsets of size <= max_size."""
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    best: tuple[int, int, int] | None = None
    for start in range(1, 1 << n, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, 1 << n), dtype=np.int64)
        sizes = np.bitwise_count(masks).astype(np.int64)
        keep = sizes <= max_size
        masks, sizes = masks[keep], sizes[keep]
        if masks.size == 0:
            continue
        bnd = np.zeros(masks.shape, dtype=np.int64)
        for u, v in edges:
            bnd += ((masks >> u) ^ (masks >> v)) & 1
        ratio = bnd / sizes
        lo = ratio.min()
        near = np.nonzero(ratio <= lo * (1 + 1e-12) + 1e-300)[0]
        exact_min = min(Fraction(int(bnd[i]), int(sizes[i])) for i in near)
        ties = [i for i in near if Fraction(int(bnd[i]), int(sizes[i])) == exact_min]
        i = min(ties, key=lambda j: _mask_key(int(masks[j])))
        cand = (int(bnd[i]), int(sizes[i]), int(masks[i]))
        if best is None:
            best = cand
            continue
        new, old = Fraction(cand[0], cand[1]), Fraction(best[0], best[1])
        if new < old or (new == old and _mask_key(cand[2]) < _mask_key(best[2])):
            best = cand
    if best is None:
        return -1, 1, 0
    return best


def cheeger_scan(n: int, edges, max_size: int) -> tuple[int, int, int]:
    if _accel.USE_NUMBA:
        return cheeger_scan_numba(n, edges, max_size)
    return cheeger_scan_numpy(n, edges, max_size)


# ---------------------------------------------------------------------------
# Connected induced subgraphs over all vertex subsets
# ---------------------------------------------------------------------------

def _connected_loop(n, adj):
    out = np.zeros(1 << n, dtype=np.bool_)
    for mask in range(1, 1 << n):
        reach = mask & -mask
        while True:
            grow = reach
            x = reach
            while x:
                low = x & -x
                i = 0
                while (low >> i) != 1:
                    i += 1
                grow |= adj[i]
                x ^= low
            grow &= mask
            if grow == reach:
                break
            reach = grow
        out[mask] = reach == mask
    return out


_connected_nb = _accel.njit(_connected_loop)


def neighbor_mask_table(adj_masks) -> np.ndarray:
    """``table[mask]`` = union of neighborhoods of the vertices in ``mask``."""
    adj = np.asarray(adj_masks, dtype=np.int64)
    n = adj.shape[0]
    masks = np.arange(1 << n, dtype=np.int64)
    table = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        table |= np.where((masks >> i) & 1, adj[i], 0)
    return table


def connected_mask_table_numpy(adj_masks) -> np.ndarray:
    adj = np.asarray(adj_masks, dtype=np.int64)
    n = adj.shape[0]
    masks = np.arange(1 << n, dtype=np.int64)
    reach = masks & -masks
    for _ in range(n):
        grow = reach.copy()
        for i in range(n):
            grow |= np.where((reach >> i) & 1, adj[i], 0)
        reach = grow & masks
    out = reach == masks
    out[0] = False
    return out


def connected_mask_table_numba(adj_masks) -> np.ndarray:
    if _connected_nb is None:
        raise RuntimeError("numba is not installed")
    adj = np.asarray(adj_masks, dtype=np.int64)
    return _connected_nb(adj.shape[0], adj)


def connected_mask_table(adj_masks) -> np.ndarray:
    if _accel.USE_NUMBA:
        return connected_mask_table_numba(adj_masks)
    return connected_mask_table_numpy(adj_masks)


# ---------------------------------------------------------------------------
# Permutation breadth-first search
# ---------------------------------------------------------------------------

def _apply_loop(frontier, gens):
    f, n = frontier.shape
    g = gens.shape[0]
    out = np.empty((g * f, n), dtype=frontier.dtype)
    for a in range(g):
        for b in range(f):
            row = a * f + b
            for x in range(n):
                out[row, x] = gens[a, frontier[b, x]]
    return out


_apply_nb = _accel.njit(_apply_loop)


def apply_generators_numpy(frontier: np.ndarray, gens: np.ndarray) -> np.ndarray:
    """Row ``g*F + f`` is ``gens[g] ∘ frontier[f]`` (frontier applied first)."""
    return gens[:, frontier].reshape(-1, frontier.shape[1])


def apply_generators_numba(frontier: np.ndarray, gens: np.ndarray) -> np.ndarray:
    if _apply_nb is None:
        raise RuntimeError("numba is not installed")
    return _apply_nb(np.ascontiguousarray(frontier), np.ascontiguousarray(gens))


def apply_generators(frontier: np.ndarray, gens: np.ndarray) -> np.ndarray:
    if _accel.USE_NUMBA:
        return apply_generators_numba(frontier, gens)
    return apply_generators_numpy(frontier, gens)


def encode_states(states: np.ndarray) -> np.ndarray:
    """Injective int64 key per row (requires row length <= 15)."""
    n = states.shape[1]
    if n > 15:
        raise ValueError("state encoding supports at most 15 points")
    powers = np.array([n**i for i in range(n)], dtype=np.int64)
    return states.astype(np.int64) @ powers
