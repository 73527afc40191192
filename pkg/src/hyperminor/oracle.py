"""Brute-force ground truth: minor testing, small-graph enumeration, m(G)."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .embedding import MinorModel
from .errors import ResourceError, UsageError
from .graph import BaseGraph, Graph

MAX_HOST = 20
MAX_COMPONENT = 10
MAX_ENUM_EDGES = 7


def _adj_masks(g: BaseGraph) -> np.ndarray:
    out = np.zeros(g.n, dtype=np.int64)
    for v in range(g.n):
        m = 0
        for u in g.neighbors(v):
            m |= 1 << u
        out[v] = m
    return out


def _bits(mask: int) -> frozenset[int]:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def _search_order(h: BaseGraph) -> list[int]:
    # descending degree, preferring vertices with many already-placed neighbors
    order: list[int] = []
    placed: set[int] = set()
    while len(order) < h.n:
        best = max((v for v in range(h.n) if v not in placed),
                   key=lambda v: (sum(u in placed for u in h.neighbors(v)), h.degree(v), -v))
        order.append(best)
        placed.add(best)
    return order


def is_minor_bruteforce(h: BaseGraph, g: BaseGraph, budget: int = 10**7) -> Optional[MinorModel]:
    """A model of h in g, or None when none exists.

    Exhaustive over disjoint connected branch sets. ``budget`` caps the number
    of candidate branch sets tried; running out raises ResourceError, which
    is distinct from a NO answer.
    """
    if g.n > MAX_HOST:
        raise ResourceError(f"host has {g.n} vertices; exhaustive search supports <= {MAX_HOST}")
    if h.n == 0:
        return MinorModel(h, g, [])
    if h.n > g.n or h.num_edges > g.num_edges:
        return None
    adj = _adj_masks(g)
    conn = kernels.connected_mask_table(adj)
    nbr = kernels.neighbor_mask_table(adj)
    masks = np.nonzero(conn)[0].astype(np.int64)
    sizes = np.bitwise_count(masks.astype(np.uint64)).astype(np.int64)
    key = np.lexsort((masks, sizes))
    masks, sizes = masks[key], sizes[key]
    mask_nbr = nbr[masks]

    order = _search_order(h)
    pos = {v: i for i, v in enumerate(order)}
    earlier = [[u for u in h.neighbors(v) if pos[u] < i] for i, v in enumerate(order)]
    later_deg = [sum(pos[u] > i for u in h.neighbors(v)) for i, v in enumerate(order)]
    assigned: dict[int, int] = {}
    nodes = 0
    full = (1 << g.n) - 1

    def rec(i: int, used: int) -> bool:
        nonlocal nodes
        if i == len(order):
            return True
        free = full & ~used
        remaining = len(order) - i
        if bin(free).count("1") < remaining:
            return False
        ok = (masks & used) == 0
        ok &= sizes <= bin(free).count("1") - (remaining - 1)
        for u in earlier[i]:
            ok &= (masks & int(nbr[assigned[u]])) != 0
        cand = np.nonzero(ok)[0]
        if later_deg[i]:
            room = np.bitwise_count((mask_nbr[cand] & ~(masks[cand] | used)).astype(np.uint64))
            cand = cand[room >= later_deg[i]]
        v = order[i]
        for c in cand:
            nodes += 1
            if nodes > budget:
                raise ResourceError(f"minor search exceeded {budget} nodes")
            m = int(masks[c])
            assigned[v] = m
            if rec(i + 1, used | m):
                return True
            del assigned[v]
        return False

    if not rec(0, 0):
        return None
    return MinorModel(h, g, [_bits(assigned[v]) for v in range(h.n)])


# ---------------------------------------------------------------------------
# Canonical forms
# ---------------------------------------------------------------------------

def _refine(adj: list[set[int]], cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement of an ordered partition; sub-cells are ordered by
    their neighbor-count signature, so the result is isomorphism invariant."""
    while True:
        where = {v: i for i, c in enumerate(cells) for v in c}
        new: list[list[int]] = []
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            sig = {}
            for v in c:
                cnt = [0] * len(cells)
                for u in adj[v]:
                    cnt[where[u]] += 1
                sig[v] = tuple(cnt)
            for s in sorted(set(sig.values())):
                new.append(sorted(v for v in c if sig[v] == s))
        if len(new) == len(cells):
            return new
        cells = new


def _component_code(adj: list[set[int]], verts: list[int]) -> tuple[tuple[int, ...], tuple]:
    """(order, edge code) minimizing the sorted edge list over all leaves of
    individualization-refinement."""
    best_code = None
    best_order: tuple[int, ...] = ()

    def leaf(order: list[int]):
        nonlocal best_code, best_order
        p = {v: i for i, v in enumerate(order)}
        code = tuple(sorted((min(p[u], p[v]), max(p[u], p[v])) for u in order for v in adj[u] if p[u] < p[v]))
        if best_code is None or code < best_code:
            best_code, best_order = code, tuple(order)

    def search(cells: list[list[int]]):
        cells = _refine(adj, cells)
        idx = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if idx is None:
            leaf([c[0] for c in cells])
            return
        for v in cells[idx]:
            rest = [u for u in cells[idx] if u != v]
            search(cells[:idx] + [[v], rest] + cells[idx + 1:])

    search([sorted(verts)])
    return best_order, best_code


def _components(g: BaseGraph) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for s in range(g.n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in g.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        out.append(sorted(comp))
    return out


@dataclass(frozen=True)
class CanonicalGraph:
    """A graph relabeled into canonical order together with its code."""

    graph: Graph
    code: tuple

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def num_edges(self) -> int:
        return self.graph.num_edges


def canonical_form(g: BaseGraph) -> CanonicalGraph:
    """Isomorphism-invariant code: sorted per-component codes, each the least
    edge encoding over all individualization-refinement leaves."""
    adj = [set(g.neighbors(v)) for v in range(g.n)]
    parts = []
    for comp in _components(g):
        if len(comp) > MAX_COMPONENT:
            raise ResourceError(f"canonical form supports components of <= {MAX_COMPONENT} vertices")
        order, code = _component_code(adj, comp)
        parts.append(((len(comp), code), order))
    parts.sort(key=lambda p: p[0])
    edges, offset = [], 0
    for (size, code), _ in parts:
        edges += [(offset + a, offset + b) for a, b in code]
        offset += size
    return CanonicalGraph(Graph(g.n, edges), tuple(p[0] for p in parts))


def enumerate_guests(m: int, exact: bool = False) -> list[CanonicalGraph]:
    """Isomorphism classes of graphs without isolated vertices having 1..m
    edges (exactly m with ``exact=True``), sorted by (edges, vertices, code)."""
    if m < 1:
        raise UsageError("m must be >= 1")
    if m > MAX_ENUM_EDGES:
        raise ResourceError(f"enumeration supports m <= {MAX_ENUM_EDGES}")
    level = {canonical_form(Graph(2, [(0, 1)])).code: canonical_form(Graph(2, [(0, 1)]))}
    levels = [level]
    for _ in range(m - 1):
        nxt: dict[tuple, CanonicalGraph] = {}
        for cg in level.values():
            g = cg.graph
            n = g.n
            cands = [(u, v) for u in range(n) for v in range(u + 1, n) if not g.has_edge(u, v)]
            cands += [(u, n) for u in range(n)] + [(n, n + 1)]
            for u, v in cands:
                extra = max(u, v) + 1 - n
                h = Graph(n + max(extra, 0), list(g.edges()) + [(u, v)])
                c = canonical_form(h)
                nxt.setdefault(c.code, c)
        level = nxt
        levels.append(level)
    chosen = [levels[-1]] if exact else levels
    out = [c for lv in chosen for c in lv.values()]
    out.sort(key=lambda c: (c.num_edges, c.n, c.code))
    return out


@dataclass(frozen=True)
class UniversalityResult:
    m: int
    saturated: bool
    falsifier: Optional[Graph]

    def __int__(self) -> int:
        return self.m


def universality_number(g: BaseGraph, m_max: int, budget: int = 10**7) -> UniversalityResult:
    """Largest m <= m_max such that g contains every guest with <= m edges as
    a minor. ``falsifier`` is the first non-minor found (in enumeration order)."""
    for e in range(1, m_max + 1):
        for cg in enumerate_guests(e, exact=True):
            if is_minor_bruteforce(cg.graph, g, budget=budget) is None:
                return UniversalityResult(e - 1, False, cg.graph)
    return UniversalityResult(m_max, True, None)
