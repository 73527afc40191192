"""Proper edge coloring with at most Delta + 1 colors (Misra & Gries)."""
from __future__ import annotations

from .graph import BaseGraph, Edge, norm_edge


def vizing_edge_color(g: BaseGraph) -> list[frozenset[Edge]]:
    """Partition E(g) into at most Delta(g)+1 matchings.

    Edges are colored in sorted order; fans are grown by ascending neighbor
    label, so the result is deterministic. Empty color classes are dropped.
    """
    n = g.n
    ncol = g.max_degree() + 1
    at: list[dict[int, int]] = [dict() for _ in range(n)]  # at[v][c] = partner
    col: dict[Edge, int] = {}

    def free(v: int) -> int:
        used = at[v]
        for c in range(ncol):
            if c not in used:
                return c
        raise AssertionError("no free color; degree bound violated")

    def paint(u: int, v: int, c: int) -> None:
        col[norm_edge(u, v)] = c
        at[u][c] = v
        at[v][c] = u

    def erase(u: int, v: int) -> int:
        c = col.pop(norm_edge(u, v))
        del at[u][c]
        del at[v][c]
        return c

    def is_fan(u: int, fan: list[int]) -> bool:
        for prev, w in zip(fan, fan[1:]):
            e = norm_edge(u, w)
            if e not in col or col[e] in at[prev]:
                return False
        return True

    for u, v in g.edges():
        fan = [v]
        members = {v}
        while True:
            last = fan[-1]
            ext = None
            for w in g.neighbors(u):
                if w in members:
                    continue
                e = norm_edge(u, w)
                if e in col and col[e] not in at[last]:
                    ext = w
                    break
            if ext is None:
                break
            fan.append(ext)
            members.add(ext)

        c = free(u)
        d = free(fan[-1])
        if c != d:
            # swap c and d along the alternating path that leaves u on d
            path = []
            x, want = u, d
            while want in at[x]:
                y = at[x][want]
                path.append((x, y, want))
                x, want = y, (c if want == d else d)
            for x, y, _ in path:
                erase(x, y)
            for x, y, k in path:
                paint(x, y, c if k == d else d)

        j = next(i for i, w in enumerate(fan) if d not in at[w] and is_fan(u, fan[: i + 1]))
        shifted = [col[norm_edge(u, fan[i + 1])] for i in range(j)]
        for i in range(1, j + 1):
            erase(u, fan[i])
        for i in range(j):
            paint(u, fan[i], shifted[i])
        paint(u, fan[j], d)

    classes: list[set[Edge]] = [set() for _ in range(ncol)]
    for e, c in col.items():
        classes[c].add(e)
    return [frozenset(c) for c in classes if c]


def is_matching(edges) -> bool:
    seen: set[int] = set()
    for u, v in edges:
        if u in seen or v in seen:
            return False
        seen.add(u)
        seen.add(v)
    return True
