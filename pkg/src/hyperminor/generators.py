"""Seeded random guests, 3-regular hosts, and box permutations."""
from __future__ import annotations

import math
import random

import numpy as np

from .errors import UsageError
from .graph import Graph
from .permdec import BoxPermutation, random_box_permutation

DEFAULT_SEED = 20240101


def random_guest(m: int, seed: int = DEFAULT_SEED, max_vertices: int | None = None) -> Graph:
    """Random graph with exactly ``m`` edges and no isolated vertices."""
    if m < 1:
        raise UsageError("m must be >= 1")
    rng = random.Random(seed)
    least = math.ceil((1 + math.sqrt(1 + 8 * m)) / 2)
    most = 2 * m if max_vertices is None else max_vertices
    if most < least:
        raise UsageError(f"{m} edges need at least {least} vertices")
    nv = rng.randint(least, most)
    pairs = [(u, v) for u in range(nv) for v in range(u + 1, nv)]
    edges = rng.sample(pairs, m)
    used = sorted({x for e in edges for x in e})
    relabel = {x: i for i, x in enumerate(used)}
    return Graph(len(used), [(relabel[u], relabel[v]) for u, v in edges])


def random_3_regular(n: int, seed: int = DEFAULT_SEED, max_tries: int = 10_000) -> Graph:
    """Union of three random perfect matchings, rejecting repeated edges."""
    if n < 4 or n % 2:
        raise UsageError("3-regular graphs need an even n >= 4")
    rng = random.Random(seed)
    for _ in range(max_tries):
        edges: set[tuple[int, int]] = set()
        ok = True
        for _ in range(3):
            perm = list(range(n))
            rng.shuffle(perm)
            for i in range(0, n, 2):
                e = (min(perm[i], perm[i + 1]), max(perm[i], perm[i + 1]))
                if e in edges:
                    ok = False
                    break
                edges.add(e)
            if not ok:
                break
        if ok:
            return Graph(n, edges)
    raise UsageError("no simple 3-regular graph found; raise max_tries")


def random_permutation(shape, seed: int = DEFAULT_SEED) -> BoxPermutation:
    return random_box_permutation(shape, np.random.default_rng(seed))
