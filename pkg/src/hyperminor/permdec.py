"""Permutations of a box [n_1] x ... x [n_d] and their one-dimensional factorizations.

Points are 0-based coordinate tuples flattened row-major (last coordinate
fastest). Composition is always *rightmost first*: ``compose([a, b, c])``
maps x to a(b(c(x))).
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np

from . import kernels
from .errors import ResourceError, UsageError

CONVENTION = "rightmost-first"


@dataclass(frozen=True)
class BoxShape:
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(x) for x in self.dims)
        object.__setattr__(self, "dims", dims)
        if not dims:
            raise UsageError("a box needs at least one dimension")
        if any(x < 1 for x in dims):
            raise UsageError(f"box dimensions must be positive: {dims}")

    @property
    def d(self) -> int:
        return len(self.dims)

    @property
    def size(self) -> int:
        return math.prod(self.dims)

    def coords(self, v: int) -> tuple[int, ...]:
        out = []
        for k in reversed(self.dims):
            v, r = divmod(v, k)
            out.append(r)
        return tuple(reversed(out))

    def index(self, x: Sequence[int]) -> int:
        v = 0
        for c, k in zip(x, self.dims):
            if not 0 <= c < k:
                raise UsageError(f"coordinate {tuple(x)} outside box {self.dims}")
            v = v * k + c
        return v

    def coord_array(self) -> np.ndarray:
        """(size, d) array of all points in flat order."""
        grids = np.indices(self.dims).reshape(self.d, -1)
        return grids.T.copy()


def _as_shape(shape) -> BoxShape:
    return shape if isinstance(shape, BoxShape) else BoxShape(tuple(shape))


class BoxPermutation:
    """A bijection of the flat index set of a box."""

    __slots__ = ("shape", "mapping")

    def __init__(self, shape, mapping):
        shape = _as_shape(shape)
        arr = np.array(mapping, dtype=np.int64).reshape(-1)
        if arr.size != shape.size:
            raise UsageError(f"mapping has {arr.size} entries, box has {shape.size} points")
        seen = np.zeros(shape.size, dtype=bool)
        if arr.size and (arr.min() < 0 or arr.max() >= shape.size):
            raise UsageError("mapping leaves the box")
        seen[arr] = True
        if not seen.all():
            raise UsageError("mapping is not a bijection")
        arr.setflags(write=False)
        self.shape = shape
        self.mapping = arr

    @classmethod
    def identity(cls, shape) -> "BoxPermutation":
        shape = _as_shape(shape)
        return cls(shape, np.arange(shape.size))

    @classmethod
    def from_points(cls, shape, pairs: dict) -> "BoxPermutation":
        """Build from a {point: image} dict of coordinate tuples; unspecified
        points are fixed."""
        shape = _as_shape(shape)
        m = np.arange(shape.size)
        for x, y in pairs.items():
            m[shape.index(x)] = shape.index(y)
        return cls(shape, m)

    def __call__(self, v: int) -> int:
        return int(self.mapping[v])

    def apply_point(self, x: Sequence[int]) -> tuple[int, ...]:
        return self.shape.coords(int(self.mapping[self.shape.index(x)]))

    def inverse(self) -> "BoxPermutation":
        inv = np.empty_like(self.mapping)
        inv[self.mapping] = np.arange(self.mapping.size)
        return BoxPermutation(self.shape, inv)

    def after(self, other: "BoxPermutation") -> "BoxPermutation":
        """self ∘ other."""
        if self.shape != other.shape:
            raise UsageError("shape mismatch")
        return BoxPermutation(self.shape, self.mapping[other.mapping])

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.mapping, np.arange(self.mapping.size)))

    def moved_axes(self) -> tuple[int, ...]:
        c = self.shape.coord_array()
        return tuple(int(i) for i in np.nonzero((c != c[self.mapping]).any(axis=0))[0])

    def __eq__(self, other):
        if not isinstance(other, BoxPermutation):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.mapping, other.mapping)

    def __hash__(self):
        return hash((self.shape, self.mapping.tobytes()))

    def __repr__(self):
        return f"BoxPermutation({self.shape.dims}, {self.mapping.tolist()})"


@dataclass(frozen=True)
class OneDimFactor:
    """A box permutation that changes only coordinate ``axis``."""

    axis: int
    perm: BoxPermutation

    def __post_init__(self):
        if not 0 <= self.axis < self.perm.shape.d:
            raise UsageError(f"axis {self.axis} outside box of dimension {self.perm.shape.d}")
        bad = [a for a in self.perm.moved_axes() if a != self.axis]
        if bad:
            raise UsageError(f"factor declared on axis {self.axis} also moves axes {bad}")

    @property
    def shape(self) -> BoxShape:
        return self.perm.shape

    @property
    def mapping(self) -> np.ndarray:
        return self.perm.mapping


def compose(factors: Sequence, shape=None) -> BoxPermutation:
    """Compose factors (OneDimFactor or BoxPermutation), rightmost applied first.

    An empty sequence gives the identity on ``shape``.
    """
    perms = [f.perm if isinstance(f, OneDimFactor) else f for f in factors]
    if shape is not None:
        shape = _as_shape(shape)
    elif perms:
        shape = perms[0].shape
    else:
        raise UsageError("compose of an empty sequence needs a shape")
    for p in perms:
        if p.shape != shape:
            raise UsageError(f"shape mismatch: {p.shape.dims} vs {shape.dims}")
    res = np.arange(shape.size, dtype=np.int64)
    for p in reversed(perms):
        res = p.mapping[res]
    return BoxPermutation(shape, res)


# ---------------------------------------------------------------------------
# Well-dispersed rearrangement
# ---------------------------------------------------------------------------

class LabelMatrix:
    """m x n matrix over m labels, each label occurring exactly n times."""

    def __init__(self, rows: Sequence[Sequence[Hashable]]):
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise UsageError("label matrix must be non-empty")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise UsageError("ragged label matrix")
        counts: dict = {}
        for r in rows:
            for x in r:
                counts[x] = counts.get(x, 0) + 1
        if len(counts) != len(rows):
            raise UsageError(f"{len(rows)} rows but {len(counts)} distinct labels")
        bad = {k: c for k, c in counts.items() if c != n}
        if bad:
            raise UsageError(f"labels not occurring exactly {n} times: {bad}")
        self.rows = rows
        self.m = len(rows)
        self.n = n
        self.labels = sorted(counts) if _sortable(counts) else sorted(counts, key=repr)

    def permuted(self, perms: Sequence[Sequence[int]]) -> tuple[tuple, ...]:
        return tuple(tuple(r[p] for p in perm) for r, perm in zip(self.rows, perms))


def _sortable(xs) -> bool:
    try:
        sorted(xs)
        return True
    except TypeError:
        return False


def _perfect_matching(adj: list[list[int]], n_right: int) -> list[int]:
    """Row -> column perfect matching by BFS augmenting paths."""
    match_row = [-1] * len(adj)
    match_col = [-1] * n_right
    for root in range(len(adj)):
        prev = {}
        queue = deque([root])
        seen_rows = {root}
        end = -1
        while queue and end < 0:
            r = queue.popleft()
            for c in adj[r]:
                if c in prev:
                    continue
                prev[c] = r
                if match_col[c] < 0:
                    end = c
                    break
                nxt = match_col[c]
                if nxt not in seen_rows:
                    seen_rows.add(nxt)
                    queue.append(nxt)
        if end < 0:
            raise UsageError("no perfect matching: Hall's condition fails")
        c = end
        while True:
            r = prev[c]
            old = match_row[r]
            match_row[r] = c
            match_col[c] = r
            if r == root:
                break
            c = old
    return match_row


def well_disperse(a: LabelMatrix | Sequence[Sequence[Hashable]]) -> list[tuple[int, ...]]:
    """Row permutations making every column contain all labels.

    Returns ``perms`` with ``perms[i][j]`` the source column of entry (i, j):
    the permuted matrix is ``A[i][perms[i][j]]``. Each column is filled by a
    perfect matching between rows and the labels still available in them.
    """
    if not isinstance(a, LabelMatrix):
        a = LabelMatrix(a)
    lab_index = {x: k for k, x in enumerate(a.labels)}
    rows = [[lab_index[x] for x in r] for r in a.rows]
    remaining = [list(range(a.n)) for _ in range(a.m)]
    perms: list[list[int]] = [[] for _ in range(a.m)]
    for _ in range(a.n):
        adj = [sorted({rows[i][c] for c in remaining[i]}) for i in range(a.m)]
        match = _perfect_matching(adj, a.m)
        for i, lab in enumerate(match):
            c = next(c for c in remaining[i] if rows[i][c] == lab)
            remaining[i].remove(c)
            perms[i].append(c)
    return [tuple(p) for p in perms]


def is_well_dispersed(rows: Sequence[Sequence[Hashable]]) -> bool:
    m = len(rows)
    return all(len({r[j] for r in rows}) == m for j in range(len(rows[0])))


# ---------------------------------------------------------------------------
# Decomposition
# ---------------------------------------------------------------------------

def decompose_2d(sigma: BoxPermutation) -> list[OneDimFactor]:
    """Three factors [outer, middle, inner] on axes [1, 0, 1] with
    ``compose(result) == sigma``.

    inner spreads every row so that each column holds tokens bound for
    distinct rows, middle moves each token to its destination row within its
    column, outer places each token in its destination column.
    """
    shape = sigma.shape
    if shape.d != 2:
        raise UsageError("decompose_2d needs a two-dimensional box")
    m, n = shape.dims
    dest = sigma.mapping
    dest_row = (dest // n).reshape(m, n)
    perms = well_disperse(LabelMatrix(dest_row.tolist()))
    inner = np.empty(m * n, dtype=np.int64)
    middle = np.empty(m * n, dtype=np.int64)
    outer = np.empty(m * n, dtype=np.int64)
    for i, p in enumerate(perms):
        for j, src in enumerate(p):
            token = i * n + src
            inner[token] = i * n + j
            r = int(dest_row[i, src])
            middle[i * n + j] = r * n + j
            outer[r * n + j] = dest[token]
    return [OneDimFactor(1, BoxPermutation(shape, outer)),
            OneDimFactor(0, BoxPermutation(shape, middle)),
            OneDimFactor(1, BoxPermutation(shape, inner))]


def decompose(sigma: BoxPermutation) -> list[OneDimFactor]:
    """Exactly 2d-1 one-dimensional factors (some possibly identity) with axes
    d-1, ..., 1, 0, 1, ..., d-1 and ``compose(result) == sigma``."""
    shape = sigma.shape
    d = shape.d
    if d == 1:
        return [OneDimFactor(0, sigma)]
    head = math.prod(shape.dims[:-1])
    last = shape.dims[-1]
    outer, middle, inner = decompose_2d(BoxPermutation((head, last), sigma.mapping))
    sub_shape = BoxShape(shape.dims[:-1])
    mid = middle.mapping
    per_slice = []
    for c in range(last):
        tau = mid[np.arange(head) * last + c] // last
        per_slice.append(decompose(BoxPermutation(sub_shape, tau)))
    unified = []
    ys = np.arange(head)
    for k in range(2 * d - 3):
        table = np.empty(shape.size, dtype=np.int64)
        for c, facs in enumerate(per_slice):
            table[ys * last + c] = facs[k].mapping * last + c
        unified.append(OneDimFactor(per_slice[0][k].axis, BoxPermutation(shape, table)))
    return ([OneDimFactor(d - 1, BoxPermutation(shape, outer.mapping))] + unified +
            [OneDimFactor(d - 1, BoxPermutation(shape, inner.mapping))])


def corner_swap(shape) -> BoxPermutation:
    """Swap the corner (0, ..., 0) with (1, ..., 1); needs every n_i >= 2."""
    shape = _as_shape(shape)
    if any(k < 2 for k in shape.dims):
        raise UsageError("corner swap needs every dimension >= 2")
    return BoxPermutation.from_points(shape, {(0,) * shape.d: (1,) * shape.d,
                                              (1,) * shape.d: (0,) * shape.d})


def random_box_permutation(shape, rng: np.random.Generator) -> BoxPermutation:
    shape = _as_shape(shape)
    return BoxPermutation(shape, rng.permutation(shape.size))


def one_dim_permutations(shape, axis: int) -> np.ndarray:
    """All non-identity permutations affecting only ``axis``, as rows."""
    shape = _as_shape(shape)
    c = shape.coord_array()
    other = np.delete(c, axis, axis=1)
    fibers: dict[tuple, list[int]] = {}
    for v, key in enumerate(map(tuple, other)):
        fibers.setdefault(key, []).append(v)
    fiber_list = list(fibers.values())  # each fiber is sorted by the axis coordinate
    local = list(itertools.permutations(range(shape.dims[axis])))
    rows = []
    for choice in itertools.product(local, repeat=len(fiber_list)):
        m = np.arange(shape.size, dtype=np.int64)
        for fib, p in zip(fiber_list, choice):
            for k, v in enumerate(fib):
                m[v] = fib[p[k]]
        rows.append(m)
    arr = np.array(rows[1:], dtype=np.int64).reshape(-1, shape.size)  # rows[0] is identity
    return arr


def count_one_dim_permutations(shape) -> int:
    shape = _as_shape(shape)
    total = 0
    for k in shape.dims:
        total += math.factorial(k) ** (shape.size // k) - 1
    return total


def min_factors_exhaustive(sigma: BoxPermutation, r_max: int,
                           budget: int = 10**9) -> tuple[int, list[OneDimFactor]] | None:
    """Least r <= r_max with sigma a composition of r one-dimensional
    permutations, plus a witness; None if no such r exists.

    Breadth-first over composition length with a visited set. Raises
    ResourceError when (number of generators) ** r_max exceeds ``budget``.
    """
    shape = sigma.shape
    if r_max < 0:
        raise UsageError("r_max must be >= 0")
    if shape.size > 15:
        raise ResourceError(f"box of {shape.size} points is too large for exhaustive search")
    n_gens = count_one_dim_permutations(shape)
    if r_max > 0 and n_gens ** r_max > budget:
        raise ResourceError(f"{n_gens}^{r_max} compositions exceed budget {budget}")
    if sigma.is_identity():
        return 0, []
    gens, axes = [], []
    for a in range(shape.d):
        g = one_dim_permutations(shape, a)
        gens.append(g)
        axes += [a] * len(g)
    gen_arr = np.concatenate(gens) if gens else np.zeros((0, shape.size), dtype=np.int64)
    target = int(kernels.encode_states(sigma.mapping[None, :])[0])
    start = np.arange(shape.size, dtype=np.int64)[None, :]
    parent: dict[int, tuple[int, int]] = {int(kernels.encode_states(start)[0]): (-1, -1)}
    frontier = start
    for r in range(1, r_max + 1):
        cand = kernels.apply_generators(frontier, gen_arr)
        keys = kernels.encode_states(cand)
        f = frontier.shape[0]
        frontier_keys = kernels.encode_states(frontier)
        uniq, first = np.unique(keys, return_index=True)
        fresh = [(int(k), int(i)) for k, i in zip(uniq, first) if int(k) not in parent]
        if not fresh:
            return None
        for k, i in fresh:
            parent[k] = (int(frontier_keys[i % f]), i // f)
        if target in parent:
            word = []
            k = target
            while parent[k][0] != -1:
                pk, gi = parent[k]
                word.append(OneDimFactor(axes[gi], BoxPermutation(shape, gen_arr[gi])))
                k = pk
            return r, word
        frontier = cand[[i for _, i in fresh]]
    return None
