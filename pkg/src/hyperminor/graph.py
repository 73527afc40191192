"""Finite simple graphs on vertices ``0..n-1``.

Three concrete flavours share one read-only interface:

* ``Graph``        explicit edge set,
* ``Hypercube``    implicit Q_d (neighbors by bit flips),
* ``ProductGraph`` implicit Cartesian product, row-major flattening with the
  last coordinate varying fastest.

Large hosts (Q_17, the four-factor product hosts) are never materialized.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import UsageError

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class BaseGraph:
    """Common read-only interface; subclasses provide ``n``, ``neighbors``
    and ``has_edge``."""

    n: int

    def neighbors(self, v: int) -> tuple[int, ...]:
        raise NotImplementedError

    def has_edge(self, u: int, v: int) -> bool:
        raise NotImplementedError

    def edges(self) -> Iterator[Edge]:
        for v in range(self.n):
            for w in self.neighbors(v):
                if v < w:
                    yield (v, w)

    @property
    def num_edges(self) -> int:
        return sum(1 for _ in self.edges())

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.n)), default=0)

    def vertices(self) -> range:
        return range(self.n)

    def descriptor(self):
        """JSON-able description from which ``graph_from_descriptor``
        rebuilds an equal graph."""
        return {"n": self.n, "edges": [list(e) for e in self.edges()]}

    def to_graph(self) -> "Graph":
        return Graph(self.n, self.edges())

    def _edge_key(self):
        return frozenset(self.edges())

    def __eq__(self, other):
        if not isinstance(other, BaseGraph):
            return NotImplemented
        if self.n != other.n:
            return False
        if self.n > 4096:
            return False
        return self._edge_key() == other._edge_key()

    def __hash__(self):
        return hash((self.n, self.num_edges))


class Graph(BaseGraph):
    """Explicit simple graph. ``family`` is a descriptor string such as
    ``"cycle:22"`` when the graph came from ``make_family``."""

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = (), family: str | None = None,
                 labels: Sequence | None = None):
        if n < 0:
            raise UsageError("vertex count must be non-negative")
        es = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise UsageError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise UsageError(f"edge ({u}, {v}) out of range for {n} vertices")
            es.add(norm_edge(u, v))
        self.n = n
        self.edge_set = frozenset(es)
        self.family = family
        self.labels = tuple(labels) if labels is not None else None
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in es:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = tuple(tuple(sorted(a)) for a in adj)

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], n: int | None = None) -> "Graph":
        edges = [tuple(e) for e in edges]
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        return cls(n, edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edge_set

    def edges(self) -> Iterator[Edge]:
        return iter(sorted(self.edge_set))

    @property
    def num_edges(self) -> int:
        return len(self.edge_set)

    def descriptor(self):
        if self.family is not None:
            return self.family
        return super().descriptor()

    def _edge_key(self):
        return self.edge_set

    def __repr__(self):
        tag = self.family or f"custom, {len(self.edge_set)} edges"
        return f"Graph({self.n}, {tag})"


class Hypercube(BaseGraph):
    """Q_d on d-bit integers; adjacency is Hamming distance one."""

    def __init__(self, d: int):
        if d < 0:
            raise UsageError("hypercube dimension must be >= 0")
        self.d = d
        self.n = 1 << d

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(v ^ (1 << i) for i in range(self.d)))

    def has_edge(self, u: int, v: int) -> bool:
        x = u ^ v
        return 0 <= u < self.n and 0 <= v < self.n and x != 0 and x & (x - 1) == 0

    def edges(self) -> Iterator[Edge]:
        for v in range(self.n):
            for i in range(self.d):
                if not v >> i & 1:
                    yield (v, v | (1 << i))

    @property
    def num_edges(self) -> int:
        return self.d << (self.d - 1) if self.d else 0

    def degree(self, v: int) -> int:
        return self.d

    def max_degree(self) -> int:
        return self.d

    def descriptor(self):
        return f"hypercube:{self.d}"

    def __eq__(self, other):
        if isinstance(other, Hypercube):
            return self.d == other.d
        return super().__eq__(other)

    __hash__ = BaseGraph.__hash__

    def __repr__(self):
        return f"Hypercube({self.d})"


class ProductGraph(BaseGraph):
    """Cartesian product G_1 x ... x G_k.

    Nested products are flattened, so ``ProductGraph([A, ProductGraph([B, C])])``
    and ``ProductGraph([A, B, C])`` coincide, including flat indices.
    """

    def __init__(self, factors: Sequence[BaseGraph]):
        flat: list[BaseGraph] = []
        for f in factors:
            if isinstance(f, ProductGraph):
                flat.extend(f.factors)
            else:
                flat.append(f)
        if not flat:
            raise UsageError("a product needs at least one factor")
        self.factors = tuple(flat)
        self.orders = tuple(f.n for f in flat)
        strides = [1] * len(flat)
        for i in range(len(flat) - 2, -1, -1):
            strides[i] = strides[i + 1] * self.orders[i + 1]
        self.strides = tuple(strides)
        n = 1
        for k in self.orders:
            n *= k
        self.n = n
        self._fadj = [tuple(f.neighbors(x) for x in range(f.n)) for f in flat]

    def coords(self, v: int) -> tuple[int, ...]:
        out = []
        for k in reversed(self.orders):
            v, r = divmod(v, k)
            out.append(r)
        return tuple(reversed(out))

    def index(self, coords: Sequence[int]) -> int:
        if len(coords) != len(self.orders):
            raise UsageError("coordinate tuple has wrong length")
        v = 0
        for x, k in zip(coords, self.orders):
            if not 0 <= x < k:
                raise UsageError(f"coordinate {x} out of range {k}")
            v = v * k + x
        return v

    def neighbors(self, v: int) -> tuple[int, ...]:
        out = []
        for x, s, fadj in zip(self.coords(v), self.strides, self._fadj):
            base = v - x * s
            out.extend(base + y * s for y in fadj[x])
        out.sort()
        return tuple(out)

    def has_edge(self, u: int, v: int) -> bool:
        if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
            return False
        cu, cv = self.coords(u), self.coords(v)
        diff = [i for i in range(len(cu)) if cu[i] != cv[i]]
        return len(diff) == 1 and self.factors[diff[0]].has_edge(cu[diff[0]], cv[diff[0]])

    @property
    def num_edges(self) -> int:
        total = 0
        for i, f in enumerate(self.factors):
            rest = self.n // self.orders[i]
            total += f.num_edges * rest
        return total

    def descriptor(self):
        return {"product": [f.descriptor() for f in self.factors]}

    def __eq__(self, other):
        if isinstance(other, ProductGraph):
            return self.factors == other.factors
        return super().__eq__(other)

    __hash__ = BaseGraph.__hash__

    def __repr__(self):
        return "ProductGraph(" + " x ".join(map(repr, self.factors)) + ")"


class Walk(tuple):
    """Non-empty vertex sequence; a single vertex is a length-0 walk."""

    def __new__(cls, vertices: Iterable[int]):
        w = super().__new__(cls, vertices)
        if not w:
            raise UsageError("a walk needs at least one vertex")
        return w

    @property
    def length(self) -> int:
        return len(self) - 1

    def then(self, other: Sequence[int]) -> "Walk":
        """Concatenate, dropping the shared junction vertex."""
        if self[-1] != other[0]:
            raise UsageError(f"walks do not meet: {self[-1]} != {other[0]}")
        return Walk(tuple(self) + tuple(other[1:]))

    def reversed(self) -> "Walk":
        return Walk(self[::-1])

    def is_walk_in(self, g: BaseGraph) -> bool:
        return all(g.has_edge(a, b) for a, b in zip(self, self[1:]))


def concat_walks(walks: Sequence[Sequence[int]]) -> Walk:
    out = Walk(walks[0])
    for w in walks[1:]:
        out = out.then(w)
    return out


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------

def cycle(n: int) -> Graph:
    if n < 3:
        raise UsageError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)], family=f"cycle:{n}")


def path(n: int) -> Graph:
    if n < 1:
        raise UsageError("path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)], family=f"path:{n}")


def complete(n: int) -> Graph:
    if n < 1:
        raise UsageError("complete graph needs n >= 1")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)], family=f"complete:{n}")


def star(k: int) -> Graph:
    """K_{1,k} with center 0."""
    if k < 1:
        raise UsageError("star needs k >= 1")
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)], family=f"star:{k}")


def hypercube(d: int) -> Hypercube:
    return Hypercube(d)


_FAMILIES = {"cycle": cycle, "path": path, "complete": complete, "star": star,
             "hypercube": hypercube}


def make_family(spec: str) -> BaseGraph:
    """Build a graph from a descriptor such as ``cycle:22``, ``hypercube:3``
    or ``custom:<edge-list path>``."""
    if not isinstance(spec, str) or ":" not in spec:
        raise UsageError(f"malformed family descriptor {spec!r}")
    name, _, arg = spec.partition(":")
    name = name.strip().lower()
    if name == "custom":
        return read_edge_list(Path(arg.strip()))
    if name not in _FAMILIES:
        raise UsageError(f"unknown family {name!r}")
    try:
        k = int(arg)
    except ValueError:
        raise UsageError(f"family {name!r} needs an integer parameter, got {arg!r}") from None
    return _FAMILIES[name](k)


def graph_from_descriptor(desc) -> BaseGraph:
    if isinstance(desc, str):
        return make_family(desc)
    if isinstance(desc, dict):
        if "product" in desc:
            return ProductGraph([graph_from_descriptor(d) for d in desc["product"]])
        if "edges" in desc:
            return Graph(int(desc["n"]), desc["edges"])
    raise UsageError(f"malformed graph descriptor {desc!r}")


def parse_product_descriptor(text: str) -> list[BaseGraph]:
    """Ordered factor list: descriptors separated by commas, whitespace or
    newlines; ``#`` starts a comment."""
    tokens = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        tokens.extend(t for t in line.replace(",", " ").split() if t)
    if not tokens:
        raise UsageError("empty product descriptor")
    return [make_family(t) for t in tokens]


def cartesian_product(factors: Sequence[BaseGraph]) -> ProductGraph:
    if not factors:
        raise UsageError("cartesian_product needs a non-empty factor sequence")
    return ProductGraph(factors)


# ---------------------------------------------------------------------------
# Subdivision and degree reduction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subdivision:
    """Simple subdivision of ``base``.

    Original vertices keep their ids; the i-th edge ``(u, v)`` (u < v, sorted
    order) contributes vertex ``n + 2i`` owned by u and ``n + 2i + 1`` owned
    by v.
    """

    base: Graph
    graph: Graph
    provenance: dict[int, tuple[int, int]]  # new vertex -> (owner, partner)
    half: dict[tuple[int, int], int]        # (owner, partner) -> new vertex


def simple_subdivision(g: BaseGraph) -> Subdivision:
    n = g.n
    base = g if isinstance(g, Graph) else g.to_graph()
    edges = []
    prov: dict[int, tuple[int, int]] = {}
    half: dict[tuple[int, int], int] = {}
    for i, (u, v) in enumerate(base.edges()):
        a, b = n + 2 * i, n + 2 * i + 1
        prov[a] = (u, v)
        prov[b] = (v, u)
        half[(u, v)] = a
        half[(v, u)] = b
        edges += [(u, a), (a, b), (b, v)]
    sub = Graph(n + 2 * base.num_edges, edges)
    return Subdivision(base, sub, prov, half)


@dataclass(frozen=True)
class Reduction:
    """Degree reduction: vertex v of ``base`` becomes the binary tree
    ``trees[v]`` of ``graph``; ``leaf[(v, u)]`` is v's leaf facing u."""

    base: Graph
    graph: Graph
    trees: tuple[frozenset[int], ...]
    leaf: dict[tuple[int, int], int]


def degree_reduce(g: BaseGraph) -> Reduction:
    base = g if isinstance(g, Graph) else g.to_graph()
    isolated = [v for v in range(base.n) if base.degree(v) == 0]
    if isolated:
        raise UsageError(f"isolated vertices not allowed: {isolated[:5]}")
    counter = [0]
    edges: list[Edge] = []
    leaf: dict[tuple[int, int], int] = {}
    trees = []

    def build(v: int, labels: Sequence[int], members: list[int]) -> int:
        node = counter[0]
        counter[0] += 1
        members.append(node)
        if len(labels) == 1:
            leaf[(v, labels[0])] = node
            return node
        mid = (len(labels) + 1) // 2
        for part in (labels[:mid], labels[mid:]):
            child = build(v, part, members)
            edges.append((node, child))
        return node

    for v in range(base.n):
        members: list[int] = []
        build(v, base.neighbors(v), members)
        trees.append(frozenset(members))
    for u, v in base.edges():
        edges.append((leaf[(u, v)], leaf[(v, u)]))
    return Reduction(base, Graph(counter[0], edges), tuple(trees), leaf)


# ---------------------------------------------------------------------------
# Paths and small utilities
# ---------------------------------------------------------------------------

def bfs_path(g: BaseGraph, u: int, v: int) -> Walk:
    """Shortest walk from u to v; neighbors are expanded in ascending order."""
    if u == v:
        return Walk((u,))
    parent = {u: u}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in g.neighbors(x):
            if y in parent:
                continue
            parent[y] = x
            if y == v:
                out = [v]
                while out[-1] != u:
                    out.append(parent[out[-1]])
                return Walk(reversed(out))
            queue.append(y)
    raise UsageError(f"vertices {u} and {v} are not connected")


def bfs_path_within(g: BaseGraph, allowed, u: int, v: int) -> Walk:
    """Shortest walk from u to v using only vertices in ``allowed``."""
    if u == v:
        return Walk((u,))
    parent = {u: u}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in g.neighbors(x):
            if y in parent or y not in allowed:
                continue
            parent[y] = x
            if y == v:
                out = [v]
                while out[-1] != u:
                    out.append(parent[out[-1]])
                return Walk(reversed(out))
            queue.append(y)
    raise UsageError(f"vertices {u} and {v} are not connected inside the given set")


def is_connected(g: BaseGraph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == g.n


def isolated_vertices(g: BaseGraph) -> list[int]:
    return [v for v in range(g.n) if not g.neighbors(v)]


def contract(g: BaseGraph, parts: Sequence[Iterable[int]]) -> Graph:
    """Quotient graph: part i becomes vertex i; vertices in no part are deleted."""
    owner = {}
    for i, part in enumerate(parts):
        for x in part:
            owner[x] = i
    edges = set()
    for u, v in g.edges():
        a, b = owner.get(u), owner.get(v)
        if a is not None and b is not None and a != b:
            edges.add(norm_edge(a, b))
    return Graph(len(parts), edges)


def are_isomorphic(a: BaseGraph, b: BaseGraph) -> bool:
    """Exact isomorphism test for small graphs (backtracking)."""
    if a.n != b.n or a.num_edges != b.num_edges:
        return False
    if sorted(a.degree(v) for v in range(a.n)) != sorted(b.degree(v) for v in range(b.n)):
        return False
    order = sorted(range(a.n), key=lambda v: -a.degree(v))
    image: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        for y in range(b.n):
            if y in used or b.degree(y) != a.degree(x):
                continue
            if all(a.has_edge(x, p) == b.has_edge(y, q) for p, q in image.items()):
                image[x] = y
                used.add(y)
                if extend(i + 1):
                    return True
                del image[x]
                used.discard(y)
        return False

    return extend(0)


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """``u v`` per line, ``#`` comments, optional ``p <vertex_count>`` header."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 2 or n is not None:
                raise UsageError(f"line {lineno}: bad header {raw!r}")
            n = int(parts[1])
            continue
        if len(parts) != 2:
            raise UsageError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise UsageError(f"line {lineno}: non-integer vertex in {raw!r}") from None
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return Graph(n, edges)


def read_edge_list(path: str | Path) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    return parse_edge_list(text)


def format_edge_list(g: BaseGraph) -> str:
    lines = [f"p {g.n}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def to_dot(g: BaseGraph, clusters: Sequence[Iterable[int]] | None = None, name: str = "G") -> str:
    """DOT text; ``clusters`` draws each vertex set in its own subgraph box."""
    out = [f"graph {name} {{"]
    if clusters is not None:
        for i, c in enumerate(clusters):
            out.append(f"  subgraph cluster_{i} {{ label=\"{i}\"; " +
                       " ".join(str(x) + ";" for x in sorted(c)) + " }")
    shown = None
    if clusters is not None:
        shown = set().union(*map(set, clusters)) if clusters else set()
    for v in range(g.n) if shown is None else sorted(shown):
        out.append(f"  {v};")
    for u, v in g.edges() if shown is None else _induced_edges(g, shown):
        out.append(f"  {u} -- {v};")
    out.append("}")
    return "\n".join(out) + "\n"


def _induced_edges(g: BaseGraph, vs: set[int]) -> Iterator[Edge]:
    for v in sorted(vs):
        for w in g.neighbors(v):
            if v < w and w in vs:
                yield (v, w)
