"""Combinatorial embeddings, minor models, and the constructive pipeline.

Pipeline for a guest H and host H4 x C_{6n-2} x Hk x G_1 x ... x G_n:

1. ``degree_reduce``  H -> Gamma' with max degree <= 3,
2. ``embed_max_degree_3`` embeds the simple subdivision of Gamma' by
   splitting its edges into <= 4 matchings (one H4 layer each), routing each
   matching with ``piecewise_matching_embed`` and ``lift_with_cycle``,
3. ``subdivision_embedding_to_model`` turns that embedding into a model of
   Gamma', and contracting the reduction trees gives a model of H.

Verifiers (``verify_embedding``, ``verify_piecewise``, ``verify_model``)
only use host adjacency and never call construction code.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import permdec
from .coloring import vizing_edge_color
from .errors import CapacityError, InvalidInputError, UsageError
from .graph import (BaseGraph, Edge, Graph, Hypercube, ProductGraph, Walk, bfs_path,
                    bfs_path_within, cycle, degree_reduce, is_connected, isolated_vertices,
                    norm_edge, simple_subdivision)


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str


@dataclass
class Report:
    violations: list[Violation] = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid

    def add(self, kind: str, detail: str) -> None:
        self.violations.append(Violation(kind, detail))

    def summary(self) -> str:
        if self.valid:
            return "VALID"
        lines = [f"INVALID ({len(self.violations)} violations)"]
        lines += [f"  {v.kind}: {v.detail}" for v in self.violations[:20]]
        return "\n".join(lines)


@dataclass
class CombinatorialEmbedding:
    """Injective vertex map plus one host walk ("road") per guest edge.

    ``roads`` is keyed by the normalized guest edge; a road may run in
    either direction between the two endpoint images.
    """

    guest: BaseGraph
    host: BaseGraph
    vertex_map: tuple[int, ...]
    roads: dict[Edge, Walk]
    meta: dict = field(default_factory=dict)


@dataclass
class PiecewiseEmbedding:
    guest: BaseGraph
    host: BaseGraph
    n_pieces: int
    vertex_map: tuple[int, ...]
    pieces: dict[Edge, list[Walk]]

    def full_walk(self, e: Edge) -> Walk:
        out = Walk(self.pieces[e][0])
        for w in self.pieces[e][1:]:
            out = out.then(w)
        return out


@dataclass
class TrioSchedule:
    """Stage i (application order) moves tokens along ``axes[i]`` with
    ``factors[i]``; ``prefixes[i]`` is the composition of the first i stages."""

    axes: tuple[int, ...]
    factors: tuple[permdec.OneDimFactor, ...]
    prefixes: tuple[permdec.BoxPermutation, ...]
    matching_perm: permdec.BoxPermutation


@dataclass
class MinorModel:
    """branch_sets[v] is the host vertex set representing guest vertex v."""

    guest: BaseGraph
    host: BaseGraph
    branch_sets: Sequence[frozenset[int]]

    def branch_set(self, v: int) -> frozenset[int]:
        return self.branch_sets[v]


# ---------------------------------------------------------------------------
# Verifiers
# ---------------------------------------------------------------------------

def _check_walk(host: BaseGraph, walk, report: Report, tag: str) -> bool:
    if len(walk) == 0:
        report.add("walk", f"{tag}: empty walk")
        return False
    for x in walk:
        if not (isinstance(x, (int, np.integer)) and 0 <= x < host.n):
            report.add("walk", f"{tag}: vertex {x!r} not in host")
            return False
    for a, b in zip(walk, walk[1:]):
        if not host.has_edge(a, b):
            report.add("walk", f"{tag}: {a} -> {b} is not a host edge")
            return False
    return True


def verify_embedding(emb: CombinatorialEmbedding, limit: int = 100) -> Report:
    """Check injectivity, road endpoints, walk adjacency, disjointness of
    roads of non-adjacent edges, and isolation of vertex images from roads."""
    rep = Report()
    g, host, f = emb.guest, emb.host, tuple(emb.vertex_map)
    if len(f) != g.n:
        rep.add("vertex_map", f"{len(f)} images for {g.n} guest vertices")
        return rep
    owner: dict[int, int] = {}
    for v, x in enumerate(f):
        if not 0 <= x < host.n:
            rep.add("vertex_map", f"image of {v} is {x}, not a host vertex")
        elif x in owner:
            rep.add("injectivity", f"vertices {owner[x]} and {v} both map to {x}")
        else:
            owner[x] = v
    guest_edges = set(g.edges())
    for e in emb.roads:
        if norm_edge(*e) not in guest_edges:
            rep.add("roads", f"road given for non-edge {e}")
    through: dict[int, list[Edge]] = {}
    for e in sorted(guest_edges):
        u, v = e
        road = emb.roads.get(e)
        if road is None:
            rep.add("roads", f"edge {e} has no road")
            continue
        if not _check_walk(host, road, rep, f"road of {e}"):
            continue
        ends = (road[0], road[-1])
        if ends != (f[u], f[v]) and ends != (f[v], f[u]):
            rep.add("endpoints", f"road of {e} runs {ends}, expected {f[u]}..{f[v]}")
        for x in set(road):
            through.setdefault(x, []).append(e)
    for x, es in through.items():
        if x in owner:
            v = owner[x]
            for e in es:
                if v not in e:
                    rep.add("isolation", f"road of {e} passes image {x} of vertex {v}")
        if len(es) > 1:
            for i in range(len(es)):
                for j in range(i + 1, len(es)):
                    if not set(es[i]) & set(es[j]):
                        rep.add("disjointness", f"roads of {es[i]} and {es[j]} meet at {x}")
        if len(rep.violations) >= limit:
            break
    return rep


def verify_piecewise(p: PiecewiseEmbedding, limit: int = 100) -> Report:
    rep = Report()
    g, host, f = p.guest, p.host, tuple(p.vertex_map)
    if len(f) != g.n:
        rep.add("vertex_map", f"{len(f)} images for {g.n} guest vertices")
        return rep
    if len(set(f)) != len(f):
        rep.add("injectivity", "vertex map is not injective")
    if any(not 0 <= x < host.n for x in f):
        rep.add("vertex_map", "image outside host")
        return rep
    occupied: list[dict[int, list[Edge]]] = [dict() for _ in range(p.n_pieces)]
    for e in g.edges():
        pcs = p.pieces.get(e)
        if pcs is None or len(pcs) != p.n_pieces:
            rep.add("pieces", f"edge {e} needs exactly {p.n_pieces} pieces")
            continue
        ok = True
        for i, w in enumerate(pcs):
            ok &= _check_walk(host, w, rep, f"piece {i} of {e}")
        if not ok:
            continue
        for i in range(1, len(pcs)):
            if pcs[i - 1][-1] != pcs[i][0]:
                rep.add("junction", f"pieces {i - 1},{i} of {e} do not meet")
        u, v = e
        ends = (pcs[0][0], pcs[-1][-1])
        if ends != (f[u], f[v]) and ends != (f[v], f[u]):
            rep.add("endpoints", f"pieces of {e} run {ends}")
        for i, w in enumerate(pcs):
            for x in set(w):
                occupied[i].setdefault(x, []).append(e)
    for i, occ in enumerate(occupied):
        for x, es in occ.items():
            for a in range(len(es)):
                for b in range(a + 1, len(es)):
                    if not set(es[a]) & set(es[b]):
                        rep.add("disjointness", f"index {i}: pieces of {es[a]} and {es[b]} meet at {x}")
            if len(rep.violations) >= limit:
                return rep
    return rep


def _component(host: BaseGraph, members: frozenset[int]) -> set[int]:
    start = min(members)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in host.neighbors(x):
            if y in members and y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def verify_model(m: MinorModel, limit: int = 100) -> Report:
    """Check non-empty, pairwise disjoint, connected branch sets and a host
    edge between the branch sets of every guest edge. Witness host edges are
    returned in ``report.witnesses``."""
    rep = Report()
    g, host = m.guest, m.host
    if len(m.branch_sets) != g.n:
        rep.add("branch_sets", f"{len(m.branch_sets)} branch sets for {g.n} guest vertices")
        return rep
    owner: dict[int, int] = {}
    sets = []
    for v in range(g.n):
        bs = frozenset(m.branch_sets[v])
        sets.append(bs)
        if not bs:
            rep.add("empty", f"branch set of {v} is empty")
            continue
        bad = [x for x in bs if not 0 <= x < host.n]
        if bad:
            rep.add("range", f"branch set of {v} contains non-host vertices {bad[:3]}")
            continue
        for x in bs:
            if x in owner:
                rep.add("disjointness", f"host vertex {x} in branch sets of {owner[x]} and {v}")
            else:
                owner[x] = v
        if len(_component(host, bs)) != len(bs):
            rep.add("connectivity", f"branch set of {v} is not connected")
        if len(rep.violations) >= limit:
            return rep
    for u, v in g.edges():
        a, b = (u, v) if len(sets[u]) <= len(sets[v]) else (v, u)
        found = None
        for x in sorted(sets[a]):
            for y in host.neighbors(x):
                if y in sets[b]:
                    found = (x, y) if a == u else (y, x)
                    break
            if found:
                break
        if found is None:
            rep.add("edge", f"no host edge joins branch sets of {u} and {v}")
        else:
            rep.witnesses[(u, v)] = found
        if len(rep.violations) >= limit:
            break
    return rep


# ---------------------------------------------------------------------------
# Conversions
# ---------------------------------------------------------------------------

def model_to_embedding(m: MinorModel) -> CombinatorialEmbedding:
    """Image of v is min(branch set); the road of uv walks inside mu(u) to a
    witness edge, crosses it, and walks inside mu(v)."""
    rep = verify_model(m)
    if not rep.valid:
        raise InvalidInputError("model is invalid:\n" + rep.summary())
    sets = [frozenset(s) for s in m.branch_sets]
    f = tuple(min(s) for s in sets)
    roads = {}
    for u, v in m.guest.edges():
        a, b = _least_witness(m.host, sets[u], sets[v])
        left = bfs_path_within(m.host, sets[u], f[u], a)
        right = bfs_path_within(m.host, sets[v], b, f[v])
        roads[(u, v)] = Walk(tuple(left) + tuple(right))
    return CombinatorialEmbedding(m.guest, m.host, f, roads)


def _least_witness(host: BaseGraph, su: frozenset[int], sv: frozenset[int]) -> tuple[int, int]:
    for x in sorted(su):
        for y in host.neighbors(x):
            if y in sv:
                return x, y
    raise InvalidInputError("no witness edge")


@dataclass
class SubdivisionSegments:
    star: dict[int, set[int]]               # S_v
    segment: dict[tuple[int, int], set[int]]  # R_{u,v}


def subdivision_segments(emb: CombinatorialEmbedding, h: BaseGraph) -> SubdivisionSegments:
    """Star sets and road segments for an embedding of the simple subdivision of h."""
    rep = verify_embedding(emb)
    if not rep.valid:
        raise InvalidInputError("embedding is invalid:\n" + rep.summary())
    sub = simple_subdivision(h)
    if emb.guest.n != sub.graph.n or set(emb.guest.edges()) != set(sub.graph.edges()):
        raise InvalidInputError("embedding guest is not the simple subdivision of h")
    f = emb.vertex_map
    star: dict[int, set[int]] = {}
    for v in range(h.n):
        s = {f[v]}
        for u in h.neighbors(v):
            s.update(emb.roads[norm_edge(v, sub.half[(v, u)])])
        star[v] = s
    seg: dict[tuple[int, int], set[int]] = {}
    for u, v in h.edges():
        a, b = sub.half[(u, v)], sub.half[(v, u)]
        road = emb.roads[norm_edge(a, b)]
        if road[0] != f[a]:
            road = road[::-1]
        su, sv = star[u], star[v]
        j = next(k for k, x in enumerate(road) if x in sv)
        i = max(k for k in range(j) if road[k] in su)
        seg[(u, v)] = {road[i]}
        seg[(v, u)] = set(road[i + 1: j + 1])
    return SubdivisionSegments(star, seg)


def subdivision_embedding_to_model(emb: CombinatorialEmbedding, h: BaseGraph) -> MinorModel:
    """Model of h from a combinatorial embedding of its simple subdivision:
    mu(v) = S_v plus the segments R_{v,w} of its middle roads."""
    parts = subdivision_segments(emb, h)
    sets = []
    for v in range(h.n):
        s = set(parts.star[v])
        for w in h.neighbors(v):
            s |= parts.segment[(v, w)]
        sets.append(frozenset(s))
    return MinorModel(h, emb.host, sets)


def check_star_property(parts: SubdivisionSegments) -> list[tuple[int, int]]:
    """Pairs (u, v) where R_{u,v} meets S_v; empty when the property holds."""
    return [(u, v) for (u, v), r in parts.segment.items() if r & parts.star[v]]


# ---------------------------------------------------------------------------
# Step 1: piecewise embedding of a matching
# ---------------------------------------------------------------------------

def _check_hosts(hk: BaseGraph, factors: Sequence[BaseGraph]) -> None:
    if not factors:
        raise UsageError("need at least one factor graph")
    if not is_connected(hk) or hk.n < 1:
        raise UsageError("Hk must be connected")
    for i, g in enumerate(factors):
        if not is_connected(g) or g.n < 1:
            raise UsageError(f"factor {i} is not connected")
        if g.n > hk.n:
            raise UsageError(f"factor {i} has {g.n} vertices, more than |V(Hk)| = {hk.n}")


def piecewise_matching_embed(gamma: BaseGraph, f: Sequence[int], factors: Sequence[BaseGraph],
                             hk: BaseGraph) -> tuple[PiecewiseEmbedding, TrioSchedule]:
    """(6n-3)-piecewise embedding of the matching ``gamma`` into Hk x P0,
    P0 = G_1 x ... x G_n, with v placed at (0, f[v]).

    The permutation swapping f(u) and f(v) on every matched pair is split into
    2n-1 one-dimensional stages; stage i contributes three pieces per edge:
    climb Hk from 0 to the token's current coordinate on the stage axis, move
    along that axis inside the fiber, descend Hk back to 0.
    """
    _check_hosts(hk, factors)
    if gamma.max_degree() > 1:
        raise UsageError("gamma must be a matching graph (max degree <= 1)")
    f = tuple(int(x) for x in f)
    if len(f) != gamma.n:
        raise UsageError(f"vertex map has {len(f)} entries for {gamma.n} vertices")
    p0 = ProductGraph(factors)
    size0 = p0.n
    if len(set(f)) != len(f):
        raise UsageError("vertex map is not injective")
    if any(not 0 <= x < size0 for x in f):
        raise UsageError("vertex map leaves P0")
    n = len(factors)
    stages = 2 * n - 1
    host = ProductGraph([hk, *factors])
    shape = permdec.BoxShape(p0.orders)

    mapping = np.arange(size0, dtype=np.int64)
    starts = {}
    for u, v in gamma.edges():
        a, b = (u, v) if f[u] < f[v] else (v, u)
        starts[(u, v)] = a
        mapping[f[u]], mapping[f[v]] = f[v], f[u]
    sigma = permdec.BoxPermutation(shape, mapping)
    facs = permdec.decompose(sigma)
    applied = list(reversed(facs))
    n_real = len(applied)
    while len(applied) < stages:
        applied.append(permdec.OneDimFactor(0, permdec.BoxPermutation.identity(shape)))
    prefixes = [permdec.BoxPermutation.identity(shape)]
    for fac in applied:
        prefixes.append(fac.perm.after(prefixes[-1]))
    schedule = TrioSchedule(tuple(fc.axis for fc in applied), tuple(applied),
                            tuple(prefixes), sigma)

    climb = {h: bfs_path(hk, 0, h) for h in range(hk.n)}
    descend = {h: bfs_path(hk, h, 0) for h in range(hk.n)}
    strides = p0.strides
    pieces: dict[Edge, list[Walk]] = {}
    for e, a in starts.items():
        pos = f[a]
        out: list[Walk] = []
        for fac in applied[:n_real]:
            j = fac.axis
            new = int(fac.mapping[pos])
            label = p0.coords(pos)[j]
            out.append(Walk(h * size0 + pos for h in climb[label]))
            src, dst = label, p0.coords(new)[j]
            along = bfs_path(factors[j], src, dst)
            base = pos - src * strides[j]
            out.append(Walk(label * size0 + base + y * strides[j] for y in along))
            out.append(Walk(h * size0 + new for h in descend[label]))
            pos = new
        for _ in range(n_real, stages):
            out.extend([Walk((pos,))] * 3)  # padded identity stage
        pieces[e] = out
    return PiecewiseEmbedding(gamma, host, 3 * stages, f, pieces), schedule


# ---------------------------------------------------------------------------
# Step 2: cycle lift
# ---------------------------------------------------------------------------

def lift_with_cycle(p: PiecewiseEmbedding) -> CombinatorialEmbedding:
    """Combinatorial embedding into C_{N+1} x Y: piece i runs on cycle layer i,
    vertex images sit on layer 0."""
    rep = verify_piecewise(p)
    if not rep.valid:
        raise InvalidInputError("piecewise embedding is invalid:\n" + rep.summary())
    n_p = p.n_pieces
    if n_p < 2:
        raise UsageError("cycle lift needs at least 2 pieces")
    y = p.host.n
    host = ProductGraph([cycle(n_p + 1), p.host])
    f = tuple(p.vertex_map)
    roads = {}
    for e, pcs in p.pieces.items():
        seq = [pcs[0][0]]
        for i, w in enumerate(pcs, start=1):
            seq.append(i * y + w[0])
            seq.extend(i * y + x for x in w[1:])
        seq.append(pcs[-1][-1])
        roads[e] = Walk(seq)
    return CombinatorialEmbedding(p.guest, host, f, roads)


# ---------------------------------------------------------------------------
# Step 3: max-degree-3 graphs, layered over H4
# ---------------------------------------------------------------------------

def pipeline_host(h4: BaseGraph, hk: BaseGraph, factors: Sequence[BaseGraph]) -> ProductGraph:
    """H4 x C_{6n-2} x Hk x G_1 x ... x G_n."""
    return ProductGraph([h4, cycle(6 * len(factors) - 2), hk, *factors])


def embed_max_degree_3(gamma: BaseGraph, h4: BaseGraph, hk: BaseGraph,
                       factors: Sequence[BaseGraph]) -> CombinatorialEmbedding:
    """Combinatorial embedding of the simple subdivision of ``gamma`` into
    H4 x C_{6n-2} x Hk x G_1 x ... x G_n."""
    if gamma.max_degree() > 3:
        raise UsageError("gamma must have maximum degree <= 3")
    if h4.n != 4 or not is_connected(h4):
        raise UsageError("H4 must be a connected graph on 4 vertices")
    _check_hosts(hk, factors)
    sub = simple_subdivision(gamma)
    size0 = math.prod(g.n for g in factors)
    if sub.graph.n > size0:
        raise CapacityError(f"subdivision has {sub.graph.n} vertices, P0 has only {size0}")
    n = len(factors)
    host = pipeline_host(h4, hk, factors)
    size2 = host.n // 4
    f = tuple(range(sub.graph.n))
    classes = vizing_edge_color(sub.graph)
    if len(classes) > 4:
        raise AssertionError("edge coloring used more than 4 colors")
    roads: dict[Edge, Walk] = {}
    layer_of: dict[Edge, int] = {}
    for i, cls in enumerate(classes):
        gi = Graph(sub.graph.n, cls)
        pw, _ = piecewise_matching_embed(gi, f, factors, hk)
        lifted = lift_with_cycle(pw)
        assert lifted.host == ProductGraph(host.factors[1:]), "layer host mismatch"
        up = bfs_path(h4, 0, i)
        down = bfs_path(h4, i, 0)
        for e, r in lifted.roads.items():
            seq = [h * size2 + r[0] for h in up]
            seq += [i * size2 + x for x in r[1:]]
            seq += [h * size2 + r[-1] for h in down[1:]]
            roads[e] = Walk(seq)
            layer_of[e] = i
    return CombinatorialEmbedding(sub.graph, host, f, roads,
                                  meta={"layer": layer_of, "pieces": 6 * n - 3})


@dataclass(frozen=True)
class _IdentityReduction:
    graph: BaseGraph
    trees: tuple[frozenset[int], ...]


def minor_universal_embed(h: BaseGraph, h4: BaseGraph, hk: BaseGraph,
                          factors: Sequence[BaseGraph], budget: str = "theorem") -> MinorModel:
    """Model of h in H4 x C_{6n-2} x Hk x G_1 x ... x G_n.

    ``budget="theorem"`` admits guests with at most |P0|/16 edges and always
    reduces degrees first. ``budget="capacity"`` admits anything whose
    subdivision fits into P0 and skips the reduction when max degree <= 3.
    """
    if budget not in ("theorem", "capacity"):
        raise UsageError(f"unknown budget mode {budget!r}")
    iso = isolated_vertices(h)
    if iso:
        raise UsageError(f"guest has isolated vertices {iso[:5]}")
    size0 = math.prod(g.n for g in factors)
    if budget == "theorem":
        if h.num_edges > size0 // 16:
            raise CapacityError(f"{h.num_edges} edges exceed the budget {size0 // 16} = |P0|/16")
        red = degree_reduce(h)
    elif h.max_degree() <= 3:
        red = _IdentityReduction(h if isinstance(h, Graph) else h.to_graph(),
                                 tuple(frozenset([v]) for v in range(h.n)))
    else:
        red = degree_reduce(h)
    need = red.graph.n + 2 * red.graph.num_edges
    if need > size0:
        raise CapacityError(f"subdivision needs {need} vertices, P0 has {size0}")
    emb = embed_max_degree_3(red.graph, h4, hk, factors)
    inner = subdivision_embedding_to_model(emb, red.graph)
    sets = [frozenset().union(*(inner.branch_sets[t] for t in tree)) for tree in red.trees]
    return MinorModel(h, emb.host, sets)


# ---------------------------------------------------------------------------
# Model algebra
# ---------------------------------------------------------------------------

class _ProductSets(Sequence):
    """Lazy branch sets of a product model."""

    def __init__(self, m: MinorModel, other_n: int, side: str):
        self.m, self.k, self.side = m, other_n, side

    def __len__(self):
        return self.m.guest.n * self.k

    def __getitem__(self, idx):
        if not 0 <= idx < len(self):
            raise IndexError(idx)
        if self.side == "right":
            h, l = divmod(idx, self.k)
            return frozenset(g * self.k + l for g in self.m.branch_sets[h])
        l, h = divmod(idx, self.m.guest.n)
        off = l * self.m.host.n
        return frozenset(off + g for g in self.m.branch_sets[h])

    def __iter__(self) -> Iterator[frozenset[int]]:
        for i in range(len(self)):
            yield self[i]


def product_model(m: MinorModel, other: BaseGraph, side: str = "right",
                  check: bool = True) -> MinorModel:
    """Model of H x L in G x L (or L x H in L x G for ``side="left"``);
    the branch set of (h, l) is mu(h) x {l}."""
    if side not in ("left", "right"):
        raise UsageError("side must be 'left' or 'right'")
    if check:
        rep = verify_model(m)
        if not rep.valid:
            raise InvalidInputError("model is invalid:\n" + rep.summary())
    if side == "right":
        guest, host = ProductGraph([m.guest, other]), ProductGraph([m.host, other])
    else:
        guest, host = ProductGraph([other, m.guest]), ProductGraph([other, m.host])
    return MinorModel(guest, host, _ProductSets(m, other.n, side))


def compose_models(m1: MinorModel, m2: MinorModel) -> MinorModel:
    """Model of F in G from F in H and H in G.

    The union of mu2 over a connected mu1(f) is connected because the
    witness edges of m2 join the pieces directly.
    """
    if m1.host != m2.guest:
        raise UsageError("host of the first model is not the guest of the second")
    sets = [frozenset().union(*(m2.branch_sets[h] for h in s)) for s in m1.branch_sets]
    return MinorModel(m1.guest, m2.host, sets)


def relabel_model(m: MinorModel, host: BaseGraph, mapping=None) -> MinorModel:
    """Same branch sets (optionally mapped vertexwise) in a new host."""
    if mapping is None:
        sets = [frozenset(s) for s in m.branch_sets]
    else:
        sets = [frozenset(mapping[x] for x in s) for s in m.branch_sets]
    return MinorModel(m.guest, host, sets)


def identity_model(g: BaseGraph) -> MinorModel:
    return MinorModel(g, g, [frozenset([v]) for v in range(g.n)])


# ---------------------------------------------------------------------------
# Hypercube specialization
# ---------------------------------------------------------------------------

def _ceil_log2(x: int) -> int:
    return (x - 1).bit_length()


def gray_cycle(t: int) -> list[int]:
    return [i ^ (i >> 1) for i in range(1 << t)]


def cycle_minor_in_hypercube(l: int, t: int) -> MinorModel:
    """C_l in Q_t: consecutive arcs of the Gray-code Hamiltonian cycle."""
    if l < 3:
        raise UsageError("cycle length must be >= 3")
    if l > (1 << t) or t < 2:
        raise CapacityError(f"C_{l} does not fit into Q_{t}")
    g = gray_cycle(t)
    q, r = divmod(len(g), l)
    sets, pos = [], 0
    for j in range(l):
        size = q + (1 if j < r else 0)
        sets.append(frozenset(g[pos:pos + size]))
        pos += size
    return MinorModel(cycle(l), Hypercube(t), sets)


def hypercube_parameters(d: int) -> tuple[int, int]:
    """Largest n >= 1 with n + ceil(log2(6n-2)) + 3 <= d, and that ceil(log2)."""
    best = None
    n = 1
    while n + _ceil_log2(6 * n - 2) + 3 <= d:
        best = (n, _ceil_log2(6 * n - 2))
        n += 1
    if best is None:
        raise CapacityError(f"d = {d} is too small for the hypercube construction (needs d >= 6)")
    return best


def hypercube_embed(h: BaseGraph, d: int, budget: str = "capacity") -> MinorModel:
    """Model of h in Q_d via Q2 x C_{6n-2} x Q1 x Q1^n, the Gray-code cycle
    minor, and the subcube inclusion Q_{n+t+3} <= Q_d."""
    n, t = hypercube_parameters(d)
    q1 = Hypercube(1)
    inner = minor_universal_embed(h, Hypercube(2), q1, [q1] * n, budget=budget)
    rest = ProductGraph([q1] * (n + 1))
    lift = product_model(cycle_minor_in_hypercube(6 * n - 2, t), rest, "right")
    # already valid: a product of a verified model
    lift = product_model(lift, Hypercube(2), "left", check=False)
    if lift.guest != inner.host:
        raise AssertionError("cycle replacement does not match the pipeline host")
    composed = compose_models(inner, lift)
    # Q2 x Q_t x Q1^(n+1) is Q_(n+t+3) with identical labels; Q_D sits in Q_d
    # as the subcube with the high bits zero.
    return relabel_model(composed, Hypercube(d))
