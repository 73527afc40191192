import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from hyperminor.errors import UsageError
from hyperminor.graph import (Graph, Hypercube, ProductGraph, Walk, are_isomorphic, bfs_path,
                              cartesian_product, complete, concat_walks, contract, cycle,
                              degree_reduce, format_edge_list, hypercube, make_family,
                              parse_edge_list, parse_product_descriptor, path, simple_subdivision,
                              star, to_dot)

PETERSEN = Graph(10, [(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)]
                 + [(5 + i, 5 + (i + 2) % 5) for i in range(5)])


@st.composite
def graphs(draw, max_n=8, min_n=1):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


def test_graph_rejects_loops_and_range():
    with pytest.raises(UsageError):
        Graph(3, [(1, 1)])
    with pytest.raises(UsageError):
        Graph(3, [(0, 3)])
    assert Graph(3, [(0, 1), (1, 0)]).num_edges == 1


def test_families():
    q2 = make_family("hypercube:2")
    assert (q2.n, q2.num_edges) == (4, 4)
    assert are_isomorphic(q2, cycle(4))
    assert (complete(4).n, complete(4).num_edges) == (4, 6)
    c22 = make_family("cycle:22")
    assert (c22.n, c22.num_edges) == (22, 22)
    assert all(c22.degree(v) == 2 for v in range(22))
    with pytest.raises(UsageError):
        make_family("cycle:2")
    with pytest.raises(UsageError):
        make_family("wheel:5")
    with pytest.raises(UsageError):
        make_family("cycle")


def test_custom_family(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("# triangle\np 4\n0 1\n1 2\n\n2 0\n")
    g = make_family(f"custom:{p}")
    assert g.n == 4 and g.num_edges == 3


def test_hypercube_labels():
    q = hypercube(3)
    assert q.neighbors(0) == (1, 2, 4)
    assert q.has_edge(5, 7) and not q.has_edge(0, 3)
    assert q.num_edges == 12


def test_products():
    q3 = cartesian_product([Hypercube(1)] * 3)
    assert are_isomorphic(q3.to_graph(), hypercube(3).to_graph())
    p = cartesian_product([cycle(3), path(2)])
    assert (p.n, p.num_edges) == (6, 9)
    assert len(list(p.edges())) == 9
    single = cartesian_product([Graph(1), cycle(5)])
    assert are_isomorphic(single.to_graph(), cycle(5))
    with pytest.raises(UsageError):
        cartesian_product([])


def test_product_flattening_is_row_major():
    p = ProductGraph([path(2), cycle(3), path(4)])
    assert p.coords(0) == (0, 0, 0)
    assert p.coords(1) == (0, 0, 1)
    assert p.coords(4) == (0, 1, 0)
    assert all(p.index(p.coords(v)) == v for v in range(p.n))
    nested = ProductGraph([ProductGraph([path(2), cycle(3)]), path(4)])
    assert nested.factors == p.factors


def test_product_adjacency_random_pairs():
    rng = random.Random(0)
    fams = [cycle(3), cycle(4), path(3), complete(4), star(3), hypercube(2)]
    for _ in range(20):
        factors = [rng.choice(fams) for _ in range(rng.randint(1, 3))]
        p = ProductGraph(factors)
        for _ in range(10):
            u, v = rng.randrange(p.n), rng.randrange(p.n)
            cu, cv = p.coords(u), p.coords(v)
            diff = [i for i in range(len(factors)) if cu[i] != cv[i]]
            expect = len(diff) == 1 and factors[diff[0]].has_edge(cu[diff[0]], cv[diff[0]])
            assert p.has_edge(u, v) == expect
            assert (v in p.neighbors(u)) == expect
    p = ProductGraph([cycle(3), path(3)])
    assert p.num_edges == len(list(p.edges())) == 3 * 3 + 2 * 3


def test_walks():
    w = Walk([0, 1, 2])
    assert w.length == 2
    assert w.then([2, 3]) == (0, 1, 2, 3)
    with pytest.raises(UsageError):
        w.then([3, 4])
    with pytest.raises(UsageError):
        Walk([])
    assert Walk([5]).length == 0
    assert concat_walks([[0, 1], [1], [1, 2]]) == (0, 1, 2)
    assert w.reversed() == (2, 1, 0)
    assert w.is_walk_in(path(3)) and not Walk([0, 2]).is_walk_in(path(3))


def test_bfs_path():
    assert bfs_path(cycle(6), 2, 2) == (2,)
    assert bfs_path(cycle(6), 0, 3) == (0, 1, 2, 3)
    assert bfs_path(hypercube(3), 0, 7) == (0, 1, 3, 7)
    with pytest.raises(UsageError):
        bfs_path(Graph(3, [(0, 1)]), 0, 2)


def test_simple_subdivision():
    s = simple_subdivision(path(2))
    assert s.graph.n == 4 and s.graph.num_edges == 3
    assert are_isomorphic(s.graph, path(4))
    t = simple_subdivision(cycle(3))
    assert are_isomorphic(t.graph, cycle(9))
    assert t.provenance[3] == (0, 1) and t.half[(1, 0)] == 4
    e = simple_subdivision(Graph(3))
    assert e.graph.n == 3 and e.graph.num_edges == 0


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_subdivision_contracts_back(g):
    s = simple_subdivision(g)
    assert s.graph.n == g.n + 2 * g.num_edges
    assert s.graph.num_edges == 3 * g.num_edges
    parts = [{v} for v in range(g.n)]
    for x, (owner, _) in s.provenance.items():
        parts[owner].add(x)
    assert set(contract(s.graph, parts).edges()) == set(g.edges())


def test_degree_reduce_examples():
    r = degree_reduce(path(2))
    assert r.graph.n == 2 and r.graph.num_edges == 1
    r = degree_reduce(star(4))
    assert r.graph.max_degree() <= 3 and r.graph.n <= 16 and len(r.trees[0]) <= 8
    assert are_isomorphic(contract(r.graph, r.trees), star(4))
    r = degree_reduce(cycle(3))
    assert r.graph.n == 9 and r.graph.max_degree() <= 3
    assert are_isomorphic(contract(r.graph, r.trees), cycle(3))
    with pytest.raises(UsageError):
        degree_reduce(Graph(3, [(0, 1)]))


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2))
def test_degree_reduce_properties(g):
    from hypothesis import assume
    assume(all(g.degree(v) > 0 for v in range(g.n)))
    r = degree_reduce(g)
    assert r.graph.max_degree() <= 3
    assert r.graph.n <= 4 * g.num_edges
    assert set(contract(r.graph, r.trees).edges()) == set(g.edges())


def test_edge_list_round_trip():
    g = PETERSEN
    assert parse_edge_list(format_edge_list(g)) == g
    with pytest.raises(UsageError):
        parse_edge_list("0 1 2\n")
    with pytest.raises(UsageError):
        parse_edge_list("a b\n")


def test_product_descriptor():
    fs = parse_product_descriptor("cycle:4, cycle:4  # two\nhypercube:1\n")
    assert [f.n for f in fs] == [4, 4, 2]
    with pytest.raises(UsageError):
        parse_product_descriptor("# nothing")


def test_dot_export():
    text = to_dot(cycle(4), [[0, 1], [2]])
    assert "cluster_0" in text and "0 -- 1;" in text and "2 -- 3" not in text
    assert to_dot(path(2)).count("--") == 1
