import itertools
import random

import pytest
from hypothesis import given, settings

from hyperminor.embedding import verify_model
from hyperminor.errors import ResourceError, UsageError
from hyperminor.graph import Graph, complete, cycle, hypercube, path, star
from hyperminor.oracle import (canonical_form, enumerate_guests, is_minor_bruteforce,
                               universality_number)

from test_graph import PETERSEN, graphs


# --- independent oracles -------------------------------------------------------

def naive_code(n, edges):
    """Least sorted edge list over all vertex permutations, after dropping
    isolated vertices."""
    used = sorted({x for e in edges for x in e})
    idx = {v: i for i, v in enumerate(used)}
    es = [(idx[u], idx[v]) for u, v in edges]
    k = len(used)
    best = None
    for perm in itertools.permutations(range(k)):
        code = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in es))
        if best is None or code < best:
            best = code
    return k, best


def all_minors(n, edges):
    """Codes of every minor without isolated vertices and with >= 1 edge,
    by closing under edge deletion and edge contraction (one representative
    per isomorphism class)."""
    first = naive_code(n, edges)
    seen = {first}
    stack = [first]
    while stack:
        _, es = stack.pop()
        for e in es:
            rest = [x for x in es if x != e]
            u, v = e
            merged = set()
            for a, b in rest:
                a = u if a == v else a
                b = u if b == v else b
                if a != b:
                    merged.add(tuple(sorted((a, b))))
            for x in (rest, sorted(merged)):
                if not x:
                    continue
                code = naive_code(n, x)
                if code not in seen:
                    seen.add(code)
                    stack.append(code)
    return seen


def guest_code(g):
    return naive_code(g.n, list(g.edges()))


# --- minor search ---------------------------------------------------------------

def test_spec_examples():
    assert is_minor_bruteforce(cycle(3), star(3)) is None
    for g in (path(2), cycle(5), PETERSEN):
        assert is_minor_bruteforce(path(2), g) is not None
    m = is_minor_bruteforce(complete(4), hypercube(3))
    assert m is not None and verify_model(m).valid


def test_complete_graph_minors():
    assert is_minor_bruteforce(complete(5), PETERSEN) is not None
    assert is_minor_bruteforce(complete(5), hypercube(3)) is None
    assert is_minor_bruteforce(complete(4), cycle(8)) is None


def test_budget_is_a_third_state():
    with pytest.raises(ResourceError):
        is_minor_bruteforce(complete(4), hypercube(3), budget=3)
    with pytest.raises(ResourceError):
        is_minor_bruteforce(path(2), Graph(21, [(0, 1)]))


def test_isolated_guest_vertices_allowed():
    m = is_minor_bruteforce(Graph(3, [(0, 1)]), path(3))
    assert m is not None and verify_model(m).valid
    assert is_minor_bruteforce(Graph(4, [(0, 1)]), path(3)) is None


@pytest.mark.parametrize("seed", range(12))
def test_agrees_with_minor_closure(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 6)
    pairs = list(itertools.combinations(range(n), 2))
    host = Graph(n, rng.sample(pairs, rng.randint(2, min(len(pairs), 8))))
    minors = all_minors(n, list(host.edges()))
    for cg in enumerate_guests(min(host.num_edges, 5)):
        model = is_minor_bruteforce(cg.graph, host)
        if cg.n > n:
            assert model is None
            continue
        assert (model is not None) == (guest_code(cg.graph) in minors), list(cg.graph.edges())
        if model is not None:
            assert verify_model(model).valid


def test_transitivity_and_monotonicity_spot_checks():
    rng = random.Random(3)
    guests = [c.graph for c in enumerate_guests(4)]
    hosts = [cycle(5), star(4), complete(4), hypercube(3), path(5)]
    for _ in range(30):
        f, h = rng.sample(guests, 2)
        g = rng.choice(hosts)
        if is_minor_bruteforce(f, h) and is_minor_bruteforce(h, g):
            assert is_minor_bruteforce(f, g) is not None
    for g in hosts:
        missing = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)]
        if not missing:
            continue
        gp = Graph(g.n, list(g.edges()) + [missing[0]])
        for h in guests:
            if is_minor_bruteforce(h, g):
                assert is_minor_bruteforce(h, gp) is not None


# --- canonical forms and enumeration ---------------------------------------------

@settings(max_examples=80, deadline=None)
@given(graphs(max_n=7))
def test_canonical_form_invariant_under_relabeling(g):
    perm = list(range(g.n))
    random.Random(g.num_edges).shuffle(perm)
    h = Graph(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
    assert canonical_form(g).code == canonical_form(h).code


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=6), graphs(max_n=6))
def test_canonical_form_separates_non_isomorphic(a, b):
    if a.n != b.n:
        return
    same = canonical_form(a).code == canonical_form(b).code
    assert same == (naive_code(a.n, list(a.edges())) == naive_code(b.n, list(b.edges()))
                    and sum(1 for v in range(a.n) if a.degree(v) == 0)
                    == sum(1 for v in range(b.n) if b.degree(v) == 0))


def test_canonical_graph_is_isomorphic_copy():
    c = canonical_form(PETERSEN)
    assert c.graph.num_edges == 15 and sorted(c.graph.degree(v) for v in range(10)) == [3] * 10
    assert canonical_form(c.graph).code == c.code


def test_enumeration_counts():
    assert [len(enumerate_guests(m, exact=True)) for m in range(1, 8)] == [1, 2, 5, 11, 26, 68, 177]
    assert len(enumerate_guests(3)) == 1 + 2 + 5


def test_enumeration_matches_brute_force():
    for m in (1, 2, 3):
        brute = set()
        k = 2 * m
        for es in itertools.combinations(itertools.combinations(range(k), 2), m):
            brute.add(naive_code(k, list(es)))
        found = {guest_code(c.graph) for c in enumerate_guests(m, exact=True)}
        assert found == brute


def test_enumeration_is_deterministic_and_clean():
    a = enumerate_guests(5)
    b = enumerate_guests(5)
    assert [c.code for c in a] == [c.code for c in b]
    for c in a:
        assert all(c.graph.degree(v) > 0 for v in range(c.graph.n))


def test_enumeration_limits():
    with pytest.raises(ResourceError):
        enumerate_guests(8)
    with pytest.raises(UsageError):
        enumerate_guests(0)


# --- universality numbers ---------------------------------------------------------

def test_universality_single_edge():
    r = universality_number(path(2), 3)
    assert r.m == 1 and not r.saturated


def test_universality_star():
    r = universality_number(star(3), 4)
    assert r.m == 1
    # two disjoint edges need four singleton branch sets; every star edge meets the centre
    assert sorted(r.falsifier.edges()) == [(0, 1), (2, 3)]
    assert is_minor_bruteforce(Graph(4, [(0, 1), (2, 3)]), star(3)) is None


def test_universality_q3():
    r = universality_number(hypercube(3), 6)
    assert r.m >= 3
    for name, g in [("triangle", cycle(3)), ("P4", path(4)), ("K13", star(3)),
                    ("P3+K2", Graph(5, [(0, 1), (1, 2), (3, 4)])), ("3K2", Graph(6, [(0, 1), (2, 3), (4, 5)]))]:
        assert is_minor_bruteforce(g, hypercube(3)) is not None, name


def test_universality_saturates():
    r = universality_number(complete(6), 2)
    assert r.m == 2 and r.saturated and r.falsifier is None
