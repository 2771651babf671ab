import math
import random

import networkx as nx
import numpy as np
import pytest

from conftest import brute_clique_number
from gdperm import bounds
from gdperm.constructions import coset_partition
from gdperm.distance_sets import EVENS, PATH, ComplementOf, FiniteSet
from gdperm.perm_core import PermFamily, g_different, verify_family
from gdperm.solver import (
    build_conflict_graph,
    graph_from_matrix,
    independence_number,
    max_clique,
    max_clique_with_coloring_bound,
    solve_T,
)

NOT1 = ComplementOf(PATH)


def nx_clique_number(g):
    G = nx.Graph()
    G.add_nodes_from(range(len(g)))
    G.add_edges_from((u, v) for u in range(len(g)) for v in range(u + 1, len(g)) if g.has_edge(u, v))
    return max(len(c) for c in nx.find_cliques(G))


def test_build_conflict_graph_examples():
    g = build_conflict_graph(2, NOT1)
    assert len(g) == 2 and g.n_edges == 0
    g = build_conflict_graph(3, NOT1)
    assert len(g) == 6 and g.has_edge(g.index((1, 2, 3)), g.index((3, 1, 2)))
    g = build_conflict_graph(3, PATH)
    assert g.has_edge(g.index((1, 2, 3)), g.index((2, 1, 3)))
    assert g.vertices[0] == (1, 2, 3) and g.vertices[-1] == (3, 2, 1)
    with pytest.raises(ValueError):
        build_conflict_graph(9, PATH)


@pytest.mark.parametrize("D", [PATH, NOT1, EVENS, FiniteSet((2,))], ids=lambda D: D.spec)
def test_conflict_graph_adjacency_is_g_different(D):
    g = build_conflict_graph(4, D)
    for u in range(len(g)):
        for v in range(len(g)):
            want = u != v and g_different(g.vertices[u], g.vertices[v], D)
            assert g.has_edge(u, v) == want


def test_max_clique_examples():
    assert solve_T(3, NOT1).clique_size == 3
    assert solve_T(5, NOT1).clique_size == 30
    assert solve_T(2, PATH).clique_size == 2
    assert solve_T(2, FiniteSet((1, 5))).clique_size == 2
    res = solve_T(4, PATH)
    assert res.exact and res.clique_size == 6


@pytest.mark.parametrize("D", [PATH, NOT1, EVENS, ComplementOf(EVENS), FiniteSet((2,))], ids=lambda D: D.spec)
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_solver_matches_independent_oracles(D, n):
    g = build_conflict_graph(n, D)
    res = max_clique(g)
    assert res.exact and res.proof_bound == res.clique_size
    assert res.clique_size == nx_clique_number(g)
    if n <= 3:
        assert res.clique_size == brute_clique_number(g.vertices, lambda x, y: g_different(x, y, D))
    fam = PermFamily.from_rows(res.clique_witness, n, D, "solver")
    assert len(fam) == res.clique_size and verify_family(fam).ok


@pytest.mark.parametrize("seed", range(8))
def test_random_graphs_against_networkx(seed):
    rng = np.random.default_rng(seed)
    N = int(rng.integers(5, 60))
    p = float(rng.uniform(0.2, 0.9))
    upper = np.triu(rng.random((N, N)) < p, 1)
    g = graph_from_matrix([(i,) for i in range(N)], upper | upper.T)
    res = max_clique(g)
    assert res.exact
    assert g.is_clique([g.index(v) for v in res.clique_witness])
    assert res.clique_size == nx_clique_number(g)
    assert max_clique(g, ordering="degeneracy").clique_size == res.clique_size


@pytest.mark.parametrize(
    "n,D", [(5, PATH), (5, EVENS), (4, NOT1), (4, FiniteSet((2,)))], ids=lambda v: str(v)
)
@pytest.mark.parametrize("seed", [11, 12])
def test_clique_number_invariant_under_relabeling(n, D, seed):
    g = build_conflict_graph(n, D)
    order = list(range(len(g)))
    random.Random(seed).shuffle(order)
    h = g.relabeled(order)
    assert max_clique(h).clique_size == max_clique(g).clique_size


def test_solver_is_deterministic():
    a = solve_T(5, PATH)
    b = solve_T(5, PATH)
    assert a.clique_witness == b.clique_witness


def test_budget_exhaustion_returns_valid_clique():
    rng = np.random.default_rng(3)
    N = 200
    upper = np.triu(rng.random((N, N)) < 0.9, 1)
    g = graph_from_matrix([(i,) for i in range(N)], upper | upper.T)
    res = max_clique(g, max_nodes=50)
    assert not res.exact
    assert res.proof_bound >= res.clique_size
    assert g.is_clique([g.index(v) for v in res.clique_witness])


def test_coloring_bound_examples():
    res = max_clique_with_coloring_bound(build_conflict_graph(4, NOT1), coset_partition(4))
    assert res.exact and res.clique_size == 6 and res.proof_bound == 6
    res = max_clique_with_coloring_bound(build_conflict_graph(3, NOT1), coset_partition(3))
    assert res.exact and res.clique_size == 3
    res = max_clique_with_coloring_bound(build_conflict_graph(1, NOT1), coset_partition(1))
    assert res.clique_size == 1


def test_invalid_coloring_rejected():
    g = build_conflict_graph(3, NOT1)
    with pytest.raises(ValueError, match="not independent"):
        max_clique_with_coloring_bound(g, [[(1, 2, 3), (3, 1, 2)], [(1, 3, 2)], [(2, 1, 3)], [(2, 3, 1)], [(3, 2, 1)]])


def test_independence_number_examples():
    assert independence_number(build_conflict_graph(2, NOT1)).clique_size == 2
    complete = graph_from_matrix([(i,) for i in range(5)], ~np.eye(5, dtype=bool))
    assert independence_number(complete).clique_size == 1
    assert independence_number(build_conflict_graph(3, NOT1)).clique_size == 2


@pytest.mark.parametrize("n", range(1, 6))
def test_solver_equals_closed_forms(n):
    assert solve_T(n, NOT1).clique_size == bounds.formula_theorem1(n)
    assert solve_T(n, ComplementOf(EVENS)).clique_size == math.comb(n, n // 2)


@pytest.mark.parametrize("n", [4, 5])
def test_solver_equals_corollary(n):
    assert solve_T(n, ComplementOf(FiniteSet((2,)))).clique_size == bounds.formula_corollary(n, 2)


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("q", [2, 3])
def test_single_distance_dominated_by_path(n, q):
    assert solve_T(n, FiniteSet((q,))).clique_size <= solve_T(n, PATH).clique_size
