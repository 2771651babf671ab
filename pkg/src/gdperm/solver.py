"""Exact maximum cliques of conflict graphs on permutations and sequences.

The search is a bitset branch-and-bound in the MCQ style: candidates are
greedily colored in a fixed degree order, and a branch is cut when the
current clique plus the color count cannot beat the incumbent.
Adjacency rows are Python integers used as bitsets.
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .distance_sets import PATH, DistanceSet
from .perm_core import PermFamily

DEFAULT_MAX_NODES = 10**8
DEFAULT_TIME_LIMIT = 300.0
MAX_PERM_N = 8


def _rows_to_bitsets(adj: np.ndarray) -> list[int]:
    packed = np.packbits(adj, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


@dataclass
class ConflictGraph:
    vertices: list[tuple]
    adj: list[int]
    label: str = ""

    def __len__(self):
        return len(self.vertices)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    @property
    def n_edges(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def index(self, vertex) -> int:
        return self.vertices.index(tuple(vertex))

    def is_clique(self, idx) -> bool:
        idx = list(idx)
        return all(self.has_edge(u, v) for u, v in itertools.combinations(idx, 2))

    def is_independent(self, idx) -> bool:
        idx = list(idx)
        return not any(self.has_edge(u, v) for u, v in itertools.combinations(idx, 2))

    def complement(self) -> ConflictGraph:
        full = (1 << len(self)) - 1
        adj = [(full ^ a) & ~(1 << v) for v, a in enumerate(self.adj)]
        return ConflictGraph(self.vertices, adj, f"complement of {self.label}")

    def relabeled(self, order) -> ConflictGraph:
        """Graph with vertex ``order[k]`` moved to index ``k``."""
        order = list(order)
        pos = {old: new for new, old in enumerate(order)}
        adj = []
        for old in order:
            row, a = 0, self.adj[old]
            while a:
                low = a & -a
                row |= 1 << pos[low.bit_length() - 1]
                a ^= low
            adj.append(row)
        return ConflictGraph([self.vertices[o] for o in order], adj, self.label)


def graph_from_matrix(vertices, adj: np.ndarray, label="") -> ConflictGraph:
    adj = np.array(adj, dtype=bool)
    np.fill_diagonal(adj, False)
    if not (adj == adj.T).all():
        raise ValueError("adjacency matrix must be symmetric")
    return ConflictGraph([tuple(v) for v in vertices], _rows_to_bitsets(adj), label)


def sequence_conflict_graph(seqs, pair_adjacent: np.ndarray, label="") -> ConflictGraph:
    """Sequences adjacent iff some position holds symbols ``a, b`` with ``pair_adjacent[a, b]``."""
    X = np.asarray(seqs, dtype=np.intp)
    if X.ndim != 2:
        X = X.reshape(len(seqs), -1)
    adj = np.zeros((len(X), len(X)), dtype=bool)
    for u in range(len(X)):
        adj[u] = pair_adjacent[X[u][None, :], X].any(axis=1)
    return graph_from_matrix([tuple(r) for r in X.tolist()], adj, label)


def build_conflict_graph(n: int, D: DistanceSet, max_n: int = MAX_PERM_N) -> ConflictGraph:
    """All ``n!`` permutations in lexicographic order, adjacent iff ``D``-different."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > max_n:
        raise ValueError(f"conflict graph on {n}! vertices exceeds the cap n <= {max_n}")
    values = np.arange(1, n + 1)
    pair = D.mask(n)[np.abs(values[:, None] - values[None, :])]
    perms = list(itertools.permutations(range(n)))
    g = sequence_conflict_graph(perms, pair, f"H(n={n}, D={D.spec})")
    g.vertices = [tuple(v + 1 for v in x) for x in g.vertices]
    return g


@dataclass
class SolveResult:
    clique_size: int
    clique_witness: list[tuple]
    proof_bound: int
    bound_source: str
    exact: bool
    nodes: int = 0
    elapsed: float = field(default=0.0, compare=False)


class _Budget(Exception):
    pass


def _color_sort(P: int, adj: list[int]):
    """Greedy sequential coloring of ``P``, lowest index first.

    Returns vertices and their color numbers in nondecreasing color order.
    """
    verts, colors = [], []
    color = 0
    while P:
        color += 1
        Q = P
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            Q &= ~adj[v] & ~low
            P &= ~low
            verts.append(v)
            colors.append(color)
    return verts, colors


def _vertex_order(g: ConflictGraph, ordering: str) -> list[int]:
    N = len(g)
    if ordering == "degree":
        return sorted(range(N), key=lambda v: (-g.degree(v), v))
    if ordering != "degeneracy":
        raise ValueError(f"unknown vertex ordering {ordering!r}")
    deg = [g.degree(v) for v in range(N)]
    remaining = (1 << N) - 1
    out = []
    for _ in range(N):
        v = min(_iter_bits(remaining), key=lambda u: (deg[u], u))
        out.append(v)
        remaining &= ~(1 << v)
        for u in _iter_bits(g.adj[v] & remaining):
            deg[u] -= 1
    return out[::-1]


def _greedy_clique(adj: list[int], n: int) -> list[int]:
    P = (1 << n) - 1
    clique = []
    while P:
        v = max(_iter_bits(P), key=lambda u: ((adj[u] & P).bit_count(), -u))
        clique.append(v)
        P &= adj[v]
    return clique


def _iter_bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def max_clique(
    g: ConflictGraph,
    max_nodes: int = DEFAULT_MAX_NODES,
    time_limit: float = DEFAULT_TIME_LIMIT,
    upper_bound: int | None = None,
    bound_source: str = "coloring bound",
    ordering: str = "degree",
) -> SolveResult:
    """Maximum clique by branch-and-bound.

    ``upper_bound``, when given, is a proven bound: the search stops as soon
    as a clique reaches it.  On budget exhaustion the best clique found is
    returned with ``exact=False``.  ``ordering`` is ``"degree"`` (descending
    degree, ties by index) or ``"degeneracy"`` (smallest-last).
    """
    start = time.monotonic()
    N = len(g)
    if N == 0:
        return SolveResult(0, [], 0, "empty graph", True)
    order = _vertex_order(g, ordering)
    h = g.relabeled(order)
    adj = h.adj

    best = _greedy_clique(adj, N)
    root_verts, root_colors = _color_sort((1 << N) - 1, adj)
    root_bound = root_colors[-1]
    cap = root_bound if upper_bound is None else min(root_bound, upper_bound)
    nodes = 0

    def expand(R: list[int], P: int):
        nonlocal best, nodes
        nodes += 1
        if nodes > max_nodes or (nodes & 1023 == 0 and time.monotonic() - start > time_limit):
            raise _Budget
        verts, colors = _color_sort(P, adj)
        for k in range(len(verts) - 1, -1, -1):
            if len(R) + colors[k] <= len(best):
                return
            v = verts[k]
            R.append(v)
            newP = P & adj[v]
            if newP:
                expand(R, newP)
            elif len(R) > len(best):
                best = R.copy()
            R.pop()
            if len(best) >= cap:
                return
            P &= ~(1 << v)

    exact = True
    if len(best) < cap:
        try:
            expand([], (1 << N) - 1)
        except _Budget:
            exact = False
    witness = [h.vertices[v] for v in best]
    size = len(best)
    if exact:
        source = bound_source if (size == cap and upper_bound is not None and cap == upper_bound) \
            else "exhausted search"
        proof = size
    else:
        source, proof = bound_source, cap
    return SolveResult(size, witness, proof, source, exact, nodes, time.monotonic() - start)


def max_clique_with_coloring_bound(g: ConflictGraph, coloring, **budget) -> SolveResult:
    """Like :func:`max_clique`, seeded with the number of color classes as the bound.

    ``coloring`` is a list of vertex lists or a :class:`CosetPartition`.
    """
    blocks = coloring.classes if hasattr(coloring, "classes") else coloring
    index = {v: i for i, v in enumerate(g.vertices)}
    covered = set()
    for block in blocks:
        idx = [index[tuple(v)] for v in block]
        for u, v in itertools.combinations(idx, 2):
            if g.has_edge(u, v):
                raise ValueError(
                    f"coloring class is not independent: {g.vertices[u]} ~ {g.vertices[v]}"
                )
        covered.update(idx)
    if len(covered) != len(g):
        raise ValueError("coloring does not cover every vertex")
    return max_clique(g, upper_bound=len(blocks), bound_source="coloring classes", **budget)


def independence_number(g: ConflictGraph, **budget) -> SolveResult:
    return max_clique(g.complement(), **budget)


def solve_T(n: int, D: DistanceSet, **budget) -> SolveResult:
    return max_clique(build_conflict_graph(n, D), **budget)


@lru_cache(maxsize=None)
def _path_optimum(s: int) -> tuple[tuple[int, ...], ...]:
    res = solve_T(s, PATH)
    if not res.exact:
        raise RuntimeError(f"T({s}, {{1}}) search did not finish")
    return tuple(sorted(res.clique_witness))


def path_family(s: int) -> PermFamily:
    """A maximum pairwise colliding family on ``[s]`` found by exact search."""
    if s > 6:
        raise ValueError(f"exact colliding families only computed for s <= 6, got {s}")
    return PermFamily.from_rows(list(_path_optimum(s)), s, PATH, "solver")


def binomial_middle(n: int) -> int:
    return math.comb(n, n // 2)
