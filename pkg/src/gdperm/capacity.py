"""Residue graphs, sequences of a fixed type, and cliques of co-normal powers.

A residue graph on the naturals joins ``a`` and ``b`` iff their residues mod
``r`` are adjacent in a finite quotient graph ``M``.  Cliques of ``M``-different
sequences whose type matches the residues of ``1..n`` lift to pairwise
G-different permutations, and permutation families project back.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import bounds
from .distance_sets import ResidueSet
from .perm_core import PermFamily
from .solver import (
    DEFAULT_MAX_NODES,
    DEFAULT_TIME_LIMIT,
    SolveResult,
    max_clique,
    sequence_conflict_graph,
)

SEQUENCE_CAP = 50_000


@dataclass(frozen=True)
class QuotientGraph:
    r: int
    edges: frozenset

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"quotient graph needs r >= 1 vertices, got {self.r}")
        norm = set()
        for a, b in self.edges:
            if a == b or not (0 <= a < self.r and 0 <= b < self.r):
                raise ValueError(f"bad edge {(a, b)} for r={self.r}")
            norm.add((min(a, b), max(a, b)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, r, edges) -> QuotientGraph:
        return cls(r, frozenset(tuple(e) for e in edges))

    @classmethod
    def cycle(cls, r) -> QuotientGraph:
        return cls.from_edges(r, [(i, (i + 1) % r) for i in range(r)])

    @classmethod
    def complete(cls, r) -> QuotientGraph:
        return cls.from_edges(r, itertools.combinations(range(r), 2))

    @classmethod
    def edgeless(cls, r) -> QuotientGraph:
        return cls(r, frozenset())

    @classmethod
    def parse(cls, text: str) -> QuotientGraph:
        """``cycle:5``, ``complete:3``, ``edgeless:4`` or ``edges:4:0-1,1-2``."""
        kind, _, rest = text.strip().partition(":")
        try:
            if kind == "cycle":
                return cls.cycle(int(rest))
            if kind == "complete":
                return cls.complete(int(rest))
            if kind == "edgeless":
                return cls.edgeless(int(rest))
            if kind == "edges":
                r, _, spec = rest.partition(":")
                pairs = [tuple(map(int, e.split("-"))) for e in spec.split(",") if e]
                return cls.from_edges(int(r), pairs)
        except ValueError as exc:
            raise ValueError(f"bad graph spec {text!r}: {exc}") from None
        raise ValueError(f"unknown graph spec {text!r}; use cycle:, complete:, edgeless: or edges:")

    @property
    def spec(self) -> str:
        body = ",".join(f"{a}-{b}" for a, b in sorted(self.edges))
        return f"edges:{self.r}:{body}"

    def matrix(self) -> np.ndarray:
        A = np.zeros((self.r, self.r), dtype=bool)
        for a, b in self.edges:
            A[a, b] = A[b, a] = True
        return A

    def adjacent_numbers(self, a: int, b: int) -> bool:
        x, y = a % self.r, b % self.r
        return (min(x, y), max(x, y)) in self.edges

    def distance_set(self) -> ResidueSet | None:
        """The equivalent difference set when ``M`` is a circulant graph, else None."""
        if self.r < 2:
            return None
        A = self.matrix()
        conn = sorted({(b - a) % self.r for a, b in self.edges} | {(a - b) % self.r for a, b in self.edges})
        for a in range(self.r):
            for b in range(self.r):
                if a != b and A[a, b] != (((b - a) % self.r) in conn):
                    return None
        if not conn:
            return None
        return ResidueSet(self.r, conn)

    def chromatic_number(self) -> int:
        return bounds.exact_chromatic_number(self.r, self.edges)

    def clique_number(self) -> int:
        g = sequence_conflict_graph([(a,) for a in range(self.r)], self.matrix())
        return max_clique(g).clique_size


def blow_up(M: QuotientGraph, weights) -> QuotientGraph:
    """Replace vertex ``a`` by ``weights[a]`` pairwise non-adjacent copies.

    A rational distribution ``P`` on ``M`` becomes uniform on the result.
    """
    if len(weights) != M.r or any(w < 1 for w in weights):
        raise ValueError(f"need one positive weight per vertex, got {weights}")
    copies, start = [], 0
    for w in weights:
        copies.append(range(start, start + w))
        start += w
    edges = [(u, v) for a, b in M.edges for u in copies[a] for v in copies[b]]
    return QuotientGraph.from_edges(start, edges)


@dataclass(frozen=True)
class TypeVector:
    counts: tuple[int, ...]
    n: int

    def distribution(self) -> tuple[float, ...]:
        return tuple(c / self.n for c in self.counts)

    def as_dict(self) -> dict[int, int]:
        return {a: c for a, c in enumerate(self.counts) if c}


def type_of(x, r: int) -> TypeVector:
    if any(not 0 <= s < r for s in x):
        raise ValueError(f"symbols must lie in 0..{r - 1}: {tuple(x)}")
    c = Counter(x)
    return TypeVector(tuple(c.get(a, 0) for a in range(r)), len(x))


def residue_type(n: int, r: int) -> TypeVector:
    """Type realized by the residues of ``1..n`` modulo ``r``."""
    return type_of([m % r for m in range(1, n + 1)], r)


def typed_vertex_set(M: QuotientGraph, n: int, cap: int = SEQUENCE_CAP) -> list[tuple[int, ...]]:
    """All sequences of length ``n`` whose type equals the residue type of ``1..n``."""
    counts = list(residue_type(n, M.r).counts)
    size = bounds.multinomial(counts)
    if size > cap:
        raise ValueError(f"{size} typed sequences exceed the cap {cap}")
    from .constructions import _multiset_permutations

    return list(_multiset_permutations(counts))


def power_vertex_set(M: QuotientGraph, n: int, cap: int = SEQUENCE_CAP):
    size = M.r**n
    if size > cap:
        raise ValueError(f"{size} sequences exceed the cap {cap}")
    return list(itertools.product(range(M.r), repeat=n))


def typed_max_clique(
    M: QuotientGraph,
    n: int,
    typed: bool = True,
    max_nodes: int = DEFAULT_MAX_NODES,
    time_limit: float = DEFAULT_TIME_LIMIT,
) -> SolveResult:
    """Largest set of pairwise ``M``-different sequences (of the residue type, if ``typed``)."""
    seqs = typed_vertex_set(M, n) if typed else power_vertex_set(M, n)
    label = f"{M.spec}^{n}" + (" typed" if typed else "")
    g = sequence_conflict_graph(seqs, M.matrix(), label)
    return max_clique(g, max_nodes=max_nodes, time_limit=time_limit)


def lift_sequence(x, r: int) -> tuple[int, ...]:
    """Replace the occurrences of each residue by its numbers in ``[n]``, increasingly."""
    n = len(x)
    pools = {a: iter(range(a if a else r, n + 1, r)) for a in range(r)}
    try:
        return tuple(next(pools[a]) for a in x)
    except StopIteration:
        raise ValueError(f"sequence {tuple(x)} does not have the residue type of 1..{n}") from None


def lift_to_permutations(clique, M: QuotientGraph, n: int) -> PermFamily:
    want = residue_type(n, M.r)
    for x in clique:
        if len(x) != n or type_of(x, M.r) != want:
            raise ValueError(f"sequence {tuple(x)} is not of the residue type of 1..{n}")
    rows = [lift_sequence(x, M.r) for x in clique]
    return PermFamily.from_rows(rows, n, M.distance_set(), f"lift-r{M.r}")


def project_to_residues(F: PermFamily, M: QuotientGraph) -> list[tuple[int, ...]]:
    return [tuple(v % M.r for v in x) for x in F]


def m_different(x, y, M: QuotientGraph) -> bool:
    return any((min(a, b), max(a, b)) in M.edges for a, b in zip(x, y))


def is_m_clique(seqs, M: QuotientGraph) -> bool:
    return all(m_different(x, y, M) for x, y in itertools.combinations(seqs, 2))


def verify_residue_family(F: PermFamily, M: QuotientGraph) -> bool:
    """Pairwise G-different for the residue graph over ``M``, checked on residues."""
    return is_m_clique(project_to_residues(F, M), M)


@dataclass
class ProfileRow:
    n: int
    omega: int
    exact: bool
    rate: float
    reference: float | None = None


def capacity_profile(M: QuotientGraph, n_list, **budget) -> list[ProfileRow]:
    """Typed clique numbers and their rates ``log2(omega)/n``.

    Rows for the pentagon carry the literature reference ``(1/2) log2 5``;
    no convergence is claimed.
    """
    ref = bounds.PENTAGON_RATE if M == QuotientGraph.cycle(5) else None
    rows = []
    for n in n_list:
        res = typed_max_clique(M, n, **budget)
        rate = math.log2(res.clique_size) / n if res.clique_size else 0.0
        rows.append(ProfileRow(n, res.clique_size, res.exact, rate, ref))
    return rows


def conormal_product_clique_number(graphs, **budget) -> int:
    """Clique number of the co-normal product of small quotient graphs, by search."""
    verts = list(itertools.product(*[range(G.r) for G in graphs]))
    mats = [G.matrix() for G in graphs]
    X = np.array(verts, dtype=np.intp)
    N = len(X)
    adj = np.zeros((N, N), dtype=bool)
    for i, A in enumerate(mats):
        adj |= A[X[:, i][:, None], X[:, i][None, :]]
    from .solver import graph_from_matrix

    res = max_clique(graph_from_matrix(verts, adj), **budget)
    if not res.exact:
        raise RuntimeError("co-normal product clique search hit its budget")
    return res.clique_size
