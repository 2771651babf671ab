"""Explicit families of pairwise G-different permutations.

Every builder returns a :class:`PermFamily` on ``[n]`` whose size matches the
closed form in :mod:`gdperm.bounds`; the families are independently checkable
with :func:`gdperm.perm_core.verify_family`.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from . import bounds
from .distance_sets import EVENS, PATH, ComplementOf, FiniteSet, ValuationSet
from .perm_core import STAR, PermFamily, cyclic_shift, is_even_permutation, psi_insert

DEFAULT_CAP = 2_000_000


class CapExceeded(ValueError):
    """Materializing the family would exceed the configured member cap."""


def _check_cap(size, cap, what):
    if size > cap:
        raise CapExceeded(
            f"{what} has {size} members, above the materialization cap {cap}; "
            "use materialize=False for a counting-only family"
        )


# -- cyclic-shift recursion for the complement of {1} ---------------------

@lru_cache(maxsize=None)
def _shift_closed_core(n: int) -> tuple[tuple[int, ...], ...]:
    """``A_n`` for odd ``n``: members start with ``n``; their shifts give ``B_n``."""
    if n == 1:
        return ((1,),)
    prev = _shift_closed_family(n - 2)
    core = []
    for j in range(2, n + 1):
        for pi in prev:
            tau = psi_insert(pi, j, n)
            # position of n-2 must precede the inserted n-1
            if tau.index(n - 2) + 1 < j:
                core.append(tau)
    return tuple(core)


@lru_cache(maxsize=None)
def _shift_closed_family(n: int) -> tuple[tuple[int, ...], ...]:
    core = _shift_closed_core(n)
    return tuple(cyclic_shift(x, k) for x in core for k in range(n))


def construct_theorem1(n: int, materialize: bool = True, cap: int = DEFAULT_CAP) -> PermFamily:
    """Family of ``n!/2^floor(n/2)`` permutations pairwise differing somewhere by >= 2.

    Odd ``n`` uses the cyclic-shift recursion; even ``n`` drops the leading
    ``n+1`` from the core of the next odd size.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    D = ComplementOf(PATH)
    size = bounds.formula_theorem1(n)
    if not materialize:
        return PermFamily.counted(n, size, D, "theorem1")
    _check_cap(size, cap, f"theorem1(n={n})")
    if n % 2:
        rows = _shift_closed_family(n)
    else:
        rows = [x[1:] for x in _shift_closed_core(n + 1)]
    return PermFamily.from_rows(rows, n, D, "theorem1")


@dataclass
class CosetPartition:
    """Orbits of the commuting value swaps (1 2), (3 4), ... acting on ``S_n``."""

    n: int
    classes: list[list[tuple[int, ...]]]

    @property
    def block_size(self) -> int:
        return 2 ** (self.n // 2)

    def __len__(self):
        return len(self.classes)


COSET_CAP = 8


def coset_partition(n: int, max_n: int = COSET_CAP) -> CosetPartition:
    """Partition of all permutations into swap orbits; an optimal coloring.

    Two permutations share an orbit iff they agree after identifying each
    paired value ``2i-1, 2i``.  Blocks are independent in the conflict graph
    of the complement of ``{1}``.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > max_n:
        raise CapExceeded(f"coset partition of S_{n} not materialized above n={max_n}")
    k = 2 * (n // 2)
    blocks: dict[tuple, list] = {}
    for x in itertools.permutations(range(1, n + 1)):
        key = tuple((v + 1) // 2 if v <= k else -v for v in x)
        blocks.setdefault(key, []).append(x)
    return CosetPartition(n, [blocks[key] for key in sorted(blocks, key=lambda c: blocks[c][0])])


# -- complement of {q} ------------------------------------------------------

def _residue_classes(n: int, q: int) -> list[list[int]]:
    """``[[v in [n] : v = k mod q] for k in 0..q-1]``, each ascending."""
    return [[v for v in range(1, n + 1) if v % q == k] for k in range(q)]


def _multiset_permutations(counts: list[int]):
    """Sequences with ``counts[k]`` copies of ``k``, in lexicographic order."""
    n = sum(counts)
    counts = list(counts)
    seq = []

    def rec():
        if len(seq) == n:
            yield tuple(seq)
            return
        for k, c in enumerate(counts):
            if c:
                counts[k] -= 1
                seq.append(k)
                yield from rec()
                seq.pop()
                counts[k] += 1

    yield from rec()


def construct_corollary(
    n: int, q: int, materialize: bool = True, cap: int = DEFAULT_CAP
) -> PermFamily:
    """Largest family for the complement of ``{q}``.

    For every assignment of residue classes to positions, the numbers of
    class ``k`` are placed on that class's positions through a scaled copy of
    :func:`construct_theorem1`; the per-class families combine by product.
    """
    if n < 1 or q < 1:
        raise ValueError(f"need n, q >= 1, got n={n}, q={q}")
    D = ComplementOf(FiniteSet((q,)))
    size = bounds.formula_corollary(n, q)
    label = f"corollary-q{q}"
    if not materialize:
        return PermFamily.counted(n, size, D, label)
    _check_cap(size, cap, f"corollary(n={n}, q={q})")
    classes = _residue_classes(n, q)
    factors = [
        [tuple(cls[v - 1] for v in x) for x in construct_theorem1(len(cls))] if cls else [()]
        for cls in classes
    ]
    rows = []
    for pattern in _multiset_permutations([len(c) for c in classes]):
        slots = [[i for i, k in enumerate(pattern) if k == cls] for cls in range(q)]
        for combo in itertools.product(*factors):
            row = [0] * n
            for cls, block in enumerate(combo):
                for pos, v in zip(slots[cls], block):
                    row[pos] = v
            rows.append(row)
    return PermFamily.from_rows(rows, n, D, label)


# -- odd / even differences ---------------------------------------------------

def construct_even_positions(n: int) -> PermFamily:
    """One permutation per placement of the even values; odd differences only fail
    when both members put the evens on the same positions."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    evens = list(range(2, n + 1, 2))
    odds = list(range(1, n + 1, 2))
    rows = []
    for chosen in itertools.combinations(range(n), len(evens)):
        ev, od = iter(evens), iter(odds)
        chosen = set(chosen)
        rows.append([next(ev) if i in chosen else next(od) for i in range(n)])
    return PermFamily.from_rows(rows, n, ComplementOf(EVENS), "even-positions")


def hookup(x, y) -> tuple:
    """Replace the star in ``x`` by ``y[0]`` and append the rest of ``y``.

    An empty ``y`` simply drops the star.
    """
    if STAR not in x:
        raise ValueError(f"no star symbol in {x}")
    if not y:
        return tuple(s for s in x if s != STAR)
    return tuple(y[0] if s == STAR else s for s in x) + tuple(y[1:])


def construct_hookup(n: int) -> PermFamily:
    """Even permutations of odds-plus-star, each hooked up to every ordering of the evens."""
    if n < 1:
        raise ValueError(f"hookup needs n >= 1, got {n}")
    A = list(range(1, n + 1, 2)) + [STAR]
    B = list(range(2, n + 1, 2))
    xs = [x for x in itertools.permutations(A) if is_even_permutation(x)]
    rows = [hookup(x, y) for x in xs for y in itertools.permutations(B)]
    return PermFamily.from_rows(rows, n, EVENS, "hookup")


# -- 2-adic valuation sets ------------------------------------------------

def valuation_exponent(n: int, q: int) -> int:
    """``t`` with ``n = 2**t`` and ``q | t``; raises for inadmissible ``n``."""
    t = n.bit_length() - 1
    if n < 2 or n != 1 << t or t % q:
        raise ValueError(
            f"n={n} is not admissible for q={q}: n must be (2**q)**k for some k >= 1"
        )
    return t


def valuation_groups(n: int, p: int, q: int, complement: bool = False) -> list[list[int]]:
    """Values of ``{0..n-1}`` grouped by their bits at exponents ``s`` with ``s mod q >= p``.

    Two values in one group first differ at an exponent ``s`` with
    ``s mod q < p``, and that exponent is the valuation of their difference.
    With ``complement=True`` the roles of the two exponent classes swap, so
    in-group differences fall in the complementary set.  Groups are returned
    in increasing order of the shared key bits.
    """
    t = valuation_exponent(n, q)
    key_mask = sum(1 << s for s in range(t) if (s % q >= p) != complement)
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(v & key_mask, []).append(v)
    return [groups[k] for k in sorted(groups)]


def construct_valuation(
    n: int,
    p: int = 1,
    q: int = 2,
    complement: bool = False,
    materialize: bool = True,
    cap: int = DEFAULT_CAP,
) -> PermFamily:
    """All within-group rearrangements, each group on its own block of positions.

    The family is pairwise different for the valuation set (or, with
    ``complement=True``, for its complement), and any two members differ at
    every position by 0 or by an element of that set.  Works on ``{0..n-1}``
    internally and emits the shift to ``[n]``.
    """
    D = ValuationSet(p, q)
    if complement:
        D = ComplementOf(D)
    groups = valuation_groups(n, p, q, complement)
    size = math.factorial(len(groups[0])) ** len(groups)
    label = f"valuation-{p}-{q}" + ("-complement" if complement else "")
    if not materialize:
        return PermFamily.counted(n, size, D, label)
    _check_cap(size, cap, f"valuation(n={n}, p={p}, q={q})")
    local = np.array(list(itertools.permutations(range(len(groups[0])))), dtype=np.intp)
    blocks = [np.asarray(grp, dtype=np.int16)[local] for grp in groups]
    # cartesian product of the per-group blocks
    count = len(local)
    idx = np.indices((count,) * len(groups)).reshape(len(groups), -1).T
    rows = np.concatenate([blocks[k][idx[:, k]] for k in range(len(groups))], axis=1)
    return PermFamily.from_rows(rows + 1, n, D, label)


# -- residue concatenation for {q} ------------------------------------------

def construct_residue_concat(
    n: int, q: int, base: Callable[[int], PermFamily] | None = None
) -> PermFamily:
    """Family for ``{q}`` built from ``{1}``-families on each residue class.

    Positions are split into consecutive blocks, one per residue class
    ``0, 1, ..., q-1``; block ``k`` carries an order-isomorphic copy of
    ``base(|class k|)`` on the numbers congruent to ``k``.
    """
    if n < 1 or q < 1:
        raise ValueError(f"need n, q >= 1, got n={n}, q={q}")
    if base is None:
        from .solver import path_family

        base = path_family
    classes = [c for c in _residue_classes(n, q) if c]
    factors = []
    for cls in classes:
        fam = base(len(cls))
        factors.append([tuple(cls[v - 1] for v in x) for x in fam])
    rows = [sum(combo, ()) for combo in itertools.product(*factors)]
    return PermFamily.from_rows(rows, n, FiniteSet((q,)), f"residue-concat-q{q}")

