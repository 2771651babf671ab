"""Difference sets ``D`` and the distance graphs they define on the naturals.

A distance set decides membership for every positive integer.  Five kinds
are supported; each round-trips through a short text grammar::

    finite:1,3          {1, 3}
    cofinite:1          every positive integer except 1
    residue:5:1,4       {d : d mod 5 in {1, 4}}
    valuation:1:2       {d : ex(d) mod 2 < 1}   (ex = 2-adic valuation)
    complement(<spec>)  lazy complement of any other spec
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np


def ex_valuation(m: int) -> int:
    """Largest ``s`` with ``2**s`` dividing ``m``."""
    m = int(m)
    if m <= 0:
        raise ValueError(f"2-adic valuation needs a positive integer, got {m}")
    return (m & -m).bit_length() - 1


class DistanceSet:
    """Base class; subclasses implement ``_member`` and ``spec``."""

    def contains(self, d: int) -> bool:
        d = int(d)
        if d < 1:
            raise ValueError(f"differences must be positive integers, got {d}")
        return self._member(d)

    def __contains__(self, d) -> bool:
        return self.contains(d)

    def _member(self, d: int) -> bool:
        raise NotImplementedError

    @property
    def spec(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.spec

    def complement(self) -> DistanceSet:
        return ComplementOf(self)

    def mask(self, n: int) -> np.ndarray:
        """Boolean array ``m`` of length ``n`` with ``m[d] = d in D``; ``m[0]`` is False.

        Differences between elements of ``[n]`` lie in ``0..n-1``, so this is
        all a verification over permutations of ``[n]`` ever needs.
        """
        out = np.zeros(max(int(n), 1), dtype=bool)
        for d in range(1, n):
            out[d] = self._member(d)
        return out

    def members_upto(self, limit: int) -> list[int]:
        return [d for d in range(1, limit + 1) if self._member(d)]


def _positive_sorted(values) -> tuple[int, ...]:
    vals = tuple(sorted({int(v) for v in values}))
    if any(v < 1 for v in vals):
        raise ValueError(f"distance sets hold positive integers only: {vals}")
    return vals


@dataclass(frozen=True)
class FiniteSet(DistanceSet):
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", _positive_sorted(self.values))

    def _member(self, d):
        return d in self.values

    @property
    def spec(self):
        return "finite:" + ",".join(map(str, self.values))


@dataclass(frozen=True)
class CofiniteSet(DistanceSet):
    """All positive integers except ``excluded``."""

    excluded: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "excluded", _positive_sorted(self.excluded))

    def _member(self, d):
        return d not in self.excluded

    @property
    def spec(self):
        return "cofinite:" + ",".join(map(str, self.excluded))


@dataclass(frozen=True)
class ResidueSet(DistanceSet):
    modulus: int
    allowed: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError(f"residue modulus must be >= 2, got {self.modulus}")
        allowed = tuple(sorted({int(a) for a in self.allowed}))
        if any(not 0 <= a < self.modulus for a in allowed):
            raise ValueError(f"residues must lie in 0..{self.modulus - 1}: {allowed}")
        object.__setattr__(self, "allowed", allowed)

    def _member(self, d):
        return d % self.modulus in self.allowed

    @property
    def spec(self):
        return f"residue:{self.modulus}:" + ",".join(map(str, self.allowed))


@dataclass(frozen=True)
class ValuationSet(DistanceSet):
    """``{m : ex(m) mod q in {0, ..., p-1}}``; the density exponent is ``p/q``."""

    p: int
    q: int

    def __post_init__(self):
        if not 1 <= self.p < self.q:
            raise ValueError(f"valuation set needs 1 <= p < q, got p={self.p}, q={self.q}")

    @property
    def alpha(self) -> float:
        return self.p / self.q

    def _member(self, d):
        return ex_valuation(d) % self.q < self.p

    @property
    def spec(self):
        return f"valuation:{self.p}:{self.q}"


@dataclass(frozen=True)
class ComplementOf(DistanceSet):
    inner: DistanceSet

    def _member(self, d):
        return not self.inner._member(d)

    def complement(self):
        return self.inner

    @property
    def spec(self):
        return f"complement({self.inner.spec})"


# common sets used throughout
PATH = FiniteSet((1,))
EVENS = ResidueSet(2, (0,))
ODDS = ResidueSet(2, (1,))
E_SET = ValuationSet(1, 2)


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    return [int(t) for t in text.split(",")]


def parse(text: str) -> DistanceSet:
    """Parse the text grammar back into a :class:`DistanceSet`."""
    s = text.strip()
    m = re.fullmatch(r"complement\((.*)\)", s)
    if m:
        return ComplementOf(parse(m.group(1)))
    try:
        kind, _, rest = s.partition(":")
        if kind == "finite":
            return FiniteSet(_int_list(rest))
        if kind == "cofinite":
            return CofiniteSet(_int_list(rest))
        if kind == "residue":
            r, _, allowed = rest.partition(":")
            return ResidueSet(int(r), _int_list(allowed))
        if kind == "valuation":
            p, q = rest.split(":")
            return ValuationSet(int(p), int(q))
    except ValueError as exc:
        raise ValueError(f"bad distance-set spec {text!r}: {exc}") from None
    raise ValueError(
        f"unknown distance-set spec {text!r}; expected finite:, cofinite:, "
        "residue:, valuation: or complement(...)"
    )


def contains(D: DistanceSet, d: int) -> bool:
    return D.contains(d)


def complement(D: DistanceSet) -> DistanceSet:
    return D.complement()


@dataclass(frozen=True)
class InducedGraph:
    """The distance graph ``G(D)`` restricted to the vertex set ``[n]``."""

    n: int
    adjacency: np.ndarray  # (n+1, n+1) bool, row/column 0 unused

    def adjacent(self, a: int, b: int) -> bool:
        return bool(self.adjacency[a, b])

    def edges(self) -> list[tuple[int, int]]:
        a, b = np.nonzero(np.triu(self.adjacency))
        return [(int(x), int(y)) for x, y in zip(a, b)]


def induced_graph(D: DistanceSet, n: int) -> InducedGraph:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    mask = D.mask(n)
    idx = np.arange(1, n + 1)
    diff = np.abs(idx[:, None] - idx[None, :])
    adj = np.zeros((n + 1, n + 1), dtype=bool)
    adj[1:, 1:] = mask[diff]
    return InducedGraph(n, adj)
