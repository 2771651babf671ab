"""Permutations as 1-based sequences, the G-different relation and family checks.

Families are stored as an ``(N, n)`` integer array in lexicographic row
order.  Exhaustive verification never loops over pairs: for every position
``p`` and value ``v`` it keeps a bitset of the members holding ``v`` at ``p``,
ORs together the bitsets of the values at a distance in ``D``, and checks
that each member's OR covers every other member.
"""
from __future__ import annotations

import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .distance_sets import DistanceSet, parse

STAR = "*"

ALL_PAIRS_VALID = "AllPairsValid"
FAILURE_WITNESS = "FailureWitness"
SAMPLED = "Sampled"


def check_permutation(x: Sequence[int]) -> tuple[int, ...]:
    x = tuple(int(v) for v in x)
    if sorted(x) != list(range(1, len(x) + 1)):
        raise ValueError(f"not a permutation of [{len(x)}]: {x}")
    return x


def g_different(x: Sequence[int], y: Sequence[int], D: DistanceSet) -> bool:
    """True iff some position holds values whose difference lies in ``D``."""
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    return any(a != b and D.contains(abs(a - b)) for a, b in zip(x, y))


@dataclass
class PermFamily:
    """A set of permutations of ``[n]`` claimed pairwise ``claimed_D``-different.

    ``members`` is ``None`` for counting-only families (too large to hold).
    """

    n: int
    members: np.ndarray | None
    claimed_D: DistanceSet | None
    provenance: str
    claimed_size: int

    @classmethod
    def from_rows(cls, rows, n, claimed_D, provenance) -> PermFamily:
        arr = np.asarray(rows, dtype=np.int16)
        if arr.size == 0:
            arr = arr.reshape(0, n)
        if arr.ndim != 2 or arr.shape[1] != n:
            raise ValueError(f"expected rows of length {n}, got shape {arr.shape}")
        if len(arr):
            expect = np.arange(1, n + 1)
            if not (np.sort(arr, axis=1) == expect).all():
                bad = next(r for r in arr if not (np.sort(r) == expect).all())
                raise ValueError(f"row is not a permutation of [{n}]: {tuple(bad)}")
            arr = np.unique(arr, axis=0)  # sorts lexicographically
        return cls(n, arr, claimed_D, provenance, len(arr))

    @classmethod
    def counted(cls, n, size, claimed_D, provenance) -> PermFamily:
        return cls(n, None, claimed_D, provenance, int(size))

    @property
    def materialized(self) -> bool:
        return self.members is not None

    def __len__(self):
        return self.claimed_size

    def __iter__(self):
        self._require_members()
        for row in self.members.tolist():
            yield tuple(row)

    def __contains__(self, x):
        self._require_members()
        return bool((self.members == np.asarray(x)).all(axis=1).any())

    def as_tuples(self) -> list[tuple[int, ...]]:
        return list(self)

    def _require_members(self):
        if self.members is None:
            raise ValueError(
                f"family {self.provenance!r} is counting-only (size {self.claimed_size})"
            )


@dataclass
class VerifyReport:
    status: str
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    pairs_checked: int = 0

    @property
    def ok(self) -> bool:
        return self.status != FAILURE_WITNESS


# -- bitset kernel --------------------------------------------------------

def _bitset(flags: np.ndarray) -> int:
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


def _reach_bitsets(members: np.ndarray, mask: np.ndarray) -> list[list[int]]:
    """``reach[p][v]``: members whose entry at ``p`` differs from ``v`` by a masked distance."""
    n = members.shape[1]
    values = np.arange(1, n + 1)
    dist = np.abs(values[:, None] - values[None, :])
    reach = []
    for p in range(n):
        col = members[:, p]
        holders = [_bitset(col == v) for v in values]
        row = [0]
        for vi in range(n):
            acc = 0
            for wi in np.flatnonzero(mask[dist[vi]]):
                acc |= holders[wi]
            row.append(acc)
        reach.append(row)
    return reach


def _first_uncovered(members, mask, lo, hi):
    """First ``(i, j)`` with ``lo <= i < hi``, ``j > i`` and no masked difference."""
    reach = _reach_bitsets(members, mask)
    n_rows = len(members)
    rows = members[lo:hi].tolist()
    for off, row in enumerate(rows):
        i = lo + off
        acc = 0
        for p, v in enumerate(row):
            acc |= reach[p][v]
        missing = ~acc >> (i + 1)
        missing &= (1 << (n_rows - i - 1)) - 1
        if missing:
            return i, i + 1 + ((missing & -missing).bit_length() - 1)
    return None


def _first_conflict(members, mask):
    """First ``(i, j)``, ``j > i``, with SOME masked difference (for certificates)."""
    reach = _reach_bitsets(members, mask)
    for i, row in enumerate(members.tolist()):
        acc = 0
        for p, v in enumerate(row):
            acc |= reach[p][v]
        acc >>= i + 1
        if acc:
            return i, i + 1 + ((acc & -acc).bit_length() - 1)
    return None


def _sample_pairs(n_rows, k, seed):
    rng = np.random.default_rng(seed)
    i = rng.integers(0, n_rows, size=k)
    j = (i + rng.integers(1, n_rows, size=k)) % n_rows
    return i, j


def _pair(members, i, j):
    a, b = sorted((int(i), int(j)))
    return tuple(members[a].tolist()), tuple(members[b].tolist())


def verify_family(
    F: PermFamily,
    D: DistanceSet | None = None,
    mode: str = "exhaustive",
    samples: int = 100_000,
    seed: int = 0,
    workers: int = 1,
) -> VerifyReport:
    """Check that members of ``F`` are pairwise ``D``-different.

    ``mode="exhaustive"`` covers all unordered pairs and reports the first
    failing pair in lexicographic order; ``mode="sampled"`` checks ``samples``
    seeded random pairs.
    """
    F._require_members()
    D = D if D is not None else F.claimed_D
    if D is None:
        raise ValueError("no distance set given and the family claims none")
    members = F.members
    n_rows = len(members)
    if n_rows < 2:
        return VerifyReport(ALL_PAIRS_VALID, None, 0)
    mask = D.mask(F.n)

    if mode == "sampled":
        i, j = _sample_pairs(n_rows, samples, seed)
        ok = mask[np.abs(members[i].astype(np.int32) - members[j])].any(axis=1)
        bad = np.flatnonzero(~ok)
        if len(bad):
            b = bad[0]
            return VerifyReport(FAILURE_WITNESS, _pair(members, i[b], j[b]), int(b) + 1)
        return VerifyReport(SAMPLED, None, samples)
    if mode != "exhaustive":
        raise ValueError(f"unknown verification mode {mode!r}")

    total = n_rows * (n_rows - 1) // 2
    if workers <= 1:
        hit = _first_uncovered(members, mask, 0, n_rows)
    else:
        bounds = np.linspace(0, n_rows, workers + 1).astype(int)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_first_uncovered, members, mask, int(lo), int(hi))
                for lo, hi in zip(bounds[:-1], bounds[1:])
                if hi > lo
            ]
            hits = [f.result() for f in futures]
        hit = min((h for h in hits if h), default=None)
    if hit:
        return VerifyReport(FAILURE_WITNESS, _pair(members, *hit), total)
    return VerifyReport(ALL_PAIRS_VALID, None, total)


def strong_certificate_violation(F, D, mode="exhaustive", samples=100_000, seed=0):
    """A pair with some position whose difference is outside ``{0} | D``, or None."""
    F._require_members()
    members = F.members
    if len(members) < 2:
        return None
    outside = ~D.mask(F.n)
    outside[0] = False
    if mode == "sampled":
        i, j = _sample_pairs(len(members), samples, seed)
        bad = outside[np.abs(members[i].astype(np.int32) - members[j])].any(axis=1)
        hits = np.flatnonzero(bad)
        return _pair(members, i[hits[0]], j[hits[0]]) if len(hits) else None
    hit = _first_conflict(members, outside)
    return _pair(members, *hit) if hit else None


def verify_strong_certificate(F, D, mode="exhaustive", samples=100_000, seed=0) -> bool:
    """Every pair, at every position, differs by 0 or by an element of ``D``.

    Such a family is an independent set in the conflict graph of the
    complement of ``D``.
    """
    return strong_certificate_violation(F, D, mode, samples, seed) is None


# -- elementary transforms --------------------------------------------------

def cyclic_shift(x: Sequence, k: int) -> tuple:
    """Rotate the sequence right by ``k``: ``(3,1,2)`` shifted by 1 is ``(2,3,1)``."""
    n = len(x)
    if n == 0:
        return tuple(x)
    k %= n
    return tuple(x[n - k:]) + tuple(x[: n - k])


def sigma_swap(x: Sequence[int], i: int, j: int) -> tuple[int, ...]:
    """Exchange the positions of the values ``i`` and ``j``."""
    n = len(x)
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise ValueError(f"swap values must be distinct elements of [{n}], got {i}, {j}")
    return tuple(j if v == i else i if v == j else v for v in x)


def psi_insert(pi: Sequence[int], j: int, n: int) -> tuple[int, ...]:
    """Put ``n`` first and ``n-1`` at position ``j`` around the entries of ``pi``."""
    if len(pi) != n - 2:
        raise ValueError(f"pi must have length {n - 2}, got {len(pi)}")
    if not 2 <= j <= n:
        raise ValueError(f"insert position must lie in 2..{n}, got {j}")
    pi = tuple(pi)
    return (n,) + pi[: j - 2] + (n - 1,) + pi[j - 2:]


def inversion_count(seq: Sequence) -> int:
    return sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])


def is_even_permutation(x: Sequence) -> bool:
    """Parity of ``x`` after ranking its symbols, with :data:`STAR` ranked last."""
    if len(set(x)) != len(x):
        raise ValueError(f"repeated symbols in {tuple(x)}")
    order = sorted(x, key=lambda s: (s == STAR, 0 if s == STAR else s))
    rank = {s: r for r, s in enumerate(order)}
    return inversion_count([rank[s] for s in x]) % 2 == 0


# -- family file format ---------------------------------------------------

def write_family(F: PermFamily, dest) -> None:
    """Header ``n=.. D=.. provenance=.. size=..`` then one permutation per line."""
    F._require_members()
    if any(c.isspace() for c in F.provenance):
        raise ValueError(f"provenance label may not contain whitespace: {F.provenance!r}")
    d_spec = F.claimed_D.spec if F.claimed_D is not None else "none"
    if any(c.isspace() for c in d_spec):
        raise ValueError(f"distance spec may not contain whitespace: {d_spec!r}")
    lines = [f"n={F.n} D={d_spec} provenance={F.provenance} size={F.claimed_size}"]
    lines.extend(" ".join(map(str, row)) for row in F.members.tolist())
    text = "\n".join(lines) + "\n"
    if isinstance(dest, (str, os.PathLike)):
        with open(dest, "w") as fh:
            fh.write(text)
    else:
        dest.write(text)


def read_family(src) -> PermFamily:
    if isinstance(src, (str, os.PathLike)):
        with open(src) as fh:
            text = fh.read()
    else:
        text = src.read()
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty family file")
    header = dict(tok.split("=", 1) for tok in lines[0].split())
    missing = {"n", "D", "provenance", "size"} - header.keys()
    if missing:
        raise ValueError(f"family header lacks {sorted(missing)}")
    n = int(header["n"])
    rows = [[int(t) for t in line.split()] for line in lines[1:] if line.strip()]
    D = None if header["D"] == "none" else parse(header["D"])
    F = PermFamily.from_rows(rows, n, D, header["provenance"])
    if F.claimed_size != int(header["size"]):
        raise ValueError(
            f"header claims size {header['size']} but file holds {F.claimed_size} distinct rows"
        )
    return F


def family_to_text(F: PermFamily) -> str:
    buf = io.StringIO()
    write_family(F, buf)
    return buf.getvalue()

