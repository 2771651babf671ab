import itertools
import math

import pytest

from conftest import brute_pairwise, brute_strong
from gdperm import bounds
from gdperm.constructions import (
    CapExceeded,
    construct_corollary,
    construct_even_positions,
    construct_hookup,
    construct_residue_concat,
    construct_theorem1,
    construct_valuation,
    coset_partition,
    hookup,
    valuation_groups,
)
from gdperm.distance_sets import E_SET, EVENS, PATH, ComplementOf, FiniteSet, ValuationSet
from gdperm.perm_core import STAR, cyclic_shift, verify_family, verify_strong_certificate

NOT1 = ComplementOf(PATH)


def test_theorem1_small_cases():
    assert construct_theorem1(1).as_tuples() == [(1,)]
    assert construct_theorem1(2).as_tuples() == [(1, 2)]
    assert set(construct_theorem1(3)) == {(3, 1, 2), (1, 2, 3), (2, 3, 1)}
    assert len(construct_theorem1(4)) == 6
    with pytest.raises(ValueError):
        construct_theorem1(0)


@pytest.mark.parametrize("n", range(1, 10))
def test_theorem1_size(n):
    assert len(construct_theorem1(n)) == math.factorial(n) // 2 ** (n // 2)


@pytest.mark.parametrize("n", range(1, 9))
def test_theorem1_verified_exhaustively(n):
    assert verify_family(construct_theorem1(n), NOT1).ok


@pytest.mark.parametrize("n", range(1, 7))
def test_theorem1_against_pair_loop(n):
    assert brute_pairwise(construct_theorem1(n).as_tuples(), NOT1) is None


@pytest.mark.parametrize("n", [1, 3, 5, 7, 9])
def test_theorem1_odd_closed_under_shifts(n):
    F = construct_theorem1(n)
    members = set(F)
    assert all(cyclic_shift(x, 1) in members for x in members)
    leaders = [x for x in members if x[0] == n]
    assert len(leaders) * n == len(members)


def test_theorem1_counting_mode():
    F = construct_theorem1(30, materialize=False)
    assert F.claimed_size == math.factorial(30) // 2**15 and not F.materialized
    with pytest.raises(CapExceeded):
        construct_theorem1(13)


def test_coset_partition_examples():
    assert len(coset_partition(2)) == 1 and len(coset_partition(2).classes[0]) == 2
    assert [len(b) for b in coset_partition(3).classes] == [2, 2, 2]
    assert [len(b) for b in coset_partition(4).classes] == [4] * 6
    with pytest.raises(CapExceeded):
        coset_partition(9)


@pytest.mark.parametrize("n", range(1, 8))
def test_coset_blocks_are_color_classes(n):
    part = coset_partition(n)
    seen = set()
    for block in part.classes:
        assert len(block) == 2 ** (n // 2)
        assert brute_strong(block, PATH) is None  # positionwise differences in {0, 1}
        assert not seen & set(block)
        seen |= set(block)
    assert len(seen) == math.factorial(n)
    assert len(part) == math.factorial(n) // 2 ** (n // 2)


def test_theorem1_meets_each_block_once():
    for n in range(1, 8):
        members = set(construct_theorem1(n))
        for block in coset_partition(n).classes:
            assert len(members & set(block)) == 1


def test_corollary_examples():
    assert len(construct_corollary(5, 2)) == 30
    F = construct_corollary(3, 5)
    assert set(F) == set(itertools.permutations((1, 2, 3)))
    assert len(construct_corollary(4, 1)) == len(construct_theorem1(4)) == 6


@pytest.mark.parametrize("n,q", [(n, q) for n in range(1, 9) for q in range(1, 5)])
def test_corollary_size_and_property(n, q):
    F = construct_corollary(n, q)
    assert len(F) == bounds.formula_corollary(n, q)
    D = ComplementOf(FiniteSet((q,)))
    if len(F) <= 5000:
        assert verify_family(F, D).ok
    else:
        assert verify_family(F, D, mode="sampled", samples=200_000, seed=n * 10 + q).ok


def test_corollary_counting_mode_and_cap():
    F = construct_corollary(20, 3, materialize=False)
    assert F.claimed_size == bounds.formula_corollary(20, 3)
    with pytest.raises(CapExceeded):
        construct_corollary(12, 20)


def test_even_positions_examples():
    assert set(construct_even_positions(2)) == {(1, 2), (2, 1)}
    assert len(construct_even_positions(4)) == 6
    assert construct_even_positions(1).as_tuples() == [(1,)]


@pytest.mark.parametrize("n", range(1, 11))
def test_even_positions_property(n):
    F = construct_even_positions(n)
    assert len(F) == math.comb(n, n // 2)
    assert verify_family(F, ComplementOf(EVENS)).ok


def test_hookup_examples():
    assert hookup((3, STAR, 1), (2, 4)) == (3, 2, 1, 4)
    F4 = construct_hookup(4)
    assert len(F4) == 6 and (3, 2, 1, 4) in F4
    assert len(construct_hookup(2)) == 1
    assert construct_hookup(1).as_tuples() == [(1,)]
    assert hookup((1, STAR), ()) == (1,)


@pytest.mark.parametrize("n", range(1, 11))
def test_hookup_property(n):
    F = construct_hookup(n)
    assert len(F) == bounds.hookup_size(n)
    assert verify_family(F, EVENS).ok
    if n <= 6:
        assert brute_pairwise(F.as_tuples(), EVENS) is None


def test_valuation_examples():
    F = construct_valuation(4, 1, 2)
    # members on {0..3}, shifted by one
    want = {(0, 1, 2, 3), (1, 0, 2, 3), (0, 1, 3, 2), (1, 0, 3, 2)}
    assert {tuple(v - 1 for v in x) for x in F} == want
    assert verify_strong_certificate(F, E_SET)
    assert len(construct_valuation(16, 1, 2, materialize=False)) == 331776
    assert valuation_groups(4, 1, 2) == [[0, 1], [2, 3]]
    with pytest.raises(ValueError):
        construct_valuation(8, 1, 2)
    with pytest.raises(ValueError):
        construct_valuation(12, 1, 2)


@pytest.mark.parametrize("n,p,q", [(4, 1, 2), (16, 1, 2), (8, 1, 3), (8, 2, 3), (16, 1, 4), (16, 3, 4), (64, 2, 3)])
def test_valuation_groups_differences(n, p, q):
    V = ValuationSet(p, q)
    for complement in (False, True):
        groups = valuation_groups(n, p, q, complement)
        small, large = bounds.valuation_sizes(n, p, q)
        sizes = (large, small) if complement else (small, large)
        assert [len(g) for g in groups] == [sizes[0]] * sizes[1]
        assert sorted(v for g in groups for v in g) == list(range(n))
        for g in groups:
            for a, b in itertools.combinations(g, 2):
                assert V.contains(b - a) != complement


@pytest.mark.parametrize(
    "n,p,q,complement",
    [(4, 1, 2, False), (4, 1, 2, True), (8, 1, 3, False), (8, 1, 3, True),
     (8, 2, 3, False), (8, 2, 3, True), (16, 1, 4, False), (16, 3, 4, True)],
)
def test_valuation_families_are_strong_certificates(n, p, q, complement):
    F = construct_valuation(n, p, q, complement=complement)
    D = ValuationSet(p, q)
    D = D.complement() if complement else D
    assert verify_strong_certificate(F, D)
    assert verify_family(F, D).ok
    assert brute_strong(F.as_tuples()[:200], D) is None


def test_residue_concat_examples():
    F = construct_residue_concat(4, 2)
    assert len(F) == 4 and verify_family(F, FiniteSet((2,))).ok
    assert len(construct_residue_concat(3, 3)) == 1
    t3 = len(construct_residue_concat(3, 1))
    assert len(construct_residue_concat(6, 2)) == t3**2


@pytest.mark.parametrize("n,q", [(n, q) for n in range(1, 10) for q in (2, 3)] + [(n, 1) for n in range(1, 7)])
def test_residue_concat_property(n, q):
    F = construct_residue_concat(n, q)
    assert verify_family(F, FiniteSet((q,))).ok
    floors = [max(n - m, 0) // q for m in range(q)]
    low = math.prod(len(construct_residue_concat(s, 1)) if s else 1 for s in floors)
    assert len(F) >= low
