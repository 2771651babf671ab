import math
from fractions import Fraction

import gmpy2
import pytest

from gdperm import bounds
from gdperm.bounds import (
    certificate_upper_bound,
    chromatic_power_bound,
    formula_binomial_middle,
    formula_corollary,
    formula_theorem1,
    hookup_bounds,
    split_strength,
    valuation_bounds,
)
from gdperm.capacity import QuotientGraph
from gdperm.constructions import construct_hookup, construct_valuation, coset_partition
from gdperm.distance_sets import E_SET, EVENS, PATH, ComplementOf, FiniteSet, ResidueSet, ValuationSet
from gdperm.perm_core import PermFamily

NOT1 = ComplementOf(PATH)


def test_theorem1_formula():
    assert formula_theorem1(1) == 1
    assert formula_theorem1(5) == 30
    assert formula_theorem1(10) == 3628800 // 32 == 113400


def test_corollary_formula():
    assert formula_corollary(5, 2) == 30
    assert formula_corollary(3, 5) == 6
    for n in range(1, 21):
        assert formula_corollary(n, 1) == formula_theorem1(n)


@pytest.mark.parametrize("n", range(1, 25))
@pytest.mark.parametrize("q", range(1, 7))
def test_corollary_formula_equals_counting_form(n, q):
    assert formula_corollary(n, q) == bounds.formula_corollary_product(n, q)


def test_binomial_middle():
    assert formula_binomial_middle(4) == 6
    assert formula_binomial_middle(1) == 1
    assert formula_binomial_middle(10) == 252


def test_hookup_bounds_examples():
    r4 = hookup_bounds(4)
    assert (r4.lower.value, r4.upper.value) == (6, 6) and r4.exact
    r2 = hookup_bounds(2)
    assert (r2.lower.value, r2.upper.value) == (1, 1)
    r6 = hookup_bounds(6)
    assert (r6.lower.value, r6.upper.value) == (72, 90)
    assert len(construct_hookup(6)) == 72


@pytest.mark.parametrize("n", range(2, 31))
def test_hookup_lower_expressions_agree(n):
    expr = bounds.hookup_lower_expression(n)
    size = Fraction(math.factorial(-(-n // 2) + 1) * math.factorial(n // 2), 2)
    assert expr == size
    assert expr.denominator == 1
    rep = hookup_bounds(n)
    assert rep.lower.value <= rep.upper.value


def test_valuation_bounds_examples():
    rE, rC = valuation_bounds(16, 1, 2)
    assert rE.lower.value == 331776
    assert rE.upper.value == math.factorial(16) // 331776
    rE4, rC4 = valuation_bounds(4, 1, 2)
    assert (rE4.lower.value, rE4.upper.value) == (4, 6)
    for n in (4, 16, 64):
        rE, rC = valuation_bounds(n, 1, 2)
        assert (rE.lower.value, rE.upper.value) == (rC.lower.value, rC.upper.value)
    with pytest.raises(ValueError):
        valuation_bounds(32, 1, 2)


def admissible(limit_exp):
    for q in (2, 3, 4):
        for p in range(1, q):
            for t in range(q, limit_exp + 1, q):
                yield 1 << t, p, q


@pytest.mark.parametrize("n,p,q", list(admissible(20)), ids=lambda v: str(v))
def test_valuation_sandwich_up_to_2_pow_20(n, p, q):
    rE, rC = valuation_bounds(n, p, q)
    assert rE.lower.value <= rE.upper.value
    assert rC.lower.value <= rC.upper.value
    assert gmpy2.mpz(rE.lower.value) * rC.lower.value <= gmpy2.fac(n)


def test_log_ratio_approaches_density():
    """log2 of the lower bound over log2 n! should sit within 0.05 of alpha at n = 2**12."""
    n = 2**12
    rE, _ = valuation_bounds(n, 1, 2)
    ratio = bounds.log2_int(rE.lower.value) / bounds.log2_int(bounds.factorial(n))
    assert abs(ratio - 0.5) <= 0.05, f"ratio {ratio:.4f}"


def test_chromatic_power_bound():
    C5 = QuotientGraph.cycle(5)
    assert bounds.exact_chromatic_number(5, C5.edges) == 3
    for n in range(1, 6):
        assert chromatic_power_bound(C5, n) == 3**n
        assert chromatic_power_bound(QuotientGraph.complete(2), n) == 2**n
        assert chromatic_power_bound(QuotientGraph.edgeless(3), n) == 1
    assert bounds.exact_chromatic_number(4, QuotientGraph.complete(4).edges) == 4
    with pytest.raises(ValueError):
        bounds.exact_chromatic_number(17, [])


def test_certificate_upper_bound_examples():
    F16 = construct_valuation(16, 1, 2)
    assert certificate_upper_bound(F16, ComplementOf(E_SET)) == math.factorial(16) // 331776
    block = coset_partition(4).classes[0]
    C = PermFamily.from_rows(block, 4, PATH, "coset")
    assert certificate_upper_bound(C, NOT1) == 6
    single = PermFamily.from_rows([(2, 1, 3)], 3, PATH, "single")
    assert certificate_upper_bound(single, EVENS) == 6


def test_certificate_rejects_non_independent():
    F = PermFamily.from_rows([(1, 2, 3), (3, 1, 2)], 3, NOT1, "bad")
    with pytest.raises(ValueError, match="not an independent set"):
        certificate_upper_bound(F, NOT1)


@pytest.mark.parametrize("n,p,q", [(4, 1, 2), (16, 1, 2), (8, 1, 3), (8, 2, 3), (16, 1, 4)])
def test_certificate_sandwich(n, p, q):
    V = ValuationSet(p, q)
    F = construct_valuation(n, p, q)
    upper_comp = certificate_upper_bound(F, V.complement())
    rE, rC = valuation_bounds(n, p, q)
    assert upper_comp == rC.upper.value
    assert upper_comp >= rC.lower.value


def test_split_strength_examples():
    D = ComplementOf(EVENS)
    est = split_strength(4, bounds.bound_report(4, D), hookup_bounds(4))
    assert est.lo == pytest.approx(0.25 * math.log2(1.5), abs=1e-12)
    assert est.hi == pytest.approx(est.lo, abs=1e-12)
    lo, hi = bounds.prop1_reference_interval()
    assert bounds.PROP1_LOWER_CONSTANT < lo and hi == 0.5
    # T * T-bar = n! gives an interval containing 0
    rep = bounds.BoundReport(3, "x", bounds.Bound(2, "t"), bounds.Bound(2, "t"))
    co = bounds.BoundReport(3, "y", bounds.Bound(3, "t"), bounds.Bound(3, "t"))
    est = split_strength(3, rep, co)
    assert est.lo <= 0 <= est.hi and est.label == "finite-n estimate"


def test_kms_reference_bounds():
    lo, hi = bounds.kms_reference_bounds(8)
    assert lo == pytest.approx(10.0) and hi == 256


@pytest.mark.parametrize("n", range(1, 13))
def test_bound_reports_consistent(n):
    for D in (PATH, NOT1, EVENS, ComplementOf(EVENS), ResidueSet(2, (1,)), FiniteSet((3,)),
              ComplementOf(FiniteSet((3,))), E_SET, ComplementOf(E_SET)):
        rep = bounds.bound_report(n, D)
        assert 1 <= rep.lower.value <= rep.upper.value <= math.factorial(n)
        assert rep.log2_lower <= rep.log2_upper + 1e-12


def test_log2_int_for_huge_values():
    x = bounds.factorial(5000)
    assert bounds.log2_int(x) == pytest.approx(math.lgamma(5001) / math.log(2), rel=1e-12)
