"""Exact closed forms and finite-n bound reports for ``T(n, D)``.

All counts are Python integers; logarithms are base 2 and are taken from the
exact integers at report time.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2

from .distance_sets import (
    CofiniteSet,
    ComplementOf,
    DistanceSet,
    FiniteSet,
    ResidueSet,
    ValuationSet,
)

# literature reference: exponent of the pentagon capacity, (1/2) log2 5
PENTAGON_RATE = 0.5 * math.log2(5)
# published asymptotic interval for the split strength of {1}
PROP1_LOWER_CONSTANT = 0.33


@lru_cache(maxsize=64)
def _fac(n: int):
    return gmpy2.fac(n)


def factorial(n: int) -> int:
    return int(_fac(n))


def log2_int(x: int) -> float:
    """``log2`` of a positive integer of any size."""
    if x <= 0:
        raise ValueError(f"log2 of non-positive value {x}")
    shift = max(x.bit_length() - 64, 0)
    return math.log2(x >> shift) + shift


def formula_theorem1(n: int) -> int:
    """``n! / 2**floor(n/2)``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return factorial(n) >> (n // 2)


def formula_corollary(n: int, q: int) -> int:
    """Maximum family size for the complement of ``{q}``, with ``n = a*q + m``."""
    if n < 1 or q < 1:
        raise ValueError(f"need n, q >= 1, got n={n}, q={q}")
    a, m = divmod(n, q)
    return factorial(n) >> ((a // 2) * (q - m) + ((a + 1) // 2) * m)


def multinomial(counts) -> int:
    out, total = 1, 0
    for c in counts:
        total += c
        out *= math.comb(total, c)
    return out


def formula_corollary_product(n: int, q: int) -> int:
    """Same value, computed as (number of residue patterns) x (per-class optima)."""
    a, m = divmod(n, q)
    classes = [a] * (q - m) + [a + 1] * m
    out = multinomial(classes)
    for s in classes:
        out *= formula_theorem1(s) if s else 1
    return out


def formula_binomial_middle(n: int) -> int:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return math.comb(n, n // 2)


def hookup_size(n: int) -> int:
    """``(ceil(n/2)+1)! * floor(n/2)! / 2``."""
    return factorial(-(-n // 2) + 1) * factorial(n // 2) // 2


def hookup_lower_expression(n: int) -> Fraction:
    """The sandwich's lower side as written: ``n! (ceil(n/2)+1) / (2 C(n, floor(n/2)))``."""
    return Fraction(factorial(n) * (-(-n // 2) + 1), 2 * math.comb(n, n // 2))


def kms_reference_bounds(n: int) -> tuple[float, int]:
    """Literature bounds ``10**((n-4)/4) <= T(n, {1}) <= 2**n``."""
    return 10 ** ((n - 4) / 4), 2**n


def prop1_reference_interval() -> tuple[float, float]:
    """Asymptotic split strength interval implied by the literature bounds for ``{1}``.

    ``(1/4) log2 10 - 1/2`` from below, ``1/2`` from above.
    """
    return math.log2(10) / 4 - 0.5, 0.5


@dataclass
class Bound:
    value: int
    source: str


@dataclass
class BoundReport:
    n: int
    D: str
    lower: Bound
    upper: Bound

    def __post_init__(self):
        if gmpy2.mpz(self.lower.value) > gmpy2.mpz(self.upper.value):
            raise ValueError(
                f"inconsistent bounds for n={self.n}, D={self.D}: "
                f"{self.lower.value} > {self.upper.value}"
            )

    @property
    def exact(self) -> bool:
        return self.lower.value == self.upper.value

    @property
    def log2_lower(self) -> float:
        return log2_int(self.lower.value)

    @property
    def log2_upper(self) -> float:
        return log2_int(self.upper.value)


def hookup_bounds(n: int) -> BoundReport:
    """Sandwich for ``T(n, 2N)``: hookup family below, swap-orbit count above."""
    if n < 1:
        raise ValueError(f"hookup bounds need n >= 1, got {n}")
    lower = hookup_lower_expression(n)
    if lower.denominator != 1 or lower != hookup_size(n):
        raise ArithmeticError(f"hookup lower expressions disagree at n={n}")
    return BoundReport(
        n,
        "residue:2:0",
        Bound(int(lower), "construction:hookup"),
        Bound(formula_theorem1(n), "formula:swap-orbits"),
    )


def valuation_sizes(n: int, p: int, q: int) -> tuple[int, int]:
    """``(n**alpha, n**(1-alpha))`` for admissible ``n``."""
    from .constructions import valuation_exponent

    t = valuation_exponent(n, q)
    return 1 << (t * p // q), 1 << (t * (q - p) // q)


def valuation_bounds(n: int, p: int = 1, q: int = 2) -> tuple[BoundReport, BoundReport]:
    """Bounds for the valuation set with density ``p/q`` and for its complement."""
    small, large = valuation_sizes(n, p, q)
    # GMP arithmetic: these reach tens of millions of bits at n = 2**20
    lo_E = _fac(small) ** large
    lo_comp = _fac(large) ** small
    nf = _fac(n)
    spec = ValuationSet(p, q).spec
    rep_E = BoundReport(
        n, spec, Bound(int(lo_E), "construction:valuation"), Bound(int(nf // lo_comp), "certificate")
    )
    rep_comp = BoundReport(
        n,
        f"complement({spec})",
        Bound(int(lo_comp), "construction:valuation"),
        Bound(int(nf // lo_E), "certificate"),
    )
    return rep_E, rep_comp


def exact_chromatic_number(r: int, edges) -> int:
    """Chromatic number of a small graph on ``0..r-1`` by backtracking."""
    if r > 16:
        raise ValueError(f"exact coloring limited to 16 vertices, got {r}")
    nbrs = [set() for _ in range(r)]
    for a, b in edges:
        if a == b:
            raise ValueError(f"loop at vertex {a}")
        nbrs[a].add(b)
        nbrs[b].add(a)
    order = sorted(range(r), key=lambda v: -len(nbrs[v]))
    if r == 0:
        return 0

    def colorable(k):
        color = {}

        def rec(i):
            if i == r:
                return True
            v = order[i]
            used = {color[u] for u in nbrs[v] if u in color}
            for c in range(min(k, max(color.values(), default=-1) + 2)):
                if c not in used:
                    color[v] = c
                    if rec(i + 1):
                        return True
                    del color[v]
            return False

        return rec(0)

    k = 1
    while not colorable(k):
        k += 1
    return k


def chromatic_power_bound(M, n: int) -> int:
    """``chi(M)**n``; the residue coloring lifts to the infinite graph."""
    return exact_chromatic_number(M.r, M.edges) ** n


def certificate_upper_bound(C, D: DistanceSet, mode="exhaustive", samples=100_000, seed=0) -> int:
    """``n!/|C|`` for a family ``C`` that is independent in the conflict graph of ``D``.

    The conflict graph is vertex transitive, so its fractional chromatic
    number is ``n!/alpha`` and bounds the clique number from above.
    """
    from .perm_core import strong_certificate_violation

    bad = strong_certificate_violation(C, D.complement(), mode, samples, seed)
    if bad is not None:
        raise ValueError(
            f"not an independent set for {D.spec}: {bad[0]} and {bad[1]} "
            "differ by a forbidden distance"
        )
    return factorial(C.n) // len(C)


def _finite_singleton(D):
    if isinstance(D, FiniteSet) and len(D.values) == 1:
        return D.values[0]
    return None


def _cofinite_singleton(D):
    if isinstance(D, CofiniteSet) and len(D.excluded) == 1:
        return D.excluded[0]
    if isinstance(D, ComplementOf):
        return _finite_singleton(D.inner)
    return None


def _residue2(D):
    """0 for the evens, 1 for the odds, else None."""
    if isinstance(D, ResidueSet) and D.modulus == 2 and len(D.allowed) == 1:
        return D.allowed[0]
    if isinstance(D, ComplementOf) and isinstance(D.inner, ResidueSet):
        inner = _residue2(D.inner)
        return None if inner is None else 1 - inner
    return None


def _valuation(D):
    if isinstance(D, ValuationSet):
        return D, False
    if isinstance(D, ComplementOf) and isinstance(D.inner, ValuationSet):
        return D.inner, True
    return None


def bound_report(n: int, D: DistanceSet, exact_values: dict | None = None) -> BoundReport:
    """Best known finite-n bounds for the recognized families of distance sets.

    ``exact_values`` maps ``n`` to a solver-certified ``T(n, D)`` and, when
    present, pins both sides.
    """
    spec = D.spec
    nf = factorial(n)
    if exact_values and n in exact_values:
        v = exact_values[n]
        return BoundReport(n, spec, Bound(v, "solver"), Bound(v, "solver"))
    q = _cofinite_singleton(D)
    if q is not None:
        v = formula_corollary(n, q)
        return BoundReport(n, spec, Bound(v, "construction:corollary"), Bound(v, "formula:coloring"))
    res = _residue2(D)
    if res == 1:
        v = formula_binomial_middle(n)
        return BoundReport(n, spec, Bound(v, "construction:even-positions"), Bound(v, "formula"))
    if res == 0 and n >= 2:
        rep = hookup_bounds(n)
        rep.D = spec
        return rep
    q = _finite_singleton(D)
    if q is not None:
        lo, hi = kms_reference_bounds(n)
        lo = max(1, math.ceil(lo))
        return BoundReport(n, spec, Bound(lo, "literature:KMS"), Bound(min(hi, nf), "literature:KMS"))
    val = _valuation(D)
    if val is not None:
        vs, comp = val
        try:
            rep_E, rep_comp = valuation_bounds(n, vs.p, vs.q)
        except ValueError:
            pass
        else:
            rep = rep_comp if comp else rep_E
            rep.D = spec
            return rep
    return BoundReport(n, spec, Bound(1, "trivial"), Bound(nf, "trivial"))


@dataclass
class SplitStrengthEstimate:
    """Finite-n interval for ``(1/n) log2(T(n,D) T(n,co-D) / n!)``."""

    n: int
    D: str
    lo: float
    hi: float
    label: str = "finite-n estimate"


def split_strength(n: int, report: BoundReport, co_report: BoundReport) -> SplitStrengthEstimate:
    if report.n != n or co_report.n != n:
        raise ValueError("bound reports must be for the same n")
    log_nf = log2_int(factorial(n))
    lo = (log2_int(report.lower.value * co_report.lower.value) - log_nf) / n
    hi = (log2_int(report.upper.value * co_report.upper.value) - log_nf) / n
    return SplitStrengthEstimate(n, report.D, lo, hi)
