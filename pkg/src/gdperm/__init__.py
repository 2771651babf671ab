"""Families of pairwise graph-different permutations for distance graphs on the naturals."""
from .capacity import QuotientGraph, capacity_profile, lift_to_permutations, project_to_residues
from .constructions import (
    construct_corollary,
    construct_even_positions,
    construct_hookup,
    construct_residue_concat,
    construct_theorem1,
    construct_valuation,
    coset_partition,
)
from .distance_sets import (
    CofiniteSet,
    ComplementOf,
    DistanceSet,
    FiniteSet,
    ResidueSet,
    ValuationSet,
    ex_valuation,
    induced_graph,
)
from .perm_core import PermFamily, g_different, verify_family, verify_strong_certificate
from .solver import build_conflict_graph, max_clique

__version__ = "0.1.0"
