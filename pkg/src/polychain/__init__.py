"""Computational toolkit for weighted segment chains (polyhedral 1-chains).

Core objects: PolyChain1 (weighted oriented segments, doubling as a
polyhedral flux), Chain0 (signed atomic measure), TransportCost. On top of
these: canonicalization, boundary, mass and cost-weighted mass, path/cycle
flow decomposition, grid pruning and boundary-pair truncation, subadditive
cost envelopes, atomic and grid flat norms, Wasserstein-1, and desk-scale
branched-transport solvers with a certified brute-force oracle.
"""

from .geometry import (
    Chain0,
    GeometryError,
    PolyChain1,
    Segment,
    Tolerance,
    WeightedSegment,
    boundary,
    canonicalize,
    h_mass,
    mass,
    mass0,
    weak_distance_report,
)
from .costs import (
    CostError,
    EnvelopeResult,
    TransportCost,
    affine_cost,
    capped_cost,
    identity_cost,
    la62_alpha,
    make_h_M,
    make_h_N,
    power_cost,
    subadditive_lsc_envelope,
    tabulated_cost,
)

__all__ = [
    "Chain0",
    "CostError",
    "EnvelopeResult",
    "GeometryError",
    "PolyChain1",
    "Segment",
    "Tolerance",
    "TransportCost",
    "WeightedSegment",
    "affine_cost",
    "boundary",
    "canonicalize",
    "capped_cost",
    "h_mass",
    "identity_cost",
    "la62_alpha",
    "make_h_M",
    "make_h_N",
    "mass",
    "mass0",
    "power_cost",
    "subadditive_lsc_envelope",
    "tabulated_cost",
    "weak_distance_report",
]

__version__ = "0.1.0"
