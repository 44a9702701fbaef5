"""Tools for one-dimensional (and small planar) piecewise-smooth discontinuous maps.

The package computes symbolic itineraries, rotation numbers and their
rational locking, detects periodic orbits, checks the Farey/maximin
structure of symbolic sequences, and runs one- and two-parameter
bifurcation scans (period adding and period incrementing), plus three
applied model families (relay control, integrate-and-fire, planar relay).
"""

from .farey import Rational, FareyParents, farey_sequence, mediant, is_neighbor_pair, farey_parents
from .symbolic import (
    SymbolicWord,
    compare_words,
    shift,
    minimal_rotation,
    maximal_rotation,
    eta_number,
    enumerate_wpq,
    is_pq_ordered,
    is_maximin,
    is_minimax,
    farey_word,
)
from .pwmap import Branch, LinearBranch, PiecewiseMap1D, OrbitRecord, AperiodicReport
from .circlemap import CircleReduction, LiftedCircleMap, RotationResult, reduce_to_circle, rotation_number, lock_rational
from .bifurcation import ParamCurve, ScanRecord, IncrementingGeometry, scan_curve, staircase, incrementing_case, scan_plane, codim2_reduce

__all__ = [
    "Rational",
    "FareyParents",
    "farey_sequence",
    "mediant",
    "is_neighbor_pair",
    "farey_parents",
    "SymbolicWord",
    "compare_words",
    "shift",
    "minimal_rotation",
    "maximal_rotation",
    "eta_number",
    "enumerate_wpq",
    "is_pq_ordered",
    "is_maximin",
    "is_minimax",
    "farey_word",
    "Branch",
    "LinearBranch",
    "PiecewiseMap1D",
    "OrbitRecord",
    "AperiodicReport",
    "CircleReduction",
    "LiftedCircleMap",
    "RotationResult",
    "reduce_to_circle",
    "rotation_number",
    "lock_rational",
    "ParamCurve",
    "ScanRecord",
    "IncrementingGeometry",
    "scan_curve",
    "staircase",
    "incrementing_case",
    "scan_plane",
    "codim2_reduce",
]

__version__ = "0.1.0"
