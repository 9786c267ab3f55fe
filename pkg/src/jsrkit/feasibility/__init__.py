"""LP core and membership oracles."""

from .lp import LpProblem, LpResult, lp_solve
from .membership import (
    DEFAULT_DELTA,
    DEFAULT_FACETS,
    MembershipVerdict,
    ellipse_in_hull,
    point_in_hull,
    point_in_monotone_hull,
)

__all__ = [
    "LpProblem", "LpResult", "lp_solve", "MembershipVerdict", "point_in_hull",
    "ellipse_in_hull", "point_in_monotone_hull", "DEFAULT_DELTA", "DEFAULT_FACETS",
]
