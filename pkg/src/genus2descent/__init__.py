"""Mordell-Weil ranks of genus-2 jacobians with sqrt(2) multiplication, by
two-isogeny descent in exact arithmetic."""

from .descent import RankResult, run_descent
from .family import CurvePair, GenusTwoCurve, admissible, specialize
from .quadrank import check_l_conditions, decide_rank_over_L, m_search, torsion_over_L

__version__ = "0.1.0"

__all__ = [
    "CurvePair",
    "GenusTwoCurve",
    "RankResult",
    "admissible",
    "check_l_conditions",
    "decide_rank_over_L",
    "m_search",
    "run_descent",
    "specialize",
    "torsion_over_L",
]
