"""Exact computation of twisted exponential sums over finite fields, their
L-polynomials, p-adic and T-adic Newton polygons, and executable checks of
the slope bounds these polygons satisfy."""

from .errors import ASWNError
from .fields import FieldTower, FFElem, build_tower
from .lfun import ChiSpec, LPolynomial, PolyOverFq, euler_oracle, exp_sum, l_polynomial, lfunction, np_of_L
from .padic import CycInt, CycRat
from .polygon import Polygon, SlopeMultiset, hodge_polygon, lower_hull, up_polygon, y_u

__version__ = "0.1.0"

__all__ = [
    "ASWNError",
    "FieldTower",
    "FFElem",
    "build_tower",
    "ChiSpec",
    "LPolynomial",
    "PolyOverFq",
    "euler_oracle",
    "exp_sum",
    "l_polynomial",
    "lfunction",
    "np_of_L",
    "CycInt",
    "CycRat",
    "Polygon",
    "SlopeMultiset",
    "hodge_polygon",
    "lower_hull",
    "up_polygon",
    "y_u",
]
