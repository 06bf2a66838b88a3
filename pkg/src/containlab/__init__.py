"""Exact computations on symbolic and ordinary powers of fat-point ideals."""
from __future__ import annotations

__version__ = "0.1.0"

from .coefficients import QQ, Cyclotomic, PrimeField, parse_field
from .configurations import FatPointConfiguration, parse_config
from .containment import ContainmentVerdict, check_containment, resurgence_search
from .groebner import Budget, BudgetExceeded, buchberger
from .ideals import Ideal, ideal_contains, ideal_intersect, ideal_power, point_ideal, symbolic_power
from .polynomials import PolynomialRing

__all__ = [
    "QQ", "Cyclotomic", "PrimeField", "parse_field",
    "FatPointConfiguration", "parse_config",
    "ContainmentVerdict", "check_containment", "resurgence_search",
    "Budget", "BudgetExceeded", "buchberger",
    "Ideal", "ideal_contains", "ideal_intersect", "ideal_power", "point_ideal", "symbolic_power",
    "PolynomialRing",
]
