"""Exact symbolic engine for the Z3-graded quantum superspace R_q(2|1).

Coefficients live in Q(q) with q a primitive cube root of unity; algebras
are presented by oriented rewrite systems with unique normal forms.
"""

from .scalar import CycScalar, Q, ONE, ZERO, q_pow
from .algebra import Generator, Poly, RewriteRule, RuleSet
from .expr import parse_poly, render_poly
from .presets import PRESET_NAMES, get_preset
from .tensor import TensorPoly

__all__ = [
    "CycScalar",
    "Q",
    "ONE",
    "ZERO",
    "q_pow",
    "Generator",
    "Poly",
    "RewriteRule",
    "RuleSet",
    "TensorPoly",
    "parse_poly",
    "render_poly",
    "get_preset",
    "PRESET_NAMES",
]

__version__ = "0.1.0"
