"""Exact ordinal analysis of PET induction, with desk-scale finite checks."""
from .ordinal import OMEGA, OMEGA_4, ONE, ZERO, Ordinal, add, cmp, mul, omega_pow, parse, render
from .poly import IntPolynomial, parse_poly, render_poly
from .pet import (
    PolySystem,
    WeightMatrix,
    pet_reduce,
    descent_tree,
    weight_matrix,
    wm_cmp,
    wm_ordinal,
)
from .bounds import BoundClass, BoundConfig, polywm_bound

__version__ = "0.1.0"
