"""Ovoid codes, their subfield codes, and exhaustive checks of their parameters."""
from .field import (ExtField, FieldElement, Basis, make_field, absolute_trace, relative_trace,
                    quadratic_character, quadratic_root_test, dual_basis, polynomial_basis)
from .linalg import Mat, rref, rank, kernel_basis, random_invertible
from .geometry import PointSet, ProjPoint, elliptic_quadric, tits_ovoid, is_cap, generator_from_points
from .codes import (LinearCode, WeightDistribution, weight_distribution, min_distance,
                    dual_min_distance_upto, dual_code, apply_monomial)

__version__ = "0.1.0"
