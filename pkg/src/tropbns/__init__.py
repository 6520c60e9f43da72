"""Exact tropical bounds on BNS invariants of finitely presented groups."""

from .alexander import (CharVarietyDescription, ComputedComponent, DirectComponent, UnsupportedInput,
                        alexander_matrix, alexander_norm, alexander_polynomial, component_analysis,
                        is_symmetric, specialize_torsion)
from .laurent import LaurentPoly, laurent_gcd
from .polyhedra import Cone, Fan, Polytope, alexander_ball, convex_hull, newton_polytope, normal_fan, skeleton
from .presentation import (FreeWord, GroupPresentation, abelianize, fox_derivative, parse_presentation,
                           smith_normal_form)
from .seifert import OrbifoldData, SeifertData, brieskorn, orbifold_cv, seifert_presentation, seifert_sigma
from .sigma import (SphereBound, brown_rank1, brown_rank2, facet_bound, pencil_bound, sigma_bound_from_trop,
                    verify_inclusion)
from .tropical import TropSet, exp_tangent_cone, trop_char_variety, trop_hypersurface, trop_translated_tori

__version__ = "0.1.0"
