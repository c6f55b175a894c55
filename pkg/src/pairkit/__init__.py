"""pairkit: exact pair-theoretic invariant computations for unipotent group
actions on affine varieties, in characteristic 0 and p."""

from .actions import (CoAction, GmCoAction, LaurentPoly, gm_weight_components,
                      is_semi_invariant, validate_action, validate_gm_action)
from .errors import (AlgebraError, InternalCheckError, PairkitError, ParseError,
                     UnsupportedMethodError, ValidationError)
from .fields import QQ, FieldSpec
from .gbasis import (GroebnerBasis, Ideal, eliminate, groebner, ideal_dimension,
                     normal_form, saturate)
from .groups import (Endomorphism, GroupLaw, compose_endomorphisms, is_surjective,
                     kernel_ideal, validate_endomorphism, validate_group_law)
from .invariants import (InvariantBasis, NagataSpec, cross_section_ideal,
                         dixmier_generators, factor_through_kernel,
                         mukai_predicate, nagata_build, nagata_oracle_invariants,
                         relations_presentation, verify_generators)
from .linalg import ExactMatrix, jacobian_rank
from .orders import GREVLEX, LEX, BlockOrder
from .pairs import (AlphaPair, build_fppf_cover, check_alpha_pair,
                    check_pair_identity, is_affine_stable, kernel_acts_trivially,
                    pair_from_problem, pedestal_ideal_from_pairs,
                    transcendence_degree)
from .poly import Polynomial, PolyRing, RationalFunction, substitute
from .problem import (ProblemFile, parse_polynomial, parse_problem, parse_rational,
                      render, render_problem)

__version__ = "0.1.0"
