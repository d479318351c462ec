"""Exact symbolic workbench for Hom-Lie and Hom-left-symmetric conformal algebras."""

from .polyring import Poly, var, const, ZERO, ONE, format_poly, solve_square_system
from .module import (FreeConformalModule, ModuleElement, TensorElement, Endomorphism,
                     ConformalBilinearForm, check_form_skew, check_form_nondegenerate)
from .report import Check, Report
from .engine import StructureTable, HomConformalAlgebra, check_axioms, default_axioms
from .constructions import (FiniteHomAlgebra, current_algebra, sub_adjacent, check_symplectic,
                            lsc_from_symplectic, check_parakahler, RepresentationData,
                            MatchedPairData, semidirect_lie, semidirect_lsc, check_lsc_module,
                            dual_module, bicrossed_lie, bicrossed_lsc, check_matched_pair_lie,
                            check_matched_pair_lsc, check_dual_pair_equivalence)
from .bialgebra import (CoalgebraData, RTensor, check_coalgebra, dual_algebra_from_coalgebra,
                        dual_coalgebra_from_algebra, check_cocycle, check_bialgebra,
                        coboundary_cobracket, compute_double_bracket, compute_J_delta,
                        check_coboundary_obstruction)
from .surface import parse_poly, parse_definition, print_definition

__version__ = "0.1.0"
