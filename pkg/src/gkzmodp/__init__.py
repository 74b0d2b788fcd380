"""Mod-p solution polynomials of A-hypergeometric systems and Hasse
invariants of exponential sum families over finite fields."""

from .errors import BudgetExceeded, Undecided
from .gfpoly import GfPoly
from .hasse import HasseResult, hasse_affine, hasse_toric
from .lattice import (ASet, GoodnessCatalog, GoodnessReport, RelationLattice,
                      WeightReport, classify_goodness, default_weight_cap,
                      enumerate_box, nonconfluence_form, relation_kernel_basis,
                      semigroup_member, sigma_tau, weight_and_minimals)
from .oracle import (CheckReport, HypersurfaceSpec, affine_count_check,
                     cone_hypothesis_witness, count_affine_zeros,
                     katz_coefficient_check, legendre_check, naive_crosscheck)
from .pweight import (DigitDecomposition, GammaSequence, MSpec, digits,
                      enumerate_U_M, gamma_sequences, pweight_of, wp_min)
from .series0 import (PiRational, SeriesCongruenceReport, SupportProfile,
                      TruncatedSeries, series_coefficient, support_profile,
                      truncated_G, verify_series_congruence)
from .solutions import (BoxOperator, box_residual, build_F, build_G,
                        euler_residual, f_from_minimals, relation_test_set,
                        solution_basis)

__version__ = "0.1.0"

__all__ = [
    "ASet", "BoxOperator", "BudgetExceeded", "CheckReport",
    "DigitDecomposition", "GammaSequence", "GfPoly", "GoodnessCatalog",
    "GoodnessReport", "HasseResult", "HypersurfaceSpec", "MSpec",
    "PiRational", "RelationLattice", "SeriesCongruenceReport",
    "SupportProfile", "TruncatedSeries", "Undecided", "WeightReport",
    "affine_count_check", "box_residual", "build_F", "build_G",
    "classify_goodness", "cone_hypothesis_witness", "count_affine_zeros",
    "default_weight_cap", "digits", "enumerate_U_M", "enumerate_box",
    "euler_residual", "f_from_minimals", "gamma_sequences", "hasse_affine",
    "hasse_toric", "katz_coefficient_check", "legendre_check",
    "naive_crosscheck", "nonconfluence_form", "pweight_of",
    "relation_kernel_basis", "relation_test_set", "semigroup_member",
    "series_coefficient", "sigma_tau", "solution_basis", "support_profile",
    "truncated_G", "verify_series_congruence", "weight_and_minimals",
    "wp_min",
]
