"""Exact computer algebra and arbitrary-precision numerics for stationary
descendent invariants of the sphere, computed along two independent routes:
residue formulas over a formal wave-function quartet, and the logarithm of a
determinantal (matrix-model) expansion in scaled time variables.
"""

from .epslaurent import EpsLaurent
from .zseries import LogSeries, WindowError, ZSeries
from .multiseries import MultiSeries
from .waves import (
    RMatrix,
    WaveExpansion,
    normalized_quartet,
    r_matrix,
    s1_series,
    solve_formal_wave,
    stirling_g_oracle,
    wave_residual,
    wave_shift,
)
from .invariants import (
    InvariantRecord,
    free_energy,
    invariant_by_genus,
    n_point_invariant,
    one_point_invariant,
)
from .miwa import MiwaPolynomial, symmetric_to_miwa
from .zmodel import (
    ZModelExpansion,
    characteristic_det_check,
    stabilization_check,
    zmodel_entry,
    zmodel_expansion,
)
from .charlier import (
    CharlierPolynomial,
    asymptotic_match_check,
    bessel_j,
    brute_force_expectation,
    char_poly_expectation,
    charlier_orthogonality_check,
    charlier_poly,
    charlier_scaling_limit_check,
    gamma_real,
    numeric_f_g,
)
from .selftest import CheckResult, run_selftest

__version__ = "1.0.0"

__all__ = [
    "EpsLaurent", "ZSeries", "LogSeries", "WindowError", "MultiSeries",
    "WaveExpansion", "RMatrix", "solve_formal_wave", "wave_shift",
    "wave_residual", "stirling_g_oracle", "normalized_quartet", "r_matrix",
    "s1_series", "InvariantRecord", "one_point_invariant", "n_point_invariant",
    "invariant_by_genus", "free_energy", "MiwaPolynomial", "symmetric_to_miwa",
    "ZModelExpansion", "zmodel_entry", "zmodel_expansion",
    "stabilization_check", "characteristic_det_check", "CharlierPolynomial",
    "charlier_poly", "charlier_orthogonality_check", "gamma_real", "bessel_j",
    "numeric_f_g", "asymptotic_match_check", "charlier_scaling_limit_check",
    "char_poly_expectation", "brute_force_expectation", "CheckResult",
    "run_selftest",
]
