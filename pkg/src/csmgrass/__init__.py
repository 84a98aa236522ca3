"""Exact CSM classes of Schubert cells and varieties in Grassmannians.

The coefficients of the Chern-Schwartz-MacPherson class of a Schubert cell
in the Schubert basis are integers indexed by pairs of Young diagrams; this
package computes them by several independent exact routes, cross-verifies
the routes against each other and against structural identities, and scans
finite diagram families for the positivity conjecture.
"""

from .csm import (
    GammaTable,
    cell_poly_h,
    chern_grass_onerow,
    csm_h,
    csm_rat,
    csm_variety,
    gamma_coefficient,
    gamma_det,
    gamma_det_table,
    gamma_genfun,
    gamma_genfun_table,
    gamma_lgv,
    gamma_onerow,
    gamma_table,
    lgv_per_ell,
)
from .partition import Partition, rectangle, subdiagrams
from .poly import PolyRing, SparsePoly, det, e_elementary, geom_inverse, h_complete
from .schubert import (
    DUAL_SUBBUNDLE,
    QUOTIENT,
    ChowClass,
    cap_special,
    cap_total,
    chow_add,
    chow_scale,
    omega_normalize,
    pushforward_monomial,
    pushforward_poly,
)
from .verify import (
    RectUniverse,
    VerificationReport,
    check_adjunction,
    check_adjunction_cols,
    check_adjunction_rows,
    check_cross_methods,
    check_duality,
    check_euler,
    check_positivity,
    check_pushforward_antisymmetry,
    check_structural,
)

__version__ = "0.1.0"

__all__ = [
    "ChowClass",
    "DUAL_SUBBUNDLE",
    "GammaTable",
    "Partition",
    "PolyRing",
    "QUOTIENT",
    "RectUniverse",
    "SparsePoly",
    "VerificationReport",
    "cap_special",
    "cap_total",
    "cell_poly_h",
    "chern_grass_onerow",
    "check_adjunction",
    "check_adjunction_cols",
    "check_adjunction_rows",
    "check_cross_methods",
    "check_duality",
    "check_euler",
    "check_positivity",
    "check_pushforward_antisymmetry",
    "check_structural",
    "chow_add",
    "chow_scale",
    "csm_h",
    "csm_rat",
    "csm_variety",
    "det",
    "e_elementary",
    "gamma_coefficient",
    "gamma_det",
    "gamma_det_table",
    "gamma_genfun",
    "gamma_genfun_table",
    "gamma_lgv",
    "gamma_onerow",
    "gamma_table",
    "geom_inverse",
    "h_complete",
    "lgv_per_ell",
    "omega_normalize",
    "pushforward_monomial",
    "pushforward_poly",
    "rectangle",
    "subdiagrams",
]
