"""Approximation constants of rational points on cubic hypersurfaces.

Exact-arithmetic tools for the classification of alpha(P, L), explicit
curves of best approximation, and empirical verification by bounded
height enumeration.
"""

from .forms import FormParseError, HomForm, SingularChange, parse_form
from .binforms import factor_binary_form, quadratic_discriminant
from .localfield import (Place, QuadExt, LocalSquareVerdict, ZeroInput,
                         hilbert_symbol, is_square_local,
                         quadric_has_local_point)
from .points import ProjPoint, delta_exponent, dist, height
from .curves import (ApproxSequence, BranchDatum, BranchNotInKv, ParamCurve,
                     PointNotOnCurve, branch_data, curve_alpha,
                     sequence_on_curve)
from .hypersurface import (CubicHypersurface, PointNotOnX, ReducibleForm,
                           SingularAtP, TangentConeReport, TangentSection,
                           WorseThanNode, lines_through_point,
                           tangent_cone_analysis, tangent_section)
from .classify import Certificate, ClassificationResult, classify
from .constructions import (EmptyLocalQuadric, NoQuadraticPointFound,
                            PointOnLine, ProjectionCurveResult,
                            ResidualConicResult, WrongRegime,
                            projection_curve, psi_phi_identity_check,
                            residual_conic)
from .search import (AlphaEstimate, LiouvilleReport, NoApproximants,
                     PointStream, empirical_alpha, enumerate_points,
                     liouville_check, naive_enumerate)

__version__ = "0.1.0"

__all__ = [
    "HomForm", "parse_form", "FormParseError", "SingularChange",
    "factor_binary_form", "quadratic_discriminant",
    "Place", "QuadExt", "LocalSquareVerdict", "ZeroInput",
    "is_square_local", "hilbert_symbol", "quadric_has_local_point",
    "ProjPoint", "height", "dist", "delta_exponent",
    "ParamCurve", "BranchDatum", "ApproxSequence", "branch_data",
    "curve_alpha", "sequence_on_curve", "PointNotOnCurve", "BranchNotInKv",
    "CubicHypersurface", "TangentSection", "TangentConeReport",
    "tangent_section", "lines_through_point", "tangent_cone_analysis",
    "PointNotOnX", "SingularAtP", "ReducibleForm", "WorseThanNode",
    "classify", "ClassificationResult", "Certificate",
    "residual_conic", "projection_curve", "psi_phi_identity_check",
    "ResidualConicResult", "ProjectionCurveResult",
    "PointOnLine", "EmptyLocalQuadric", "NoQuadraticPointFound",
    "WrongRegime",
    "enumerate_points", "naive_enumerate", "empirical_alpha",
    "liouville_check", "PointStream", "AlphaEstimate", "LiouvilleReport",
    "NoApproximants",
]
