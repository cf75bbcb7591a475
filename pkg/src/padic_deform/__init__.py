"""Exact local-field arithmetic, Tate's algorithm, quadratic twists and
characters, and the equal-characteristic-to-mixed-characteristic deformation
pipeline that matches every term of the Kramer-Tunnell identity."""

__version__ = "0.1.0"

from .curves import WeierstrassEq, covariants, point_count_reduced, tate_algorithm
from .deform import build_ctx, run_match, sweep
from .errors import PadicDeformError
from .gf import GF, GFq, GFqElem
from .localfield import EqualCharField, MixedCharField, TripleIso, laurent_field, witt_field
from .quadratic import QuadChar, TwistDatum, artin_schreier_datum, sqrt_d_datum, twist_equation
from .rootnum import kt_parity, root_number

__all__ = [
    "GF",
    "GFq",
    "GFqElem",
    "EqualCharField",
    "MixedCharField",
    "TripleIso",
    "laurent_field",
    "witt_field",
    "WeierstrassEq",
    "covariants",
    "tate_algorithm",
    "point_count_reduced",
    "QuadChar",
    "TwistDatum",
    "sqrt_d_datum",
    "artin_schreier_datum",
    "twist_equation",
    "root_number",
    "kt_parity",
    "build_ctx",
    "run_match",
    "sweep",
    "PadicDeformError",
    "__version__",
]
