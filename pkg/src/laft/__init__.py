"""Local Fourier transforms of formal connections, computed on exact
Puiseux series."""

from .classes import (
    CanonicalClass,
    ConnectionObject,
    classes_equal,
    display_rep,
    galois_twist,
    has_horizontal_sections,
    in_slope_subcategory,
    is_irreducible,
    is_zero_class,
    normalize,
    slope,
)
from .compose import comp_inverse, compose, lagrange_check, pow_rat
from .errors import DomainError, ExprSyntaxError, LaftError
from .exprio import format_series, parse_series, to_json
from .field import QQ, ComplexField, RationalField, make_field
from .fourier import (
    TransformKind,
    fourier_0_inf,
    fourier_inf_0,
    fourier_inf_inf,
    solve_coordinate,
    transform_connection,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .series import INF, PuiseuxSeries, Var

__version__ = "0.1.0"
