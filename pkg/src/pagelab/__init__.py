"""Numerical curvature checks for diagonal cohomogeneity-one metrics on S³ × I."""

__version__ = "0.1.0"

from .jets import Jet2, finite_difference_oracle, jet_arith, jet_elem
from .expr import eval_expr, parse_expression
from .frames import CoframeConvention, calibrate_convention, make_convention
from .metrics import (
    DiagonalMetric,
    PageConstants,
    custom_metric,
    flat_metric,
    fubini_study_metric,
    page_metric_r,
    page_metric_x,
    round_sphere_metric,
    solve_page_constant,
)
from .curvature import (
    connection_coefficients,
    page_k01,
    ricci_scalar_decompose,
    riemann_frame,
    sectional,
)
from .invariants import (
    bolt_geodesy_check,
    char_numbers,
    einstein_report,
    inequality_predicates,
    k_range_scan,
    sign_change_scan,
)
