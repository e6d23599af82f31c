"""Catalog of diagonal cohomogeneity-one metrics on S³ × I.

Each :class:`DiagonalMetric` represents

    g = A(t)² dt² + B(t)² σ₁² + C(t)² σ₂² + D(t)² σ₃²

on an open interval, with the coefficient profiles evaluated as jets so that
curvature can be computed from exact first and second derivatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .frames import DEFAULT_KAPPA, CoframeConvention, make_convention
from .jets import DEFAULT_FD_STEP, Jet2, lift

__all__ = [
    "BOLT",
    "NUT",
    "NONE",
    "DiagonalMetric",
    "PageConstants",
    "MetricValidationError",
    "PAGE_FIBRE_SCALE",
    "page_quartic",
    "page_quartic_derivative",
    "solve_page_constant",
    "page_metric_r",
    "page_metric_x",
    "page_W",
    "page_g",
    "round_sphere_metric",
    "fubini_study_metric",
    "flat_metric",
    "custom_metric",
    "with_fd_derivatives",
]

BOLT = "bolt"
NUT = "nut"
NONE = "none"
ENDPOINT_KINDS = (BOLT, NUT, NONE)

Profile = Callable[[Jet2], tuple[Jet2, Jet2, Jet2, Jet2]]

# Coefficient of σ₃ relative to the printed D = 2/(3+a²).  Under the
# dσ₁ = −κσ₂∧σ₃ convention no κ makes the printed σ₃²-coefficient Einstein;
# halving D does (κ = 2), closes the bolts smoothly (D ≈ proper distance)
# and gives χ = 4.  Checked by frames.calibrate_convention().
PAGE_FIBRE_SCALE = 0.5


class MetricValidationError(ValueError):
    pass


@dataclass(frozen=True)
class DiagonalMetric:
    name: str
    profile: Profile = field(repr=False)
    domain: tuple[float, float]
    convention: CoframeConvention
    endpoints: tuple[str, str] = (NONE, NONE)

    def __post_init__(self):
        t0, t1 = self.domain
        if not t0 < t1:
            raise MetricValidationError(f"empty domain {self.domain!r}")
        for kind in self.endpoints:
            if kind not in ENDPOINT_KINDS:
                raise MetricValidationError(f"unknown endpoint kind {kind!r}")

    @property
    def kappa(self) -> float:
        return self.convention.kappa

    def jets(self, t: float) -> tuple[Jet2, Jet2, Jet2, Jet2]:
        return self.profile(lift(t))

    def values(self, t: float) -> np.ndarray:
        return np.array([j.val for j in self.jets(t)])

    def interior(self, t: float) -> bool:
        return self.domain[0] < t < self.domain[1]

    def check_endpoints(self, offset: float = 1e-6, tol: float = 1e-8) -> dict[str, str]:
        """Infer the endpoint behaviour numerically; raises if it contradicts the declaration.

        A coefficient counts as collapsing when its value at the offset point
        is within ``tol`` of the linear vanishing ``|f'|·offset``.
        """
        found = {}
        for side, t, declared in (
            ("lower", self.domain[0] + offset, self.endpoints[0]),
            ("upper", self.domain[1] - offset, self.endpoints[1]),
        ):
            _, B, C, D = self.jets(t)

            def collapses(j):
                return abs(j.val) <= 2.0 * abs(j.d1) * offset + tol

            if collapses(B) and collapses(C) and collapses(D):
                kind = NUT
            elif collapses(D) and not collapses(B) and abs(B.val - C.val) <= tol:
                kind = BOLT
            else:
                kind = NONE
            if declared != NONE and kind != declared:
                raise MetricValidationError(
                    f"{self.name}: {side} end declared {declared!r} but "
                    f"B, C, D = {B.val:.3e}, {C.val:.3e}, {D.val:.3e} at t = {t!r} look like {kind!r}"
                )
            found[side] = kind
        return found

    def rescaled(self, c: float) -> "DiagonalMetric":
        """The same metric written in ``σ' = σ/c``: structure constant ``cκ``, coefficients ``c·(B, C, D)``."""
        prof = self.profile

        def scaled(t):
            A, B, C, D = prof(t)
            return A, B * c, C * c, D * c

        return DiagonalMetric(self.name, scaled, self.domain, self.convention.rescaled(c), self.endpoints)


# ---------------------------------------------------------------------------
# Page metric
# ---------------------------------------------------------------------------


def page_quartic(a: float) -> float:
    return a**4 + 4 * a**3 - 6 * a**2 + 12 * a - 3


def page_quartic_derivative(a):
    return 4 * a**3 + 12 * a**2 - 12 * a + 12


@dataclass(frozen=True)
class PageConstants:
    a: float
    Ccoef: float
    Dcoef: float
    residual: float
    min_derivative: float  # min of p' over the uniqueness grid on (0, 4]

    @property
    def unique(self) -> bool:
        return self.min_derivative > 0.0


def solve_page_constant(grid_points: int = 10_000) -> PageConstants:
    """Positive root of a⁴ + 4a³ − 6a² + 12a − 3 by bisection on [0, 1]."""
    lo, hi = 0.0, 1.0
    plo = page_quartic(lo)
    # p(0) = -3 < 0 < 8 = p(1)
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        pm = page_quartic(mid)
        if pm == 0.0:
            lo = hi = mid
            break
        if (pm < 0.0) == (plo < 0.0):
            lo, plo = mid, pm
        else:
            hi = mid
    a = lo if abs(page_quartic(lo)) <= abs(page_quartic(hi)) else hi
    grid = np.linspace(4.0 / grid_points, 4.0, grid_points)
    dmin = float(page_quartic_derivative(grid).min())
    D = 2.0 / (3.0 + a * a)
    return PageConstants(a=a, Ccoef=D * D, Dcoef=D, residual=abs(page_quartic(a)), min_derivative=dmin)


def _page_V(pc: PageConstants, c: Jet2) -> Jet2:
    a2 = pc.a**2
    return (1 - a2 * c * c) / (3 - a2 - a2 * (1 + a2) * c * c)


def _page_f(pc: PageConstants, c: Jet2) -> Jet2:
    a2 = pc.a**2
    return 4 / (3 + 6 * a2 - a2 * a2) * (1 - a2 * c * c)


def page_metric_r(
    pc: Optional[PageConstants] = None,
    conv: Optional[CoframeConvention] = None,
    fibre_scale: float = PAGE_FIBRE_SCALE,
) -> DiagonalMetric:
    """Page metric in the angular coordinate r ∈ (0, π).

    ``A = √V``, ``B = C = √f``, ``D = fibre_scale · √C · sin r / √V``.
    """
    pc = pc or solve_page_constant()
    conv = conv or make_convention(DEFAULT_KAPPA)
    sqrtC = math.sqrt(pc.Ccoef)

    def profile(r: Jet2):
        c = r.cos()
        V = _page_V(pc, c)
        B = _page_f(pc, c).sqrt()
        sV = V.sqrt()
        return sV, B, B, fibre_scale * sqrtC * r.sin() / sV

    return DiagonalMetric("page-r", profile, (0.0, math.pi), conv, (BOLT, BOLT))


def page_W(pc: PageConstants, x: Jet2) -> Jet2:
    a2 = pc.a**2
    return ((1 - a2 * x * x) / ((3 - a2 - a2 * (1 + a2) * x * x) * (1 - x * x))).sqrt()


def page_g(pc: PageConstants, x: Jet2) -> Jet2:
    a2 = pc.a**2
    return 2 * ((1 - a2 * x * x) / (3 + 6 * a2 - a2 * a2)).sqrt()


def page_metric_x(
    pc: Optional[PageConstants] = None,
    conv: Optional[CoframeConvention] = None,
    fibre_scale: float = PAGE_FIBRE_SCALE,
) -> DiagonalMetric:
    """Page metric in x = cos r ∈ (−1, 1): coframe {W dx, gσ₁, gσ₂, (D/W)σ₃}.

    ``x`` runs opposite to ``r``, so ``e⁰ = W dx = −√V dr`` and the frame
    orientation is reversed relative to :func:`page_metric_r`.
    """
    pc = pc or solve_page_constant()
    conv = conv or make_convention(DEFAULT_KAPPA)
    D = fibre_scale * pc.Dcoef

    def profile(x: Jet2):
        W = page_W(pc, x)
        g = page_g(pc, x)
        return W, g, g, D / W

    return DiagonalMetric("page-x", profile, (-1.0, 1.0), conv, (BOLT, BOLT))


# ---------------------------------------------------------------------------
# Model metrics
# ---------------------------------------------------------------------------


def flat_metric(box_volume: float = 1.0, length: float = 1.0) -> DiagonalMetric:
    """A = B = C = D = 1 in the abelian (κ = 0) frame: a flat box."""
    one = Jet2(1.0)
    return DiagonalMetric(
        "flat", lambda t: (one, one, one, one), (0.0, length), make_convention(0.0, box_volume)
    )


def round_sphere_metric(conv: Optional[CoframeConvention] = None) -> DiagonalMetric:
    """Unit round S⁴: ``A = 1``, ``B = C = D = (κ/2) sin t`` on (0, π)."""
    conv = conv or make_convention(DEFAULT_KAPPA)
    if not conv.kappa > 0.0:
        raise ValueError("round sphere needs kappa > 0")
    r = conv.kappa / 2.0

    def profile(t: Jet2):
        s = r * t.sin()
        return Jet2(1.0), s, s, s

    return DiagonalMetric("s4", profile, (0.0, math.pi), conv, (NUT, NUT))


def fubini_study_metric(conv: Optional[CoframeConvention] = None, validate: bool = True) -> DiagonalMetric:
    """CP² with 1 ≤ K ≤ 4: ``A = 1``, ``B = C = (κ/2) cos t``, ``D = (κ/2) sin t cos t`` on (0, π/2).

    The bolt (the line at infinity) sits at t = 0 and the nut at t = π/2.
    This direction of t makes ``e⁰∧e¹∧e²∧e³`` the complex orientation, so
    the Kähler form lies in Λ⁺ and τ = +1.  The profile validates itself
    (Einstein residual and sectional-curvature range) and raises
    :class:`MetricValidationError` if either check fails.
    """
    conv = conv or make_convention(DEFAULT_KAPPA)
    if not conv.kappa > 0.0:
        raise ValueError("Fubini-Study needs kappa > 0")
    r = conv.kappa / 2.0

    def profile(t: Jet2):
        c = r * t.cos()
        return Jet2(1.0), c, c, c * t.sin()

    m = DiagonalMetric("fs", profile, (0.0, math.pi / 2), conv, (BOLT, NUT))
    if validate:
        from .invariants import einstein_report, k_range_scan

        rep = einstein_report(m, 32)
        if not rep.max_residual < 1e-8:
            raise MetricValidationError(f"Fubini-Study profile is not Einstein: {rep}")
        kr = k_range_scan(m, n_points=12, n_planes=24, refine=False)
        if kr.k_min < 1 - 1e-6 or kr.k_max > 4 + 1e-6:
            raise MetricValidationError(f"Fubini-Study sectional curvature outside [1, 4]: {kr}")
    return m


# ---------------------------------------------------------------------------
# User-defined metrics
# ---------------------------------------------------------------------------


def custom_metric(config, grid: int = 64) -> DiagonalMetric:
    """Compile a :class:`pagelab.config.MetricConfig` into a metric.

    Positivity of all four coefficients is spot-checked at ``grid`` interior
    points (cell midpoints).
    """
    from .expr import eval_expr

    consts = dict(config.constants)
    exprs = config.profile  # name -> (Expr, source text)

    def profile(t: Jet2):
        return tuple(eval_expr(exprs[k][0], t, consts, exprs[k][1]) for k in "ABCD")

    t0, t1 = config.domain
    conv = make_convention(config.kappa, config.sigma_volume)
    m = DiagonalMetric(config.name, profile, (t0, t1), conv, config.endpoints)
    for i in range(grid):
        t = t0 + (i + 0.5) * (t1 - t0) / grid
        for key, j in zip("ABCD", m.jets(t)):
            if not j.val > 0.0:
                raise MetricValidationError(
                    f"{config.name}: coefficient {key} = {j.val!r} is not positive at t = {t!r}"
                )
    return m


def with_fd_derivatives(m: DiagonalMetric, h: float = DEFAULT_FD_STEP) -> DiagonalMetric:
    """Copy of ``m`` whose profile derivatives come from central differences instead of jets."""

    def profile(t: Jet2):
        x = t.val
        lo, mid, hi = m.values(x - h), m.values(x), m.values(x + h)
        d1 = (hi - lo) / (2 * h)
        d2 = (hi - 2 * mid + lo) / (h * h)
        return tuple(Jet2(float(v), float(a), float(b)) for v, a, b in zip(mid, d1, d2))

    return DiagonalMetric(m.name + "-fd", profile, m.domain, m.convention, m.endpoints)
