"""Global verification: Einstein reports, sign changes, curvature ranges,
characteristic numbers, bolt geodesy and the classical curvature inequalities."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from .curvature import (
    FRAME_PLANES,
    connection_gamma,
    curvature_operator,
    ricci_scalar_decompose,
    riemann_frame,
)
from .metrics import BOLT, DiagonalMetric

__all__ = [
    "EinsteinReport",
    "SignChangeCertificate",
    "NoSignChange",
    "KRange",
    "CharNumbers",
    "BoltCheck",
    "Inequalities",
    "QuadratureError",
    "chebyshev_points",
    "einstein_report",
    "sign_change_scan",
    "k_range_scan",
    "char_numbers",
    "bolt_geodesy_check",
    "inequality_predicates",
]


def chebyshev_points(interval: tuple[float, float], n: int) -> np.ndarray:
    """Chebyshev nodes (first kind) of ``interval``, increasing; never hits an end."""
    lo, hi = interval
    k = np.arange(n, 0, -1)
    return 0.5 * (lo + hi) + 0.5 * (hi - lo) * np.cos((2 * k - 1) * np.pi / (2 * n))


# ---------------------------------------------------------------------------
# Einstein condition
# ---------------------------------------------------------------------------


@dataclass
class EinsteinReport:
    lambdaE: float
    max_residual: float
    samples: int
    scalar_spread: float  # max |s(t) − s̄| / max(1, |s̄|)


def einstein_report(m: DiagonalMetric, n_samples: int = 200) -> EinsteinReport:
    """Einstein residual ``max |Ric − λ·id|`` with ``λ = s̄/4`` from the mean scalar curvature."""
    if n_samples < 2:
        raise ValueError("need at least two samples")
    ts = chebyshev_points(m.domain, n_samples)
    rics = []
    scal = []
    for t in ts:
        ric, dec = ricci_scalar_decompose(riemann_frame(m, t))
        rics.append(ric)
        scal.append(dec.s)
    scal = np.array(scal)
    sbar = float(scal.mean())
    lam = sbar / 4.0
    eye = np.eye(4)
    resid = max(float(np.abs(r - lam * eye).max()) for r in rics)
    spread = float(np.abs(scal - sbar).max()) / max(1.0, abs(sbar))
    return EinsteinReport(lam, resid, n_samples, spread)


# ---------------------------------------------------------------------------
# Sign change
# ---------------------------------------------------------------------------


@dataclass
class SignChangeCertificate:
    x_pos: float
    k_pos: float
    x_neg: float
    k_neg: float
    bracket: tuple[float, float]  # contains a zero of f, width < 1e-10


@dataclass
class NoSignChange:
    k_min: float
    k_max: float


def sign_change_scan(
    f: Callable[[float], float],
    interval: tuple[float, float],
    n: int = 1000,
    bracket_width: float = 1e-10,
) -> Union[SignChangeCertificate, NoSignChange]:
    """Scan ``f`` on ``n`` uniformly spaced interior points of ``interval``.

    Witnesses are the most positive and most negative samples; a sign
    change between neighbouring samples is refined by bisection.
    """
    if n < 3:
        raise ValueError("need at least three scan points")
    lo, hi = interval
    xs = lo + (hi - lo) * np.arange(1, n + 1) / (n + 1)
    ks = np.array([f(float(x)) for x in xs])
    i_max, i_min = int(np.argmax(ks)), int(np.argmin(ks))
    if not (ks[i_max] > 0.0 and ks[i_min] < 0.0):
        return NoSignChange(float(ks.min()), float(ks.max()))
    # first neighbouring pair with opposite signs (an exact zero also counts)
    sgn = np.sign(ks)
    j = int(np.flatnonzero(sgn[:-1] * sgn[1:] <= 0)[0])
    a, b = float(xs[j]), float(xs[j + 1])
    fa = ks[j]
    if fa == 0.0:
        b = a
    elif ks[j + 1] == 0.0:
        a = b
    while b - a >= bracket_width:
        mid = 0.5 * (a + b)
        fm = f(mid)
        if fm == 0.0:
            a = b = mid
            break
        if (fm > 0) == (fa > 0):
            a, fa = mid, fm
        else:
            b = mid
    return SignChangeCertificate(float(xs[i_max]), float(ks[i_max]), float(xs[i_min]), float(ks[i_min]), (a, b))


# ---------------------------------------------------------------------------
# Sectional curvature range
# ---------------------------------------------------------------------------


@dataclass
class PlaneWitness:
    t: float
    u: np.ndarray
    v: np.ndarray
    k: float


@dataclass
class KRange:
    k_min: float
    k_max: float
    min_witness: PlaneWitness
    max_witness: PlaneWitness
    frame_min: float = field(default=math.inf)  # smallest frame-plane value seen


def _bivector(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.array([u[a] * v[b] - u[b] * v[a] for a, b in FRAME_PLANES])


def _plane_k(M: np.ndarray, u: np.ndarray, v: np.ndarray) -> float:
    w = _bivector(u, v)
    return float(w @ M @ w / (w @ w))


def _rotate(u: np.ndarray, p: int, q: int, theta: float) -> np.ndarray:
    out = u.copy()
    c, s = math.cos(theta), math.sin(theta)
    out[p] = c * u[p] - s * u[q]
    out[q] = s * u[p] + c * u[q]
    return out


def _refine(M, u, v, sign, step=0.25, resolution=1e-6):
    """Coordinate-wise rotation search; ``sign`` = +1 maximises, −1 minimises."""
    best = sign * _plane_k(M, u, v)
    while step >= resolution:
        improved = False
        for p, q in FRAME_PLANES:
            for theta in (step, -step):
                u2, v2 = _rotate(u, p, q, theta), _rotate(v, p, q, theta)
                val = sign * _plane_k(M, u2, v2)
                if val > best:
                    best, u, v, improved = val, u2, v2, True
        if not improved:
            step *= 0.5
    return u, v, sign * best


def k_range_scan(
    m: DiagonalMetric,
    n_points: int = 32,
    n_planes: int = 64,
    seed: int = 0,
    refine: bool = True,
) -> KRange:
    """Extreme sectional curvatures over sampled points and 2-planes.

    At each Chebyshev point the six frame planes and ``n_planes`` random
    planes (orthonormalised Gaussian pairs) are tried; the best candidates
    are then polished by rotation search down to 1e-6 rad.
    """
    if n_points < 1 or n_planes < 1:
        raise ValueError("n_points and n_planes must be positive")
    rng = np.random.default_rng(seed)
    eye = np.eye(4)
    lo_w = hi_w = None
    frame_min = math.inf
    for t in chebyshev_points(m.domain, n_points):
        M = curvature_operator(riemann_frame(m, float(t)))
        planes = [(eye[a], eye[b]) for a, b in FRAME_PLANES]
        for a, b in FRAME_PLANES:
            frame_min = min(frame_min, M[FRAME_PLANES.index((a, b))][FRAME_PLANES.index((a, b))])
        for _ in range(n_planes):
            q, _ = np.linalg.qr(rng.standard_normal((4, 2)))
            planes.append((q[:, 0], q[:, 1]))
        ks = [_plane_k(M, u, v) for u, v in planes]
        i_lo, i_hi = int(np.argmin(ks)), int(np.argmax(ks))
        cand_lo = (planes[i_lo][0], planes[i_lo][1], ks[i_lo])
        cand_hi = (planes[i_hi][0], planes[i_hi][1], ks[i_hi])
        if refine:
            cand_lo = _refine(M, cand_lo[0], cand_lo[1], -1.0)
            cand_hi = _refine(M, cand_hi[0], cand_hi[1], +1.0)
        if lo_w is None or cand_lo[2] < lo_w.k:
            lo_w = PlaneWitness(float(t), *cand_lo)
        if hi_w is None or cand_hi[2] > hi_w.k:
            hi_w = PlaneWitness(float(t), *cand_hi)
    return KRange(lo_w.k, hi_w.k, lo_w, hi_w, float(frame_min))


# ---------------------------------------------------------------------------
# Characteristic numbers
# ---------------------------------------------------------------------------


class QuadratureError(RuntimeError):
    pass


@dataclass
class CharNumbers:
    chi: float
    tau: float
    chi_err: float
    tau_err: float
    order: int


def _integrals(m: DiagonalMetric, order: int) -> tuple[float, float]:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    t0, t1 = m.domain
    half = 0.5 * (t1 - t0)
    gb = sig = 0.0
    for x, w in zip(nodes, weights):
        t = t0 + half * (x + 1.0)
        A, B, C, D = (j.val for j in m.jets(t))
        _, d = ricci_scalar_decompose(riemann_frame(m, t))
        dmu = w * half * A * B * C * D
        gb += dmu * (d.wplus_norm_sq + d.wminus_norm_sq + d.s**2 / 24.0 - 0.5 * d.ric0_norm_sq)
        sig += dmu * (d.wplus_norm_sq - d.wminus_norm_sq)
    vol = m.convention.sigma_volume
    return gb * vol / (8 * math.pi**2), sig * vol / (12 * math.pi**2)


def char_numbers(m: DiagonalMetric, quad_order: int = 128, max_error: float = 1e-2) -> CharNumbers:
    """Euler characteristic and signature by Gauss–Legendre quadrature.

    The error estimate is the change between ``quad_order`` and
    ``2·quad_order`` nodes; :class:`QuadratureError` if it exceeds ``max_error``.
    """
    if quad_order < 8:
        raise ValueError("quad_order must be at least 8")
    chi, tau = _integrals(m, quad_order)
    chi2, tau2 = _integrals(m, 2 * quad_order)
    out = CharNumbers(chi, tau, abs(chi2 - chi), abs(tau2 - tau), quad_order)
    if out.chi_err > max_error or out.tau_err > max_error:
        raise QuadratureError(f"characteristic numbers did not converge: {out}")
    return out


# ---------------------------------------------------------------------------
# Bolt geodesy
# ---------------------------------------------------------------------------


@dataclass
class BoltCheck:
    end: str
    profile_derivative_residual: float
    shape_operator_limit: float

    def passed(self, tol: float = 1e-6) -> bool:
        return self.profile_derivative_residual < tol and self.shape_operator_limit < tol


def _richardson(f: Callable[[float], float], offsets=(1e-2, 5e-3, 2.5e-3)) -> float:
    # f(h) = f0 + c1 h + c2 h² + ...; offsets in ratio 1 : 1/2 : 1/4
    h, h2, h4 = offsets
    if not (math.isclose(h2, h / 2) and math.isclose(h4, h / 4)):
        raise ValueError("offsets must halve successively")
    return (8.0 * f(h4) - 6.0 * f(h2) + f(h)) / 3.0


def _second_fundamental_norm(m: DiagonalMetric, t: float) -> float:
    # tangent E₁, E₂; normal E₀, E₃; II(Eᵢ, Eⱼ) = sym. normal part of ∇_{Eᵢ}Eⱼ
    G, _ = connection_gamma(m, t)
    tot = 0.0
    for n in (0, 3):
        for i in (1, 2):
            for j in (1, 2):
                tot += (0.5 * (G[i, j, n] + G[j, i, n])) ** 2
    return math.sqrt(tot)


def bolt_geodesy_check(m: DiagonalMetric, end: str) -> BoltCheck:
    """Extrapolated ``|d(B²)/dt|`` (max over B, C) and second-fundamental-form norm of a bolt two-sphere.

    The extrapolation assumes the profile is smooth in t up to the bolt, as
    for the r-form of the Page metric.  In a coordinate such as x = cos r,
    where A blows up at the end, both quantities move like √h and the
    estimate is not meaningful.
    """
    if end not in ("lower", "upper"):
        raise ValueError("end must be 'lower' or 'upper'")
    which = 0 if end == "lower" else 1
    if m.endpoints[which] != BOLT:
        raise ValueError(f"{m.name}: {end} end is {m.endpoints[which]!r}, not a bolt")
    t_end = m.domain[which]
    sgn = 1.0 if which == 0 else -1.0

    def dsq(h):
        _, B, C, _ = m.jets(t_end + sgn * h)
        return max(abs(2 * B.val * B.d1), abs(2 * C.val * C.d1))

    def shape(h):
        return _second_fundamental_norm(m, t_end + sgn * h)

    return BoltCheck(end, abs(_richardson(dsq)), abs(_richardson(shape)))


# ---------------------------------------------------------------------------
# Inequalities
# ---------------------------------------------------------------------------


@dataclass
class Inequalities:
    hitchin_thorpe: bool
    hitchin: bool
    gursky_lebrun: bool


def inequality_predicates(chi: float, tau: float, slack: float = 1e-9) -> Inequalities:
    """χ ≥ 3/2 |τ|;  χ ≥ (3/2)^{3/2} |τ|;  15/4 |τ| < χ ≤ 9."""
    at = abs(tau)
    return Inequalities(
        hitchin_thorpe=bool(chi >= 1.5 * at - slack),
        hitchin=bool(chi >= 1.5**1.5 * at - slack),
        gursky_lebrun=bool(3.75 * at < chi <= 9.0 + slack),
    )
