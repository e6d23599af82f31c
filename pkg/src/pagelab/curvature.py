r"""Pointwise curvature of diagonal Bianchi-IX metrics in the orthonormal coframe.

Coframe ``e⁰ = A dt, e¹ = Bσ₁, e² = Cσ₂, e³ = Dσ₃`` with ``dσᵢ = −κ σⱼ∧σₖ``.
Write ``Bᵢ = (B, C, D)``, ``Pᵢ = Bᵢ²`` and ``Π = B₁B₂B₃``.  The first
structure equation reads

    de⁰ = 0,   deⁱ = αᵢ e⁰∧eⁱ − βᵢ eʲ∧eᵏ,     (i, j, k cyclic)
    αᵢ = Bᵢ' / (A Bᵢ),   βᵢ = κ Pᵢ / Π,

and the torsion-free metric connection ``Γ_abc = ⟨∇_{E_a} E_b, E_c⟩`` has
the nonzero entries

    Γ_i0i = −Γ_ii0 = αᵢ,    Γ_ijk = −Γ_ikj = γᵢ = κ (Pⱼ + Pₖ − Pᵢ) / (2Π).

The second structure equation then gives, with no other independent
components,

    R_0i0i = −(A Bᵢ'' − A' Bᵢ') / (A³ Bᵢ)
    R_ijij = βₖ γₖ − γᵢ γⱼ − αᵢ αⱼ
    R_0ijk = −[κ (Pⱼ' + Pₖ' − Pᵢ') / (2Π) − γᵢ (Bⱼ'/Bⱼ + Bₖ'/Bₖ)] / A

These groupings stay finite term by term at bolts and nuts, where the
individual connection coefficients blow up.  Index convention:
``R_abcd = ⟨R(E_a, E_b) E_d, E_c⟩``, so ``R_abab`` is the sectional
curvature of the ``(e_a, e_b)`` plane and ``Ric_ab = Σ_c R_acbc``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .frames import CoframeConvention
from .jets import Jet2
from .metrics import DiagonalMetric, PageConstants, page_g, page_W

__all__ = [
    "FrameCurvature",
    "CurvatureDecomposition",
    "DegeneratePlaneError",
    "structure_constants",
    "connection_gamma",
    "connection_coefficients",
    "riemann_frame",
    "riemann_frame_generic",
    "sectional",
    "frame_sectionals",
    "bivector_basis",
    "curvature_operator",
    "ricci_scalar_decompose",
    "page_k01",
    "FRAME_PLANES",
]

FRAME_PLANES = tuple(itertools.combinations(range(4), 2))

_EPS = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _EPS[_i, _j, _k] = 1.0
    _EPS[_i, _k, _j] = -1.0


class DegeneratePlaneError(ValueError):
    pass


@dataclass(frozen=True)
class FrameCurvature:
    R: np.ndarray
    t: float

    @property
    def scale(self) -> float:
        return max(1.0, float(np.abs(self.R).max()))

    def antisymmetry_violation(self) -> float:
        R = self.R
        return float(max(np.abs(R + R.transpose(1, 0, 2, 3)).max(), np.abs(R + R.transpose(0, 1, 3, 2)).max()))

    def pair_symmetry_violation(self) -> float:
        return float(np.abs(self.R - self.R.transpose(2, 3, 0, 1)).max())

    def bianchi_violation(self) -> float:
        R = self.R
        # R_abcd + R_acdb + R_adbc
        cyc = R + R.transpose(0, 2, 3, 1) + R.transpose(0, 3, 1, 2)
        return float(np.abs(cyc).max())


@dataclass(frozen=True)
class CurvatureDecomposition:
    s: float
    ric0_norm_sq: float
    wplus_norm_sq: float
    wminus_norm_sq: float


def _profile_data(m: DiagonalMetric, t: float):
    if not m.interior(t):
        raise ValueError(f"t = {t!r} is not interior to {m.domain!r}")
    A, B1, B2, B3 = m.jets(t)
    return A, (B1, B2, B3)


def structure_constants(m: DiagonalMetric, t: float) -> tuple[np.ndarray, np.ndarray]:
    """``c[a, b, c] = ⟨[E_a, E_b], E_c⟩`` and its t-derivative."""
    A, Bs = _profile_data(m, t)
    k = m.kappa
    c = np.zeros((4, 4, 4))
    dc = np.zeros((4, 4, 4))
    for i in range(3):
        j, l = (i + 1) % 3, (i + 2) % 3
        Bi, Bj, Bl = Bs[i], Bs[j], Bs[l]
        alpha = Bi.d1 / (A.val * Bi.val)
        # α' = (B'' A B − B'(A' B + A B')) / (A B)²
        dalpha = (Bi.d2 * A.val * Bi.val - Bi.d1 * (A.d1 * Bi.val + A.val * Bi.d1)) / (A.val * Bi.val) ** 2
        beta = k * Bi.val / (Bj.val * Bl.val)
        dbeta = beta * (Bi.d1 / Bi.val - Bj.d1 / Bj.val - Bl.d1 / Bl.val)
        c[0, i + 1, i + 1], c[i + 1, 0, i + 1] = -alpha, alpha
        dc[0, i + 1, i + 1], dc[i + 1, 0, i + 1] = -dalpha, dalpha
        c[j + 1, l + 1, i + 1], c[l + 1, j + 1, i + 1] = beta, -beta
        dc[j + 1, l + 1, i + 1], dc[l + 1, j + 1, i + 1] = dbeta, -dbeta
    return c, dc


def _gamma_from(alpha, gamma) -> np.ndarray:
    G = np.zeros((4, 4, 4))
    for i in range(3):
        j, k = (i + 1) % 3 + 1, (i + 2) % 3 + 1
        G[i + 1, 0, i + 1] = alpha[i]
        G[i + 1, i + 1, 0] = -alpha[i]
        G[i + 1, j, k] = gamma[i]
        G[i + 1, k, j] = -gamma[i]
    return G


def _coefficients(m: DiagonalMetric, t: float):
    A, Bs = _profile_data(m, t)
    k = m.kappa
    P = [b.val * b.val for b in Bs]
    prod = Bs[0].val * Bs[1].val * Bs[2].val
    alpha = [b.d1 / (A.val * b.val) for b in Bs]
    beta = [k * P[i] / prod for i in range(3)]
    # fsum: Pⱼ + Pₖ − Pᵢ must not lose a collapsing Pₖ
    gamma = [k * math.fsum((P[(i + 1) % 3], P[(i + 2) % 3], -P[i])) / (2.0 * prod) for i in range(3)]
    return A, Bs, P, prod, alpha, beta, gamma


def connection_gamma(m: DiagonalMetric, t: float) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form ``Γ_abc = ⟨∇_{E_a} E_b, E_c⟩`` and its t-derivative."""
    A, Bs, P, prod, alpha, beta, gamma = _coefficients(m, t)
    logd = [b.d1 / b.val for b in Bs]
    dalpha = [
        (b.d2 * A.val * b.val - b.d1 * (A.d1 * b.val + A.val * b.d1)) / (A.val * b.val) ** 2 for b in Bs
    ]
    dP = [2.0 * b.val * b.d1 for b in Bs]
    dgamma = [
        m.kappa * math.fsum((dP[(i + 1) % 3], dP[(i + 2) % 3], -dP[i])) / (2.0 * prod) - gamma[i] * sum(logd)
        for i in range(3)
    ]
    return _gamma_from(alpha, gamma), _gamma_from(dalpha, dgamma)


def connection_coefficients(m: DiagonalMetric, t: float) -> np.ndarray:
    """Connection one-forms ``ω[a, b, c] = ω^a_b(E_c)``, antisymmetric in ``a, b``.

    Satisfies ``deᵃ = −ωᵃ_b ∧ eᵇ``.
    """
    G, _ = connection_gamma(m, t)
    return G.transpose(2, 1, 0)


def riemann_frame(m: DiagonalMetric, t: float) -> FrameCurvature:
    """Riemann tensor from the closed-form frame components."""
    A, Bs, P, prod, alpha, beta, gamma = _coefficients(m, t)
    R = np.zeros((4, 4, 4, 4))

    def put(a, b, c, d, v):
        for (p, q, sg1) in ((a, b, 1.0), (b, a, -1.0)):
            for (r, s, sg2) in ((c, d, 1.0), (d, c, -1.0)):
                R[p, q, r, s] = R[r, s, p, q] = sg1 * sg2 * v

    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        b = Bs[i]
        put(0, i + 1, 0, i + 1, -(A.val * b.d2 - A.d1 * b.d1) / (A.val**3 * b.val))
        put(j + 1, k + 1, j + 1, k + 1, math.fsum((beta[i] * gamma[i], -gamma[j] * gamma[k], -alpha[j] * alpha[k])))
        dsum = 2.0 * math.fsum((Bs[j].val * Bs[j].d1, Bs[k].val * Bs[k].d1, -b.val * b.d1))
        put(
            0, i + 1, j + 1, k + 1,
            -(m.kappa * dsum / (2.0 * prod) - gamma[i] * (Bs[j].d1 / Bs[j].val + Bs[k].d1 / Bs[k].val)) / A.val,
        )
    return FrameCurvature(R, float(t))


def riemann_frame_generic(m: DiagonalMetric, t: float) -> FrameCurvature:
    """Same tensor from the general frame formula

        R_abcd = E_a(Γ_bdc) − E_b(Γ_adc) + Γ_bde Γ_aec − Γ_ade Γ_bec − c_abf Γ_fdc

    using the structure constants directly.  Loses accuracy near collapsing
    coefficients; kept as an independent cross-check of :func:`riemann_frame`.
    """
    c, dc = structure_constants(m, t)
    G = 0.5 * (c - c.transpose(2, 0, 1) + c.transpose(1, 2, 0))
    dG = 0.5 * (dc - dc.transpose(2, 0, 1) + dc.transpose(1, 2, 0))
    A = m.jets(t)[0].val
    EG = np.zeros((4, 4, 4, 4))
    EG[0] = dG.transpose(0, 2, 1) / A  # EG[0, b, c, d] = Γ'_bdc / A
    R = (
        EG
        - EG.transpose(1, 0, 2, 3)
        + np.einsum("bde,aec->abcd", G, G)
        - np.einsum("ade,bec->abcd", G, G)
        - np.einsum("abf,fdc->abcd", c, G)
    )
    return FrameCurvature(R, float(t))


def sectional(Rc: FrameCurvature, u, v) -> float:
    """Sectional curvature of span(u, v); frame components, any basis of the plane."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    area_sq = u @ u * (v @ v) - (u @ v) ** 2
    if not area_sq > 1e-24:
        raise DegeneratePlaneError("vectors span a degenerate plane (|u∧v| < 1e-12)")
    return float(np.einsum("abcd,a,b,c,d->", Rc.R, u, v, u, v) / area_sq)


def frame_sectionals(Rc: FrameCurvature) -> dict[tuple[int, int], float]:
    return {(a, b): float(Rc.R[a, b, a, b]) for a, b in FRAME_PLANES}


def bivector_basis() -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal bases of Λ⁺ and Λ⁻ as rows over the ``e^a∧e^b`` (a<b) basis.

    Orientation ``e⁰∧e¹∧e²∧e³``; ``Λ^± = span{e⁰¹ ± e²³, e⁰² ± e³¹, e⁰³ ± e¹²}/√2``.
    """
    idx = {p: n for n, p in enumerate(FRAME_PLANES)}
    plus = np.zeros((3, 6))
    minus = np.zeros((3, 6))
    for row, (first, (p, q)) in enumerate((((0, 1), (2, 3)), ((0, 2), (3, 1)), ((0, 3), (1, 2)))):
        sign = 1.0 if p < q else -1.0
        key = (p, q) if p < q else (q, p)
        plus[row, idx[first]] = minus[row, idx[first]] = 1 / math.sqrt(2)
        plus[row, idx[key]] = sign / math.sqrt(2)
        minus[row, idx[key]] = -sign / math.sqrt(2)
    return plus, minus


_LAMBDA_PLUS, _LAMBDA_MINUS = bivector_basis()


def curvature_operator(Rc: FrameCurvature) -> np.ndarray:
    """6×6 symmetric matrix of the curvature operator; identity on the unit sphere."""
    return np.array([[Rc.R[a, b, c, d] for c, d in FRAME_PLANES] for a, b in FRAME_PLANES])


def ricci_scalar_decompose(Rc: FrameCurvature) -> tuple[np.ndarray, CurvatureDecomposition]:
    """Ricci tensor and the pointwise quantities entering the Gauss–Bonnet and signature integrands.

    Norms: ``|W±|²`` is the squared Frobenius norm of ``W±`` as an
    endomorphism of ``Λ±``, and ``|r̊|² = Σ r̊_ab²``.  With these,
    ``∫ |W₊|² + |W₋|² + s²/24 − |r̊|²/2 = 8π²χ`` and
    ``∫ |W₊|² − |W₋|² = 12π²τ``: the round S⁴ gives χ = 2 and CP² gives
    (χ, τ) = (3, 1) (see tests/test_invariants.py).
    """
    ric = np.einsum("acbc->ab", Rc.R)
    ric = 0.5 * (ric + ric.T)
    s = float(np.trace(ric))
    ric0 = ric - 0.25 * s * np.eye(4)
    M = curvature_operator(Rc)
    shift = s / 12.0 * np.eye(3)
    wplus = _LAMBDA_PLUS @ M @ _LAMBDA_PLUS.T - shift
    wminus = _LAMBDA_MINUS @ M @ _LAMBDA_MINUS.T - shift
    return ric, CurvatureDecomposition(
        s=s,
        ric0_norm_sq=float(np.sum(ric0 * ric0)),
        wplus_norm_sq=float(np.sum(wplus * wplus)),
        wminus_norm_sq=float(np.sum(wminus * wminus)),
    )


def page_k01(pc: PageConstants, conv: CoframeConvention, x: float) -> float:
    """Sectional curvature of the (e₀, e₁) plane of the Page metric in x = cos r.

    ``K₀₁ = (g'W' − g''W) / (g W³)``, with derivatives from jet lifts of
    ``W(x)`` and ``g(x)``.  It involves neither the σ₃ coefficient nor κ.
    """
    if not -1.0 < x < 1.0:
        raise ValueError(f"x = {x!r} outside (-1, 1)")
    xj = Jet2(float(x), 1.0, 0.0)
    W = page_W(pc, xj)
    g = page_g(pc, xj)
    return (g.d1 * W.d1 - g.d2 * W.val) / (g.val * W.val**3)
