"""Left-invariant SU(2) coframe conventions.

The forms satisfy ``dσ₁ = −κ σ₂∧σ₃`` (and cyclic).  With this normalisation
the round unit three-sphere is ``(κ/2)² (σ₁² + σ₂² + σ₃²)``, so

    ∫_{S³} σ₁∧σ₂∧σ₃ = 2π² (2/κ)³ = 16π² / κ³.

Rescaling ``σᵢ ↦ cσᵢ`` sends ``κ ↦ κ/c``; a diagonal metric is unchanged
when the coefficients go ``(B, C, D) ↦ (B, C, D)/c`` at the same time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

__all__ = [
    "CoframeConvention",
    "CalibrationError",
    "CalibrationReport",
    "DEFAULT_KAPPA",
    "make_convention",
    "sigma_volume_for",
    "calibrate_convention",
]

# Selected by calibrate_convention(); see tests/test_frames.py.
DEFAULT_KAPPA = 2.0


@dataclass(frozen=True)
class CoframeConvention:
    kappa: float
    sigma_volume: float

    def rescaled(self, c: float) -> "CoframeConvention":
        """Convention for ``σᵢ ↦ σᵢ / c`` (structure constant ``cκ``)."""
        return CoframeConvention(self.kappa * c, self.sigma_volume / c**3)


def sigma_volume_for(kappa: float) -> float:
    return 16.0 * math.pi**2 / kappa**3


def make_convention(kappa: float = DEFAULT_KAPPA, box_volume: Optional[float] = None) -> CoframeConvention:
    """Build a convention; ``κ = 0`` is the abelian frame and needs ``box_volume``."""
    kappa = float(kappa)
    if not kappa >= 0.0:
        raise ValueError(f"kappa must be non-negative, got {kappa!r}")
    if kappa == 0.0:
        if box_volume is None:
            raise ValueError("kappa = 0 (flat frame) requires an explicit box volume")
        return CoframeConvention(0.0, float(box_volume))
    vol = sigma_volume_for(kappa) if box_volume is None else float(box_volume)
    return CoframeConvention(kappa, vol)


class CalibrationError(RuntimeError):
    pass


@dataclass
class CalibrationReport:
    kappa: float
    residuals: dict[float, float]
    # same candidates with the σ₃ coefficient taken literally (fibre scale 1)
    literal_fibre_residuals: dict[float, float] = field(default_factory=dict)
    tolerance: float = 1e-6


def calibrate_convention(
    candidates: Iterable[float] = (1.0, 2.0),
    n_samples: int = 64,
    tolerance: float = 1e-6,
) -> CalibrationReport:
    """Pick the structure constant under which the Page metric is Einstein.

    Every candidate's Einstein residual is recorded.  Raises
    :class:`CalibrationError` if no candidate gets below ``tolerance``.
    """
    from .invariants import einstein_report
    from .metrics import page_metric_r, solve_page_constant

    candidates = [float(k) for k in candidates]
    if not candidates:
        raise CalibrationError("no candidate structure constants given")
    if any(not k > 0.0 for k in candidates):
        raise CalibrationError("candidate structure constants must be positive")

    pc = solve_page_constant()
    residuals = {}
    literal = {}
    for k in candidates:
        conv = make_convention(k)
        residuals[k] = einstein_report(page_metric_r(pc, conv), n_samples).max_residual
        literal[k] = einstein_report(page_metric_r(pc, conv, fibre_scale=1.0), n_samples).max_residual
    best = min(residuals, key=residuals.get)
    if not residuals[best] < tolerance:
        raise CalibrationError(
            f"no candidate reaches Einstein residual {tolerance:g}: {residuals!r}"
        )
    return CalibrationReport(best, residuals, literal, tolerance)
