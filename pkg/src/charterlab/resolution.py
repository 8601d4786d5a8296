"""Physical resolution estimation in pixels per centimeter (PpCm).

Estimates come from calibration-card bounding boxes or diagonal marks;
a camera view angle turns a point estimate into a perspective interval
(the true plane resolution can be under-measured by up to 1 - cos(phi/2)
when the measured object sits at the edge of the field of view).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

from .geometry import Rect

# Typical ruler-card length in centimeters.
DEFAULT_CARD_LENGTH_CM = 20.5

# Genuine cards are long and thin; anything squarer than this is suspect.
SQUARE_CARD_ASPECT = 2.0


class NonPositiveDiagonal(ValueError):
    pass


@dataclass(frozen=True)
class CalibrationCardSpec:
    length_cm: float = DEFAULT_CARD_LENGTH_CM

    def __post_init__(self):
        if self.length_cm <= 0:
            raise ValueError("card length must be positive")


@dataclass(frozen=True)
class ViewAngle:
    phi_deg: float

    def __post_init__(self):
        if not 0 <= self.phi_deg < 180:
            raise ValueError(f"view angle {self.phi_deg} out of [0, 180)")


@dataclass(frozen=True)
class ResolutionEstimate:
    ppcm: float
    method: str  # calibration-card | diagonal-mark | regressor
    low: float
    high: float
    warning: Optional[str] = None

    def __post_init__(self):
        if not (0 < self.low <= self.ppcm <= self.high):
            raise ValueError(f"interval [{self.low}, {self.high}] must bracket "
                             f"ppcm {self.ppcm} and be positive")


def ppcm_from_calibration_bbox(card: Rect,
                               spec: CalibrationCardSpec = CalibrationCardSpec()
                               ) -> ResolutionEstimate:
    """Largest bbox side divided by the card length.

    Cards lie axis-aligned, so the long side measures the card's length
    regardless of orientation.  A near-square bbox cannot be a real card
    and gets a warning.
    """
    long_side = max(card.width, card.height)
    short_side = min(card.width, card.height)
    warning = None
    if long_side / short_side < SQUARE_CARD_ASPECT:
        warning = "near-square card bbox; estimate unreliable"
    ppcm = long_side / spec.length_cm
    return ResolutionEstimate(ppcm=ppcm, method="calibration-card",
                              low=ppcm, high=ppcm, warning=warning)


def ppcm_from_diagonal_mark(mark: Rect, diagonal_cm: float) -> ResolutionEstimate:
    """Pixel length of the rect's diagonal divided by its known extent in cm."""
    if diagonal_cm <= 0:
        raise NonPositiveDiagonal(str(diagonal_cm))
    ppcm = math.hypot(mark.width, mark.height) / diagonal_cm
    return ResolutionEstimate(ppcm=ppcm, method="diagonal-mark",
                              low=ppcm, high=ppcm)


def perspective_error_bound(phi: ViewAngle) -> float:
    """Maximum relative under-resolution for a view angle: 1 - cos(phi/2)."""
    return 1.0 - math.cos(math.radians(phi.phi_deg) / 2)


def ppcm_interval(est: ResolutionEstimate, phi: ViewAngle) -> ResolutionEstimate:
    """Attach the perspective interval [ppcm * cos(phi/2), ppcm]."""
    factor = math.cos(math.radians(phi.phi_deg) / 2)
    return replace(est, low=est.ppcm * factor, high=est.ppcm)
