"""Sliding-window inference; the final prediction is the median over windows
(mean of the middle two when the count is even)."""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
import torch
from torch import nn

from .train import ImageTooSmall, _to_tensor


@dataclass(frozen=True)
class ResolutionEstimate:
    ppcm: float
    method: str
    low: float
    high: float


def window_grid(length: int, window: int, stride: int) -> List[int]:
    """Start offsets along one axis; the last-aligned position is always
    included."""
    if window > length:
        raise ImageTooSmall(f"window {window} exceeds extent {length}")
    starts = list(range(0, length - window + 1, stride))
    last = length - window
    if starts[-1] != last:
        starts.append(last)
    return starts


def predict_stable(model: nn.Module, image: np.ndarray,
                   window: int = 512, stride: Optional[int] = None,
                   batch_size: int = 8) -> ResolutionEstimate:
    """Median prediction over every window position on the stride grid."""
    if stride is None:
        stride = max(1, window // 2)
    h, w = image.shape[:2]
    if h < window or w < window:
        raise ImageTooSmall(f"image {w}x{h} smaller than window {window}")
    patches = [_to_tensor(image[top:top + window, left:left + window])
               for top in window_grid(h, window, stride)
               for left in window_grid(w, window, stride)]
    model.eval()
    values: List[float] = []
    with torch.no_grad():
        for start in range(0, len(patches), batch_size):
            batch = torch.stack(patches[start:start + batch_size])
            values.extend(float(v) for v in model(batch).squeeze(1))
    ppcm = statistics.median(values)
    return ResolutionEstimate(ppcm=ppcm, method="regressor",
                              low=min(values), high=max(values))
