"""Residual backbone with a small MLP regression head.

The backbone's global average pooling makes the network size-agnostic:
any input with both sides above the backbone minimum maps to one scalar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Tuple

import torch
from torch import nn
from torchvision import models

BACKBONES = {
    "resnet18": models.resnet18,
    "resnet34": models.resnet34,
    "resnet50": models.resnet50,
}

# Smallest input the strided residual stages reduce cleanly.
MIN_INPUT_SIDE = 32


class UnknownBackbone(ValueError):
    pass


@dataclass(frozen=True)
class ResResNetConfig:
    backbone: str = "resnet18"
    head_widths: Tuple[int, ...] = (512, 256, 1)
    pretrained: bool = True

    def __post_init__(self):
        if not self.head_widths or self.head_widths[-1] != 1:
            raise ValueError("head must end in a single output node")
        if any(w <= 0 for w in self.head_widths):
            raise ValueError("head widths must be positive")


def build_model(cfg: ResResNetConfig = ResResNetConfig()) -> nn.Module:
    if cfg.backbone not in BACKBONES:
        raise UnknownBackbone(cfg.backbone)
    weights = "IMAGENET1K_V1" if cfg.pretrained else None
    backbone = BACKBONES[cfg.backbone](weights=weights)
    in_features = backbone.fc.in_features
    layers = []
    widths = (in_features, *cfg.head_widths)
    for i in range(len(widths) - 1):
        layers.append(nn.Linear(widths[i], widths[i + 1]))
        if i < len(widths) - 2:
            layers.append(nn.ReLU(inplace=True))
    backbone.fc = nn.Sequential(*layers)
    return backbone


def predict_patch(model: nn.Module, patch: torch.Tensor) -> float:
    """One scalar for one CHW float tensor."""
    if patch.shape[-1] < MIN_INPUT_SIDE or patch.shape[-2] < MIN_INPUT_SIDE:
        raise ValueError(f"patch {tuple(patch.shape)} below minimum side "
                         f"{MIN_INPUT_SIDE}")
    model.eval()
    with torch.no_grad():
        return float(model(patch.unsqueeze(0)).squeeze())
