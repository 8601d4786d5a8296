"""Training loop: MSE loss, Adam, random square crops resampled each epoch."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
import torch
from torch import nn

from .data import Sample


class ImageTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class TrainConfig:
    crop_size: int = 512
    learning_rate: float = 0.0001
    batch_size: int = 16
    epochs: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.crop_size <= 0 or self.learning_rate <= 0 or self.batch_size <= 0:
            raise ValueError("crop, learning rate, and batch size must be positive")
        if self.epochs < 0:
            raise ValueError("epochs must be non-negative")


def _to_tensor(crop: np.ndarray) -> torch.Tensor:
    return torch.from_numpy(crop.copy()).permute(2, 0, 1).float() / 255.0


def random_crop(sample: Sample, size: int, rng: random.Random) -> np.ndarray:
    h, w = sample.image.shape[:2]
    if h < size or w < size:
        raise ImageTooSmall(f"image {w}x{h} smaller than crop {size}")
    top = rng.randint(0, h - size)
    left = rng.randint(0, w - size)
    return sample.image[top:top + size, left:left + size]


def train(model: nn.Module, samples: Sequence[Sample],
          cfg: TrainConfig = TrainConfig()) -> Tuple[nn.Module, List[float]]:
    """Returns the trained model and the per-epoch mean training MSE."""
    if not samples:
        raise ValueError("need at least one sample")
    rng = random.Random(cfg.seed)
    torch.manual_seed(cfg.seed)
    for s in samples:
        h, w = s.image.shape[:2]
        if h < cfg.crop_size or w < cfg.crop_size:
            raise ImageTooSmall(f"sample {w}x{h} smaller than crop {cfg.crop_size}")

    optimizer = torch.optim.Adam(model.parameters(), lr=cfg.learning_rate)
    loss_fn = nn.MSELoss()
    history: List[float] = []
    for _ in range(cfg.epochs):
        model.train()
        order = list(range(len(samples)))
        rng.shuffle(order)
        epoch_losses = []
        for start in range(0, len(order), cfg.batch_size):
            batch_idx = order[start:start + cfg.batch_size]
            crops = torch.stack([
                _to_tensor(random_crop(samples[i], cfg.crop_size, rng))
                for i in batch_idx])
            targets = torch.tensor([samples[i].target for i in batch_idx],
                                   dtype=torch.float32).unsqueeze(1)
            optimizer.zero_grad()
            loss = loss_fn(model(crops), targets)
            loss.backward()
            optimizer.step()
            epoch_losses.append(float(loss.detach()))
        history.append(float(np.mean(epoch_losses)))
    return model, history
