import numpy as np
import pytest
import torch
from torch import nn


def ruled_texture(ppcm: float, size: int, seed: int = 0) -> np.ndarray:
    """Parchment-like noise with a 1 cm ruling grid: line spacing encodes
    the physical resolution."""
    rng = np.random.default_rng(seed)
    img = rng.normal(205, 12, size=(size, size, 3)).clip(0, 255)
    spacing = max(2, int(round(ppcm)))
    for y in range(0, size, spacing):
        img[y:y + 2, :, :] *= 0.45
    for x in range(0, size, spacing):
        img[:, x:x + 2, :] *= 0.45
    return img.astype(np.uint8)


class StubModel(nn.Module):
    """Returns pre-programmed values, one per input in batch order."""

    def __init__(self, values):
        super().__init__()
        self.values = list(values)
        self._cursor = 0

    def forward(self, batch):
        n = batch.shape[0]
        out = self.values[self._cursor:self._cursor + n]
        self._cursor += n
        return torch.tensor(out, dtype=torch.float32).unsqueeze(1)


@pytest.fixture
def small_model():
    from resreg.model import ResResNetConfig, build_model

    torch.manual_seed(0)
    return build_model(ResResNetConfig(pretrained=False))
