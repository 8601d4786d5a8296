import math

import pytest
import torch
from torch import nn

from resreg.model import ResResNetConfig, UnknownBackbone, build_model, predict_patch


class TestBuildModel:
    def test_default_head_widths(self, small_model):
        linears = [m for m in small_model.fc if isinstance(m, nn.Linear)]
        assert [l.out_features for l in linears] == [512, 256, 1]
        assert linears[0].in_features == 512

    def test_unknown_backbone(self):
        with pytest.raises(UnknownBackbone):
            build_model(ResResNetConfig(backbone="vgg16", pretrained=False))

    def test_head_must_end_in_one(self):
        with pytest.raises(ValueError):
            ResResNetConfig(head_widths=(512, 256))

    def test_scalar_output_512(self, small_model):
        x = torch.rand(3, 512, 512)
        assert math.isfinite(predict_patch(small_model, x))

    def test_scalar_output_arbitrary_sizes(self, small_model):
        for shape in [(3, 224, 224), (3, 777, 613)]:
            value = predict_patch(small_model, torch.rand(*shape))
            assert math.isfinite(value)

    def test_too_small_patch_rejected(self, small_model):
        with pytest.raises(ValueError):
            predict_patch(small_model, torch.rand(3, 16, 16))
