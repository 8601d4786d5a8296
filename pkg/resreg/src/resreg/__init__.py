"""Patch-based physical-resolution regression."""

from .data import Sample, load_samples_dir, prepare_dataset, read_targets
from .infer import ResolutionEstimate, predict_stable, window_grid
from .model import ResResNetConfig, UnknownBackbone, build_model
from .train import ImageTooSmall, TrainConfig, train

__all__ = [
    "Sample",
    "load_samples_dir",
    "prepare_dataset",
    "read_targets",
    "ResolutionEstimate",
    "predict_stable",
    "window_grid",
    "ResResNetConfig",
    "UnknownBackbone",
    "build_model",
    "ImageTooSmall",
    "TrainConfig",
    "train",
]
