"""Train / predict entry points.

`resreg predict` prints a single PpCm value; piping many predictions with
their ground truth into a pairs CSV feeds the toolkit's regression
evaluation directly.
"""

from __future__ import annotations

from pathlib import Path

import click
import numpy as np
import torch
from PIL import Image

from .data import load_samples_dir
from .infer import predict_stable
from .model import ResResNetConfig, build_model
from .train import TrainConfig, train


@click.group()
def main():
    """Patch-based physical-resolution regressor."""


@main.command("train")
@click.option("--samples", "samples_dir", required=True,
              type=click.Path(exists=True, file_okay=False, path_type=Path),
              help="Directory of image files plus targets.csv")
@click.option("--out", "weights_out", required=True,
              type=click.Path(path_type=Path))
@click.option("--epochs", default=1000, show_default=True, type=int)
@click.option("--crop", default=512, show_default=True, type=int)
@click.option("--batch", default=16, show_default=True, type=int)
@click.option("--lr", default=0.0001, show_default=True, type=float)
@click.option("--pretrained/--no-pretrained", default=True, show_default=True)
def train_cmd(samples_dir, weights_out, epochs, crop, batch, lr, pretrained):
    samples = load_samples_dir(samples_dir)
    model = build_model(ResResNetConfig(pretrained=pretrained))
    cfg = TrainConfig(crop_size=crop, learning_rate=lr, batch_size=batch,
                      epochs=epochs)
    model, history = train(model, samples, cfg)
    torch.save(model.state_dict(), weights_out)
    if history:
        click.echo(f"epochs: {len(history)}  first mse: {history[0]:.4f}  "
                   f"last mse: {history[-1]:.4f}")
    click.echo(f"wrote {weights_out}")


@main.command("predict")
@click.option("--weights", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--image", "image_path", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--window", default=512, show_default=True, type=int)
@click.option("--stride", default=256, show_default=True, type=int)
def predict_cmd(weights, image_path, window, stride):
    model = build_model(ResResNetConfig(pretrained=False))
    model.load_state_dict(torch.load(weights, map_location="cpu",
                                     weights_only=True))
    with Image.open(image_path) as im:
        pixels = np.asarray(im.convert("RGB"))
    est = predict_stable(model, pixels, window=window, stride=stride)
    click.echo(f"{est.ppcm:.4f}")


if __name__ == "__main__":
    main()
