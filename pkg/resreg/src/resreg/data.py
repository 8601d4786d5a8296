"""Training samples: writable-area crops paired with PpCm targets.

Annotation docs arrive as the toolkit's per-image JSON files; resolution
targets arrive as a CSV (image_id, ppcm), typically the output of the
toolkit's resolution command.  Images without a target are excluded and
reported, mirroring how ground truth can only exist where a calibration
card was photographed.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np
from PIL import Image

WRITABLE_AREA_CLASS = 4


@dataclass(frozen=True)
class Sample:
    image: np.ndarray  # HWC uint8 crop of a writable area
    target: float      # PpCm

    def __post_init__(self):
        if not self.target > 0 or not np.isfinite(self.target):
            raise ValueError(f"target must be positive and finite: {self.target}")


def read_targets(path: Path) -> Dict[str, float]:
    """image_id -> ppcm from a CSV with image_id and ppcm columns.

    Rows whose method column says "mean" win over per-card rows.
    """
    targets: Dict[str, float] = {}
    preferred: Dict[str, bool] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            image_id = row["image_id"]
            is_mean = row.get("method") == "mean"
            if image_id in targets and preferred[image_id] and not is_mean:
                continue
            targets[image_id] = float(row["ppcm"])
            preferred[image_id] = is_mean
    return targets


def prepare_dataset(annotation_dir: Path, image_dir: Path,
                    targets: Dict[str, float]
                    ) -> Tuple[List[Sample], List[str]]:
    """One Sample per writable-area rect on images with a known target.

    Returns (samples, excluded_image_ids).
    """
    samples: List[Sample] = []
    excluded: List[str] = []
    for path in sorted(Path(annotation_dir).glob("*.json")):
        if path.name == "index.json":
            continue
        doc = json.loads(path.read_text(encoding="utf-8"))
        image_id = doc["image_id"]
        if image_id not in targets:
            excluded.append(image_id)
            continue
        image_path = Path(image_dir) / image_id
        if not image_path.exists():
            excluded.append(image_id)
            continue
        with Image.open(image_path) as im:
            pixels = np.asarray(im.convert("RGB"))
        for ann in doc["annotations"]:
            if ann["class"] != WRITABLE_AREA_CLASS:
                continue
            left, top = int(ann["left"]), int(ann["top"])
            right, bottom = int(ann["right"]), int(ann["bottom"])
            crop = pixels[top:bottom, left:right]
            if crop.size == 0:
                continue
            samples.append(Sample(image=crop, target=targets[image_id]))
    return samples, excluded


def load_samples_dir(samples_dir: Path) -> List[Sample]:
    """Samples directory layout: image files plus targets.csv (file, ppcm)."""
    samples_dir = Path(samples_dir)
    samples = []
    with open(samples_dir / "targets.csv", newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            with Image.open(samples_dir / row["file"]) as im:
                pixels = np.asarray(im.convert("RGB"))
            samples.append(Sample(image=pixels, target=float(row["ppcm"])))
    return samples
