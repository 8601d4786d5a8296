"""Export to the YOLO txt layout: one "class cx cy w h" line per annotation,
center/size normalized by the image dimensions, six decimal places.
Transcriptions and comments are dropped by design.
"""

from __future__ import annotations

from typing import List

from ..model import IGNORE, AnnotationDoc, Ontology


def export_yolo(doc: AnnotationDoc, drop_ignore: bool = False) -> List[str]:
    lines = []
    for ann in doc.annotations:
        if drop_ignore and ann.class_id == IGNORE:
            continue
        r = ann.rect
        cx = (r.left + r.right) / 2 / doc.width
        cy = (r.top + r.bottom) / 2 / doc.height
        w = r.width / doc.width
        h = r.height / doc.height
        lines.append(f"{ann.class_id} {cx:.6f} {cy:.6f} {w:.6f} {h:.6f}")
    return lines


def yolo_names(onto: Ontology) -> str:
    """Names file listing every label in id order, one per line."""
    return "\n".join(onto.labels) + "\n"
