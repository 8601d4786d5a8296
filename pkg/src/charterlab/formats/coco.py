"""Converters between annotation docs and the COCO object-detection layout.

bbox is [x, y, width, height]; category ids reuse the ontology class ids
(id 0 stays reserved and is never exported).  The round trip is exact on
coordinates and class ids; transcriptions and comments have no COCO field
and come back as null.
"""

from __future__ import annotations

import json
from typing import Dict, List, Mapping, Sequence

from ..geometry import Rect
from ..model import AnnotationDoc, Ontology, RectAnnotation


class CocoError(ValueError):
    pass


class DuplicateImageId(CocoError):
    pass


class UnknownCategory(CocoError):
    pass


class MissingImage(CocoError):
    pass


def export_coco(docs: Sequence[AnnotationDoc], onto: Ontology) -> Dict[str, object]:
    """One image entry per doc; annotation ids sequential from 1 in input order."""
    seen = set()
    images: List[dict] = []
    annotations: List[dict] = []
    ann_id = 1
    for img_num, doc in enumerate(docs, start=1):
        if doc.image_id in seen:
            raise DuplicateImageId(doc.image_id)
        seen.add(doc.image_id)
        images.append({
            "id": img_num,
            "file_name": doc.image_id,
            "width": doc.width,
            "height": doc.height,
        })
        for ann in doc.annotations:
            r = ann.rect
            annotations.append({
                "id": ann_id,
                "image_id": img_num,
                "category_id": ann.class_id,
                "bbox": [r.left, r.top, r.right - r.left, r.bottom - r.top],
                "area": r.area,
                "iscrowd": 0,
            })
            ann_id += 1
    categories = [{"id": cid, "name": onto.label_of(cid)}
                  for cid in range(1, onto.class_count())]
    return {"images": images, "annotations": annotations, "categories": categories}


def import_coco(bundle: Mapping[str, object], onto: Ontology) -> List[AnnotationDoc]:
    """Inverse of export_coco; transcriptions come back as null."""
    valid_ids = {c["id"] for c in bundle.get("categories", [])}
    by_image: Dict[int, List[RectAnnotation]] = {}
    images = {img["id"]: img for img in bundle.get("images", [])}
    for ann in bundle.get("annotations", []):
        cid = ann["category_id"]
        if cid not in valid_ids or not 0 < cid < onto.class_count():
            raise UnknownCategory(str(cid))
        if ann["image_id"] not in images:
            raise MissingImage(str(ann["image_id"]))
        x, y, w, h = ann["bbox"]
        by_image.setdefault(ann["image_id"], []).append(RectAnnotation(
            rect=Rect(x, y, x + w, y + h), class_id=cid))
    docs = []
    for img_id in sorted(images):
        img = images[img_id]
        docs.append(AnnotationDoc(
            image_id=str(img["file_name"]),
            width=int(img["width"]),
            height=int(img["height"]),
            annotations=tuple(by_image.get(img_id, ())),
        ))
    return docs


def dumps_coco(bundle: Mapping[str, object]) -> str:
    return json.dumps(bundle, ensure_ascii=False, indent=2) + "\n"
