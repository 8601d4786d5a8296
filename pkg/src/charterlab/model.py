"""Annotation data model: classes, documents, validation, hierarchy.

The on-disk unit is one JSON document per image (see ``doc_to_json`` /
``doc_from_json``).  Unknown JSON fields survive a read-modify-write cycle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Dict, List, Mapping, Optional, Tuple

from .geometry import Rect, intersection_area

SCHEMA_VERSION = 1

# Fixed label order; integer class ids index into this list.
DEFAULT_LABELS = (
    "NoClass",
    "Ignore",
    "Img:CalibrationCard",
    "Img:Seal",
    "Img:WritableArea",
    "Wr:OldText",
    "Wr:OldNote",
    "Wr:NewText",
    "Wr:NewOther",
    "WrO:Ornament",
    "WrO:Fold",
)

NO_CLASS = 0
IGNORE = 1
CALIBRATION_CARD = 2
SEAL = 3
WRITABLE_AREA = 4
OLD_TEXT = 5
OLD_NOTE = 6
NEW_TEXT = 7
NEW_OTHER = 8
ORNAMENT = 9
FOLD = 10

# Classes that attach directly to the image root in the implied hierarchy.
ROOT_CLASSES = frozenset({CALIBRATION_CARD, SEAL, WRITABLE_AREA})

# Classes exported as text regions (they carry transcriptions).
TEXT_CLASSES = frozenset({OLD_TEXT, OLD_NOTE, NEW_TEXT})


@dataclass(frozen=True)
class RectAnnotation:
    rect: Rect
    class_id: int
    transcription: Optional[str] = None
    comment: Optional[str] = None
    extra: Mapping[str, object] = field(default_factory=dict)

    def with_rect(self, rect: Rect) -> "RectAnnotation":
        return replace(self, rect=rect)


@dataclass(frozen=True)
class AnnotationDoc:
    image_id: str
    width: int
    height: int
    annotations: Tuple[RectAnnotation, ...] = ()
    schema_version: int = SCHEMA_VERSION
    extra: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError(f"image dimensions must be positive, got "
                             f"{self.width}x{self.height}")


@dataclass(frozen=True)
class Ontology:
    labels: Tuple[str, ...] = DEFAULT_LABELS
    key_bindings: Mapping[str, int] = field(default_factory=dict)
    preferences: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("class labels must be unique")
        if any(not lbl for lbl in self.labels):
            raise ValueError("class labels must be non-empty")
        for key, cid in self.key_bindings.items():
            if not 0 <= cid < len(self.labels):
                raise ValueError(f"key {key!r} bound to unknown class id {cid}")

    def class_count(self) -> int:
        return len(self.labels)

    def label_of(self, class_id: int) -> str:
        return self.labels[class_id]

    def id_of(self, label: str) -> int:
        return self.labels.index(label)


def default_ontology() -> Ontology:
    bindings = {str(i): i for i in range(1, 10)}
    bindings["a"] = 10
    return Ontology(labels=DEFAULT_LABELS, key_bindings=bindings)


def ontology_from_config(config: Mapping[str, object]) -> Ontology:
    """Load an ontology from a parsed JSON config mapping."""
    labels = tuple(config.get("labels", DEFAULT_LABELS))
    bindings = {str(k): int(v) for k, v in dict(config.get("key_bindings", {})).items()}
    prefs = dict(config.get("preferences", {}))
    return Ontology(labels=labels, key_bindings=bindings, preferences=prefs)


@dataclass(frozen=True)
class Violation:
    index: int
    rule: str
    detail: str = ""


def validate_doc(doc: AnnotationDoc, onto: Ontology) -> List[Violation]:
    """Check every annotation against the rect, class, and bounds rules.

    Violations are data, not exceptions; an empty list means the doc is valid.
    """
    violations: List[Violation] = []
    for i, ann in enumerate(doc.annotations):
        if ann.class_id == NO_CLASS:
            violations.append(Violation(i, "ReservedClass",
                                        "class id 0 is reserved"))
        elif not 0 <= ann.class_id < onto.class_count():
            violations.append(Violation(i, "UnknownClass",
                                        f"class id {ann.class_id}"))
        r = ann.rect
        if r.right > doc.width or r.bottom > doc.height:
            violations.append(Violation(i, "OutOfBounds",
                                        f"rect exceeds {doc.width}x{doc.height}"))
    return violations


@dataclass(frozen=True)
class HierarchyTree:
    """Parent links by annotation index; -1 is the implicit image root."""
    parents: Tuple[int, ...]

    def children_of(self, index: int) -> List[int]:
        return [i for i, p in enumerate(self.parents) if p == index]


def implied_hierarchy(doc: AnnotationDoc) -> HierarchyTree:
    """Suggested containment tree: cards/seals/writable areas under the root,
    everything else under the writable area of maximal intersection area.

    Ties break toward the lowest writable-area annotation index; annotations
    that intersect no writable area attach to the root.
    """
    writable = [(i, ann.rect) for i, ann in enumerate(doc.annotations)
                if ann.class_id == WRITABLE_AREA]
    parents: List[int] = []
    for i, ann in enumerate(doc.annotations):
        if ann.class_id in ROOT_CLASSES:
            parents.append(-1)
            continue
        best_idx, best_area = -1, 0.0
        for w_idx, w_rect in writable:
            if w_idx == i:
                continue
            a = intersection_area(ann.rect, w_rect)
            if a > best_area:
                best_idx, best_area = w_idx, a
        parents.append(best_idx)
    return HierarchyTree(parents=tuple(parents))


_DOC_FIELDS = {"schema_version", "image_id", "width", "height", "annotations"}
_ANN_FIELDS = {"left", "top", "right", "bottom", "class", "transcription", "comment"}


def doc_to_json(doc: AnnotationDoc) -> Dict[str, object]:
    anns = []
    for ann in doc.annotations:
        entry: Dict[str, object] = {
            "left": ann.rect.left,
            "top": ann.rect.top,
            "right": ann.rect.right,
            "bottom": ann.rect.bottom,
            "class": ann.class_id,
            "transcription": ann.transcription,
            "comment": ann.comment,
        }
        entry.update(ann.extra)
        anns.append(entry)
    out: Dict[str, object] = {
        "schema_version": doc.schema_version,
        "image_id": doc.image_id,
        "width": doc.width,
        "height": doc.height,
        "annotations": anns,
    }
    out.update(doc.extra)
    return out


def doc_from_json(data: Mapping[str, object]) -> AnnotationDoc:
    anns = []
    for entry in data.get("annotations", []):
        extra = {k: v for k, v in entry.items() if k not in _ANN_FIELDS}
        anns.append(RectAnnotation(
            rect=Rect(float(entry["left"]), float(entry["top"]),
                      float(entry["right"]), float(entry["bottom"])),
            class_id=int(entry["class"]),
            transcription=entry.get("transcription"),
            comment=entry.get("comment"),
            extra=extra,
        ))
    extra = {k: v for k, v in data.items() if k not in _DOC_FIELDS}
    return AnnotationDoc(
        image_id=str(data["image_id"]),
        width=int(data["width"]),
        height=int(data["height"]),
        annotations=tuple(anns),
        schema_version=int(data.get("schema_version", SCHEMA_VERSION)),
        extra=extra,
    )


def dumps_doc(doc: AnnotationDoc) -> str:
    """Canonical serialization: stable key order, 2-space indent, UTF-8 safe."""
    return json.dumps(doc_to_json(doc), ensure_ascii=False, indent=2,
                      sort_keys=False) + "\n"


def loads_doc(text: str) -> AnnotationDoc:
    return doc_from_json(json.loads(text))
