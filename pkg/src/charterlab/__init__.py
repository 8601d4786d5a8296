"""Charter annotation toolkit: rectangle annotation model, dataset format
converters, physical-resolution estimation, and evaluation metrics."""

from .geometry import DegenerateRect, Rect, iou, make_rect, rect_subtract, rect_union
from .model import (
    AnnotationDoc,
    HierarchyTree,
    Ontology,
    RectAnnotation,
    Violation,
    default_ontology,
    implied_hierarchy,
    validate_doc,
)
from .resolution import (
    CalibrationCardSpec,
    ResolutionEstimate,
    ViewAngle,
    perspective_error_bound,
    ppcm_from_calibration_bbox,
    ppcm_from_diagonal_mark,
    ppcm_interval,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerateRect",
    "Rect",
    "iou",
    "make_rect",
    "rect_subtract",
    "rect_union",
    "AnnotationDoc",
    "HierarchyTree",
    "Ontology",
    "RectAnnotation",
    "Violation",
    "default_ontology",
    "implied_hierarchy",
    "validate_doc",
    "CalibrationCardSpec",
    "ResolutionEstimate",
    "ViewAngle",
    "perspective_error_bound",
    "ppcm_from_calibration_bbox",
    "ppcm_from_diagonal_mark",
    "ppcm_interval",
    "__version__",
]
