from .coco import CocoError, DuplicateImageId, MissingImage, UnknownCategory, export_coco, import_coco
from .yolo import export_yolo, yolo_names
from .pagexml import export_pagexml

__all__ = [
    "CocoError",
    "DuplicateImageId",
    "MissingImage",
    "UnknownCategory",
    "export_coco",
    "import_coco",
    "export_yolo",
    "yolo_names",
    "export_pagexml",
]
