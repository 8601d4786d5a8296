"""Export to PAGE-XML: one XML file per image.

The three text classes become TextRegion elements carrying the transcription
as a TextEquiv; every other class becomes a generic Region whose custom
attribute records the class name.  Polygons are the 4 rect corners in
clockwise order starting top-left, rounded half-up to integer pixels.
"""

from __future__ import annotations

import datetime
import xml.etree.ElementTree as ET
from decimal import ROUND_HALF_UP, Decimal

from ..geometry import Rect
from ..model import TEXT_CLASSES, AnnotationDoc, Ontology

PAGE_NS = "http://schema.primaresearch.org/PAGE/gts/pagecontent/2019-07-15"


def _px(v: float) -> int:
    return int(Decimal(str(v)).quantize(Decimal("1"), rounding=ROUND_HALF_UP))


def rect_points(rect: Rect) -> str:
    corners = [(rect.left, rect.top), (rect.right, rect.top),
               (rect.right, rect.bottom), (rect.left, rect.bottom)]
    return " ".join(f"{_px(x)},{_px(y)}" for x, y in corners)


def export_pagexml(doc: AnnotationDoc, onto: Ontology,
                   created: datetime.datetime | None = None) -> ET.ElementTree:
    if created is None:
        created = datetime.datetime(2000, 1, 1, tzinfo=datetime.timezone.utc)
    stamp = created.isoformat()

    ET.register_namespace("", PAGE_NS)
    root = ET.Element(f"{{{PAGE_NS}}}PcGts")
    meta = ET.SubElement(root, f"{{{PAGE_NS}}}Metadata")
    ET.SubElement(meta, f"{{{PAGE_NS}}}Creator").text = "charterlab"
    ET.SubElement(meta, f"{{{PAGE_NS}}}Created").text = stamp
    ET.SubElement(meta, f"{{{PAGE_NS}}}LastChange").text = stamp
    page = ET.SubElement(root, f"{{{PAGE_NS}}}Page", {
        "imageFilename": doc.image_id,
        "imageWidth": str(doc.width),
        "imageHeight": str(doc.height),
    })
    for i, ann in enumerate(doc.annotations):
        region_id = f"r{i:04d}"
        if ann.class_id in TEXT_CLASSES:
            region = ET.SubElement(page, f"{{{PAGE_NS}}}TextRegion", {
                "id": region_id,
                "custom": onto.label_of(ann.class_id),
            })
            ET.SubElement(region, f"{{{PAGE_NS}}}Coords",
                          {"points": rect_points(ann.rect)})
            if ann.transcription is not None:
                equiv = ET.SubElement(region, f"{{{PAGE_NS}}}TextEquiv")
                ET.SubElement(equiv, f"{{{PAGE_NS}}}Unicode").text = ann.transcription
        else:
            region = ET.SubElement(page, f"{{{PAGE_NS}}}Region", {
                "id": region_id,
                "custom": onto.label_of(ann.class_id),
            })
            ET.SubElement(region, f"{{{PAGE_NS}}}Coords",
                          {"points": rect_points(ann.rect)})
    return ET.ElementTree(root)


def dumps_pagexml(tree: ET.ElementTree) -> str:
    ET.indent(tree, space="  ")
    body = ET.tostring(tree.getroot(), encoding="unicode", xml_declaration=False)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + body + "\n"
