"""File-based annotation workspace.

Layout: a root directory of image files, one annotation JSON per image under
``annotations/``, and a version index beside them.  No database; every doc
stays a diffable JSON file.  Writes are optimistic: a put must name the
version it read, and the first stale writer loses.
"""

from __future__ import annotations

import io
import json
import os
import tempfile
import threading
import zipfile
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from PIL import Image

from .formats.coco import dumps_coco, export_coco
from .formats.pagexml import dumps_pagexml, export_pagexml
from .formats.yolo import export_yolo, yolo_names
from .model import (
    AnnotationDoc,
    Ontology,
    default_ontology,
    dumps_doc,
    loads_doc,
    ontology_from_config,
    validate_doc,
)

IMAGE_SUFFIXES = {".png", ".jpg", ".jpeg", ".tif", ".tiff", ".bmp", ".webp"}
EXPORT_FORMATS = ("coco", "yolo", "pagexml")


class WorkspaceError(Exception):
    pass


class WorkspaceUnreadable(WorkspaceError):
    pass


class UnknownImage(WorkspaceError):
    pass


class VersionConflict(WorkspaceError):
    def __init__(self, expected: int, actual: int):
        super().__init__(f"expected version {expected}, stored {actual}")
        self.expected = expected
        self.actual = actual


class ValidationFailed(WorkspaceError):
    def __init__(self, violations):
        super().__init__("; ".join(f"[{v.index}] {v.rule}" for v in violations))
        self.violations = violations


class NothingToExport(WorkspaceError):
    pass


class UnknownFormat(WorkspaceError):
    pass


@dataclass(frozen=True)
class ImageEntry:
    image_id: str
    width: int
    height: int
    annotated: bool
    decode_error: bool = False


class Workspace:
    def __init__(self, root: Path, config_path: Optional[Path] = None):
        self.root = Path(root)
        if not self.root.is_dir():
            raise WorkspaceUnreadable(str(self.root))
        self.annotations_dir = self.root / "annotations"
        self.annotations_dir.mkdir(exist_ok=True)
        self._index_path = self.annotations_dir / "index.json"
        self._lock = threading.Lock()
        if config_path is not None:
            with open(config_path, encoding="utf-8") as fh:
                self.ontology = ontology_from_config(json.load(fh))
        else:
            self.ontology = default_ontology()
        self._scan_images()

    def _scan_images(self):
        self._images: Dict[str, Path] = {}
        self._dims: Dict[str, Tuple[int, int]] = {}
        self._broken: set = set()
        for path in sorted(self.root.iterdir()):
            if path.suffix.lower() not in IMAGE_SUFFIXES or not path.is_file():
                continue
            image_id = path.name
            self._images[image_id] = path
            try:
                with Image.open(path) as im:
                    self._dims[image_id] = im.size
            except Exception:
                self._dims[image_id] = (0, 0)
                self._broken.add(image_id)

    def _versions(self) -> Dict[str, int]:
        if not self._index_path.exists():
            return {}
        with open(self._index_path, encoding="utf-8") as fh:
            return {str(k): int(v) for k, v in json.load(fh).items()}

    def _write_versions(self, versions: Dict[str, int]):
        _atomic_write(self._index_path,
                      json.dumps(versions, indent=2, sort_keys=True) + "\n")

    def _doc_path(self, image_id: str) -> Path:
        return self.annotations_dir / (image_id + ".json")

    # -- queries -----------------------------------------------------------

    def image_ids(self) -> List[str]:
        return sorted(self._images)

    def image_path(self, image_id: str) -> Path:
        if image_id not in self._images:
            raise UnknownImage(image_id)
        return self._images[image_id]

    def list_images(self) -> List[ImageEntry]:
        versions = self._versions()
        entries = []
        for image_id in self.image_ids():
            w, h = self._dims[image_id]
            entries.append(ImageEntry(
                image_id=image_id, width=w, height=h,
                annotated=versions.get(image_id, 0) > 0,
                decode_error=image_id in self._broken,
            ))
        return entries

    def get_annotations(self, image_id: str) -> Tuple[AnnotationDoc, int]:
        if image_id not in self._images:
            raise UnknownImage(image_id)
        version = self._versions().get(image_id, 0)
        path = self._doc_path(image_id)
        if version == 0 or not path.exists():
            w, h = self._dims[image_id]
            return AnnotationDoc(image_id=image_id, width=max(w, 1),
                                 height=max(h, 1)), 0
        return loads_doc(path.read_text(encoding="utf-8")), version

    # -- mutations ---------------------------------------------------------

    def put_annotations(self, image_id: str, doc: AnnotationDoc,
                        expected_version: int) -> int:
        if image_id not in self._images:
            raise UnknownImage(image_id)
        violations = validate_doc(doc, self.ontology)
        if violations:
            raise ValidationFailed(violations)
        with self._lock:
            versions = self._versions()
            stored = versions.get(image_id, 0)
            if stored != expected_version:
                raise VersionConflict(expected_version, stored)
            _atomic_write(self._doc_path(image_id), dumps_doc(doc))
            versions[image_id] = stored + 1
            self._write_versions(versions)
            return versions[image_id]

    # -- export ------------------------------------------------------------

    def annotated_docs(self) -> List[AnnotationDoc]:
        versions = self._versions()
        return [self.get_annotations(i)[0]
                for i in self.image_ids() if versions.get(i, 0) > 0]

    def export_archive(self, format: str) -> bytes:
        """Zip of the export for all annotated images; deterministic layout."""
        if format not in EXPORT_FORMATS:
            raise UnknownFormat(format)
        docs = self.annotated_docs()
        if not docs:
            raise NothingToExport("no annotated images")
        buf = io.BytesIO()
        # Fixed timestamp keeps repeated exports byte-identical.
        def add(zf: zipfile.ZipFile, name: str, text: str):
            info = zipfile.ZipInfo(name, date_time=(2000, 1, 1, 0, 0, 0))
            zf.writestr(info, text.encode("utf-8"))

        with zipfile.ZipFile(buf, "w", zipfile.ZIP_DEFLATED) as zf:
            if format == "coco":
                add(zf, "annotations.json", dumps_coco(export_coco(docs, self.ontology)))
            elif format == "yolo":
                add(zf, "classes.names", yolo_names(self.ontology))
                for doc in docs:
                    stem = Path(doc.image_id).stem
                    add(zf, f"labels/{stem}.txt",
                        "\n".join(export_yolo(doc)) + "\n")
            else:
                for doc in docs:
                    stem = Path(doc.image_id).stem
                    add(zf, f"page/{stem}.xml",
                        dumps_pagexml(export_pagexml(doc, self.ontology)))
        return buf.getvalue()


def _atomic_write(path: Path, text: str):
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
