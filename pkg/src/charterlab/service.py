"""HTTP/JSON API over a workspace, for the annotation UI and export tooling.

Single-user local service: no authentication, optimistic versioning on
writes, immutable cache headers on image bytes.
"""

from __future__ import annotations

import hashlib
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.responses import FileResponse, Response
from fastapi.staticfiles import StaticFiles

from .model import doc_from_json, doc_to_json
from .workspace import (
    NothingToExport,
    UnknownFormat,
    UnknownImage,
    ValidationFailed,
    VersionConflict,
    Workspace,
)

MEDIA_TYPES = {
    ".png": "image/png", ".jpg": "image/jpeg", ".jpeg": "image/jpeg",
    ".tif": "image/tiff", ".tiff": "image/tiff", ".bmp": "image/bmp",
    ".webp": "image/webp",
}


def create_app(workspace: Workspace, ui_dir: Optional[Path] = None) -> FastAPI:
    app = FastAPI(title="charterlab annotation service")

    @app.get("/api/images")
    def list_images():
        return [
            {
                "image_id": e.image_id,
                "width": e.width,
                "height": e.height,
                "annotated": e.annotated,
                "decode_error": e.decode_error,
            }
            for e in workspace.list_images()
        ]

    @app.get("/api/images/{image_id}/file")
    def image_file(image_id: str):
        try:
            path = workspace.image_path(image_id)
        except UnknownImage:
            raise HTTPException(404, f"unknown image {image_id!r}")
        etag = hashlib.sha1(path.read_bytes()).hexdigest()
        return FileResponse(
            path,
            media_type=MEDIA_TYPES.get(path.suffix.lower(), "application/octet-stream"),
            headers={"Cache-Control": "public, max-age=31536000, immutable",
                     "ETag": etag},
        )

    @app.get("/api/images/{image_id}/annotations")
    def get_annotations(image_id: str):
        try:
            doc, version = workspace.get_annotations(image_id)
        except UnknownImage:
            raise HTTPException(404, f"unknown image {image_id!r}")
        return {"doc": doc_to_json(doc), "version": version}

    @app.put("/api/images/{image_id}/annotations")
    async def put_annotations(image_id: str, request: Request):
        body = await request.json()
        if "doc" not in body or "expected_version" not in body:
            raise HTTPException(400, "body must carry doc and expected_version")
        try:
            doc = doc_from_json(body["doc"])
        except (KeyError, ValueError, TypeError) as exc:
            raise HTTPException(422, f"malformed doc: {exc}")
        try:
            version = workspace.put_annotations(image_id, doc,
                                                int(body["expected_version"]))
        except UnknownImage:
            raise HTTPException(404, f"unknown image {image_id!r}")
        except ValidationFailed as exc:
            raise HTTPException(422, str(exc))
        except VersionConflict as exc:
            raise HTTPException(409, str(exc))
        return {"version": version}

    @app.get("/api/config")
    def config():
        onto = workspace.ontology
        return {
            "labels": list(onto.labels),
            "key_bindings": dict(onto.key_bindings),
            "preferences": dict(onto.preferences),
        }

    @app.post("/api/export")
    def export(format: str = Query(...)):
        try:
            data = workspace.export_archive(format)
        except UnknownFormat:
            raise HTTPException(400, f"unknown format {format!r}")
        except NothingToExport:
            raise HTTPException(409, "no annotated images to export")
        return Response(
            content=data,
            media_type="application/zip",
            headers={"Content-Disposition":
                     f'attachment; filename="export-{format}.zip"'},
        )

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
