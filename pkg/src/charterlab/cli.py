"""Command-line entry points: annotation server, dataset export, resolution
estimation, and the evaluation harness with figure output."""

from __future__ import annotations

import csv
import json
import sys
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import click

from .geometry import Rect
from .metrics.detection import (
    DEFAULT_CONF_THRESHOLD,
    Detection,
    NoGroundTruth,
    confusion_matrix,
    flatten_scenes,
    mean_ap,
    pr_curve,
)
from .metrics.regression import inlier_growth_curves, mse, spearman
from .model import (
    CALIBRATION_CARD,
    AnnotationDoc,
    RectAnnotation,
    default_ontology,
    loads_doc,
)
from .resolution import (
    CalibrationCardSpec,
    ViewAngle,
    ppcm_from_calibration_bbox,
    ppcm_interval,
)


@click.group()
def main():
    """Charter annotation toolkit."""


@main.command()
@click.option("--workspace", "workspace_dir", required=True,
              type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--config", "config_path", default=None,
              type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--ui-dir", default=None,
              type=click.Path(exists=True, file_okay=False, path_type=Path),
              help="Static UI bundle to host at /")
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(workspace_dir: Path, port: int, config_path: Optional[Path],
          ui_dir: Optional[Path], host: str):
    """Run the annotation HTTP service over a workspace directory."""
    import uvicorn

    from .service import create_app
    from .workspace import Workspace

    if ui_dir is None:
        bundled = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        if bundled.is_dir():
            ui_dir = bundled
    app = create_app(Workspace(workspace_dir, config_path), ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port)


@main.command()
@click.option("--workspace", "workspace_dir", required=True,
              type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.option("--format", "fmt", required=True,
              type=click.Choice(["coco", "yolo", "pagexml"]))
@click.option("--out", required=True, type=click.Path(path_type=Path))
@click.option("--config", "config_path", default=None,
              type=click.Path(exists=True, dir_okay=False, path_type=Path))
def export(workspace_dir: Path, fmt: str, out: Path, config_path: Optional[Path]):
    """Export all annotated images of a workspace to a zip archive."""
    from .workspace import Workspace

    ws = Workspace(workspace_dir, config_path)
    out.write_bytes(ws.export_archive(fmt))
    click.echo(f"wrote {out}")


@main.command()
@click.option("--annotations", "ann_dir", required=True,
              type=click.Path(exists=True, file_okay=False, path_type=Path),
              help="Directory of annotation JSON files")
@click.option("--out", default="-", type=click.Path(allow_dash=True),
              help="CSV output path (default stdout)")
@click.option("--phi", default=None, type=float,
              help="Camera view angle in degrees; adds perspective bounds")
@click.option("--card-length", default=20.5, show_default=True, type=float,
              help="Calibration card length in cm")
def resolution(ann_dir: Path, out: str, phi: Optional[float], card_length: float):
    """Estimate PpCm from calibration-card annotations.

    Emits one CSV row per card; images with several cards also get a mean row.
    """
    spec = CalibrationCardSpec(length_cm=card_length)
    angle = ViewAngle(phi) if phi is not None else None
    rows: List[Tuple[str, str, float, float, float]] = []
    for path in sorted(ann_dir.glob("*.json")):
        if path.name == "index.json":
            continue
        doc = loads_doc(path.read_text(encoding="utf-8"))
        estimates = []
        for ann in doc.annotations:
            if ann.class_id != CALIBRATION_CARD:
                continue
            est = ppcm_from_calibration_bbox(ann.rect, spec)
            if angle is not None:
                est = ppcm_interval(est, angle)
            estimates.append(est)
        for est in estimates:
            rows.append((doc.image_id, est.method, est.ppcm, est.low, est.high))
        if len(estimates) > 1:
            n = len(estimates)
            rows.append((doc.image_id, "mean",
                         sum(e.ppcm for e in estimates) / n,
                         sum(e.low for e in estimates) / n,
                         sum(e.high for e in estimates) / n))

    fh = sys.stdout if out == "-" else open(out, "w", newline="", encoding="utf-8")
    try:
        writer = csv.writer(fh)
        writer.writerow(["image_id", "method", "ppcm", "low", "high"])
        for image_id, method, ppcm, low, high in rows:
            writer.writerow([image_id, method, f"{ppcm:.4f}", f"{low:.4f}",
                             f"{high:.4f}"])
    finally:
        if fh is not sys.stdout:
            fh.close()


@main.group()
def eval():
    """Evaluation harness for detections and regressions."""


def _load_gt_coco(path: Path) -> Tuple[Dict[int, str], Dict[int, Tuple[int, int]],
                                       Dict[int, List[RectAnnotation]], Dict[int, str]]:
    bundle = json.loads(path.read_text(encoding="utf-8"))
    id_to_name = {img["id"]: img["file_name"] for img in bundle["images"]}
    id_to_dims = {img["id"]: (img["width"], img["height"])
                  for img in bundle["images"]}
    gts: Dict[int, List[RectAnnotation]] = {i: [] for i in id_to_name}
    for ann in bundle["annotations"]:
        x, y, w, h = ann["bbox"]
        gts[ann["image_id"]].append(RectAnnotation(
            rect=Rect(x, y, x + w, y + h), class_id=ann["category_id"]))
    cat_names = {c["id"]: c["name"] for c in bundle.get("categories", [])}
    return id_to_name, id_to_dims, gts, cat_names


def _load_predictions(path: Path, id_to_name: Dict[int, str]
                      ) -> Dict[int, List[Detection]]:
    name_to_id = {v: k for k, v in id_to_name.items()}
    preds: Dict[int, List[Detection]] = {i: [] for i in id_to_name}
    for entry in json.loads(path.read_text(encoding="utf-8")):
        ref = entry["image_id"]
        image_id = name_to_id[ref] if isinstance(ref, str) else int(ref)
        if image_id not in preds:
            raise click.ClickException(f"prediction references unknown image {ref!r}")
        x, y, w, h = entry["bbox"]
        preds[image_id].append(Detection(
            rect=Rect(x, y, x + w, y + h),
            class_id=int(entry["category_id"]),
            confidence=float(entry["score"])))
    return preds


@eval.command()
@click.option("--gt", "gt_path", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Ground truth in COCO JSON")
@click.option("--pred", "pred_path", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="Predictions JSON (COCO results list)")
@click.option("--iou", "iou_thr", default=0.5, show_default=True, type=float)
@click.option("--conf", "conf_thr", default=DEFAULT_CONF_THRESHOLD,
              show_default=True, type=float)
@click.option("--out-dir", default=".", show_default=True,
              type=click.Path(file_okay=False, path_type=Path))
@click.option("--figures/--no-figures", default=True, show_default=True)
def detect(gt_path: Path, pred_path: Path, iou_thr: float, conf_thr: float,
           out_dir: Path, figures: bool):
    """Compute mAP, per-class AP, and the confusion matrix."""
    onto = default_ontology()
    id_to_name, _dims, gts_by_image, cat_names = _load_gt_coco(gt_path)
    preds_by_image = _load_predictions(pred_path, id_to_name)

    scenes = [(preds_by_image[i], gts_by_image[i]) for i in sorted(id_to_name)]
    dets, gts = flatten_scenes(scenes)

    classes = sorted({g.class_id for g in gts})
    curves = {}
    per_class = {}
    for cid in classes:
        curve = pr_curve(dets, gts, cid, iou_thr)
        label = cat_names.get(cid) or onto.label_of(cid)
        curves[label] = curve
        per_class[label] = curve.ap
    try:
        map_value = mean_ap(dets, gts, iou_thr)
    except NoGroundTruth:
        raise click.ClickException("ground truth contains no annotations")
    cm = confusion_matrix(dets, gts, iou_thr, conf_thr,
                          n_classes=onto.class_count())

    out_dir.mkdir(parents=True, exist_ok=True)
    metrics = {"map": map_value, "iou_threshold": iou_thr,
               "confidence_threshold": conf_thr, "per_class_ap": per_class}
    (out_dir / "metrics.json").write_text(
        json.dumps(metrics, indent=2) + "\n", encoding="utf-8")

    with open(out_dir / "per_class_ap.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["class", "ap"])
        for label, ap in per_class.items():
            writer.writerow([label, f"{ap:.6f}"])

    names = [*onto.labels, "background"]
    with open(out_dir / "confusion_matrix.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["gt\\det", *names])
        for i, row in enumerate(cm.counts):
            writer.writerow([names[i], *row.tolist()])

    if figures:
        from .report import render_confusion_matrix, render_pr_curves

        render_pr_curves(curves, out_dir / "pr_curves.png")
        render_confusion_matrix(cm, onto.labels, out_dir / "confusion_matrix.png")

    click.echo(f"mAP@{iou_thr:.2f}: {map_value:.4f}")
    for label, ap in per_class.items():
        click.echo(f"  {label}: {ap:.4f}")


@eval.command()
@click.option("--pairs", "pairs_path", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="CSV with pred and gt columns")
@click.option("--out-dir", default=".", show_default=True,
              type=click.Path(file_okay=False, path_type=Path))
@click.option("--figures/--no-figures", default=True, show_default=True)
def regress(pairs_path: Path, out_dir: Path, figures: bool):
    """Compute MSE, Spearman correlation, and inlier growth curves."""
    pred: List[float] = []
    gt: List[float] = []
    with open(pairs_path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            pred.append(float(row["pred"]))
            gt.append(float(row["gt"]))
    if not pred:
        raise click.ClickException("no rows in pairs file")
    report = inlier_growth_curves(pred, gt)

    out_dir.mkdir(parents=True, exist_ok=True)
    metrics = {"mse": report.mse, "spearman": report.spearman,
               "n_samples": len(pred)}
    (out_dir / "metrics.json").write_text(
        json.dumps(metrics, indent=2) + "\n", encoding="utf-8")
    with open(out_dir / "growth.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n_included", "mse", "spearman"])
        for pt in report.growth:
            writer.writerow([pt.n_included, f"{pt.mse:.8f}",
                             "" if pt.spearman is None else f"{pt.spearman:.8f}"])

    if figures:
        from .report import render_growth_curves

        render_growth_curves(report, out_dir / "growth.png")

    rho = "n/a" if report.spearman is None else f"{report.spearman:.4f}"
    click.echo(f"mse: {report.mse:.6f}  spearman: {rho}")


if __name__ == "__main__":
    main()
