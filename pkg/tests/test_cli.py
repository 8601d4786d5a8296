import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from charterlab.cli import main
from charterlab.geometry import Rect
from charterlab.model import (
    CALIBRATION_CARD,
    SEAL,
    AnnotationDoc,
    RectAnnotation,
    dumps_doc,
)

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def runner():
    return CliRunner()


def write_doc(path: Path, doc: AnnotationDoc):
    path.write_text(dumps_doc(doc), encoding="utf-8")


class TestResolutionCommand:
    def test_csv_per_card_plus_mean(self, runner, tmp_path):
        doc = AnnotationDoc(image_id="ch1.jpg", width=4000, height=3000,
                            annotations=(
            RectAnnotation(rect=Rect(0, 0, 2050, 300), class_id=CALIBRATION_CARD),
            RectAnnotation(rect=Rect(0, 500, 1025, 650), class_id=CALIBRATION_CARD),
            RectAnnotation(rect=Rect(100, 100, 200, 200), class_id=SEAL),
        ))
        write_doc(tmp_path / "ch1.jpg.json", doc)
        out = tmp_path / "res.csv"
        result = runner.invoke(main, ["resolution", "--annotations",
                                      str(tmp_path), "--out", str(out)])
        assert result.exit_code == 0, result.output
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "image_id,method,ppcm,low,high"
        assert lines[1].startswith("ch1.jpg,calibration-card,100.0000")
        assert lines[2].startswith("ch1.jpg,calibration-card,50.0000")
        assert lines[3].startswith("ch1.jpg,mean,75.0000")

    def test_phi_adds_bounds(self, runner, tmp_path):
        doc = AnnotationDoc(image_id="ch1.jpg", width=4000, height=3000,
                            annotations=(
            RectAnnotation(rect=Rect(0, 0, 2050, 300), class_id=CALIBRATION_CARD),))
        write_doc(tmp_path / "ch1.jpg.json", doc)
        result = runner.invoke(main, ["resolution", "--annotations",
                                      str(tmp_path), "--phi", "45"])
        assert result.exit_code == 0, result.output
        row = result.output.strip().split("\n")[1].split(",")
        assert float(row[3]) == pytest.approx(92.388, abs=1e-3)
        assert float(row[4]) == 100.0


class TestEvalDetect:
    def test_fixture_metrics_recomputed_exactly(self, runner, tmp_path):
        result = runner.invoke(main, [
            "eval", "detect",
            "--gt", str(FIXTURES / "fixture_gt.coco.json"),
            "--pred", str(FIXTURES / "fixture_predictions.json"),
            "--iou", "0.5", "--out-dir", str(tmp_path), "--no-figures",
        ])
        assert result.exit_code == 0, result.output
        got = json.loads((tmp_path / "metrics.json").read_text())
        stored = json.loads((FIXTURES / "fixture_metrics.json").read_text())
        assert got["map"] == pytest.approx(stored["map"], abs=1e-9)
        for label, ap in stored["per_class_ap"].items():
            assert got["per_class_ap"][label] == pytest.approx(ap, abs=1e-9)

    def test_outputs_and_figures(self, runner, tmp_path):
        result = runner.invoke(main, [
            "eval", "detect",
            "--gt", str(FIXTURES / "fixture_gt.coco.json"),
            "--pred", str(FIXTURES / "fixture_predictions.json"),
            "--out-dir", str(tmp_path),
        ])
        assert result.exit_code == 0, result.output
        for name in ["metrics.json", "per_class_ap.csv", "confusion_matrix.csv",
                     "pr_curves.png", "confusion_matrix.png"]:
            assert (tmp_path / name).exists(), name
        assert "mAP@0.50" in result.output


class TestEvalRegress:
    def test_metrics_and_growth(self, runner, tmp_path):
        pairs = tmp_path / "pairs.csv"
        rows = ["pred,gt"] + [f"{p},{g}" for p, g in
                              [(10, 10), (12, 11), (13, 15), (40, 20), (8, 9)]]
        pairs.write_text("\n".join(rows) + "\n")
        result = runner.invoke(main, ["eval", "regress", "--pairs", str(pairs),
                                      "--out-dir", str(tmp_path)])
        assert result.exit_code == 0, result.output
        metrics = json.loads((tmp_path / "metrics.json").read_text())
        assert metrics["n_samples"] == 5
        assert metrics["mse"] > 0
        growth = (tmp_path / "growth.csv").read_text().strip().split("\n")
        assert growth[0] == "n_included,mse,spearman"
        assert len(growth) == 5  # n = 2..5
        assert (tmp_path / "growth.png").exists()


class TestExportCommand:
    def test_workspace_export(self, runner, tmp_path):
        from PIL import Image

        from charterlab.workspace import Workspace

        Image.new("RGB", (100, 80)).save(tmp_path / "a.png")
        ws = Workspace(tmp_path)
        from charterlab.model import doc_from_json
        ws.put_annotations("a.png", doc_from_json({
            "schema_version": 1, "image_id": "a.png", "width": 100,
            "height": 80, "annotations": [
                {"left": 1, "top": 1, "right": 50, "bottom": 40, "class": 3,
                 "transcription": None, "comment": None}]}), 0)
        out = tmp_path / "out.zip"
        result = runner.invoke(main, ["export", "--workspace", str(tmp_path),
                                      "--format", "coco", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert out.exists()
