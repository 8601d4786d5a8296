"""Detection evaluation: greedy matching, PR curves, AP/mAP, confusion matrix.

Matching for the confusion matrix is class-agnostic so cross-class
confusions stay visible; PR/AP matching is class-specific as usual.
AP uses all-points interpolation (area under the precision envelope).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..geometry import Rect, iou
from ..model import RectAnnotation

DEFAULT_CONF_THRESHOLD = 0.25


class NoGroundTruth(ValueError):
    """AP is undefined for a class with no ground truth."""


@dataclass(frozen=True)
class Detection:
    rect: Rect
    class_id: int
    confidence: float

    def __post_init__(self):
        if not 0 <= self.confidence <= 1:
            raise ValueError(f"confidence {self.confidence} out of [0, 1]")


@dataclass(frozen=True)
class Matching:
    pairs: Tuple[Tuple[int, int], ...]  # (detection index, ground-truth index)
    unmatched_dets: Tuple[int, ...]
    unmatched_gts: Tuple[int, ...]


def _ranked_det_order(dets: Sequence[Detection]) -> List[int]:
    # Confidence descending, original index as deterministic tie-break.
    return sorted(range(len(dets)), key=lambda i: (-dets[i].confidence, i))


def match_detections(dets: Sequence[Detection], gts: Sequence[RectAnnotation],
                     iou_thr: float) -> Matching:
    """Class-agnostic greedy matching.

    Detections claim ground truths in confidence order; each takes the
    unmatched ground truth of highest IoU >= iou_thr, ties broken by the
    lowest ground-truth index.
    """
    if not 0 < iou_thr <= 1:
        raise ValueError(f"iou threshold {iou_thr} out of (0, 1]")
    taken = [False] * len(gts)
    pairs: List[Tuple[int, int]] = []
    unmatched_dets: List[int] = []
    for d_idx in _ranked_det_order(dets):
        best_gt, best_iou = -1, 0.0
        for g_idx, gt in enumerate(gts):
            if taken[g_idx]:
                continue
            overlap = iou(dets[d_idx].rect, gt.rect)
            if overlap >= iou_thr and overlap > best_iou:
                best_gt, best_iou = g_idx, overlap
        if best_gt >= 0:
            taken[best_gt] = True
            pairs.append((d_idx, best_gt))
        else:
            unmatched_dets.append(d_idx)
    unmatched_gts = [g for g, t in enumerate(taken) if not t]
    return Matching(pairs=tuple(sorted(pairs)),
                    unmatched_dets=tuple(sorted(unmatched_dets)),
                    unmatched_gts=tuple(unmatched_gts))


@dataclass(frozen=True)
class PRCurve:
    precision: Tuple[float, ...]
    recall: Tuple[float, ...]
    ap: float


def pr_curve(dets: Sequence[Detection], gts: Sequence[RectAnnotation],
             class_id: int, iou_thr: float) -> PRCurve:
    """Ranked precision/recall sweep for one class.

    Only same-class detections and ground truths participate; each ranked
    detection greedily claims its best unmatched ground truth.
    """
    class_gts = [i for i, g in enumerate(gts) if g.class_id == class_id]
    if not class_gts:
        raise NoGroundTruth(f"class {class_id}")
    class_dets = [d for d in dets if d.class_id == class_id]
    order = _ranked_det_order(class_dets)

    taken = set()
    tp_flags: List[bool] = []
    for d_idx in order:
        best_gt, best_iou = -1, 0.0
        for g_idx in class_gts:
            if g_idx in taken:
                continue
            overlap = iou(class_dets[d_idx].rect, gts[g_idx].rect)
            if overlap >= iou_thr and overlap > best_iou:
                best_gt, best_iou = g_idx, overlap
        if best_gt >= 0:
            taken.add(best_gt)
            tp_flags.append(True)
        else:
            tp_flags.append(False)

    n_gt = len(class_gts)
    if not tp_flags:
        return PRCurve(precision=(), recall=(), ap=0.0)
    tp = np.cumsum(tp_flags)
    ranks = np.arange(1, len(tp_flags) + 1)
    precision = tp / ranks
    recall = tp / n_gt
    # Precision envelope: best precision at this recall level or beyond.
    envelope = np.maximum.accumulate(precision[::-1])[::-1]
    prev_recall = np.concatenate([[0.0], recall[:-1]])
    ap = float(np.sum((recall - prev_recall) * envelope))
    return PRCurve(precision=tuple(precision.tolist()),
                   recall=tuple(recall.tolist()), ap=ap)


def per_class_ap(dets: Sequence[Detection], gts: Sequence[RectAnnotation],
                 iou_thr: float) -> Dict[int, float]:
    """AP for every class that has ground truth."""
    classes = sorted({g.class_id for g in gts})
    return {cid: pr_curve(dets, gts, cid, iou_thr).ap for cid in classes}


def mean_ap(dets: Sequence[Detection], gts: Sequence[RectAnnotation],
            iou_thr: float) -> float:
    """Unweighted mean AP over classes with at least one ground truth."""
    aps = per_class_ap(dets, gts, iou_thr)
    if not aps:
        raise NoGroundTruth("no ground truth in any class")
    return float(np.mean(list(aps.values())))


def flatten_scenes(scenes: Sequence[Tuple[Sequence[Detection], Sequence[RectAnnotation]]]
                   ) -> Tuple[List[Detection], List[RectAnnotation]]:
    """Merge per-image scenes into one scene for dataset-level metrics.

    Each scene's boxes are shifted into a disjoint horizontal band, so IoU
    across scenes is exactly 0 and matching can never cross images while the
    confidence ranking stays global.
    """
    from dataclasses import replace as _replace

    dets: List[Detection] = []
    gts: List[RectAnnotation] = []
    offset = 0.0
    for scene_dets, scene_gts in scenes:
        span = max([r.right for r in
                    [d.rect for d in scene_dets] + [g.rect for g in scene_gts]],
                   default=0.0)
        for d in scene_dets:
            r = d.rect
            dets.append(_replace(d, rect=Rect(r.left + offset, r.top,
                                              r.right + offset, r.bottom)))
        for g in scene_gts:
            r = g.rect
            gts.append(g.with_rect(Rect(r.left + offset, r.top,
                                        r.right + offset, r.bottom)))
        offset += span + 1.0
    return dets, gts


@dataclass(frozen=True)
class ConfusionMatrix:
    """(K+1)x(K+1) counts; the last row/column is background (missed /
    spurious)."""
    counts: np.ndarray = field(repr=False)
    n_classes: int

    @property
    def background(self) -> int:
        return self.n_classes


def confusion_matrix(dets: Sequence[Detection], gts: Sequence[RectAnnotation],
                     iou_thr: float, conf_thr: float = DEFAULT_CONF_THRESHOLD,
                     n_classes: int = 11) -> ConfusionMatrix:
    """Row = ground-truth class, column = detected class.

    Detections below conf_thr are dropped; matching is class-agnostic;
    unmatched ground truths land in the background column, unmatched
    detections in the background row.
    """
    if not 0 < conf_thr <= 1:
        raise ValueError(f"confidence threshold {conf_thr} out of (0, 1]")
    kept = [d for d in dets if d.confidence >= conf_thr]
    matching = match_detections(kept, gts, iou_thr)
    counts = np.zeros((n_classes + 1, n_classes + 1), dtype=np.int64)
    bg = n_classes
    for d_idx, g_idx in matching.pairs:
        counts[gts[g_idx].class_id, kept[d_idx].class_id] += 1
    for g_idx in matching.unmatched_gts:
        counts[gts[g_idx].class_id, bg] += 1
    for d_idx in matching.unmatched_dets:
        counts[bg, kept[d_idx].class_id] += 1
    return ConfusionMatrix(counts=counts, n_classes=n_classes)
