from .detection import (
    ConfusionMatrix,
    Detection,
    Matching,
    NoGroundTruth,
    PRCurve,
    confusion_matrix,
    match_detections,
    mean_ap,
    per_class_ap,
    pr_curve,
)
from .regression import (
    DegenerateInput,
    EmptyInput,
    GrowthPoint,
    LengthMismatch,
    RegressionEvalReport,
    inlier_growth_curves,
    mse,
    spearman,
)

__all__ = [
    "ConfusionMatrix",
    "Detection",
    "Matching",
    "NoGroundTruth",
    "PRCurve",
    "confusion_matrix",
    "match_detections",
    "mean_ap",
    "per_class_ap",
    "pr_curve",
    "DegenerateInput",
    "EmptyInput",
    "GrowthPoint",
    "LengthMismatch",
    "RegressionEvalReport",
    "inlier_growth_curves",
    "mse",
    "spearman",
]
