"""Nuclear morphometry, sampling, segmentation scoring and outcome statistics."""

from ._nucmorph import (
    Error,
    bootstrap_auc_ci,
    cohen_kappa_weighted,
    confusion_metrics,
    cox_univariate,
    death_probability_table,
    describe,
    dice,
    generate_roi,
    grid_sample,
    icc_2_1,
    kaplan_meier,
    label_components,
    lights_kappa,
    match_objects,
    region_properties,
    roc_auc,
    roi_features,
    stratified_sample_12,
    threshold_at_sensitivity,
)

__all__ = [
    "Error",
    "bootstrap_auc_ci",
    "cohen_kappa_weighted",
    "confusion_metrics",
    "cox_univariate",
    "death_probability_table",
    "describe",
    "dice",
    "generate_roi",
    "grid_sample",
    "icc_2_1",
    "kaplan_meier",
    "label_components",
    "lights_kappa",
    "match_objects",
    "region_properties",
    "roc_auc",
    "roi_features",
    "stratified_sample_12",
    "threshold_at_sensitivity",
]
