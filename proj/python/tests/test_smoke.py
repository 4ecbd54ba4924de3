import math

import numpy as np
import pytest

import nucmorph


def test_labelling_and_properties():
    mask = np.zeros((20, 30), dtype=np.uint32)
    mask[2:6, 2:6] = 1
    mask[10:14, 20:26] = 1
    labels = nucmorph.label_components(mask)
    assert labels.shape == (20, 30)
    assert labels.max() == 2
    regions = nucmorph.region_properties(labels, 0.5)
    assert [r["pixel_count"] for r in regions] == [16, 24]
    assert regions[0]["area_um2"] == pytest.approx(4.0)
    assert regions[0]["solidity"] == 1.0


def test_describe_worked_example():
    d = nucmorph.describe([10.0 * i for i in range(1, 11)])
    assert d["mean"] == 55.0
    assert d["sd"] == pytest.approx(30.277, abs=1e-3)
    assert d["p90"] == pytest.approx(91.0)
    assert d["skewness"] == pytest.approx(0.0, abs=1e-12)


def test_synth_roundtrip():
    labels, truth = nucmorph.generate_roi(seed=3, n_nuclei=20)
    assert labels.shape == (300, 400)
    assert len(truth) == 20
    again, _ = nucmorph.generate_roi(seed=3, n_nuclei=20)
    assert np.array_equal(labels, again)
    feats = nucmorph.roi_features(labels, 0.25, mask_mode="label")
    assert feats["n_nuclei"] <= 20
    assert nucmorph.dice(labels, labels) == 1.0
    report = nucmorph.match_objects(labels, labels)
    assert report["tp"] == 20 and report["f1"] == 1.0
    assert len(nucmorph.stratified_sample_12(labels, 0.25, seed=1)) == 12


def test_statistics():
    c = nucmorph.confusion_metrics(10, 6, 3, 77)
    assert c["precision"] == 0.625
    auc, points = nucmorph.roc_auc([3.0, 2.0, 1.0, 0.0], [1, 1, 0, 0])
    assert auc == 1.0
    assert points[0][1:] == (0.0, 0.0)
    km = nucmorph.kaplan_meier([2, 4, 6], ["tumor_death", "censored", "tumor_death"])
    assert km[0][4] == 2.0 / 3.0
    assert km[-1][4] == 0.0
    fit = nucmorph.cox_univariate([1, 2, 3, 4], ["tumor_death"] * 4, [1, 1, 0, 0])
    assert fit["diverged"] and fit["hazard_ratio"] is None
    assert nucmorph.cohen_kappa_weighted([1, 2, 3], [1, 2, 3], [1, 2, 3]) == 1.0
    icc, lo, hi = nucmorph.icc_2_1([[1.0, 1.5], [2.0, 2.5], [4.0, 4.0], [3.0, math.nan]])
    assert lo < icc < hi


def test_errors_carry_kind():
    with pytest.raises(nucmorph.Error) as info:
        nucmorph.describe([1.0])
    assert info.value.kind == "sd-undefined"
    with pytest.raises(nucmorph.Error) as info:
        nucmorph.roc_auc([1.0, 2.0], [1, 1])
    assert info.value.kind == "undefined-auc"
