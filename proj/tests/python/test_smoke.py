import math

import numpy as np
import pytest

import sht


def test_default_config_round_trips():
    cfg = sht.default_config()
    assert cfg["n_particles"] == 600
    assert sht.validate_config(cfg) == cfg
    assert sht.validate_config({"n_particles": 100})["n_particles"] == 100


def test_bad_config_raises():
    with pytest.raises(Exception, match="no_such_key"):
        sht.validate_config({"no_such_key": 1})
    with pytest.raises(Exception):
        sht.validate_config({"tau_c": 0.9})


def test_metrics():
    assert sht.overlap_rate((0, 0, 2, 2), (1, 0, 2, 2)) == pytest.approx(1 / 3)
    assert sht.center_error((0, 0, 4, 4), (3, 4, 4, 4)) == 5.0
    thresholds, rates = sht.success_curve([0.5] * 4)
    assert len(thresholds) == len(rates) == 11
    assert rates[5] == 1.0 and rates[6] == 0.0


def test_connected_regions():
    mask = np.zeros((10, 10), dtype=np.uint8)
    mask[1:4, 1:4] = 1
    mask[8, 8] = 1
    regions = sht.connected_regions(mask, 2)
    assert len(regions) == 1
    assert regions[0]["area"] == 9
    assert regions[0]["center"] == (2, 2)


def test_refine_keeps_alpha_on_the_simplex():
    rng = np.random.default_rng(0)
    basis, _ = np.linalg.qr(rng.standard_normal((1024, 16)))
    cands = basis @ rng.standard_normal((16, 5)) * 0.2 + rng.standard_normal((1024, 5)) * 0.01
    out = sht.refine(cands, basis, np.full(5, 0.2))
    assert math.isclose(out["alpha"].sum(), 1.0, abs_tol=1e-12)
    assert (out["alpha"] >= 0).all()
    trace = out["objective_trace"]
    assert all(b <= a + 1e-10 for a, b in zip(trace, trace[1:]))


def test_tracker_follows_a_synthetic_target():
    frames, boxes = sht.render_synthetic("smooth-motion", frames=8, width=240, height=180, target_size=30, seed=2)
    assert frames[0].shape == (180, 240, 3)
    tracker = sht.Tracker(frames[0], boxes[0], {"n_particles": 150, "n_superpixel_candidates": 15, "seed": 3})
    for frame, box in zip(frames[1:], boxes[1:]):
        out = tracker.step(frame)
        assert out["mode"] in {"global-only", "global-local", "local", "local-fallback"}
        assert sht.center_error(out["box"], box) < 10.0
    assert tracker.saliency_weights.shape == (19,)


def test_uint8_frames_are_accepted():
    frames, boxes = sht.render_synthetic("occlusion", frames=2, width=160, height=120, target_size=24, seed=4)
    as_bytes = [np.round(f * 255).astype(np.uint8) for f in frames]
    tracker = sht.Tracker(as_bytes[0], boxes[0], {"n_particles": 60, "n_superpixel_candidates": 6})
    assert len(tracker.step(as_bytes[1])["box"]) == 4
    with pytest.raises(Exception):
        sht.Tracker(np.zeros((10, 10)), (1, 1, 3, 3))
