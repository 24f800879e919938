"""Exit criteria. Each test carries a ``criterion`` marker; the terminal
summary prints one PASS/FAIL line per criterion."""

import json
import math
import time

import numpy as np
import pytest

from scenes import gradient_scene, iou, two_blobs
from test_binarize import otsu_oracle
from test_charseg import flood_fill_oracle
from test_cluster import potential_oracle
from wavetext.binarize import otsu_threshold
from wavetext.charseg import label_image
from wavetext.cli import main
from wavetext.cluster import ClusterParams, subtractive_cluster
from wavetext.edgemap import EdgeParams, fuse_and, row_filter, row_threshold
from wavetext.grow import GrowParams, grow_region_steps, shrink_wrap, BBox
from wavetext.haar import forward_haar, inverse_haar
from wavetext.pipeline import candidate_mask, run_pipeline
from wavetext.raster import save_gray


@pytest.fixture(scope="module")
def haar_corpus():
    rng = np.random.default_rng(20261014)
    corpus = []
    for _ in range(100):
        h, w = 2 * rng.integers(1, 129, size=2)
        corpus.append(rng.integers(0, 256, size=(h, w)).astype(np.uint8))
    return corpus


@pytest.mark.criterion(1, "Haar round-trip < 1e-9 on 100 random images, < 5 s")
def test_haar_round_trip(haar_corpus):
    start = time.perf_counter()
    worst = max(float(np.abs(inverse_haar(forward_haar(img)) - img).max()) for img in haar_corpus)
    elapsed = time.perf_counter() - start
    assert worst < 1e-9
    assert elapsed < 5.0


@pytest.mark.criterion(2, "Energy conservation, relative discrepancy < 1e-9")
def test_energy_conservation(haar_corpus):
    for img in haar_corpus:
        e_img = float((img.astype(np.float64) ** 2).sum())
        bands = forward_haar(img)
        e_bands = sum(float((b * b).sum()) for _, b in bands.items())
        assert abs(e_img - e_bands) / e_img < 1e-9


def _detail_share(img, name):
    energy = forward_haar(img).detail_energy()
    return energy[name] / sum(energy.values())


@pytest.mark.criterion(3, "Sub-band semantics: stripes/checkerboard >= 99% in HL/LH/HH")
def test_subband_semantics():
    yy, xx = np.mgrid[0:64, 0:64]
    vertical = np.where(xx % 2, 255, 0).astype(np.uint8)
    horizontal = np.where(yy % 2, 255, 0).astype(np.uint8)
    checker = np.where((xx + yy) % 2, 255, 0).astype(np.uint8)
    assert _detail_share(vertical, "hl") >= 0.99
    assert _detail_share(horizontal, "lh") >= 0.99
    assert _detail_share(checker, "hh") >= 0.99


def _random_histogram(rng):
    kind = rng.integers(0, 4)
    if kind == 0:
        counts = rng.integers(0, 1000, 256)
    elif kind == 1:  # sparse: a handful of populated bins
        counts = np.zeros(256, np.int64)
        counts[rng.choice(256, size=rng.integers(1, 6), replace=False)] = rng.integers(1, 50, 1)[0]
    elif kind == 2:  # bimodal
        v = np.arange(256)
        m1, m2 = rng.uniform(20, 120), rng.uniform(130, 235)
        counts = np.rint(400 * np.exp(-((v - m1) / 15) ** 2) + 300 * np.exp(-((v - m2) / 20) ** 2)).astype(np.int64)
    else:
        counts = rng.integers(0, 3, 256) * rng.integers(0, 2, 256)
    if counts.sum() == 0:
        counts[rng.integers(0, 256)] = 1
    return counts.tolist()


@pytest.mark.criterion(4, "Otsu equals exhaustive argmax on 1000 random histograms")
def test_otsu_oracle_equivalence():
    rng = np.random.default_rng(4)
    mismatches = 0
    for _ in range(1000):
        counts = _random_histogram(rng)
        mismatches += otsu_threshold(counts) != otsu_oracle(counts)
    assert mismatches == 0


@pytest.mark.criterion(5, "4-connected labelling equals flood fill on 200 random 64x64 masks")
def test_labelling_oracle_equivalence():
    rng = np.random.default_rng(5)
    for _ in range(200):
        m = rng.random((64, 64)) < rng.uniform(0.1, 0.9)
        labels, n = label_image(m)
        oracle, n_oracle = flood_fill_oracle(m)
        assert n == n_oracle
        assert np.array_equal(labels, oracle)


@pytest.mark.criterion(6, "Two-blob clustering: 2 centres near means, first = potential argmax")
def test_two_blob_clustering():
    rng = np.random.default_rng(6)
    for _ in range(50):
        ra = rng.uniform(5.0, 40.0)
        pts, m1, m2 = two_blobs(rng, ra)
        centers = subtractive_cluster(pts, ClusterParams(radius_a=ra))
        assert len(centers) == 2
        for m in (m1, m2):
            assert min(np.linalg.norm(c - m) for c in centers) <= ra / 2
        first = int(np.argmax(potential_oracle(pts.tolist(), ra)))
        assert centers[0].tolist() == pts[first].tolist()


@pytest.mark.criterion(7, "fuse_and / row_filter subset fuzz on 500 mask triples")
def test_fusion_filter_subsets():
    rng = np.random.default_rng(7)
    for _ in range(500):
        h, w = rng.integers(1, 80, size=2)
        density = rng.uniform(0.05, 0.95, size=3)
        a, b, c = (rng.random((h, w)) < d for d in density)
        fused = fuse_and(a, b, c)
        for m in (a, b, c):
            assert not (fused & ~m).any()
        frac, rmin = rng.uniform(0.01, 1.0), int(rng.integers(1, 10))
        out = row_filter(a, frac, rmin)
        t = row_threshold(w, frac, rmin)
        assert not (out & ~a).any()
        for y in np.flatnonzero(out.any(axis=1)):
            assert a[y].sum() >= t


@pytest.mark.criterion(8, "Region growing recovers solid blocks within the iteration bound")
def test_region_growing_blocks():
    rng = np.random.default_rng(8)
    params = GrowParams()
    for _ in range(100):
        h, w = (int(v) for v in rng.integers(48, 129, size=2))
        bw = int(rng.integers(3, min(30, w // 2) + 1))
        bh = int(rng.integers(3, min(30, h // 2) + 1))
        bx = int(rng.integers(0, w - bw + 1))
        by = int(rng.integers(0, h - bh + 1))
        mask = np.zeros((h, w), bool)
        mask[by:by + bh, bx:bx + bw] = True
        c = (rng.uniform(bx, bx + bw - 1), rng.uniform(by, by + bh - 1))
        box, iterations = grow_region_steps(mask, c, params)
        assert box is not None
        assert shrink_wrap(mask, box) == BBox(bx, by, bx + bw - 1, by + bh - 1)
        assert iterations <= math.ceil(max(w, h) / (2 * params.grow_step)) + 1


@pytest.mark.criterion(9, "Synthetic scene: 1 region, IoU >= 0.5, sigma monotone, < 1 s")
def test_end_to_end_scene():
    img, truth = gradient_scene()
    run_pipeline(img)  # warm caches/imports before timing
    start = time.perf_counter()
    report = run_pipeline(img)
    elapsed = time.perf_counter() - start
    assert len(report.regions) == 1
    assert iou(report.regions[0].bbox, truth) >= 0.5
    counts = [int(candidate_mask(img, EdgeParams(sigma=s)).sum()) for s in (1.0, 1.5, 2.5, 4.0)]
    assert all(later <= earlier for earlier, later in zip(counts, counts[1:]))
    assert elapsed < 1.0


@pytest.mark.criterion(10, "Two detect runs produce byte-identical JSON")
def test_cli_determinism(tmp_path):
    src = tmp_path / "scene.pgm"
    save_gray(gradient_scene()[0], src)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["detect", str(src), "--json", str(a)]) == 0
    assert main(["detect", str(src), "--json", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_bytes())["regions"]
