"""End-to-end text detection: wavelet edges -> clusters -> boxes -> characters."""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import raster
from .binarize import apply_threshold, histogram, otsu_threshold
from .charseg import Component, Polarity, detect_polarity, extract_characters, normalize_polarity
from .cluster import ClusterParams, mask_points, subsample, subtractive_cluster
from .edgemap import EdgeParams, binarize_subband, dilate, fuse_and, row_filter, upsample2x
from .grow import BBox, CountTable, GrowParams, grow_region, merge_boxes, shrink_wrap
from .haar import SubbandSet, forward_haar, normalize_band

__all__ = ["PipelineConfig", "Region", "DetectionReport", "PipelineError", "candidate_mask", "run_pipeline"]

log = logging.getLogger(__name__)


class PipelineError(RuntimeError):
    """A stage failed; ``stage`` names it and ``__cause__`` holds the original error."""

    def __init__(self, stage: str, exc: BaseException):
        super().__init__(f"stage {stage!r} failed: {exc}")
        self.stage = stage


@dataclass
class PipelineConfig:
    edge: EdgeParams = field(default_factory=EdgeParams)
    cluster: ClusterParams = field(default_factory=ClusterParams)
    grow: GrowParams = field(default_factory=GrowParams)
    min_char_area: int = 4
    debug_dir: str | None = None

    def __post_init__(self):
        if self.min_char_area < 1:
            raise ValueError(f"min_char_area must be >= 1, got {self.min_char_area}")

    def as_dict(self) -> dict:
        d = asdict(self)
        d.pop("debug_dir")
        return d


@dataclass
class Region:
    bbox: BBox
    otsu_threshold: int
    polarity: Polarity
    characters: list[Component]
    binary: np.ndarray  # polarity-normalised crop mask


@dataclass
class DetectionReport:
    source: str | None
    width: int
    height: int
    config: dict
    regions: list[Region]

    def as_dict(self) -> dict:
        return {
            "source": self.source,
            "width": self.width,
            "height": self.height,
            "config": self.config,
            "regions": [
                {
                    "bbox": r.bbox.as_dict(),
                    "otsu_threshold": int(r.otsu_threshold),
                    "polarity": r.polarity.value,
                    "characters": [{"bbox": c.bbox.as_dict(), "area": c.area} for c in r.characters],
                }
                for r in self.regions
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2) + "\n"


class _Stage:
    def __init__(self, name: str):
        self.name = name

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc is not None and not isinstance(exc, PipelineError):
            raise PipelineError(self.name, exc) from exc
        return False


class _Dumper:
    def __init__(self, debug_dir):
        self.dir = Path(debug_dir) if debug_dir else None
        if self.dir is not None:
            self.dir.mkdir(parents=True, exist_ok=True)

    def mask(self, name, m):
        if self.dir is not None:
            raster.save_mask(m, self.dir / f"{name}.pgm")

    def gray(self, name, img):
        if self.dir is not None:
            raster.save_gray(img, self.dir / f"{name}.pgm")

    def json(self, name, obj):
        if self.dir is not None:
            (self.dir / f"{name}.json").write_text(json.dumps(obj, indent=2) + "\n")


def candidate_mask(img: np.ndarray, edge: EdgeParams, dump: _Dumper | None = None) -> np.ndarray:
    """Row-filtered candidate-text mask at source resolution."""
    dump = dump or _Dumper(None)
    h, w = img.shape
    with _Stage("pad_to_even"):
        padded = raster.pad_to_even(img)
    with _Stage("forward_haar"):
        bands = forward_haar(padded)
    for name, band in bands.items():
        dump.gray(f"00_band_{name}", normalize_band(band))
    with _Stage("binarize_subband"):
        edges = {name: binarize_subband(getattr(bands, name), edge.sigma) for name in ("lh", "hl", "hh")}
    with _Stage("dilate"):
        grown = {name: dilate(m, edge.dilate_iters) for name, m in edges.items()}
    for name in ("lh", "hl", "hh"):
        dump.mask(f"01_edges_{name}", edges[name])
        dump.mask(f"02_dilated_{name}", grown[name])
    with _Stage("fuse_and"):
        fused = fuse_and(grown["lh"], grown["hl"], grown["hh"])
    dump.mask("03_fused", fused)
    with _Stage("upsample2x"):
        roi = upsample2x(fused, w, h)
    dump.mask("04_roi", roi)
    with _Stage("row_filter"):
        kept = row_filter(roi, edge.row_frac, edge.row_min)
    dump.mask("05_row_filtered", kept)
    return kept


def _region(img: np.ndarray, box: BBox, min_char_area: int) -> Region:
    t = otsu_threshold(histogram(img, box))
    binary = apply_threshold(img, box, t)
    pol = detect_polarity(binary)
    norm = normalize_polarity(binary, pol)
    return Region(box, t, pol, extract_characters(norm, min_char_area), norm)


def run_pipeline(img: np.ndarray, cfg: PipelineConfig | None = None, source: str | None = None) -> DetectionReport:
    cfg = cfg or PipelineConfig()
    img = np.asarray(img)
    if img.ndim != 2 or img.shape[0] < 2 or img.shape[1] < 2:
        raise ValueError(f"need a 2-D gray image of at least 2x2, got shape {img.shape}")
    img = img.astype(np.uint8, copy=False)
    h, w = img.shape
    dump = _Dumper(cfg.debug_dir)
    cparams = cfg.cluster.resolved(w, h)
    config_echo = cfg.as_dict()
    config_echo["cluster"] = asdict(cparams)

    mask = candidate_mask(img, cfg.edge, dump)
    with _Stage("subsample"):
        pts = subsample(mask_points(mask), cparams.max_points)
    log.debug("%d candidate pixels, %d clustered", int(mask.sum()), len(pts))
    with _Stage("subtractive_cluster"):
        centers = subtractive_cluster(pts, cparams)
    dump.json("06_centers", [[float(x), float(y)] for x, y in centers])

    with _Stage("grow_region"):
        table = CountTable(mask)
        grown = [grow_region(table, (x, y), cfg.grow) for x, y in centers]
    with _Stage("shrink_wrap"):
        wrapped = [shrink_wrap(mask, b) for b in grown if b is not None]
    with _Stage("merge_boxes"):
        boxes = merge_boxes([b for b in wrapped if b is not None], cfg.grow.min_box_w, cfg.grow.min_box_h)
    dump.json("07_boxes", [b.as_dict() for b in boxes])

    regions = []
    with _Stage("characters"):
        for box in boxes:
            region = _region(img, box, cfg.min_char_area)
            if not region.binary.any():
                log.debug("dropping empty region %s", box)
                continue
            regions.append(region)
    for i, r in enumerate(regions):
        dump.mask(f"08_region{i}_binary", r.binary)

    return DetectionReport(source, w, h, config_echo, regions)
