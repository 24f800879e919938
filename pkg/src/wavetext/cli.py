"""Command-line front end: ``wavetext detect | dwt | version``.

Exit codes: 0 success (zero regions included), 1 I/O or image format
error, 2 invalid arguments.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__, raster
from .cluster import ClusterParams
from .edgemap import EdgeParams
from .grow import GrowParams
from .haar import forward_haar, normalize_band
from .pipeline import PipelineConfig, PipelineError, run_pipeline

PROG = "wavetext"


def _min_box(text: str) -> tuple[int, int]:
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected WxH (e.g. 8x8), got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=PROG, description="Detect text regions in natural-scene images.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log pipeline progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, metavar="{detect,dwt,version}")

    det = sub.add_parser("detect", help="run the detection pipeline and emit a JSON report")
    det.add_argument("input", help="PGM (P5) or PNG image")
    det.add_argument("--out", metavar="DIR", help="write region and character crops here")
    det.add_argument("--json", metavar="PATH", default="-", help="report destination ('-' = stdout, the default)")
    det.add_argument("--figure", metavar="PATH", help="render the detections over the image (PNG)")
    det.add_argument("--sigma", type=float, default=EdgeParams.sigma)
    det.add_argument("--dilate-iters", type=int, default=EdgeParams.dilate_iters)
    det.add_argument("--row-frac", type=float, default=EdgeParams.row_frac)
    det.add_argument("--row-min", type=int, default=EdgeParams.row_min)
    det.add_argument("--cluster-radius", type=float, default=None, metavar="F",
                     help="cluster radius in pixels (default: 0.1 x image diagonal)")
    det.add_argument("--grow-step", type=int, default=GrowParams.grow_step)
    det.add_argument("--stop-percent", type=float, default=GrowParams.stop_percent)
    det.add_argument("--min-box", type=_min_box, default=(GrowParams.min_box_w, GrowParams.min_box_h),
                     metavar="WxH")
    det.add_argument("--min-char-area", type=int, default=4)
    det.add_argument("--debug-dump", metavar="DIR", help="dump every intermediate mask here")

    dwt = sub.add_parser("dwt", help="dump the four Haar sub-bands as PGM files")
    dwt.add_argument("input")
    dwt.add_argument("--out", metavar="DIR", default=".")
    dwt.add_argument("--figure", metavar="PATH", help="also render the 2x2 sub-band layout (PNG)")

    sub.add_parser("version", help="print the tool version")
    return parser


def config_from_args(args) -> PipelineConfig:
    """Raises ``ValueError`` when a parameter violates its constraints."""
    return PipelineConfig(
        edge=EdgeParams(args.sigma, args.dilate_iters, args.row_frac, args.row_min),
        cluster=ClusterParams(radius_a=args.cluster_radius),
        grow=GrowParams(args.grow_step, args.stop_percent, *args.min_box),
        min_char_area=args.min_char_area,
        debug_dir=args.debug_dump,
    )


def _write_crops(img, report, out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    for r, region in enumerate(report.regions):
        raster.save_gray(img[region.bbox.slices()], out_dir / f"region{r}.pgm")
        for k, comp in enumerate(region.characters):
            raster.save_mask(comp.mask, out_dir / f"region{r}_char{k}.pgm")


def _detect(args, parser) -> int:
    try:
        cfg = config_from_args(args)
    except ValueError as exc:
        parser.error(str(exc))
    img = raster.load_image(args.input)
    report = run_pipeline(img, cfg, source=args.input)
    text = report.to_json()
    if args.json == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        Path(args.json).write_text(text)
    if args.out:
        _write_crops(img, report, Path(args.out))
    if args.figure:
        from .plotting import plot_detection

        plot_detection(img, report, args.figure)
    return 0


def _dwt(args) -> int:
    img = raster.load_image(args.input)
    bands = forward_haar(raster.pad_to_even(img))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = Path(args.input).stem
    for name, band in bands.items():
        raster.save_gray(normalize_band(band), out / f"{stem}_{name.upper()}.pgm")
    if args.figure:
        from .plotting import plot_subbands

        plot_subbands(bands, args.figure)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    if args.command == "version":
        print(f"{PROG} {__version__}")
        return 0
    try:
        if args.command == "detect":
            return _detect(args, parser)
        return _dwt(args)
    except (OSError, raster.ImageFormatError, PipelineError) as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
