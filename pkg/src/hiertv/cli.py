"""Command-line front end: ``hiertv inpaint | genmask | bench``."""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from . import pnm
from .bench import (
    METHODS,
    PLACEMENTS,
    SHAPES,
    BenchConfig,
    MaskSpec,
    bench_tables,
    gen_mask,
    make_params,
    run_bench,
    run_method,
)
from .metrics import mask_area_pct
from .raster import ShapeMismatchError, UnfillableMaskError

EXIT_FILE, EXIT_SHAPE, EXIT_UNFILLABLE = 1, 2, 3

PARAM_FLAGS = {
    "lam": ("--lambda", float),
    "epsilon": ("--epsilon", float),
    "tol": ("--tol", float),
    "max_iters": ("--max-iters", int),
    "threshold_t": ("--threshold-t", int),
    "sigma": ("--sigma", float),
    "step": ("--step", float),
    "mu": ("--mu", float),
    "levels": ("--levels", int),
}


def _add_param_flags(p):
    g = p.add_argument_group("solver parameters")
    for dest, (flag, typ) in PARAM_FLAGS.items():
        g.add_argument(flag, dest=dest, type=typ, default=None)


def _overrides(args):
    return {k: getattr(args, k) for k in PARAM_FLAGS}


def _fail(code, msg):
    print(f"hiertv: {msg}", file=sys.stderr)
    return code


def cmd_inpaint(args):
    try:
        image = pnm.read_image(args.image)
        mask = pnm.read_mask(args.mask)
    except (OSError, pnm.PNMError) as exc:
        return _fail(EXIT_FILE, str(exc))
    if mask.shape != image.shape[:2]:
        return _fail(
            EXIT_SHAPE,
            f"mask is {mask.shape[1]}x{mask.shape[0]} but image is {image.shape[1]}x{image.shape[0]}",
        )
    try:
        t0 = time.perf_counter()
        out, iters = run_method(args.method, image, mask, make_params(args.method, _overrides(args)))
        elapsed = time.perf_counter() - t0
    except UnfillableMaskError as exc:
        return _fail(EXIT_UNFILLABLE, f"unfillable mask: {exc}")
    except ShapeMismatchError as exc:
        return _fail(EXIT_SHAPE, str(exc))
    except ValueError as exc:
        return _fail(EXIT_FILE, str(exc))
    try:
        pnm.write_image(args.out, out)
    except OSError as exc:
        return _fail(EXIT_FILE, str(exc))
    print(
        f"method={args.method} mask_pct={mask_area_pct(mask):.2f} "
        f"iterations={iters} wall_time={elapsed:.3f}s"
    )
    return 0


def cmd_genmask(args):
    image = None
    if args.like:
        try:
            image = pnm.read_image(args.like)
        except (OSError, pnm.PNMError) as exc:
            return _fail(EXIT_FILE, str(exc))
        height, width = image.shape[:2]
    elif args.width and args.height:
        width, height = args.width, args.height
    else:
        return _fail(EXIT_FILE, "give --like IMAGE or both --width and --height")
    try:
        spec = MaskSpec(args.shape, args.area_pct, args.placement, args.seed)
        m = gen_mask(width, height, spec, image=image)
    except ValueError as exc:
        return _fail(EXIT_SHAPE, str(exc))
    try:
        pnm.write_mask(args.out, m)
    except OSError as exc:
        return _fail(EXIT_FILE, str(exc))
    print(f"shape={args.shape} mask_pct={mask_area_pct(m):.2f} out={args.out}")
    return 0


def _image_paths(src):
    src = Path(src)
    if src.is_file():
        return [src]
    if not src.is_dir():
        return []
    return sorted(p for p in src.iterdir() if p.suffix.lower() in (".pgm", ".ppm", ".pnm"))


def _split_list(text, typ):
    return [typ(t) for t in text.split(",") if t.strip()]


def cmd_bench(args):
    paths = _image_paths(args.images)
    if not paths:
        return _fail(EXIT_FILE, f"no PGM/PPM images found in {args.images}")
    try:
        cfg = BenchConfig(
            images=paths,
            area_pcts=_split_list(args.area_pcts, float),
            methods=_split_list(args.methods, str),
            shape=args.shape,
            placement=args.placement,
            seed=args.seed,
            overrides=_overrides(args),
        )
    except ValueError as exc:
        return _fail(EXIT_FILE, str(exc))
    rows = run_bench(cfg)
    mse_csv, psnr_csv = bench_tables(rows, cfg.methods)
    stem = str(args.out_csv)
    if stem.endswith(".csv"):
        stem = stem[:-4]
    try:
        Path(f"{stem}_mse.csv").write_bytes(mse_csv)
        Path(f"{stem}_psnr.csv").write_bytes(psnr_csv)
    except OSError as exc:
        return _fail(EXIT_FILE, str(exc))
    print(f"wrote {stem}_mse.csv and {stem}_psnr.csv ({len(rows)} runs)")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="hiertv", description="Hierarchical TV image inpainting")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inpaint", help="inpaint one image")
    p.add_argument("--image", required=True)
    p.add_argument("--mask", required=True, help="P5 mask, samples >= 128 are masked")
    p.add_argument("--method", choices=METHODS, default="hier")
    p.add_argument("--out", required=True)
    _add_param_flags(p)
    p.set_defaults(func=cmd_inpaint)

    p = sub.add_parser("genmask", help="write a seeded synthetic mask")
    p.add_argument("--width", type=int)
    p.add_argument("--height", type=int)
    p.add_argument("--like", help="take dimensions (and edges) from this image")
    p.add_argument("--shape", choices=SHAPES, default="rect")
    p.add_argument("--area-pct", type=float, default=10.0)
    p.add_argument("--placement", choices=PLACEMENTS, default="uniform_random")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_genmask)

    p = sub.add_parser("bench", help="MSE/PSNR tables over a folder of images")
    p.add_argument("--images", required=True, help="directory of PGM/PPM files, or a single file")
    p.add_argument("--area-pcts", default="2,5,10,15")
    p.add_argument("--methods", default="nn,blur,sobolev,hier")
    p.add_argument("--out-csv", required=True, help="output prefix; writes <prefix>_mse.csv and <prefix>_psnr.csv")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--shape", choices=SHAPES, default="rect")
    p.add_argument("--placement", choices=PLACEMENTS, default="uniform_random")
    _add_param_flags(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
