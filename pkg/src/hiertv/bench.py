"""Method registry, seeded mask generation and the MSE/PSNR benchmark."""

from __future__ import annotations

import csv
import io
import logging
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import ndimage

from . import pnm
from .baselines import BlurParams, SobolevParams, blur_inpaint, nn_inpaint, sobolev_inpaint
from .metrics import evaluate, psnr
from .pyramid import HierParams, hierarchical_tv_inpaint
from .raster import apply_mask_zero, as_mask, as_raster, per_channel
from .tv import TvParams, tv_inpaint

log = logging.getLogger(__name__)

METHODS = ("nn", "blur", "sobolev", "tv", "hier")
SHAPES = ("rect", "multi_rect", "scratch")
PLACEMENTS = ("uniform_random", "edge_biased")


@dataclass(frozen=True)
class MaskSpec:
    shape: str = "rect"
    area_pct: float = 10.0
    placement: str = "uniform_random"
    seed: int = 42

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ValueError(f"unknown mask shape {self.shape!r}")
        if self.placement not in PLACEMENTS:
            raise ValueError(f"unknown placement {self.placement!r}")
        if not 0 < self.area_pct <= 50:
            raise ValueError("area_pct must be in (0, 50]")


@dataclass
class BenchConfig:
    images: list
    area_pcts: list
    methods: list = field(default_factory=lambda: ["nn", "blur", "sobolev", "hier"])
    shape: str = "rect"
    placement: str = "uniform_random"
    seed: int = 42
    overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.methods:
            raise ValueError("at least one method is required")
        bad = [m for m in self.methods if m not in METHODS]
        if bad:
            raise ValueError(f"unknown methods: {', '.join(bad)}")


# -- methods -------------------------------------------------------------------

def make_params(method, overrides=None):
    """Parameter object for ``method`` with CLI-style overrides applied.

    Recognised keys: tol, max_iters, lam, epsilon, threshold_t, levels,
    sigma, step, mu. Keys that do not apply to the method are ignored.
    """
    o = {k: v for k, v in (overrides or {}).items() if v is not None}
    common = {k: o[k] for k in ("tol", "max_iters") if k in o}
    if method in ("tv", "hier"):
        tv = TvParams(**common, **{k: o[k] for k in ("lam", "epsilon") if k in o})
        if method == "tv":
            return tv
        hp = {"tv": tv}
        if "threshold_t" in o:
            hp["threshold_t"] = o["threshold_t"]
        if "levels" in o:
            hp["max_levels"] = o["levels"]
        return HierParams(**hp)
    if method == "blur":
        return BlurParams(**common, **({"sigma": o["sigma"]} if "sigma" in o else {}))
    if method == "sobolev":
        return SobolevParams(**common, **{k: o[k] for k in ("step", "mu") if k in o})
    if method == "nn":
        return None
    raise ValueError(f"unknown method {method!r}")


def _iters(stats):
    if isinstance(stats, list):
        return sum(_iters(s) for s in stats)
    return stats.iterations


def run_method(method, image, mask, params=None):
    """Zero the masked area, inpaint with ``method`` and return ``(result, iterations)``.

    ``params`` defaults to :func:`make_params` with no overrides.
    """
    image = as_raster(image)
    mask = as_mask(mask, image.shape)
    if params is None:
        params = make_params(method)
    damaged = apply_mask_zero(image, mask)
    if method == "hier":
        out, report = hierarchical_tv_inpaint(damaged, mask, params)
        return out, _iters(report.stats)
    if method == "nn":
        out, _ = per_channel(nn_inpaint, damaged, mask)
        return out, 0
    fn = {"tv": tv_inpaint, "blur": blur_inpaint, "sobolev": sobolev_inpaint}.get(method)
    if fn is None:
        raise ValueError(f"unknown method {method!r}")
    out, stats = per_channel(fn, damaged, mask, params)
    return out, _iters(stats)


# -- masks ---------------------------------------------------------------------

def _within(realized, target):
    return abs(realized - target) <= 0.1 * target


def _rect_dims(rng, area, width, height, tries=64):
    for _ in range(tries):
        aspect = rng.uniform(0.5, 2.0)
        h = int(min(max(round(math.sqrt(area / aspect)), 1), height))
        w = int(min(max(round(area / h), 1), width))
        if _within(h * w, area) and h * w < width * height:
            return h, w
    raise ValueError(f"cannot fit a rectangle of ~{area:.0f} px into {width}x{height}")


def _edge_centers(image):
    g = image if image.ndim == 2 else image.mean(axis=2)
    mag = np.hypot(ndimage.sobel(g, axis=0), ndimage.sobel(g, axis=1))
    if mag.max() <= 0:
        return None
    thr = np.quantile(mag, 0.9)
    rows, cols = np.nonzero(mag >= max(thr, 1e-12))
    return rows, cols


def _place(rng, h, w, width, height, centers):
    if centers is None:
        return int(rng.integers(0, height - h + 1)), int(rng.integers(0, width - w + 1))
    k = int(rng.integers(0, len(centers[0])))
    r = min(max(int(centers[0][k]) - h // 2, 0), height - h)
    c = min(max(int(centers[1][k]) - w // 2, 0), width - w)
    return r, c


def _scratch(rng, width, height, area, centers=None):
    m = np.zeros((height, width), dtype=bool)
    if centers is None:
        r, c = float(rng.uniform(0, height)), float(rng.uniform(0, width))
    else:
        r, c = (float(v) + 0.5 for v in _place(rng, 1, 1, width, height, centers))
    angle = rng.uniform(0, 2 * math.pi)
    count = 0
    for _ in range(10_000):
        length = int(rng.integers(4, max(5, max(width, height) // 3)))
        dr, dc = math.sin(angle), math.cos(angle)
        step = max(abs(dr), abs(dc))
        dr, dc = dr / step, dc / step  # unit chessboard steps keep the line 8-connected
        for _ in range(length):
            nr, nc = r + dr, c + dc
            if not (0 <= nr < height and 0 <= nc < width):
                break
            r, c = nr, nc
            ir, ic = int(r), int(c)
            patch = m[max(ir - 1, 0) : ir + 2, max(ic - 1, 0) : ic + 2]
            count += int(patch.size - np.count_nonzero(patch))
            patch[...] = True
            if count >= area:
                return m
        angle += rng.uniform(-math.pi / 2, math.pi / 2)
        if not (0 <= r + dr < height and 0 <= c + dc < width):
            angle += math.pi
    return m


def gen_mask(width, height, spec, image=None):
    """Deterministic synthetic mask for ``spec``.

    ``edge_biased`` placement centres shapes on strong image gradients and so
    needs ``image``.
    """
    rng = np.random.default_rng(spec.seed)
    area = spec.area_pct / 100.0 * width * height
    centers = None
    if spec.placement == "edge_biased":
        if image is None:
            raise ValueError("edge_biased placement needs the image")
        centers = _edge_centers(as_raster(image))
    m = np.zeros((height, width), dtype=bool)

    if spec.shape == "rect":
        h, w = _rect_dims(rng, area, width, height)
        r, c = _place(rng, h, w, width, height, centers)
        m[r : r + h, c : c + w] = True
    elif spec.shape == "multi_rect":
        dims = [_rect_dims(rng, area / 4, width, height) for _ in range(4)]
        for _ in range(200):
            m[:] = False
            ok = True
            for h, w in dims:
                r, c = _place(rng, h, w, width, height, centers)
                # keep a one-pixel gap so the rectangles stay separate holes
                if m[max(r - 1, 0) : r + h + 1, max(c - 1, 0) : c + w + 1].any():
                    ok = False
                    break
                m[r : r + h, c : c + w] = True
            if ok:
                break
        else:
            raise ValueError(f"cannot place 4 disjoint rectangles covering {spec.area_pct}%")
    else:
        m = _scratch(rng, width, height, area, centers)

    realized = np.count_nonzero(m)
    if not _within(realized, area) or realized >= width * height:
        raise ValueError(
            f"{spec.shape} mask of {spec.area_pct}% is infeasible on {width}x{height} (got {realized} px)"
        )
    return m


def mask_seed(seed, image_index, pct_index):
    return int(np.random.SeedSequence([seed, image_index, pct_index]).generate_state(1)[0])


# -- benchmark -----------------------------------------------------------------

def format_mse(v):
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return ""
    mant, exp = f"{v:.3e}".split("e")
    return f"{mant}e{int(exp)}"


def format_psnr(v):
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return ""
    if math.isinf(v):
        return "inf"
    return f"{v:.4f}"


def write_csv(rows, methods, metric="mse"):
    """Serialise benchmark rows as CSV bytes.

    Each row is a dict with ``area_pct``, ``image``, ``failures`` and one
    entry per method holding a :class:`MetricsReport` (or ``None`` on failure).
    """
    fmt = format_mse if metric == "mse" else format_psnr
    attr = "mse" if metric == "mse" else "psnr_db"
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["area_pct", "image", *methods, "failures"])
    for row in rows:
        cells = []
        for meth in methods:
            rep = row.get(meth)
            cells.append(fmt(rep if isinstance(rep, float) else getattr(rep, attr, None)))
        wr.writerow([f"{row['area_pct']:g}", row["image"], *cells, row.get("failures", 0)])
    return buf.getvalue().encode()


def _summaries(rows, methods):
    out = []
    for pct in sorted({r["area_pct"] for r in rows}):
        grp = [r for r in rows if r["area_pct"] == pct]
        s = {"area_pct": pct, "image": "mean", "failures": sum(r["failures"] for r in grp)}
        for meth in methods:
            vals = [r[meth].mse for r in grp if r.get(meth) is not None]
            s[meth] = float(np.mean(vals)) if vals else None
        out.append(s)
    return out


def _with_psnr(summary, methods):
    s = dict(summary)
    for meth in methods:
        s[meth] = None if s[meth] is None else psnr(s[meth])
    return s


def run_bench(config):
    """Run every method on every image and area percentage.

    Returns the per-image rows, sorted by area percentage then image name.
    Failures of a single (image, method) run are logged and counted.
    """
    rows = []
    images = sorted(Path(p) for p in config.images)
    for i, path in enumerate(images):
        try:
            img = pnm.read_image(path)
        except (OSError, ValueError) as exc:
            log.warning("skipping %s: %s", path, exc)
            continue
        for j, pct in enumerate(config.area_pcts):
            spec = MaskSpec(config.shape, pct, config.placement, mask_seed(config.seed, i, j))
            row = {"area_pct": pct, "image": path.name, "failures": 0}
            try:
                mask = gen_mask(img.shape[1], img.shape[0], spec, image=img)
            except ValueError as exc:
                log.warning("mask generation failed for %s at %s%%: %s", path.name, pct, exc)
                row["failures"] = len(config.methods)
                rows.append(row)
                continue
            for meth in config.methods:
                try:
                    t0 = time.perf_counter()
                    out, _ = run_method(meth, img, mask, make_params(meth, config.overrides))
                    row[meth] = evaluate(img, out, mask, meth, time.perf_counter() - t0)
                except Exception as exc:  # noqa: BLE001 - one bad run must not sink the table
                    log.warning("%s failed on %s at %s%%: %s", meth, path.name, pct, exc)
                    row[meth] = None
                    row["failures"] += 1
            rows.append(row)
    rows.sort(key=lambda r: (r["area_pct"], r["image"]))
    return rows


def bench_tables(rows, methods):
    """MSE and PSNR CSV bytes; each area group is followed by its mean row."""
    mse_rows, psnr_rows = [], []
    for summary in _summaries(rows, methods):
        grp = [r for r in rows if r["area_pct"] == summary["area_pct"]]
        mse_rows += grp + [summary]
        psnr_rows += grp + [_with_psnr(summary, methods)]
    return write_csv(mse_rows, methods, "mse"), write_csv(psnr_rows, methods, "psnr")
