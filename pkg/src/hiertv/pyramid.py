"""Coarse-to-fine hierarchical TV inpainting.

Large holes are shrunk by repeated 2x downsampling until they are thin
enough for the single-level solver, the coarsest level is inpainted, and the
result is pushed back up one level at a time. At each finer level only the
pixels whose coarse parent was entirely masked take the coarse value; the
remaining ring is solved again with TV at that resolution.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .raster import ShapeMismatchError, as_mask, as_raster, check_fillable, per_channel
from .tv import TvParams, tv_inpaint


@dataclass(frozen=True)
class HierParams:
    threshold_t: int = 4
    max_levels: int = 8
    tv: TvParams = field(default_factory=TvParams)

    def __post_init__(self):
        if self.threshold_t < 1:
            raise ValueError("threshold_t must be >= 1")
        if self.max_levels < 1:
            raise ValueError("max_levels must be >= 1")


@dataclass
class PyramidLevel:
    raster: np.ndarray
    mask: np.ndarray
    level: int


@dataclass
class Pyramid:
    """Levels ordered fine to coarse.

    ``capped`` is set when a level or size cap stopped the downsampling
    before the coarsest mask was at or below the threshold.
    """

    levels: list
    capped: bool = False

    def __len__(self):
        return len(self.levels)

    def __getitem__(self, i):
        return self.levels[i]

    def __iter__(self):
        return iter(self.levels)


@dataclass
class HierReport:
    levels: int
    capped: bool
    # per channel, per level (coarse to fine)
    stats: list


def mask_size(m):
    """Hole half-thickness: the largest chessboard distance to a known pixel."""
    m = as_mask(m)
    if not m.any():
        return 0
    if m.all():
        return max(m.shape)
    return int(ndimage.distance_transform_cdt(m, metric="chessboard").max())


def _block_sums(a):
    h, w = a.shape
    p = np.pad(a, ((0, h % 2), (0, w % 2)))
    return p.reshape(p.shape[0] // 2, 2, p.shape[1] // 2, 2).sum(axis=(1, 3))


def downsample(r, m):
    """Halve a single-channel raster and its mask.

    A coarse pixel is masked only when every fine pixel it covers is masked;
    otherwise it takes the mean of the covered known pixels.
    """
    r = as_raster(r)
    m = as_mask(m, r.shape)
    known = (~m).astype(np.float64)
    cnt = _block_sums(known)
    tot = _block_sums(np.where(m, 0.0, r))
    cmask = cnt == 0
    coarse = np.zeros(cnt.shape)
    np.divide(tot, cnt, out=coarse, where=~cmask)
    return coarse, cmask


def parent_mask(m):
    """Mask of the next coarser level (all-masked 2x2 blocks)."""
    return _block_sums((~m).astype(np.int64)) == 0


def build_pyramid(u0, m, p=HierParams()):
    u0 = as_raster(u0)
    m = as_mask(m, u0.shape)
    levels = [PyramidLevel(u0, m, 0)]
    r, cm = u0, m
    size = mask_size(cm)
    while size > p.threshold_t:
        if len(levels) >= p.max_levels or min(r.shape) < 2:
            return Pyramid(levels, capped=True)
        r, cm = downsample(r, cm)
        levels.append(PyramidLevel(r, cm, len(levels)))
        size = mask_size(cm)
    return Pyramid(levels, capped=False)


def copy_back(fine, coarse_inpainted):
    """Push coarse values into the fine level and shrink its mask.

    Fine pixels under an all-masked parent take the parent's value and become
    known; the rest of the hole stays masked for the fine-level solve.
    """
    pm = parent_mask(fine.mask)
    coarse = np.asarray(coarse_inpainted, dtype=np.float64)
    if coarse.shape != pm.shape:
        raise ShapeMismatchError(f"coarse raster {coarse.shape} does not match parent grid {pm.shape}")
    h, w = fine.mask.shape
    up = np.repeat(np.repeat(coarse, 2, axis=0), 2, axis=1)[:h, :w]
    upm = np.repeat(np.repeat(pm, 2, axis=0), 2, axis=1)[:h, :w]
    take = fine.mask & upm
    out = fine.raster.copy()
    out[take] = up[take]
    return out, fine.mask & ~take


def _hier_channel(u0, m, p):
    pyr = build_pyramid(u0, m, p)
    coarsest = pyr[-1]
    result, st = tv_inpaint(coarsest.raster, coarsest.mask, p.tv)
    stats = [st]
    for lvl in reversed(pyr.levels[:-1]):
        seeded, residual = copy_back(lvl, result)
        result, st = tv_inpaint(seeded, residual, p.tv)
        stats.append(st)
    return result, (len(pyr), pyr.capped, stats)


def hierarchical_tv_inpaint(u0, m, p=HierParams()):
    """Hierarchical TV inpainting of a grayscale or RGB raster.

    Colour channels are processed independently. Returns the inpainted
    raster and a :class:`HierReport`.
    """
    u0 = as_raster(u0)
    m = as_mask(m, u0.shape)
    check_fillable(m)
    out, info = per_channel(_hier_channel, u0, m, p)
    nlev, capped, _ = info[0]
    return out, HierReport(levels=nlev, capped=capped, stats=[s for _, _, s in info])
