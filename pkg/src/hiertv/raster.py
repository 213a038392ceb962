"""Grid primitives shared by every inpainting method.

Rasters are plain float64 numpy arrays holding intensities in [0, 1]:
shape ``(H, W)`` for grayscale and ``(H, W, 3)`` for RGB. Masks are boolean
``(H, W)`` arrays where ``True`` marks a pixel that must be reconstructed.
Positions are ``(row, col)`` tuples.
"""

from __future__ import annotations

import numpy as np
from scipy import ndimage

# Fixed neighbour order: NW, N, NE, W, E, SW, S, SE.
OFFSETS8 = ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1))

_CONF_KERNEL = np.array([[1, 1, 1], [1, 0, 1], [1, 1, 1]], dtype=np.int64)


class ShapeMismatchError(ValueError):
    """Raster and mask (or two rasters) disagree on dimensions."""


class UnfillableMaskError(ValueError):
    """The mask leaves no known pixel to inpaint from."""


def as_raster(r, name="raster"):
    """Validate ``r`` and return it as a float64 array."""
    a = np.asarray(r, dtype=np.float64)
    if a.ndim == 3 and a.shape[2] == 1:
        a = a[:, :, 0]
    if not (a.ndim == 2 or (a.ndim == 3 and a.shape[2] == 3)):
        raise ValueError(f"{name} must have shape (H, W) or (H, W, 3), got {a.shape}")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"{name} must be at least 1x1")
    if not np.all(np.isfinite(a)) or a.min() < 0.0 or a.max() > 1.0:
        raise ValueError(f"{name} samples must be finite and lie in [0, 1]")
    return a


def as_mask(m, shape=None):
    """Validate ``m`` as a boolean mask, optionally against a raster shape."""
    a = np.asarray(m)
    if a.ndim != 2:
        raise ValueError(f"mask must be 2-D, got shape {a.shape}")
    a = a.astype(bool, copy=False)
    if shape is not None and a.shape != tuple(shape[:2]):
        raise ShapeMismatchError(f"mask is {a.shape[1]}x{a.shape[0]} but image is {shape[1]}x{shape[0]}")
    return a


def channels(r):
    return 1 if r.ndim == 2 else r.shape[2]


def neighbors8(p, width, height):
    """In-bounds 8-neighbours of ``p`` in NW, N, NE, W, E, SW, S, SE order."""
    row, col = p
    if not (0 <= row < height and 0 <= col < width):
        raise IndexError(f"position {p} outside {width}x{height} grid")
    out = []
    for dr, dc in OFFSETS8:
        rr, cc = row + dr, col + dc
        if 0 <= rr < height and 0 <= cc < width:
            out.append((rr, cc))
    return out


def apply_mask_zero(r, m):
    """Copy of ``r`` with every masked pixel set to zero in all channels."""
    r = as_raster(r)
    m = as_mask(m, r.shape)
    out = r.copy()
    out[m] = 0.0
    return out


def confidence(m, p):
    """Number of known pixels among the 8-neighbours of masked pixel ``p``."""
    m = as_mask(m)
    if not m[p]:
        raise ValueError(f"confidence is only defined for masked pixels, {p} is known")
    h, w = m.shape
    return sum(1 for q in neighbors8(p, w, h) if not m[q])


def confidence_map(m):
    """Known-neighbour count for every pixel; out-of-bounds counts as zero."""
    known = (~as_mask(m)).astype(np.int64)
    return ndimage.correlate(known, _CONF_KERNEL, mode="constant", cval=0)


def boundary_pixels(m):
    """Masked pixels with at least one known neighbour, best-first.

    Sorted by descending confidence; equal confidences keep row-major order.
    """
    m = as_mask(m)
    conf = confidence_map(m)
    conf[~m] = 0
    flat = conf.ravel()
    idx = np.flatnonzero(flat)
    # stable sort on -confidence keeps raster order among ties
    idx = idx[np.argsort(-flat[idx], kind="stable")]
    w = m.shape[1]
    return [((int(i // w), int(i % w)), int(flat[i])) for i in idx]


def split_channels(r):
    r = as_raster(r)
    if r.ndim == 2:
        return [r]
    return [np.ascontiguousarray(r[:, :, k]) for k in range(r.shape[2])]


def merge_channels(planes):
    planes = [np.asarray(p, dtype=np.float64) for p in planes]
    if len(planes) not in (1, 3):
        raise ValueError(f"expected 1 or 3 channel planes, got {len(planes)}")
    shape = planes[0].shape
    for p in planes:
        if p.ndim != 2 or p.shape != shape:
            raise ShapeMismatchError("channel planes must be 2-D and the same size")
    if len(planes) == 1:
        return planes[0].copy()
    return np.stack(planes, axis=-1)


def check_fillable(m):
    """Raise :class:`UnfillableMaskError` if ``m`` masks every pixel."""
    if m.size and m.all():
        raise UnfillableMaskError("mask covers the entire image; nothing to inpaint from")


def per_channel(fn, image, mask, *args, **kwargs):
    """Run a single-channel method ``fn`` on each channel of ``image``.

    ``fn`` returns either a raster or a ``(raster, stats)`` pair; stats are
    collected into a list with one entry per channel.
    """
    image = as_raster(image)
    mask = as_mask(mask, image.shape)
    outs, stats = [], []
    for plane in split_channels(image):
        res = fn(plane, mask, *args, **kwargs)
        if isinstance(res, tuple):
            outs.append(res[0])
            stats.append(res[1])
        else:
            outs.append(res)
    return merge_channels(outs), stats
