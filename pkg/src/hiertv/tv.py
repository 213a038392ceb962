"""Single-level total-variation inpainting.

The update is the local digital TV filter: every pixel becomes a weighted
mean of its four axis neighbours, each weighted by the inverse gradient
magnitude measured on the shared face, plus an optional fidelity pull toward
the observed value. Holes are first filled boundary-inward in order of
decreasing confidence, then relaxed with in-place raster-order sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .raster import as_mask, as_raster, check_fillable

E, W, N, S = 0, 1, 2, 3
DIRECTIONS = {"E": E, "W": W, "N": N, "S": S}
# (row, col) step for each direction index
_DR = np.array([0, 0, -1, 1])
_DC = np.array([1, -1, 0, 0])


class IsolatedPixelError(ValueError):
    """A masked pixel has no valued axis neighbour yet and must be deferred."""


@dataclass(frozen=True)
class TvParams:
    epsilon: float = 1e-3
    lam: float = 10.0
    tol: float = 1e-4
    max_iters: int = 500

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be > 0")
        if not self.lam >= 0:
            raise ValueError("lam must be >= 0")
        if not self.tol > 0:
            raise ValueError("tol must be > 0")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")


@dataclass(frozen=True)
class SweepStats:
    iterations: int
    max_delta: float
    converged: bool


@numba.njit(cache=True)
def _clamp(i, n):
    if i < 0:
        return 0
    if i >= n:
        return n - 1
    return i


@numba.njit(cache=True)
def _val(u, filled, r, c, fallback):
    # clamped lookup; pixels without a value yet read as ``fallback``
    r = _clamp(r, u.shape[0])
    c = _clamp(c, u.shape[1])
    if filled[r, c]:
        return u[r, c]
    return fallback


@numba.njit(cache=True)
def _face_mag(u, filled, r, c, d, eps, uo):
    dr = _DR[d]
    dc = _DC[d]
    normal = _val(u, filled, r + dr, c + dc, uo) - uo
    if dr == 0:
        # horizontal face: vertical derivative averaged over both cells
        tang = (
            _val(u, filled, r - 1, c + dc, uo)
            + _val(u, filled, r - 1, c, uo)
            - _val(u, filled, r + 1, c, uo)
            - _val(u, filled, r + 1, c + dc, uo)
        ) / 4.0
    else:
        tang = (
            _val(u, filled, r + dr, c + 1, uo)
            + _val(u, filled, r, c + 1, uo)
            - _val(u, filled, r, c - 1, uo)
            - _val(u, filled, r + dr, c - 1, uo)
        ) / 4.0
    return np.sqrt(normal * normal + tang * tang + eps * eps)


@numba.njit(cache=True)
def _update(u, u0, filled, known, r, c, eps, lam):
    """New value for pixel (r, c); NaN when it has nothing to average."""
    h, w = u.shape
    if filled[r, c]:
        uo = u[r, c]
    else:
        # provisional centre value: plain mean of valued axis neighbours
        acc = 0.0
        cnt = 0
        for d in range(4):
            rr = r + _DR[d]
            cc = c + _DC[d]
            if 0 <= rr < h and 0 <= cc < w and filled[rr, cc]:
                acc += u[rr, cc]
                cnt += 1
        if cnt == 0:
            uo = np.nan
        else:
            uo = acc / cnt
    num = 0.0
    den = 0.0
    for d in range(4):
        rr = r + _DR[d]
        cc = c + _DC[d]
        # out-of-bounds faces carry zero flux under clamping, so they drop out
        if 0 <= rr < h and 0 <= cc < w and filled[rr, cc]:
            wp = 1.0 / _face_mag(u, filled, r, c, d, eps, uo)
            num += wp * u[rr, cc]
            den += wp
    lam_o = lam if known[r, c] else 0.0
    if den == 0.0 and lam_o == 0.0:
        return np.nan
    v = (num + lam_o * u0[r, c]) / (den + lam_o)
    if v < 0.0:
        return 0.0
    if v > 1.0:
        return 1.0
    return v


@numba.njit(cache=True)
def _onion_order(filled):
    """Unfilled pixels with a valued 8-neighbour, by confidence then raster order."""
    h, w = filled.shape
    conf = np.zeros(h * w, dtype=np.int64)
    counts = np.zeros(9, dtype=np.int64)
    for r in range(h):
        for c in range(w):
            if filled[r, c]:
                continue
            k = 0
            for dr in range(-1, 2):
                for dc in range(-1, 2):
                    if dr == 0 and dc == 0:
                        continue
                    rr = r + dr
                    cc = c + dc
                    if 0 <= rr < h and 0 <= cc < w and filled[rr, cc]:
                        k += 1
            conf[r * w + c] = k
            counts[k] += 1
    total = counts[1:].sum()
    order = np.empty(total, dtype=np.int64)
    pos = 0
    for k in range(8, 0, -1):
        for i in range(h * w):
            if conf[i] == k:
                order[pos] = i
                pos += 1
    return order


@numba.njit(cache=True)
def _tv_fill(u, u0, filled, known, eps, lam):
    """Onion-peel pass loop. Returns the number of passes, or -1 if stuck."""
    h, w = u.shape
    passes = 0
    remaining = 0
    for r in range(h):
        for c in range(w):
            if not filled[r, c]:
                remaining += 1
    while remaining > 0:
        order = _onion_order(filled)
        done = 0
        for i in order:
            r = i // w
            c = i % w
            v = _update(u, u0, filled, known, r, c, eps, lam)
            if np.isnan(v):
                continue
            u[r, c] = v
            filled[r, c] = True
            done += 1
        if done == 0:
            return -1
        remaining -= done
        passes += 1
    return passes


@numba.njit(cache=True)
def _tv_relax(u, u0, filled, known, rows, cols, eps, lam, tol, max_iters):
    it = 0
    max_delta = 0.0
    while it < max_iters:
        max_delta = 0.0
        for k in range(rows.shape[0]):
            r = rows[k]
            c = cols[k]
            v = _update(u, u0, filled, known, r, c, eps, lam)
            dlt = abs(v - u[r, c])
            if dlt > max_delta:
                max_delta = dlt
            u[r, c] = v
        it += 1
        if max_delta < tol:
            break
    return it, max_delta


def _single(u, name="u"):
    u = as_raster(u, name)
    if u.ndim != 2:
        raise ValueError(f"{name} must be single-channel")
    return u


def _parse_dir(direction):
    if isinstance(direction, str):
        return DIRECTIONS[direction.upper()]
    return int(direction)


def face_gradient_magnitude(u, p, direction, epsilon):
    """Regularised gradient magnitude on the face between ``p`` and its neighbour.

    ``direction`` is one of ``"E"``, ``"W"``, ``"N"``, ``"S"``; out-of-range
    stencil indices are clamped to the border.
    """
    u = _single(u)
    filled = np.ones(u.shape, dtype=bool)
    r, c = p
    return float(_face_mag(u, filled, r, c, _parse_dir(direction), float(epsilon), u[r, c]))


def face_flux(u, p, direction, epsilon):
    """Normalised directional difference ``(u_P - u_O) / |grad u|`` on one face."""
    u = _single(u)
    d = _parse_dir(direction)
    r, c = p
    h, w = u.shape
    rr = min(max(r + int(_DR[d]), 0), h - 1)
    cc = min(max(c + int(_DC[d]), 0), w - 1)
    return float((u[rr, cc] - u[r, c]) / face_gradient_magnitude(u, p, d, epsilon))


def divergence(u, p, epsilon):
    """Discrete divergence of ``grad u / |grad u|`` at ``p``.

    With every flux oriented outward from ``p`` the east-minus-west and
    north-minus-south differences reduce to the sum of the four fluxes.
    """
    return sum(face_flux(u, p, d, epsilon) for d in (E, W, N, S))


def tv_update_pixel(u, u0, m, p, params=TvParams(), filled=None):
    """One digital TV filter update of pixel ``p``.

    ``filled`` flags which pixels currently carry a value (default: all).
    Raises :class:`IsolatedPixelError` when ``p`` is masked and none of its
    axis neighbours has a value yet.
    """
    u = _single(u)
    u0 = _single(u0, "u0")
    m = as_mask(m, u.shape)
    if filled is None:
        filled = np.ones(u.shape, dtype=bool)
    else:
        filled = as_mask(filled, u.shape)
    r, c = p
    v = _update(u, u0, filled, ~m, r, c, params.epsilon, params.lam)
    if np.isnan(v):
        raise IsolatedPixelError(f"pixel {p} has no valued neighbour")
    return float(v)


def tv_residual(u, u0, m, params=TvParams()):
    """Largest ``|update(u, p) - u(p)|`` over masked pixels."""
    u = _single(u)
    m = as_mask(m, u.shape)
    filled = np.ones(u.shape, dtype=bool)
    u0 = _single(u0, "u0")
    res = 0.0
    for r, c in zip(*np.nonzero(m)):
        v = _update(u, u0, filled, ~m, r, c, params.epsilon, params.lam)
        res = max(res, abs(v - u[r, c]))
    return res


def tv_inpaint(u0, m, params=TvParams(), initialized=False):
    """Fill the masked pixels of a single-channel raster by TV relaxation.

    Masked values in ``u0`` are ignored unless ``initialized`` is true, in
    which case they seed the relaxation directly and the onion fill is
    skipped. Known pixels are returned unchanged.
    """
    u0 = _single(u0, "u0")
    m = as_mask(m, u0.shape)
    if not m.any():
        return u0.copy(), SweepStats(0, 0.0, True)
    check_fillable(m)
    known = ~m
    u = u0.copy()
    filled = np.ones(u.shape, dtype=bool) if initialized else known.copy()
    if not initialized:
        if _tv_fill(u, u0, filled, known, params.epsilon, params.lam) < 0:
            raise RuntimeError("onion fill stalled")
    rows, cols = np.nonzero(m)
    it, max_delta = _tv_relax(
        u, u0, filled, known, rows.astype(np.int64), cols.astype(np.int64),
        params.epsilon, params.lam, params.tol, params.max_iters,
    )
    return u, SweepStats(int(it), float(max_delta), bool(max_delta < params.tol))
