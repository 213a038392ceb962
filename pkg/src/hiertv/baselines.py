"""Reference inpainting methods: neighbour copying, repeated blur, Sobolev descent."""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np
from scipy import ndimage

from .raster import as_mask, as_raster, check_fillable
from .tv import SweepStats, _onion_order

# Copy preference: axis neighbours first (N, S, E, W), then diagonals.
_NN_DR = np.array([-1, 1, 0, 0, -1, -1, 1, 1])
_NN_DC = np.array([0, 0, 1, -1, 1, -1, 1, -1])


@dataclass(frozen=True)
class BlurParams:
    sigma: float = 1.0
    kernel_radius: int = 2
    tol: float = 1e-4
    max_iters: int = 500

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be > 0")
        if self.kernel_radius < 1:
            raise ValueError("kernel_radius must be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be > 0")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")


@dataclass(frozen=True)
class SobolevParams:
    step: float = 0.1
    mu: float = 1.0
    tol: float = 1e-4
    max_iters: int = 500
    smoothing_iters: int = 10

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError("step must be > 0")
        if not self.mu >= 0:
            raise ValueError("mu must be >= 0")
        if not self.tol > 0:
            raise ValueError("tol must be > 0")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")


def _single(u, name="u"):
    u = as_raster(u, name)
    if u.ndim != 2:
        raise ValueError(f"{name} must be single-channel")
    return u


# -- nearest neighbour -------------------------------------------------------

@numba.njit(cache=True)
def _nn_fill(u, filled):
    h, w = u.shape
    remaining = 0
    for r in range(h):
        for c in range(w):
            if not filled[r, c]:
                remaining += 1
    while remaining > 0:
        order = _onion_order(filled)
        for i in order:
            r = i // w
            c = i % w
            for k in range(8):
                rr = r + _NN_DR[k]
                cc = c + _NN_DC[k]
                if 0 <= rr < h and 0 <= cc < w and filled[rr, cc]:
                    u[r, c] = u[rr, cc]
                    filled[r, c] = True
                    remaining -= 1
                    break


def nn_inpaint(u0, m):
    """Fill the hole boundary-inward by copying the nearest valued neighbour."""
    u0 = _single(u0, "u0")
    m = as_mask(m, u0.shape)
    if not m.any():
        return u0.copy()
    check_fillable(m)
    u = u0.copy()
    _nn_fill(u, ~m)
    return u


# -- blur ----------------------------------------------------------------------

def gaussian_kernel(sigma, radius):
    k = np.arange(-radius, radius + 1, dtype=np.float64)
    g = np.exp(-(k * k) / (2.0 * sigma * sigma))
    return g / g.sum()


def gaussian_blur(u, params=BlurParams()):
    """Separable truncated Gaussian blur with mirror-symmetric borders."""
    u = _single(u)
    g = gaussian_kernel(params.sigma, params.kernel_radius)
    out = ndimage.correlate1d(u, g, axis=0, mode="reflect")
    return ndimage.correlate1d(out, g, axis=1, mode="reflect")


def blur_inpaint(u0, m, params=BlurParams()):
    """Zero the hole, then alternate blurring and restoring the known pixels."""
    u0 = _single(u0, "u0")
    m = as_mask(m, u0.shape)
    if not m.any():
        return u0.copy(), SweepStats(0, 0.0, True)
    check_fillable(m)
    u = u0.copy()
    u[m] = 0.0
    max_delta = 0.0
    it = 0
    while it < params.max_iters:
        blurred = gaussian_blur(u, params)
        max_delta = float(np.abs(blurred[m] - u[m]).max())
        u[m] = blurred[m]
        it += 1
        if max_delta < params.tol:
            break
    return u, SweepStats(it, max_delta, max_delta < params.tol)


# -- Sobolev gradient descent -----------------------------------------------

def central_differences(u):
    """Row and column central differences with edge-replicated borders."""
    p = np.pad(u, 1, mode="edge")
    d1 = 0.5 * (p[2:, 1:-1] - p[:-2, 1:-1])
    d2 = 0.5 * (p[1:-1, 2:] - p[1:-1, :-2])
    return d1, d2


def laplacian(u):
    """Five-point Laplacian using only in-bounds neighbours."""
    p = np.pad(u, 1, mode="edge")
    return p[:-2, 1:-1] + p[2:, 1:-1] + p[1:-1, :-2] + p[1:-1, 2:] - 4.0 * u


def dirichlet_energy(u):
    """Half the sum of squared forward differences over all interior edges."""
    return 0.5 * (np.sum(np.diff(u, axis=0) ** 2) + np.sum(np.diff(u, axis=1) ** 2))


def energy_gradient(u, m):
    """Gradient of :func:`dirichlet_energy` w.r.t. the masked pixels (zero elsewhere)."""
    g = -laplacian(u)
    g[~m] = 0.0
    return g


def sobolev_smooth(g, m, mu, iters=10):
    """Approximate ``(I - mu*Lap)^-1 g`` on the mask by Jacobi iterations.

    The smoothed field is held at zero outside the mask.
    """
    s = g.copy()
    for _ in range(iters):
        p = np.pad(s, 1, mode="constant")
        nb = p[:-2, 1:-1] + p[2:, 1:-1] + p[1:-1, :-2] + p[1:-1, 2:]
        s = (g + mu * nb) / (1.0 + 4.0 * mu)
        s[~m] = 0.0
    return s


def sobolev_gradient_step(u, u0, m, params=SobolevParams()):
    u = _single(u)
    m = as_mask(m, u.shape)
    s = sobolev_smooth(energy_gradient(u, m), m, params.mu, params.smoothing_iters)
    out = u.copy()
    out[m] = np.clip(u[m] - params.step * s[m], 0.0, 1.0)
    return out


def sobolev_inpaint(u0, m, params=SobolevParams()):
    """Zero the hole and descend the smoothness energy with Sobolev-smoothed steps."""
    u0 = _single(u0, "u0")
    m = as_mask(m, u0.shape)
    if not m.any():
        return u0.copy(), SweepStats(0, 0.0, True)
    check_fillable(m)
    u = u0.copy()
    u[m] = 0.0
    max_delta = 0.0
    it = 0
    while it < params.max_iters:
        nxt = sobolev_gradient_step(u, u0, m, params)
        max_delta = float(np.abs(nxt[m] - u[m]).max())
        u = nxt
        it += 1
        if max_delta < params.tol:
            break
    return u, SweepStats(it, max_delta, max_delta < params.tol)
