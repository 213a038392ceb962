"""Hierarchical total-variation image inpainting."""

from .baselines import (
    BlurParams,
    SobolevParams,
    blur_inpaint,
    gaussian_blur,
    nn_inpaint,
    sobolev_gradient_step,
    sobolev_inpaint,
)
from .metrics import MetricsReport, evaluate, mse, psnr
from .pnm import load_mask, load_pnm, read_image, read_mask, save_mask, save_pnm, write_image, write_mask
from .pyramid import HierParams, build_pyramid, copy_back, downsample, hierarchical_tv_inpaint, mask_size
from .raster import (
    ShapeMismatchError,
    UnfillableMaskError,
    apply_mask_zero,
    boundary_pixels,
    confidence,
    merge_channels,
    neighbors8,
    split_channels,
)
from .tv import SweepStats, TvParams, tv_inpaint

__version__ = "0.1.0"
