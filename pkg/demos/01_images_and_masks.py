"""
Images, masks and the fill order
================================

Rasters are float arrays in [0, 1]; masks are boolean arrays where True marks
a hole. This script round-trips an image through the PGM codec, generates a
few seeded masks and shows the order in which the hole boundary is filled.
"""

# %%
import tempfile
from pathlib import Path

import numpy as np

from hiertv import boundary_pixels, load_pnm, save_pnm
from hiertv.bench import MaskSpec, gen_mask
from hiertv.pnm import write_image, write_mask

out_dir = Path(tempfile.mkdtemp(prefix="hiertv-demo-"))

# %% A synthetic 8-bit image survives the codec exactly.
y, x = np.mgrid[0:64, 0:64]
img = np.round(np.clip(0.2 + 0.01 * x + 0.4 * (y > 30), 0, 1) * 255) / 255
assert np.array_equal(load_pnm(save_pnm(img)), img)
write_image(out_dir / "scene.pgm", img)

# %% Seeded masks: same seed, same mask.
for shape in ("rect", "multi_rect", "scratch"):
    m = gen_mask(64, 64, MaskSpec(shape, area_pct=8, seed=1))
    write_mask(out_dir / f"mask_{shape}.pgm", m)
    print(f"{shape:10s} covers {100 * m.mean():.2f}% of the image")

# %% Fill order: pixels with the most known neighbours come first.
hole = np.zeros((7, 7), dtype=bool)
hole[2:5, 2:5] = True
for pos, conf in boundary_pixels(hole):
    print(pos, conf)

print("files written to", out_dir)
