import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from hiertv.baselines import blur_inpaint
from hiertv.metrics import mse
from hiertv.pyramid import (
    HierParams,
    PyramidLevel,
    build_pyramid,
    copy_back,
    downsample,
    hierarchical_tv_inpaint,
    mask_size,
)
from hiertv.raster import ShapeMismatchError, UnfillableMaskError
from hiertv.tv import TvParams, tv_inpaint

from conftest import square_mask, step_edge


def brute_mask_size(m):
    """Max over masked pixels of the Chebyshev distance to the closest known pixel."""
    if not m.any():
        return 0
    kr, kc = np.nonzero(~m)
    best = 0
    for r, c in zip(*np.nonzero(m)):
        best = max(best, int(np.min(np.maximum(np.abs(kr - r), np.abs(kc - c)))))
    return best


class TestMaskSize:
    def test_examples(self):
        assert mask_size(np.zeros((5, 5), bool)) == 0
        assert mask_size(square_mask((5, 5), 2, 2, 1)) == 1
        m = square_mask((20, 20), 6, 6, 8)
        assert mask_size(m) == brute_mask_size(m) == 4

    def test_full_mask(self):
        assert mask_size(np.ones((3, 7), bool)) == 7

    @settings(max_examples=60)
    @given(arrays(bool, st.tuples(st.integers(1, 10), st.integers(1, 10))))
    def test_matches_brute_force(self, m):
        if m.all():
            return
        assert mask_size(m) == brute_mask_size(m)


class TestDownsample:
    def test_known_block_mean(self):
        r = np.array([[0.2, 0.4], [0.6, 0.8]])
        c, cm = downsample(r, np.zeros((2, 2), bool))
        assert c[0, 0] == pytest.approx(0.5, abs=1e-15) and not cm[0, 0]

    def test_all_masked(self):
        c, cm = downsample(np.full((2, 2), 0.3), np.ones((2, 2), bool))
        assert cm[0, 0] and c[0, 0] == 0.0

    def test_single_known(self):
        r = np.array([[0.9, 0.0], [0.0, 0.0]])
        m = np.array([[False, True], [True, True]])
        c, cm = downsample(r, m)
        assert not cm[0, 0] and c[0, 0] == 0.9

    def test_odd_dimensions(self):
        r = np.arange(15.0).reshape(3, 5) / 15
        c, cm = downsample(r, np.zeros((3, 5), bool))
        assert c.shape == (2, 3)
        assert c[1, 2] == pytest.approx(r[2, 4])
        assert c[0, 2] == pytest.approx((r[0, 4] + r[1, 4]) / 2)

    @given(st.integers(0, 2**32 - 1), st.integers(1, 8), st.integers(1, 8))
    def test_mean_conservation(self, seed, hh, ww):
        r = np.random.default_rng(seed).random((2 * hh, 2 * ww))
        c, _ = downsample(r, np.zeros(r.shape, bool))
        assert abs(c.mean() - r.mean()) < 1e-12


class TestBuildPyramid:
    def test_small_mask_single_level(self):
        u = np.full((16, 16), 0.5)
        assert len(build_pyramid(u, square_mask(u.shape, 4, 4, 3))) == 1
        assert len(build_pyramid(u, np.zeros(u.shape, bool))) == 1

    def test_sixteen_block(self):
        u = np.full((48, 48), 0.5)
        m = square_mask(u.shape, 16, 16, 16)
        pyr = build_pyramid(u, m, HierParams(threshold_t=4))
        assert len(pyr) == 2 and not pyr.capped
        assert brute_mask_size(pyr[-1].mask) == 4

    def test_cap_is_flagged(self):
        u = np.full((64, 64), 0.5)
        m = square_mask(u.shape, 8, 8, 40)
        pyr = build_pyramid(u, m, HierParams(threshold_t=1, max_levels=2))
        assert len(pyr) == 2 and pyr.capped

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_levels_shrink_and_nest(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(16, 48))
        m = np.zeros((n, n), bool)
        for _ in range(3):
            r, c, s = rng.integers(0, n - 4), rng.integers(0, n - 4), rng.integers(2, 14)
            m[r : r + s, c : c + s] = True
        m[0, 0] = False
        pyr = build_pyramid(rng.random((n, n)), m, HierParams(threshold_t=2))
        sizes = [mask_size(lvl.mask) for lvl in pyr]
        assert all(b <= a for a, b in zip(sizes, sizes[1:]))
        for fine, coarse in zip(pyr.levels, pyr.levels[1:]):
            h, w = fine.mask.shape
            assert coarse.raster.shape == ((h + 1) // 2, (w + 1) // 2)
            for r, c in zip(*np.nonzero(coarse.mask)):
                assert fine.mask[2 * r : 2 * r + 2, 2 * c : 2 * c + 2].all()


class TestCopyBack:
    def test_empty_mask(self):
        r = np.random.default_rng(0).random((6, 6))
        out, m = copy_back(PyramidLevel(r, np.zeros((6, 6), bool), 0), np.zeros((3, 3)))
        np.testing.assert_array_equal(out, r)
        assert not m.any()

    def test_full_block(self):
        r = np.zeros((4, 4))
        m = square_mask(r.shape, 0, 0, 2)
        coarse = np.full((2, 2), 0.1)
        coarse[0, 0] = 0.7
        out, nm = copy_back(PyramidLevel(r, m, 0), coarse)
        assert np.all(out[0:2, 0:2] == 0.7) and not nm.any()

    def test_three_by_three(self):
        r = np.full((6, 6), 0.4)
        m = square_mask(r.shape, 1, 1, 3)
        coarse = np.full((3, 3), 0.9)
        out, nm = copy_back(PyramidLevel(r, m, 0), coarse)
        # only the parent block covering rows/cols 2..3 is entirely masked
        assert np.all(out[2:4, 2:4] == 0.9)
        assert nm.sum() == 5 and not nm[2:4, 2:4].any()
        np.testing.assert_array_equal(out[~m], r[~m])

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatchError):
            copy_back(PyramidLevel(np.zeros((4, 4)), np.zeros((4, 4), bool), 0), np.zeros((3, 3)))


class TestHierarchical:
    def test_constant(self):
        u = np.full((64, 64), 0.42)
        m = square_mask(u.shape, 22, 22, 20)
        d = u.copy()
        d[m] = 0
        out, rep = hierarchical_tv_inpaint(d, m)
        assert rep.levels > 1
        assert mse(u, out) < 1e-24

    def test_empty_mask(self):
        u = np.random.default_rng(2).random((12, 12))
        out, rep = hierarchical_tv_inpaint(u, np.zeros(u.shape, bool))
        np.testing.assert_array_equal(out, u)

    def test_full_mask(self):
        with pytest.raises(UnfillableMaskError):
            hierarchical_tv_inpaint(np.zeros((8, 8)), np.ones((8, 8), bool))

    def test_single_level_matches_tv(self, rng):
        u = rng.random((32, 32))
        m = square_mask(u.shape, 10, 10, 6)
        p = HierParams(threshold_t=mask_size(m))
        a, rep = hierarchical_tv_inpaint(u, m, p)
        b, _ = tv_inpaint(u, m, p.tv)
        assert rep.levels == 1 and a.tobytes() == b.tobytes()

    def test_color_channels_are_independent(self, rng):
        u = rng.random((24, 24, 3))
        m = square_mask((24, 24), 6, 6, 10)
        p = HierParams(tv=TvParams(max_iters=40))
        out, rep = hierarchical_tv_inpaint(u, m, p)
        for k in range(3):
            single, _ = hierarchical_tv_inpaint(u[:, :, k], m, p)
            assert out[:, :, k].tobytes() == single.tobytes()
        assert len(rep.stats) == 3
        np.testing.assert_array_equal(out[~m], u[~m])

    def test_beats_blur_on_step_edge(self):
        u = step_edge(128)
        m = square_mask(u.shape, 56, 56, 16)
        d = u.copy()
        d[m] = 0
        h, _ = hierarchical_tv_inpaint(d, m)
        b, _ = blur_inpaint(d, m)
        assert mse(u, h) < mse(u, b)

    def test_deterministic(self, rng):
        u = rng.random((40, 40))
        m = square_mask(u.shape, 8, 12, 18)
        a, _ = hierarchical_tv_inpaint(u, m)
        b, _ = hierarchical_tv_inpaint(u, m)
        assert a.tobytes() == b.tobytes()
