# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import numpy as np
import pandas as pd

from panolux.hdr_io import HdrImage, read_hdr, write_hdr
from panolux.photometry import (
    LUMINANCE_COEFFS, RAMP_SIZE, BadRange, CalibrationFactor,
    DimensionMismatch, EmptyRegion, LuminanceMap, ZeroRegionLuminance,
    compute_k, error_map, false_color, luminance_to_hdr, pixel_luminance,
    ramp_index, region_error_stats, to_luminance_map)
from panolux.projection import Projection
from panolux.testing import TestBase


class TestLuminance(TestBase):
    def test_coefficients(self):
        np.testing.assert_array_equal(LUMINANCE_COEFFS,
                                      [0.2127, 0.7151, 0.0722])

    def test_white_is_one(self):
        self.assertEqual(pixel_luminance((1.0, 1.0, 1.0)), 1.0)

    def test_primaries(self):
        self.assertAlmostEqual(pixel_luminance((1.0, 0.0, 0.0)), 0.2127)
        self.assertAlmostEqual(pixel_luminance((0.0, 1.0, 0.0)), 0.7151)
        self.assertAlmostEqual(pixel_luminance((0.0, 0.0, 1.0)), 0.0722)

    def test_linear_in_k(self):
        rng = np.random.default_rng(3)
        rgb = rng.uniform(0, 50, size=(20, 3))
        base = pixel_luminance(rgb)
        for k in (0.5, 2.0, 179.0):
            np.testing.assert_allclose(pixel_luminance(rgb, k), k * base,
                                       rtol=1e-14)
            np.testing.assert_allclose(
                pixel_luminance(rgb, CalibrationFactor(k)), k * base,
                rtol=1e-14)

    def test_bad_input(self):
        with self.assertRaisesRegex(ValueError, 'non-negative'):
            pixel_luminance((1.0, -0.1, 0.0))
        with self.assertRaisesRegex(ValueError, 'positive'):
            pixel_luminance((1.0, 1.0, 1.0), 0.0)

    def test_map_from_image(self):
        img = HdrImage(np.ones((4, 8, 3)),
                       projection=Projection.EQUIRECTANGULAR)
        lum = to_luminance_map(img, 179.0)
        self.assertEqual(lum.projection, Projection.EQUIRECTANGULAR)
        np.testing.assert_array_equal(lum.values, np.full((4, 8), 179.0))

    def test_map_validation(self):
        with self.assertRaisesRegex(ValueError, 'two-dimensional'):
            LuminanceMap(np.ones((2, 2, 3)))
        with self.assertRaisesRegex(ValueError, 'square'):
            LuminanceMap(np.ones((2, 3)), Projection.FISHEYE180)
        with self.assertRaisesRegex(ValueError, 'non-negative'):
            LuminanceMap(np.array([[np.nan]]))

    def test_grey_hdr_roundtrip(self):
        values = np.array([[0.0, 1.0, 250.0, 1e5]])
        lum = LuminanceMap(values)
        img = luminance_to_hdr(lum)
        np.testing.assert_array_equal(img.pixels[..., 0], values)
        back = to_luminance_map(read_hdr(write_hdr(img)))
        np.testing.assert_allclose(back.values, values, rtol=1 / 256)

    def test_compute_k(self):
        pixels = np.zeros((10, 20, 3))
        pixels[2:4, 5:9] = 2.0
        img = HdrImage(pixels)
        k = compute_k(300.0, (5, 2, 9, 4), img)
        self.assertEqual(k, CalibrationFactor(150.0))
        # half-open: column 9 and row 4 are outside
        with self.assertRaises(ZeroRegionLuminance):
            compute_k(300.0, (9, 4, 12, 6), img)

    def test_compute_k_empty(self):
        img = HdrImage(np.ones((4, 4, 3)))
        with self.assertRaises(EmptyRegion):
            compute_k(10.0, (2, 2, 2, 4), img)
        with self.assertRaises(EmptyRegion):
            compute_k(10.0, (10, 10, 12, 12), img)
        with self.assertRaisesRegex(ValueError, 'positive'):
            compute_k(-1.0, (0, 0, 2, 2), img)


class TestFalseColor(TestBase):
    def test_ramp_index(self):
        idx = ramp_index([0.0, 500.0, 999.9, 1000.0, 5000.0, -5.0])
        np.testing.assert_array_equal(idx, [0, 128, 255, 255, 255, 0])

    def test_log_scale(self):
        idx = ramp_index([1.0, 10.0, 100.0, 0.0], 1.0, 100.0, 'log')
        np.testing.assert_array_equal(idx, [0, 128, 255, 0])

    def test_bad_ranges(self):
        with self.assertRaises(BadRange):
            ramp_index([1.0], 10.0, 10.0)
        with self.assertRaises(BadRange):
            ramp_index([1.0], 0.0, 10.0, 'log')
        with self.assertRaises(BadRange):
            ramp_index([1.0], 0.0, 10.0, 'sqrt')

    def test_image_and_legend(self):
        lum = LuminanceMap(np.array([[0.0, 1000.0], [500.0, 2000.0]]))
        fc = false_color(lum, legend_width=3)
        self.assertEqual(fc.image.shape, (2, 2, 3))
        self.assertEqual(fc.image.dtype, np.uint8)
        self.assertEqual(tuple(fc.image[0, 0]), (0, 0, 255))
        self.assertEqual(tuple(fc.image[0, 1]), (255, 0, 0))
        np.testing.assert_array_equal(fc.image[0, 1], fc.image[1, 1])
        self.assertEqual(fc.legend.shape, (2, 3, 3))
        self.assertEqual(fc.composite().shape, (2, 5, 3))
        # legend runs from hi at the top to lo at the bottom
        self.assertGreater(fc.ticks[0][1], fc.ticks[-1][1])
        self.assertEqual(RAMP_SIZE, 256)


class TestErrorMap(TestBase):
    def test_stats(self):
        a = LuminanceMap(np.array([[10.0, 20.0], [30.0, 40.0]]))
        b = LuminanceMap(np.array([[10.0, 10.0], [40.0, 40.0]]))
        err, raster = error_map(a, b)
        self.assertEqual(err.stats.mae, 5.0)
        self.assertEqual(err.stats.rmse, np.sqrt(50.0))
        self.assertEqual(err.stats.bias, 0.0)
        self.assertEqual(err.stats.n_pixels, 4)
        self.assertEqual(err.stats.clip, 3000.0)
        self.assertEqual(raster.shape, (2, 2, 3))

    def test_colours(self):
        a = LuminanceMap(np.array([[0.0, 5000.0, 0.0]]))
        b = LuminanceMap(np.array([[0.0, 0.0, 5000.0]]))
        _, raster = error_map(a, b)
        self.assertEqual(tuple(raster[0, 0]), (255, 255, 255))
        self.assertEqual(tuple(raster[0, 1]), (255, 0, 0))
        self.assertEqual(tuple(raster[0, 2]), (0, 0, 255))

    def test_statistics_are_unclipped(self):
        a = LuminanceMap(np.array([[9000.0]]))
        b = LuminanceMap(np.array([[0.0]]))
        err, _ = error_map(a, b, clip=100.0)
        self.assertEqual(err.stats.mae, 9000.0)

    def test_fisheye_corners_excluded(self):
        a = LuminanceMap(np.full((8, 8), 10.0), Projection.FISHEYE180)
        b = LuminanceMap(np.zeros((8, 8)), Projection.FISHEYE180)
        err, raster = error_map(a, b)
        self.assertLess(err.stats.n_pixels, 64)
        self.assertFalse(err.mask[0, 0])
        self.assertEqual(tuple(raster[0, 0]), (0, 0, 0))

    def test_mismatch(self):
        a = LuminanceMap(np.zeros((2, 4)), Projection.EQUIRECTANGULAR)
        b = LuminanceMap(np.zeros((4, 8)), Projection.EQUIRECTANGULAR)
        with self.assertRaises(DimensionMismatch):
            error_map(a, b)
        c = LuminanceMap(np.zeros((4, 4)), Projection.FISHEYE180)
        d = LuminanceMap(np.zeros((4, 4)))
        with self.assertRaises(DimensionMismatch):
            error_map(c, d)

    def test_region_stats(self):
        a = LuminanceMap(np.array([[10.0, 20.0, 30.0, 40.0]]))
        b = LuminanceMap(np.array([[0.0, 0.0, 40.0, 40.0]]))
        err, _ = error_map(a, b)
        labels = np.array([[1, 1, 2, 2]])
        table = region_error_stats(err, labels,
                                   ('outside', 'floor', 'wall'))
        expected = pd.DataFrame({'region': ['floor', 'wall'],
                                 'mae': [15.0, 5.0],
                                 'rmse': [np.sqrt(250.0), np.sqrt(50.0)],
                                 'bias': [15.0, -5.0],
                                 'n_pixels': [2, 2]})
        pd.testing.assert_frame_equal(table, expected)
        self.assertEqual(table['mae'].attrs['title'], 'mean absolute error')

    def test_region_labels_shape(self):
        err, _ = error_map(LuminanceMap(np.zeros((2, 2))),
                           LuminanceMap(np.zeros((2, 2))))
        with self.assertRaises(DimensionMismatch):
            region_error_stats(err, np.zeros((3, 3), dtype=int), ('a',))
