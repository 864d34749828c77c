# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import numpy as np

from panolux.hdr_io import HdrImage
from panolux.photometry import LuminanceMap
from panolux.projection import (
    BadDimensions, BadProjection, CartesianDir, Projection, SphericalDir,
    ZeroVector, cart_to_sph, dir_to_pixel, equirect_directions,
    equirect_pixel_solid_angle, equirect_solid_angles, equirect_to_fisheye,
    extract_fisheye, fisheye_grid, fisheye_pixel_solid_angle,
    fisheye_to_equirect, pixel_to_dir, sph_to_cart, view_azimuths,
    view_frame)
from panolux.testing import TestBase


class TestSpherical(TestBase):
    def test_roundtrip_directions(self):
        rng = np.random.default_rng(1)
        theta = rng.uniform(-np.pi, np.pi, 10000)
        phi = rng.uniform(-1.5, 1.5, 10000)
        back = cart_to_sph(sph_to_cart(SphericalDir(theta, phi)))
        self.assertLess(np.max(np.abs(back.theta - theta)), 1e-12)
        self.assertLess(np.max(np.abs(back.phi - phi)), 1e-12)

    def test_unit_vectors(self):
        v = sph_to_cart(SphericalDir(0.3, -0.7)).as_array()
        self.assertAlmostEqual(float(np.linalg.norm(v)), 1.0, places=14)

    def test_axes(self):
        np.testing.assert_allclose(
            sph_to_cart(SphericalDir(0.0, 0.0)).as_array(), [0, 0, 1])
        np.testing.assert_allclose(
            sph_to_cart(SphericalDir(np.pi / 2, 0.0)).as_array(), [1, 0, 0],
            atol=1e-15)
        np.testing.assert_allclose(
            sph_to_cart(SphericalDir(0.0, np.pi / 2)).as_array(), [0, 1, 0],
            atol=1e-15)

    def test_backward_is_pi(self):
        self.assertEqual(cart_to_sph(CartesianDir(-0.0, 0.0, -1.0)).theta,
                         np.pi)

    def test_zero_vector(self):
        with self.assertRaises(ZeroVector):
            cart_to_sph(CartesianDir(0.0, 0.0, 0.0))

    def test_pixel_roundtrip(self):
        vv, uu = np.mgrid[0:32, 0:64]
        u, v = dir_to_pixel(pixel_to_dir(uu, vv, 64, 32), 64, 32)
        np.testing.assert_allclose(u, uu, atol=1e-9)
        np.testing.assert_allclose(v, vv, atol=1e-9)

    def test_centre_pixel_looks_forward(self):
        d = pixel_to_dir(7.5, 3.5, 16, 8)
        self.assertAlmostEqual(d.theta, 0.0)
        self.assertAlmostEqual(d.phi, 0.0)

    def test_bad_dimensions(self):
        with self.assertRaises(BadDimensions):
            pixel_to_dir(0, 0, 10, 4)
        with self.assertRaises(BadDimensions):
            pixel_to_dir(16, 0, 16, 8)

    def test_equirect_solid_angle_sum(self):
        total = equirect_solid_angles(512, 256).sum()
        self.assertAlmostEqual(total / (4 * np.pi), 1.0, delta=1e-9)

    def test_equirect_row_solid_angle(self):
        rows = equirect_pixel_solid_angle(np.arange(8), 16, 8)
        np.testing.assert_allclose(rows, rows[::-1])
        self.assertIn(int(np.argmax(rows)), (3, 4))
        self.assertAlmostEqual(
            equirect_pixel_solid_angle(4, 16, 8),
            2 * np.pi / 16 * np.sin(np.pi / 8), delta=1e-12)

    def test_fisheye_solid_angle_sum(self):
        grid = fisheye_grid(512)
        self.assertAlmostEqual(grid.solid_angle.sum() / (2 * np.pi), 1.0,
                               delta=0.005)

    def test_fisheye_centre_solid_angle(self):
        self.assertAlmostEqual(fisheye_pixel_solid_angle(0.0, 10.0),
                               (np.pi / 20) ** 2)

    def test_fisheye_grid_axis(self):
        grid = fisheye_grid(9)
        np.testing.assert_allclose(grid.local[4, 4], [0, 0, 1])
        # top of the image looks up, right looks right
        self.assertGreater(grid.local[0, 4, 1], 0.9)
        self.assertGreater(grid.local[4, 8, 0], 0.9)
        self.assertFalse(grid.inside[0, 0])

    def test_view_frame(self):
        right, up, forward = view_frame(np.pi / 2)
        np.testing.assert_allclose(forward, [1, 0, 0], atol=1e-15)
        np.testing.assert_allclose(right, [0, 0, -1], atol=1e-15)
        np.testing.assert_allclose(np.cross(right, up), forward, atol=1e-15)


class TestFisheye(TestBase):
    def _pano(self, height=64):
        dirs = equirect_directions(2 * height, height)
        return 2.0 + dirs[..., 0] + 0.5 * dirs[..., 1] - 0.25 * dirs[..., 2]

    def test_uniform_panorama(self):
        out, mask = equirect_to_fisheye(np.full((32, 64), 5.0), 0.3, 32)
        np.testing.assert_allclose(out[mask], 5.0)
        self.assertTrue(np.all(out[~mask] == 0))

    def test_view_axis_sample(self):
        pano = self._pano()
        for azimuth in (0.0, np.pi / 2, -2.0):
            out, _ = equirect_to_fisheye(pano, azimuth, 33)
            _, _, forward = view_frame(azimuth)
            expected = 2.0 + forward[0] - 0.25 * forward[2]
            self.assertAlmostEqual(out[16, 16], expected, delta=0.01)

    def test_back_projection(self):
        pano = self._pano()
        fish, _ = equirect_to_fisheye(pano, 1.0, 128)
        back, mask = fisheye_to_equirect(fish, 1.0, 64)
        _, _, forward = view_frame(1.0)
        well_inside = equirect_directions(128, 64) @ forward > 0.2
        self.assertTrue(np.all(mask[well_inside]))
        np.testing.assert_allclose(back[well_inside], pano[well_inside],
                                   atol=0.02)
        self.assertTrue(np.all(back[~mask] == 0))

    def test_rgb_raster(self):
        pano = np.stack([self._pano(), np.ones((64, 128)),
                         np.zeros((64, 128))], axis=-1)
        out, mask = equirect_to_fisheye(pano, 0.0, 16)
        self.assertEqual(out.shape, (16, 16, 3))
        np.testing.assert_allclose(out[mask][:, 1], 1.0)

    def test_extract_keeps_type(self):
        img = HdrImage(np.ones((8, 16, 3)),
                       projection=Projection.EQUIRECTANGULAR)
        view = extract_fisheye(img, 0.0, 8)
        self.assertIsInstance(view, HdrImage)
        self.assertEqual(view.projection, Projection.FISHEYE180)
        lum = LuminanceMap(np.ones((8, 16)), Projection.EQUIRECTANGULAR)
        self.assertIsInstance(extract_fisheye(lum, 0.0, 8), LuminanceMap)

    def test_extract_needs_panorama(self):
        img = HdrImage(np.ones((8, 8, 3)), projection=Projection.FISHEYE180)
        with self.assertRaises(BadProjection):
            extract_fisheye(img, 0.0, 8)

    def test_view_azimuths(self):
        np.testing.assert_allclose(np.rad2deg(view_azimuths(45)),
                                   [0, 45, 90, 135, 180, 225, 270, 315])
        self.assertEqual(len(view_azimuths(22.5)), 16)
        with self.assertRaisesRegex(ValueError, 'does not divide'):
            view_azimuths(7)
