# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import io
import math

import numpy as np
import pandas as pd

from panolux.glare import (
    LEVELS, SWEEP_COLUMNS, GlareSource, SourcePolicy, ZeroEvWithSources,
    classify, compute_dgp, detect_sources, dgp_sweep, evaluate_glare,
    format_date, format_hour, guth_position_index, parse_date, parse_hour,
    read_sweep_csv, vertical_illuminance, write_sweep_csv)
from panolux.layout import RoomLayout, WindowAperture, build_scene
from panolux.photometry import LuminanceMap
from panolux.projection import BadProjection, Projection, fisheye_grid
from panolux.renderer import RenderParams, Viewpoint, render_fisheye
from panolux.skymodel import build_sky, parse_epw
from panolux.testing import TestBase

BOX = [(-2.0, -2.0), (-2.0, 4.0), (2.0, 4.0), (2.0, -2.0)]
WINDOW = WindowAperture(1, 1.0, 1.0, 3.0, 2.2)
CAMERA = (0.0, 1.6, 0.0)


def fisheye_map(values):
    return LuminanceMap(values, Projection.FISHEYE180)


def patch_map(size=64, background=100.0, patch=1e5):
    values = np.full((size, size), background)
    mid = size // 2
    values[mid - 2:mid + 2, mid - 2:mid + 2] = patch
    return fisheye_map(values)


class TestDgp(TestBase):
    def test_night_constant(self):
        result = compute_dgp(0.0)
        self.assertEqual(result.dgp, 0.16)
        self.assertEqual(result.level, 'imperceptible')
        self.assertEqual(result.sources, ())

    def test_zero_ev_with_sources(self):
        source = GlareSource(5000.0, 0.01, 1.0, (0.0, 0.0, 1.0))
        with self.assertRaises(ZeroEvWithSources):
            compute_dgp(0.0, [source])

    def test_illuminance_term(self):
        self.assertAlmostEqual(compute_dgp(1000.0).dgp,
                               5.87e-5 * 1000 + 0.16)
        with self.assertRaises(ValueError):
            compute_dgp(-1.0)
        with self.assertRaises(ValueError):
            compute_dgp(float('nan'))

    def test_source_term(self):
        source = GlareSource(5000.0, 0.01, 1.5, (0.0, 0.0, 1.0))
        term = 5000.0 ** 2 * 0.01 / (2000.0 ** 1.87 * 1.5 ** 2)
        expected = 5.87e-5 * 2000 + 0.098 * math.log10(1 + term) + 0.16
        result = compute_dgp(2000.0, [source])
        self.assertAlmostEqual(result.dgp, expected)
        self.assertEqual(result.level, classify(expected))
        self.assertEqual(result.to_dict()['sources'][0]['solid_angle'],
                         0.01)

    def test_single_source_example(self):
        source = GlareSource(1e4, 1e-3, 1.0, (0.0, 0.0, 1.0))
        expected = 0.2187 + 0.098 * math.log10(1 + 1e8 * 1e-3 / 1000 ** 1.87)
        self.assertAlmostEqual(compute_dgp(1000.0, [source]).dgp, expected,
                               places=12)
        self.assertAlmostEqual(compute_dgp(1000.0).dgp, 0.2187, places=12)

    def test_clamped(self):
        source = GlareSource(1e9, 1.0, 1.0, (0.0, 0.0, 1.0))
        self.assertEqual(compute_dgp(10000.0, [source]).dgp, 1.0)

    def test_classify(self):
        self.assertEqual(classify(0.0), 'imperceptible')
        self.assertEqual(classify(0.3499), 'imperceptible')
        self.assertEqual(classify(0.35), 'perceptible')
        self.assertEqual(classify(0.3999), 'perceptible')
        self.assertEqual(classify(0.40), 'disturbing')
        self.assertEqual(classify(0.45), 'intolerable')
        self.assertEqual(classify(1.0), 'intolerable')
        self.assertEqual(LEVELS[-1], 'intolerable')
        with self.assertRaises(ValueError):
            classify(1.5)

    def test_position_index(self):
        self.assertEqual(guth_position_index(0.0, 0.0), 1.0)
        near = guth_position_index(math.radians(10), 0.0)
        far = guth_position_index(math.radians(40), 0.0)
        self.assertGreater(far, near)
        self.assertGreaterEqual(near, 1.0)
        with self.assertRaises(ValueError):
            guth_position_index(2.0, 0.0)

    def test_position_index_off_axis(self):
        expected = math.exp((35.2 - 1.22) * 1e-3 * 20 + 21e-5 * 400)
        p = guth_position_index(math.radians(20), 0.0)
        self.assertAlmostEqual(p, expected, places=12)
        self.assertAlmostEqual(p, 2.14, delta=0.01)

    def test_source_validation(self):
        with self.assertRaises(ValueError):
            GlareSource(0.0, 0.01, 1.0, (0.0, 0.0, 1.0))
        with self.assertRaises(ValueError):
            GlareSource(10.0, 0.01, 0.5, (0.0, 0.0, 1.0))
        with self.assertRaises(ValueError):
            SourcePolicy(multiplier=0.0)


class TestFisheyeEvaluation(TestBase):
    def test_uniform_illuminance(self):
        lum = fisheye_map(np.full((512, 512), 100.0))
        self.assertAlmostEqual(vertical_illuminance(lum) / (100 * math.pi),
                               1.0, delta=0.005)

    def test_uniform_has_no_sources(self):
        lum = fisheye_map(np.full((32, 32), 100.0))
        self.assertEqual(detect_sources(lum), [])
        self.assertEqual(len(detect_sources(lum, SourcePolicy(absolute=50))),
                         1)

    def test_central_patch(self):
        lum = patch_map()
        sources = detect_sources(lum)
        self.assertEqual(len(sources), 1)
        source = sources[0]
        self.assertAlmostEqual(source.mean_luminance, 1e5)
        grid = fisheye_grid(64)
        self.assertAlmostEqual(source.solid_angle,
                               grid.solid_angle[30:34, 30:34].sum())
        np.testing.assert_allclose(source.direction, [0.0, 0.0, 1.0],
                                   atol=1e-9)
        self.assertAlmostEqual(source.position_index, 1.0, places=6)

    def test_detection_scale_invariant(self):
        base = detect_sources(patch_map())
        scaled = detect_sources(patch_map(background=1000.0, patch=1e6))
        self.assertEqual(len(base), len(scaled))
        self.assertAlmostEqual(base[0].solid_angle, scaled[0].solid_angle)

    def test_two_separate_patches(self):
        values = np.full((64, 64), 100.0)
        values[30:34, 10:14] = 1e5
        values[30:34, 50:54] = 1e5
        self.assertEqual(len(detect_sources(fisheye_map(values))), 2)

    def test_evaluate(self):
        result = evaluate_glare(patch_map())
        self.assertGreater(result.ev, 0.0)
        self.assertEqual(len(result.sources), 1)
        self.assertGreater(result.dgp, compute_dgp(result.ev).dgp)
        self.assertEqual(set(result.to_dict()),
                         {'dgp', 'ev_lux', 'level', 'sources'})

    def test_needs_fisheye(self):
        lum = LuminanceMap(np.ones((8, 16)), Projection.EQUIRECTANGULAR)
        with self.assertRaises(BadProjection):
            evaluate_glare(lum)


class TestSweepHelpers(TestBase):
    def test_parse_date(self):
        self.assertEqual(parse_date('06-21'), (6, 21))
        self.assertEqual(parse_date(' 3-1 '), (3, 1))
        for bad in ('13-01', 'June', '06/21'):
            with self.assertRaises(ValueError):
                parse_date(bad)

    def test_parse_hour(self):
        self.assertEqual(parse_hour('08:30'), 8.5)
        self.assertEqual(parse_hour('12'), 12.0)
        self.assertEqual(parse_hour('9.25'), 9.25)
        with self.assertRaises(ValueError):
            parse_hour('24:00')
        with self.assertRaises(ValueError):
            parse_hour('noon')

    def test_format(self):
        self.assertEqual(format_date(6, 1), '06-01')
        self.assertEqual(format_hour(8.5), '08:30')
        self.assertEqual(format_hour(16.0), '16:00')


class TestSweep(TestBase):
    package = 'panolux.tests'

    def _sweep(self):
        scene = build_scene(RoomLayout(BOX, 3.0, 1.6), [WINDOW])
        epw = parse_epw(self.read_data_text('weather.epw'))
        params = RenderParams(samples_per_pixel=4, max_bounces=2, seed=2,
                              n_jobs=2)
        return dgp_sweep(scene, epw, CAMERA, dates=[(6, 21)],
                         hours=[2.0, 12.0], params=params, size=16,
                         increment_deg=180.0)

    def test_sweep_table(self):
        table = self._sweep()
        self.assertEqual(list(table.columns), SWEEP_COLUMNS)
        self.assertEqual(list(table['hour']),
                         ['02:00', '02:00', '12:00', '12:00'])
        self.assertEqual(list(table['view']), [1, 2, 1, 2])
        np.testing.assert_allclose(table['azimuth_deg'], [0.0, 180.0] * 2)
        self.assertTrue((table['date'] == '06-21').all())

        night = table[table['hour'] == '02:00']
        self.assertTrue((night['ev_lux'] == 0).all())
        self.assertTrue((night['dgp'] == 0.16).all())
        self.assertTrue((night['level'] == 'imperceptible').all())
        day = table[table['hour'] == '12:00']
        self.assertGreater(day['ev_lux'].iloc[0], 0.0)
        for dgp, level in zip(table['dgp'], table['level']):
            self.assertEqual(level, classify(dgp))
        self.assertEqual(table['dgp'].attrs['title'], 'DGP')

    def test_night_rows(self):
        scene = build_scene(RoomLayout(BOX, 3.0, 1.6), [WINDOW])
        epw = parse_epw(self.read_data_text('weather.epw'))
        params = RenderParams(samples_per_pixel=1, max_bounces=1, n_jobs=1)
        table = dgp_sweep(scene, epw, CAMERA, dates=[(6, 21), (12, 21)],
                          hours=[0.5, 23.5], params=params, size=16)
        self.assertEqual(len(table), 2 * 2 * 16)
        np.testing.assert_allclose(table['dgp'], 0.16, atol=0.005)
        self.assertTrue((table['level'] == 'imperceptible').all())

    def test_csv_roundtrip(self):
        table = self._sweep()
        buf = io.StringIO()
        write_sweep_csv(table, buf)
        read = read_sweep_csv(io.StringIO(buf.getvalue()))
        self.assertEqual(list(read['date']), list(table['date']))
        self.assertEqual(list(read['hour']), list(table['hour']))
        np.testing.assert_allclose(read['dgp'], table['dgp'], atol=1e-4)

    def test_read_fixture(self):
        table = read_sweep_csv(self.get_data_path('sweep_estimated.csv'))
        self.assertEqual(len(table), 8)
        self.assertEqual(table['date'].iloc[0], '03-21')
        self.assertEqual(table['view'].dtype, np.int64)

    def test_missing_columns(self):
        buf = io.StringIO(pd.DataFrame({'date': ['06-21']}).to_csv(
            index=False))
        with self.assertRaisesRegex(ValueError, 'dgp'):
            read_sweep_csv(buf)


class TestRevealShading(TestBase):
    package = 'panolux.tests'

    def test_planar_wall_admits_more_glare(self):
        room = RoomLayout(BOX, 3.0, 1.6)
        planar = build_scene(room, [WINDOW])
        reveal = build_scene(room, [WINDOW], reveal_depth=0.3)
        epw = parse_epw(self.read_data_text('weather.epw'))
        params = RenderParams(samples_per_pixel=16, seed=4, n_jobs=2)
        window_facing = Viewpoint(CAMERA, 0.0)
        for hour in (10.0, 12.0, 14.0):
            sky = build_sky(epw, 3, 21, hour, 'clear')
            flat, deep = (evaluate_glare(render_fisheye(
                scene, sky, window_facing, params=params, size=64))
                for scene in (planar, reveal))
            self.assertGreater(flat.ev, deep.ev)
            self.assertGreaterEqual(flat.dgp, deep.dgp)
