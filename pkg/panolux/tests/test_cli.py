# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import contextlib
import io
import json
import os

import numpy as np
import pandas as pd

from panolux.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, build_parser, run
from panolux.glare import read_sweep_csv
from panolux.glare.sweep import SWEEP_SAMPLES
from panolux.hdr_io import HdrImage, read_hdr_file, write_hdr_file
from panolux.layout import (
    RoomLayout, WindowAperture, build_scene, export_rad, layout_from_json,
    layout_to_json)
from panolux.projection import Projection
from panolux.renderer import DEFAULT_SAMPLES
from panolux.testing import TestBase
from panolux.tests.test_layout import box_corner_doc

BOX = [(-2.0, -2.0), (-2.0, 4.0), (2.0, 4.0), (2.0, -2.0)]
FAST = ['--spp', '1', '--bounces', '1', '--jobs', '1']


class TestCli(TestBase):
    package = 'panolux.tests'

    def run_cli(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = run([str(a) for a in argv])
        return code, out.getvalue(), err.getvalue()

    def grey_image(self, name, width, height, value=2.0,
                   projection=Projection.UNSPECIFIED):
        path = self.temp_path(name)
        write_hdr_file(HdrImage(np.full((height, width, 3), value),
                                projection=projection), path)
        return path

    def layout_file(self):
        room = RoomLayout(BOX, 3.0, 1.6)
        path = self.temp_path('room.json')
        with open(path, 'w') as fh:
            fh.write(layout_to_json(room, [WindowAperture(1, 1.0, 1.0, 3.0,
                                                          2.2)]))
        return path

    def write_json(self, name, obj):
        path = self.temp_path(name)
        with open(path, 'w') as fh:
            json.dump(obj, fh)
        return path


class TestUsage(TestCli):
    def test_no_command(self):
        code, _, err = self.run_cli()
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn('error', err)

    def test_unknown_option(self):
        code, _, _ = self.run_cli('hdr-info', 'a.hdr', '--bogus')
        self.assertEqual(code, EXIT_USAGE)

    def test_bad_date(self):
        code, _, _ = self.run_cli('render', 'room.json', 'w.epw', '-o',
                                  'x.hdr', '--date', '13-40', '--time',
                                  '12:00')
        self.assertEqual(code, EXIT_USAGE)

    def test_sample_defaults(self):
        parser = build_parser()
        sweep = parser.parse_args(['sweep', 'room.json', 'w.epw', '-o',
                                   'o.csv'])
        self.assertEqual(sweep.spp, SWEEP_SAMPLES)
        self.assertEqual(SWEEP_SAMPLES, 16)
        render = parser.parse_args(['render', 'room.json', 'w.epw', '-o',
                                    'o.hdr', '--date', '06-21', '--time',
                                    '12:00'])
        self.assertEqual(render.spp, DEFAULT_SAMPLES)

    def test_missing_file(self):
        code, _, err = self.run_cli('hdr-info', self.temp_path('nope.hdr'))
        self.assertEqual(code, EXIT_DATA)
        self.assertIn('nope.hdr', err)


class TestImageCommands(TestCli):
    def test_hdr_info(self):
        path = self.grey_image('pano.hdr', 8, 4)
        code, out, _ = self.run_cli('hdr-info', path)
        self.assertEqual(code, EXIT_OK)
        info = json.loads(out)
        self.assertEqual((info['width'], info['height']), (8, 4))
        self.assertEqual(info['projection'], 'equirectangular')
        self.assertAlmostEqual(info['luminance']['mean'], 2.0, delta=0.01)

    def test_falsecolor(self):
        path = self.grey_image('pano.hdr', 8, 4)
        png = self.temp_path('fc.png')
        self.assertEqual(self.run_cli('falsecolor', path, '-o', png)[0],
                         EXIT_OK)
        self.assertTrue(os.path.exists(png))

    def test_fisheye_views(self):
        path = self.grey_image('pano.hdr', 32, 16)
        out_dir = self.temp_path('views')
        code, _, _ = self.run_cli('fisheye', path, '-o', out_dir,
                                  '--increment', 45)
        self.assertEqual(code, EXIT_OK)
        names = sorted(os.listdir(out_dir))
        self.assertEqual(names, ['pano_view%02d.hdr' % i
                                 for i in range(1, 9)])
        view = read_hdr_file(os.path.join(out_dir, names[0]))
        self.assertIs(view.projection, Projection.FISHEYE180)
        self.assertEqual(view.width, 16)

    def test_fisheye_bad_increment(self):
        path = self.grey_image('pano.hdr', 32, 16)
        code, _, _ = self.run_cli('fisheye', path, '-o',
                                  self.temp_path('views'), '--increment', 7)
        self.assertEqual(code, EXIT_DATA)

    def test_luminance_calibration(self):
        path = self.grey_image('pano.hdr', 8, 4)
        out = self.temp_path('lum.hdr')
        code, stdout, _ = self.run_cli('luminance', path, '-o', out,
                                       '--measured', 100, '--region',
                                       '0,0,4,2')
        self.assertEqual(code, EXIT_OK)
        self.assertAlmostEqual(float(stdout.split('=')[1]), 50.0, delta=0.5)
        np.testing.assert_allclose(read_hdr_file(out).pixels, 100.0,
                                   rtol=0.01)

    def test_measured_needs_region(self):
        path = self.grey_image('pano.hdr', 8, 4)
        code, _, _ = self.run_cli('luminance', path, '-o',
                                  self.temp_path('lum.hdr'), '--measured',
                                  100)
        self.assertEqual(code, EXIT_USAGE)

    def test_errmap(self):
        a = self.grey_image('a.hdr', 32, 16, 2.0)
        b = self.grey_image('b.hdr', 32, 16, 1.0)
        png = self.temp_path('err.png')
        regions = self.temp_path('regions.csv')
        code, _, _ = self.run_cli('errmap', a, b, '-o', png, '--region-csv',
                                  regions, '--scene', self.layout_file())
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(os.path.exists(png))
        self.assertTrue(os.path.exists(self.temp_path('err.json')))
        table = pd.read_csv(regions)
        self.assertGreater(len(table), 0)

    def test_errmap_regions_need_scene(self):
        a = self.grey_image('a.hdr', 32, 16, 2.0)
        code, _, _ = self.run_cli('errmap', a, a, '-o',
                                  self.temp_path('err.png'), '--region-csv',
                                  self.temp_path('regions.csv'))
        self.assertEqual(code, EXIT_USAGE)

    def test_dgp_of_square_picture(self):
        path = self.grey_image('view.hdr', 16, 16, 100.0)
        out = self.temp_path('dgp.json')
        self.assertEqual(self.run_cli('dgp', path, '-o', out)[0], EXIT_OK)
        with open(out) as fh:
            result = json.load(fh)
        self.assertEqual(result['level'], 'imperceptible')
        self.assertEqual(result['sources'], [])
        self.assertGreater(result['ev_lux'], 0.0)

    def test_dgp_needs_fisheye(self):
        path = self.grey_image('flat.hdr', 12, 8)
        self.assertEqual(self.run_cli('dgp', path)[0], EXIT_DATA)


class TestSceneCommands(TestCli):
    def test_layout(self):
        corners = self.write_json('corners.json', box_corner_doc())
        out = self.temp_path('layout.json')
        code, _, _ = self.run_cli('layout', corners, '-o', out,
                                  '--orientation', 90)
        self.assertEqual(code, EXIT_OK)
        with open(out) as fh:
            room, apertures = layout_from_json(fh.read())
        self.assertEqual(len(room.walls), 4)
        self.assertEqual(len(apertures), 1)
        self.assertEqual(room.orientation_deg, 90.0)

    def test_bad_corners(self):
        corners = self.write_json('corners.json', {'image': {}})
        code, _, _ = self.run_cli('layout', corners, '-o',
                                  self.temp_path('layout.json'))
        self.assertEqual(code, EXIT_DATA)

    def test_scene_export(self):
        layout = self.layout_file()
        rad, obj = self.temp_path('room.rad'), self.temp_path('room.obj')
        self.assertEqual(self.run_cli('scene', layout, '-o', rad)[0],
                         EXIT_OK)
        self.assertEqual(self.run_cli('scene', layout, '-o', obj,
                                      '--triangulate')[0], EXIT_OK)
        with open(rad) as fh:
            self.assertIn('polygon', fh.read())
        with open(obj) as fh:
            self.assertIn('\nf ', fh.read())

    def test_scene_format_unknown(self):
        code, _, _ = self.run_cli('scene', self.layout_file(), '-o',
                                  self.temp_path('room.txt'))
        self.assertEqual(code, EXIT_USAGE)


class TestSimulationCommands(TestCli):
    def render_args(self, scene, out):
        return ['render', scene, self.get_data_path('weather.epw'), '-o',
                out, '--date', '06-21', '--time', '12:00']

    def test_render_panorama(self):
        out = self.temp_path('render.hdr')
        code, _, _ = self.run_cli(*self.render_args(self.layout_file(), out),
                                  '--size', 32, *FAST)
        self.assertEqual(code, EXIT_OK)
        img = read_hdr_file(out)
        self.assertEqual((img.width, img.height), (64, 32))
        self.assertGreater(img.pixels.max(), 0.0)

    def test_render_fisheye(self):
        out = self.temp_path('view.hdr')
        code, _, _ = self.run_cli(*self.render_args(self.layout_file(), out),
                                  '--fisheye', '--size', 8, *FAST)
        self.assertEqual(code, EXIT_OK)
        self.assertIs(read_hdr_file(out).projection, Projection.FISHEYE180)

    def test_rad_scene_needs_viewpoint(self):
        scene = build_scene(RoomLayout(BOX, 3.0, 1.6))
        rad = self.temp_path('room.rad')
        with open(rad, 'w') as fh:
            fh.write(export_rad(scene))
        out = self.temp_path('render.hdr')
        code, _, _ = self.run_cli(*self.render_args(rad, out), '--size', 8,
                                  *FAST)
        self.assertEqual(code, EXIT_USAGE)
        code, _, _ = self.run_cli(*self.render_args(rad, out), '--size', 8,
                                  '--viewpoint', '0,1.6,0', *FAST)
        self.assertEqual(code, EXIT_OK)

    def test_viewpoint_outside(self):
        code, _, err = self.run_cli(
            *self.render_args(self.layout_file(),
                              self.temp_path('render.hdr')),
            '--size', 8, '--viewpoint', '10,1.6,10', *FAST)
        self.assertEqual(code, EXIT_DATA)
        self.assertIn('not inside the room', err)

    def test_config_defaults(self):
        config = self.write_json('config.json', {
            'spp': 1, 'bounces': 1, 'size': 8, 'jobs': 1})
        out = self.temp_path('render.hdr')
        code, _, _ = self.run_cli('--config', config,
                                  *self.render_args(self.layout_file(), out))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(read_hdr_file(out).height, 8)

    def test_config_unknown_key(self):
        config = self.write_json('config.json', {'colour': 'red'})
        code, _, err = self.run_cli('--config', config, *self.render_args(
            self.layout_file(), self.temp_path('render.hdr')))
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn('colour', err)

    def test_config_not_an_object(self):
        config = self.write_json('config.json', [1, 2])
        code, _, _ = self.run_cli('--config', config, *self.render_args(
            self.layout_file(), self.temp_path('render.hdr')))
        self.assertEqual(code, EXIT_USAGE)

    def test_sweep_and_compare(self):
        csv = self.temp_path('sweep.csv')
        plot_dir = self.temp_path('plot')
        code, _, _ = self.run_cli(
            'sweep', self.layout_file(), self.get_data_path('weather.epw'),
            '-o', csv, '--dates', '06-21', '--hours', '02:00,12:00',
            '--increment', 180, '--size', 8, '--plot', plot_dir, *FAST)
        self.assertEqual(code, EXIT_OK)
        table = read_sweep_csv(csv)
        self.assertEqual(len(table), 4)
        self.assertEqual(list(table['view']), [1, 2, 1, 2])
        self.assertTrue(os.path.exists(os.path.join(plot_dir,
                                                    'index.html')))

    def test_compare(self):
        a = self.get_data_path('sweep_estimated.csv')
        b = self.get_data_path('sweep_detailed.csv')
        code, out, _ = self.run_cli('compare', a, b)
        self.assertEqual(code, EXIT_OK)
        self.assertIn('all', out)
        csv = self.temp_path('stats.csv')
        self.assertEqual(self.run_cli('compare', a, b, '-o', csv)[0],
                         EXIT_OK)
        stats = pd.read_csv(csv)
        self.assertEqual(list(stats['date']), ['03-21', '06-21', 'all'])

    def test_compare_mismatched(self):
        a = self.get_data_path('sweep_estimated.csv')
        code, _, _ = self.run_cli('compare', a, self.get_data_path(
            'weather.epw'))
        self.assertEqual(code, EXIT_DATA)
