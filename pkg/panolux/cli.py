# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import argparse
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import TypeAdapter, ValidationError

from panolux.compare import compare_dgp
from panolux.glare import (
    DEFAULT_ABSOLUTE_THRESHOLD, DEFAULT_DATES, DEFAULT_HOURS,
    DEFAULT_MULTIPLIER, SourcePolicy, dgp_sweep, evaluate_glare, parse_date,
    parse_hour, read_sweep_csv, write_sweep_csv)
from panolux.glare.sweep import (
    DEFAULT_INCREMENT_DEG, SWEEP_SAMPLES, SWEEP_SIZE)
from panolux.hdr_io import read_hdr_file, write_hdr_file, write_raster_png
from panolux.layout import (
    DEFAULT_CAMERA_HEIGHT, MaterialSet, REGION_LABELS, build_scene,
    export_obj, export_rad, import_rad, layout_from_json, layout_to_json,
    parse_corner_json, project_window, reconstruct_room)
from panolux.layout.scene import (
    DEFAULT_CEILING_REFLECTANCE, DEFAULT_FLOOR_REFLECTANCE,
    DEFAULT_WALL_REFLECTANCE)
from panolux.photometry import (
    DEFAULT_CLIP, compute_k, error_map, false_color, luminance_to_hdr,
    region_error_stats, to_luminance_map)
from panolux.photometry.falsecolor import DEFAULT_HI, DEFAULT_LO
from panolux.plots import plot_dgp_sweep
from panolux.projection import (
    Projection, extract_fisheye, fisheye_grid, view_azimuths)
from panolux.renderer import (
    DEFAULT_BOUNCES, DEFAULT_LIMIT_WEIGHT, DEFAULT_SAMPLES, RenderParams,
    Viewpoint, render_fisheye, render_labels, render_panorama)
from panolux.renderer.tracer import (
    DEFAULT_FISHEYE_SIZE, DEFAULT_PANORAMA_HEIGHT)
from panolux.skymodel import SkyCondition, build_sky, read_epw

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
_GLOBAL_DESTS = {'command', 'func', 'config', 'verbose'}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    commands = None

    def error(self, message):
        raise UsageError('%s: %s' % (self.prog, message))


def _as_type(parse):
    def convert(text):
        try:
            return parse(text)
        except ValueError as e:
            raise argparse.ArgumentTypeError(str(e))
    convert.__name__ = parse.__name__
    return convert


def _floats(count):
    def parse_floats(text):
        values = tuple(float(t) for t in str(text).split(','))
        if len(values) != count:
            raise ValueError('Expected %d comma-separated numbers, got %r.'
                             % (count, text))
        return values
    return _as_type(parse_floats)


def _dates(text):
    return tuple(parse_date(t) for t in str(text).split(','))


def _hours(text):
    return tuple(parse_hour(t) for t in str(text).split(','))


def _read_map(path, k=1.0):
    return to_luminance_map(read_hdr_file(path), k)


def _write_json(obj, path):
    text = json.dumps(obj, indent=2)
    if path is None:
        print(text)
    else:
        Path(path).write_text(text + '\n')
        logger.info('Wrote %s', path)


def _render_params(args) -> RenderParams:
    return RenderParams(args.spp, args.bounces, args.limit_weight, args.seed,
                        args.jobs)


def _load_scene(args):
    """Scene and viewpoint position from a layout JSON or a .rad file."""
    path = Path(args.scene)
    text = path.read_text()
    if path.suffix.lower() == '.rad':
        scene = import_rad(text)
        if args.viewpoint is None:
            raise UsageError('A .rad scene carries no camera position;'
                             ' pass --viewpoint X,Y,Z.')
        return scene, args.viewpoint
    room, apertures = layout_from_json(text)
    scene = build_scene(room, apertures, _materials(args), args.reveal)
    position = (scene.viewpoint if args.viewpoint is None
                else args.viewpoint)
    return scene, position


def _materials(args) -> MaterialSet:
    return MaterialSet.from_values(args.wall, args.ceiling, args.floor,
                                   args.glass)


def _cmd_hdr_info(args) -> int:
    img = read_hdr_file(args.input)
    lum = to_luminance_map(img, args.k).values
    _write_json({
        'width': img.width,
        'height': img.height,
        'projection': img.projection.value,
        'exposure': img.exposure,
        'header': list(img.header),
        'luminance': {'min': float(lum.min()), 'max': float(lum.max()),
                      'mean': float(lum.mean()),
                      'median': float(np.median(lum))},
    }, None)
    return EXIT_OK


def _cmd_falsecolor(args) -> int:
    fc = false_color(_read_map(args.input, args.k), args.lo, args.hi,
                     args.scale)
    write_raster_png(fc.image if args.no_legend else fc.composite(),
                     args.output)
    return EXIT_OK


def _cmd_fisheye(args) -> int:
    img = read_hdr_file(args.input)
    size = img.height if args.size is None else args.size
    out_dir = Path(args.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(args.input).stem
    for view, azimuth in enumerate(view_azimuths(args.increment), start=1):
        path = out_dir / ('%s_view%02d.hdr' % (stem, view))
        write_hdr_file(extract_fisheye(img, azimuth, size), path)
    return EXIT_OK


def _cmd_luminance(args) -> int:
    img = read_hdr_file(args.input)
    k = args.k
    if args.measured is not None:
        if args.region is None:
            raise UsageError('--measured needs --region U0,V0,U1,V1.')
        k = compute_k(args.measured, args.region, img).k
        print('k = %.6g' % k)
    write_hdr_file(luminance_to_hdr(to_luminance_map(img, k)), args.output)
    return EXIT_OK


def _cmd_errmap(args) -> int:
    a = _read_map(args.a, args.k_a)
    b = _read_map(args.b, args.k_b)
    err, raster = error_map(a, b, args.clip)
    write_raster_png(raster, args.output)
    stats_path = (Path(args.output).with_suffix('.json')
                  if args.stats is None else args.stats)
    _write_json(err.stats.to_dict(), stats_path)
    if args.region_csv is not None:
        if args.scene is None:
            raise UsageError('--region-csv needs --scene to label pixels.')
        scene, position = _load_scene(args)
        vp = Viewpoint(position, math.radians(args.view_azimuth))
        labels = render_labels(scene, vp, a.projection, a.height)
        region_error_stats(err, labels, REGION_LABELS).to_csv(
            args.region_csv, index=False, float_format='%.4f')
        logger.info('Wrote %s', args.region_csv)
    return EXIT_OK


def _cmd_layout(args) -> int:
    corners = parse_corner_json(Path(args.corners).read_text())
    room = reconstruct_room(corners, args.camera_height, args.orientation)
    apertures = [project_window(w.quad, w.wall, room, corners.width,
                                corners.height) for w in corners.windows]
    Path(args.output).write_text(layout_to_json(room, apertures) + '\n')
    logger.info('Wrote %s', args.output)
    return EXIT_OK


def _cmd_scene(args) -> int:
    room, apertures = layout_from_json(Path(args.layout).read_text())
    scene = build_scene(room, apertures, _materials(args), args.reveal)
    output = Path(args.output)
    fmt = args.format or output.suffix.lstrip('.').lower()
    if fmt == 'rad':
        text = export_rad(scene)
    elif fmt == 'obj':
        text = export_obj(scene, args.triangulate)
    else:
        raise UsageError('Cannot tell the scene format from %r; pass'
                         ' --format rad or --format obj.' % str(output))
    output.write_text(text)
    logger.info('Wrote %s', output)
    return EXIT_OK


def _cmd_render(args) -> int:
    scene, position = _load_scene(args)
    month, day = args.date
    sky = build_sky(read_epw(args.epw), month, day, args.time, args.sky)
    params = _render_params(args)
    if args.fisheye:
        size = DEFAULT_FISHEYE_SIZE if args.size is None else args.size
        vp = Viewpoint(position, math.radians(args.view_azimuth))
        lum = render_fisheye(scene, sky, vp, params=params, size=size)
    else:
        height = (DEFAULT_PANORAMA_HEIGHT if args.size is None
                  else args.size)
        lum = render_panorama(scene, sky, Viewpoint(position), params,
                              height)
    write_hdr_file(luminance_to_hdr(lum), args.output)
    return EXIT_OK


def _cmd_dgp(args) -> int:
    lum = _read_map(args.input, args.k)
    if lum.projection is not Projection.FISHEYE180:
        if lum.width != lum.height:
            raise ValueError('%s is not a fisheye picture; extract views'
                             ' with the fisheye command first.' % args.input)
        lum = lum.with_raster(
            np.where(fisheye_grid(lum.width).inside, lum.values, 0.0),
            Projection.FISHEYE180)
    result = evaluate_glare(lum, SourcePolicy(args.multiplier,
                                              args.threshold))
    _write_json(result.to_dict(), args.output)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    scene, position = _load_scene(args)
    table = dgp_sweep(scene, read_epw(args.epw), position, args.dates,
                      args.hours, _render_params(args), args.size,
                      args.increment, args.sky,
                      SourcePolicy(args.multiplier, args.threshold))
    write_sweep_csv(table, args.output)
    logger.info('Wrote %d sweep rows to %s', len(table), args.output)
    if args.plot is not None:
        Path(args.plot).mkdir(parents=True, exist_ok=True)
        plot_dgp_sweep(args.plot, table)
    return EXIT_OK


def _cmd_compare(args) -> int:
    stats = compare_dgp(read_sweep_csv(args.a), read_sweep_csv(args.b),
                        args.alternative)
    if args.output is None:
        print(stats.to_string(index=False))
    else:
        stats.to_csv(args.output, index=False, float_format='%.6g')
        logger.info('Wrote %s', args.output)
    if args.plot is not None:
        Path(args.plot).mkdir(parents=True, exist_ok=True)
        plot_dgp_sweep(args.plot, read_sweep_csv(args.a), stats)
    return EXIT_OK


def _add_scene_args(p):
    p.add_argument('scene', help='Layout JSON, or a Radiance .rad scene')
    p.add_argument('--viewpoint', type=_floats(3), default=None,
                   help='Camera position X,Y,Z in metres (default: the'
                        ' layout camera)')
    p.add_argument('--wall', type=float, default=DEFAULT_WALL_REFLECTANCE)
    p.add_argument('--ceiling', type=float,
                   default=DEFAULT_CEILING_REFLECTANCE)
    p.add_argument('--floor', type=float, default=DEFAULT_FLOOR_REFLECTANCE)
    p.add_argument('--glass', type=float, default=None,
                   help='Glazing transmittance (default: open windows)')
    p.add_argument('--reveal', type=float, default=0.0,
                   help='Wall thickness around windows in metres')


def _add_render_args(p, spp=DEFAULT_SAMPLES):
    p.add_argument('--spp', type=int, default=spp,
                   help='Samples per pixel')
    p.add_argument('--bounces', type=int, default=DEFAULT_BOUNCES)
    p.add_argument('--limit-weight', type=float,
                   default=DEFAULT_LIMIT_WEIGHT)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--jobs', type=int, default=None,
                   help='Worker threads (default: PANOLUX_THREADS or all'
                        ' cores)')
    p.add_argument('--sky', default='auto',
                   choices=['auto'] + [c.value for c in SkyCondition])


def _add_glare_args(p):
    p.add_argument('--multiplier', type=float, default=DEFAULT_MULTIPLIER,
                   help='Source threshold as a multiple of the mean view'
                        ' luminance')
    p.add_argument('--threshold', type=float, nargs='?', default=None,
                   const=DEFAULT_ABSOLUTE_THRESHOLD,
                   help='Absolute source threshold in cd/m2 (%(const)g when'
                        ' given without a value)')


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog='panolux',
                description='Lighting simulation from an indoor HDR'
                            ' panorama.')
    p.add_argument('--config', default=None,
                   help='JSON file of default option values, keyed by'
                        ' option name')
    p.add_argument('-v', '--verbose', action='count', default=0)
    sub = p.add_subparsers(dest='command', required=True)

    s = sub.add_parser('hdr-info', help='Print header and luminance'
                                        ' statistics of an HDR image.')
    s.add_argument('input')
    s.add_argument('--k', type=float, default=1.0)
    s.set_defaults(func=_cmd_hdr_info)

    s = sub.add_parser('falsecolor', help='False-colour PNG of luminance.')
    s.add_argument('input')
    s.add_argument('-o', '--output', required=True)
    s.add_argument('--k', type=float, default=1.0)
    s.add_argument('--lo', type=float, default=DEFAULT_LO)
    s.add_argument('--hi', type=float, default=DEFAULT_HI)
    s.add_argument('--scale', choices=['linear', 'log'], default='linear')
    s.add_argument('--no-legend', action='store_true')
    s.set_defaults(func=_cmd_falsecolor)

    s = sub.add_parser('fisheye', help='Split a panorama into fisheye'
                                       ' views.')
    s.add_argument('input')
    s.add_argument('-o', '--output', required=True,
                   help='Output directory')
    s.add_argument('--increment', type=float, default=DEFAULT_INCREMENT_DEG,
                   help='Degrees between views')
    s.add_argument('--size', type=int, default=None,
                   help='Fisheye diameter in pixels (default: panorama'
                        ' height)')
    s.set_defaults(func=_cmd_fisheye)

    s = sub.add_parser('luminance', help='Calibrated luminance map as HDR.')
    s.add_argument('input')
    s.add_argument('-o', '--output', required=True)
    s.add_argument('--k', type=float, default=1.0)
    s.add_argument('--measured', type=float, default=None,
                   help='Spot luminance in cd/m2 to derive k from')
    s.add_argument('--region', type=_floats(4), default=None,
                   help='Pixel rectangle U0,V0,U1,V1 of the measurement')
    s.set_defaults(func=_cmd_luminance)

    s = sub.add_parser('errmap', help='Signed error map of two luminance'
                                      ' maps.')
    s.add_argument('a')
    s.add_argument('b')
    s.add_argument('-o', '--output', required=True, help='PNG path')
    s.add_argument('--stats', default=None,
                   help='Statistics JSON (default: next to the PNG)')
    s.add_argument('--clip', type=float, default=DEFAULT_CLIP)
    s.add_argument('--k-a', type=float, default=1.0)
    s.add_argument('--k-b', type=float, default=1.0)
    s.add_argument('--region-csv', default=None,
                   help='Write error statistics per surface class')
    s.add_argument('--scene', default=None,
                   help='Layout JSON or .rad scene used to label pixels')
    s.add_argument('--viewpoint', type=_floats(3), default=None)
    s.add_argument('--view-azimuth', type=float, default=0.0,
                   help='Fisheye view direction in degrees')
    s.add_argument('--wall', type=float, default=DEFAULT_WALL_REFLECTANCE)
    s.add_argument('--ceiling', type=float,
                   default=DEFAULT_CEILING_REFLECTANCE)
    s.add_argument('--floor', type=float, default=DEFAULT_FLOOR_REFLECTANCE)
    s.add_argument('--glass', type=float, default=None)
    s.add_argument('--reveal', type=float, default=0.0)
    s.set_defaults(func=_cmd_errmap)

    s = sub.add_parser('layout', help='Room layout from corner'
                                      ' annotations.')
    s.add_argument('corners')
    s.add_argument('-o', '--output', required=True)
    s.add_argument('--camera-height', type=float, default=None,
                   help='Metres (default: the annotation file, else %g)'
                        % DEFAULT_CAMERA_HEIGHT)
    s.add_argument('--orientation', type=float, default=0.0,
                   help='Compass heading of the panorama centre column')
    s.set_defaults(func=_cmd_layout)

    s = sub.add_parser('scene', help='Export a layout as Radiance or OBJ.')
    s.add_argument('layout')
    s.add_argument('-o', '--output', required=True)
    s.add_argument('--format', choices=['rad', 'obj'], default=None)
    s.add_argument('--triangulate', action='store_true')
    s.add_argument('--wall', type=float, default=DEFAULT_WALL_REFLECTANCE)
    s.add_argument('--ceiling', type=float,
                   default=DEFAULT_CEILING_REFLECTANCE)
    s.add_argument('--floor', type=float, default=DEFAULT_FLOOR_REFLECTANCE)
    s.add_argument('--glass', type=float, default=None)
    s.add_argument('--reveal', type=float, default=0.0)
    s.set_defaults(func=_cmd_scene)

    s = sub.add_parser('render', help='Render a luminance map under an'
                                      ' EPW sky.')
    _add_scene_args(s)
    s.add_argument('epw')
    s.add_argument('-o', '--output', required=True)
    s.add_argument('--date', type=_as_type(parse_date), required=True,
                   help='MM-DD')
    s.add_argument('--time', type=_as_type(parse_hour), required=True,
                   help='Local standard time, HH:MM')
    s.add_argument('--fisheye', action='store_true')
    s.add_argument('--view-azimuth', type=float, default=0.0,
                   help='Fisheye view direction in degrees')
    s.add_argument('--size', type=int, default=None,
                   help='Panorama height or fisheye diameter in pixels')
    _add_render_args(s)
    s.set_defaults(func=_cmd_render)

    s = sub.add_parser('dgp', help='Daylight glare probability of a'
                                   ' fisheye view.')
    s.add_argument('input')
    s.add_argument('-o', '--output', default=None)
    s.add_argument('--k', type=float, default=1.0)
    _add_glare_args(s)
    s.set_defaults(func=_cmd_dgp)

    s = sub.add_parser('sweep', help='DGP table over dates, hours and'
                                     ' views.')
    _add_scene_args(s)
    s.add_argument('epw')
    s.add_argument('-o', '--output', required=True)
    s.add_argument('--dates', type=_as_type(_dates), default=DEFAULT_DATES,
                   help='Comma-separated MM-DD list')
    s.add_argument('--hours', type=_as_type(_hours), default=DEFAULT_HOURS,
                   help='Comma-separated HH:MM list')
    s.add_argument('--increment', type=float, default=DEFAULT_INCREMENT_DEG)
    s.add_argument('--size', type=int, default=SWEEP_SIZE)
    s.add_argument('--plot', default=None,
                   help='Directory for an HTML heatmap report')
    _add_render_args(s, spp=SWEEP_SAMPLES)
    _add_glare_args(s)
    s.set_defaults(func=_cmd_sweep)

    s = sub.add_parser('compare', help='Paired comparison of two sweeps.')
    s.add_argument('a')
    s.add_argument('b')
    s.add_argument('-o', '--output', default=None)
    s.add_argument('--alternative', default='two-sided',
                   choices=['two-sided', 'greater', 'less'])
    s.add_argument('--plot', default=None,
                   help='Directory for an HTML report of sweep A')
    s.set_defaults(func=_cmd_compare)
    p.commands = sub.choices
    return p


def _apply_config(parser, args, argv):
    """Re-parse with defaults taken from ``--config``."""
    try:
        text = Path(args.config).read_text()
    except OSError as e:
        raise UsageError('Cannot read config file %s: %s'
                         % (args.config, e.strerror))
    try:
        config = TypeAdapter(dict[str, Any]).validate_json(text)
    except ValidationError as e:
        raise UsageError('Config file %s must hold a JSON object: %s'
                         % (args.config, e))
    config = {key.replace('-', '_'): value for key, value in config.items()}
    unknown = set(config) - (set(vars(args)) - _GLOBAL_DESTS)
    if unknown:
        raise UsageError('Config file %s sets unknown options for %s: %s'
                         % (args.config, args.command,
                            ', '.join(sorted(unknown))))
    parser.commands[args.command].set_defaults(**config)
    return parser.parse_args(argv)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.config is not None:
            args = _apply_config(parser, args, argv)
        if args.verbose:
            logging.basicConfig(
                level=logging.DEBUG if args.verbose > 1 else logging.INFO,
                format='%(levelname)s %(name)s: %(message)s')
        return args.func(args)
    except UsageError as e:
        print('error: %s' % e, file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as e:
        print('error: %s' % e, file=sys.stderr)
        return EXIT_DATA


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
