# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import logging
import re

import jinja2
import numpy as np

from panolux.photometry import pixel_luminance
from .scene import Material, SceneModel, Surface, polygon_normal

logger = logging.getLogger(__name__)

J_ENV = jinja2.Environment(
    loader=jinja2.PackageLoader('panolux.layout', 'templates'),
    trim_blocks=True, keep_trailing_newline=True, autoescape=False)

_ORIENTATION = re.compile(r'orientation_deg=(\S+)')


def _num(x) -> str:
    x = float(x)
    if x == 0:
        x = 0.0  # no "-0" in the output
    return format(x, '.12g')


def export_rad(scene: SceneModel) -> str:
    """Radiance scene text: one modifier per material, one polygon per
    surface. Open apertures are holes and produce no primitive."""
    solid = [s for s in scene.surfaces if not s.material.is_open]
    materials = []
    for material in SceneModel(solid).materials:
        value = _num(material.value)
        if material.kind == 'plastic':
            args = [value, value, value, '0', '0']
        else:
            args = [value, value, value]
        materials.append({'kind': material.kind, 'name': material.name,
                          'args': args})
    surfaces = [{'modifier': s.material.name, 'name': s.name,
                 'coords': [_num(c) for c in s.vertices.ravel()]}
                for s in solid]
    return J_ENV.get_template('scene.rad').render(
        orientation=_num(scene.orientation_deg), materials=materials,
        surfaces=surfaces)


def export_obj(scene: SceneModel, triangulate=False) -> str:
    """Wavefront OBJ text with welded vertices and one group per surface."""
    lines = ['# panolux scene']
    index = {}
    faces = []
    for surface in scene.surfaces:
        refs = []
        for vertex in surface.vertices:
            key = tuple(_num(round(c, 9)) for c in vertex)
            if key not in index:
                index[key] = len(index) + 1
            refs.append(index[key])
        if triangulate:
            polys = [[refs[i] for i in tri] for tri in surface.triangles()]
        else:
            polys = [refs]
        faces.append((surface.name, polys))
    lines += ['v %s %s %s' % key for key in index]
    for name, polys in faces:
        lines.append('g %s' % name)
        lines += ['f ' + ' '.join(map(str, p)) for p in polys]
    return '\n'.join(lines) + '\n'


def _tokens(text):
    orientation = 0.0
    tokens = []
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith('#'):
            match = _ORIENTATION.search(stripped)
            if match:
                orientation = float(match.group(1))
            continue
        if stripped.startswith('!'):
            logger.warning('Skipping command line %r; generated geometry is'
                           ' not imported.', stripped)
            continue
        tokens += stripped.split()
    return orientation, tokens


def _primitives(tokens):
    pos = 0
    while pos < len(tokens):
        try:
            modifier, kind, name = tokens[pos:pos + 3]
            pos += 3
            args = []
            for _ in range(3):
                count = int(tokens[pos])
                args.append(tokens[pos + 1:pos + 1 + count])
                if len(args[-1]) != count:
                    raise IndexError
                pos += 1 + count
        except (ValueError, IndexError):
            raise ValueError('Malformed Radiance primitive near token %d.'
                             % pos)
        yield modifier, kind, name, args[2]


def import_rad(text: str) -> SceneModel:
    """Scene from the plastic/glass/polygon subset of the Radiance format.

    Plastic reflectance and glass transmittance collapse to one value with
    the luminance weights. Polygons are classed as window (glass), floor or
    ceiling (horizontal, below or above mid-height) and wall.
    """
    orientation, tokens = _tokens(text)
    materials = {}
    polygons = []
    for modifier, kind, name, reals in _primitives(tokens):
        if kind in ('plastic', 'glass'):
            expected = 5 if kind == 'plastic' else 3
            if len(reals) < expected:
                raise ValueError('%s %r needs %d real arguments, got %d.'
                                 % (kind, name, expected, len(reals)))
            rgb = np.array([float(r) for r in reals[:3]])
            value = float(np.clip(pixel_luminance(rgb), 0.0, 1.0))
            materials[name] = Material(name, kind, value)
        elif kind == 'polygon':
            coords = np.array([float(r) for r in reals])
            if len(coords) < 9 or len(coords) % 3:
                raise ValueError('Polygon %r needs a multiple of three'
                                 ' coordinates, at least nine.' % name)
            polygons.append((modifier, name, coords.reshape(-1, 3)))
        else:
            logger.warning('Skipping unsupported %s primitive %r.', kind,
                           name)

    kept = []
    for modifier, name, vertices in polygons:
        if modifier not in materials:
            logger.warning('Skipping polygon %r with unknown modifier %r.',
                           name, modifier)
            continue
        kept.append((modifier, name, vertices))
    if not kept:
        return SceneModel((), orientation)
    heights = np.concatenate([v[:, 1] for _, _, v in kept])
    middle = (heights.min() + heights.max()) / 2

    surfaces = []
    for modifier, name, vertices in kept:
        material = materials[modifier]
        if material.is_glazing:
            kind = 'window'
        elif abs(polygon_normal(vertices)[1]) > 0.99:
            kind = 'floor' if vertices[:, 1].mean() < middle else 'ceiling'
        else:
            kind = 'wall'
        surfaces.append(Surface(name, kind, vertices, material))
    logger.info('Imported %d surfaces and %d materials', len(surfaces),
                len(materials))
    return SceneModel(tuple(surfaces), orientation)
