# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import logging
import math
from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed

from panolux.layout import REGION_LABELS, SceneModel
from panolux.photometry import LuminanceMap
from panolux.projection import (
    Projection, SphericalDir, equirect_directions, fisheye_grid,
    fisheye_local_dirs, to_world)
from panolux.skymodel import SkyModel, sky_luminance, sun_direction
from panolux.util import default_n_jobs, keyed_rng
from .geometry import (
    RAY_EPSILON, PackedScene, cosine_directions, facing_normals, intersect,
    pack_scene, trace)

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 100
DEFAULT_BOUNCES = 8
DEFAULT_LIMIT_WEIGHT = 0.01
DEFAULT_PANORAMA_HEIGHT = 64
DEFAULT_FISHEYE_SIZE = 64
TILE_ROWS = 8


class ViewpointOutsideRoom(ValueError):
    pass


@dataclass(frozen=True)
class RenderParams:
    """Path tracing controls.

    ``max_bounces`` counts diffuse reflections; paths whose throughput
    falls below ``limit_weight`` go through Russian roulette. ``n_jobs``
    defaults to the PANOLUX_THREADS environment variable.
    """
    samples_per_pixel: int = DEFAULT_SAMPLES
    max_bounces: int = DEFAULT_BOUNCES
    limit_weight: float = DEFAULT_LIMIT_WEIGHT
    seed: int = 0
    n_jobs: int | None = None

    def __post_init__(self):
        if self.samples_per_pixel < 1:
            raise ValueError('At least one sample per pixel is needed, got'
                             ' %d.' % self.samples_per_pixel)
        if self.max_bounces < 0:
            raise ValueError('max_bounces must be non-negative, got %d.'
                             % self.max_bounces)
        if not 0 < self.limit_weight < 1:
            raise ValueError('limit_weight must lie in (0, 1), got %r.'
                             % self.limit_weight)
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError('The seed must be a 64-bit unsigned integer,'
                             ' got %r.' % self.seed)
        if self.n_jobs == 0:
            raise ValueError('n_jobs must not be 0; use -1 for all cores.')

    @property
    def workers(self) -> int:
        return default_n_jobs() if self.n_jobs is None else self.n_jobs


@dataclass(frozen=True)
class Viewpoint:
    position: tuple
    view_azimuth: float = 0.0

    def __post_init__(self):
        position = tuple(float(c) for c in self.position)
        if len(position) != 3:
            raise ValueError('A viewpoint position needs (x, y, z), got %r.'
                             % (self.position,))
        object.__setattr__(self, 'position', position)


def check_viewpoint(packed: PackedScene, vp: Viewpoint):
    """The point must see floor straight below and ceiling straight above."""
    origin = np.array([vp.position, vp.position])
    dirs = np.array([[0.0, -1.0, 0.0], [0.0, 1.0, 0.0]])
    _, tri, _ = trace(packed, origin, dirs)
    expected = [REGION_LABELS.index('floor'), REGION_LABELS.index('ceiling')]
    if np.any(tri < 0) or list(packed.label[tri]) != expected:
        raise ViewpointOutsideRoom('Viewpoint %r is not inside the room: it'
                                   ' must have floor below and ceiling'
                                   ' above.' % (vp.position,))


@dataclass(frozen=True, eq=False)
class _Lighting:
    sky: SkyModel
    orientation: float
    sun_dir: np.ndarray | None

    def environment(self, dirs, primary):
        """Luminance seen by escaping rays; the sun disk only counts for
        primary rays, later bounces reach it by next-event estimation."""
        theta = np.arctan2(dirs[:, 0], dirs[:, 2]) + self.orientation
        phi = np.arcsin(np.clip(dirs[:, 1], -1.0, 1.0))
        lum = np.asarray(sky_luminance(self.sky, SphericalDir(theta, phi)),
                         dtype=float)
        if primary and self.sun_dir is not None:
            in_disk = dirs @ self.sun_dir >= math.cos(
                self.sky.sun_angular_radius)
            lum = lum + np.where(in_disk, self.sky.sun_luminance, 0.0)
        return lum


def _lighting(scene, sky) -> _Lighting:
    sun = sun_direction(sky, scene.orientation_deg)
    if sky.sun_luminance <= 0:
        sun = None
    return _Lighting(sky, math.radians(scene.orientation_deg), sun)


def _sun_term(packed, lighting, points, normals):
    if lighting.sun_dir is None:
        return np.zeros(len(points))
    cos = normals @ lighting.sun_dir
    lit = np.flatnonzero(cos > 0)
    out = np.zeros(len(points))
    if len(lit):
        origins = points[lit] + RAY_EPSILON * normals[lit]
        dirs = np.broadcast_to(lighting.sun_dir, (len(lit), 3))
        _, tri, trans = trace(packed, origins, dirs)
        visible = np.where(tri < 0, trans, 0.0)
        sky = lighting.sky
        out[lit] = (sky.sun_luminance * sky.sun_solid_angle * cos[lit]
                    * visible / np.pi)
    return out


def trace_paths(packed: PackedScene, lighting: _Lighting, origin, dirs,
                randoms, params: RenderParams) -> np.ndarray:
    """Luminance carried back along each path.

    ``randoms`` has shape (max_bounces + 1, n_paths, 3): two numbers for
    the bounce direction and one for Russian roulette at each depth.
    """
    n = len(dirs)
    radiance = np.zeros(n)
    throughput = np.ones(n)
    alive = np.arange(n)
    origins = np.broadcast_to(origin, (n, 3)).copy()
    dirs = np.array(dirs, dtype=float)

    for depth in range(params.max_bounces + 1):
        if not len(alive):
            break
        dist, tri, trans = trace(packed, origins[alive], dirs[alive])
        throughput[alive] *= trans

        escaped = tri < 0
        out = alive[escaped]
        radiance[out] += throughput[out] * lighting.environment(
            dirs[out], primary=depth == 0)
        alive, dist, tri = alive[~escaped], dist[~escaped], tri[~escaped]
        if not len(alive):
            break

        points = origins[alive] + dist[:, None] * dirs[alive]
        normals = facing_normals(packed, tri, dirs[alive])
        rho = packed.reflectance[tri]
        radiance[alive] += throughput[alive] * rho * _sun_term(
            packed, lighting, points, normals)
        if depth == params.max_bounces:
            break

        # Cosine sampling: BRDF x cosine / pdf reduces to the reflectance.
        throughput[alive] *= rho
        u = randoms[depth, alive]
        dirs[alive] = cosine_directions(normals, u[:, 0], u[:, 1])
        origins[alive] = points + RAY_EPSILON * normals

        weight = throughput[alive]
        low = weight < params.limit_weight
        survive = u[:, 2] < weight / params.limit_weight
        throughput[alive[low & survive]] = params.limit_weight
        alive = alive[(~low | survive) & (throughput[alive] > 0)]
    return radiance


def _pixel_randoms(seed, rows, cols, spp, depth):
    """Latin-hypercube sub-pixel offsets (n_pix, spp, 2) and path randoms
    (depth, n_pix * spp, 3), one stream per pixel."""
    jitter = np.empty((len(rows), spp, 2))
    path = np.empty((depth, len(rows), spp, 3))
    for i, (row, col) in enumerate(zip(rows, cols)):
        rng = keyed_rng(seed, row, col)
        for axis in range(2):
            jitter[i, :, axis] = (rng.permutation(spp)
                                  + rng.random(spp)) / spp
        # Depth-major draws: raising max_bounces keeps earlier depths.
        path[:, i] = rng.random((depth, spp, 3))
    return jitter, path.reshape(depth, len(rows) * spp, 3)


def _render_tile(packed, lighting, origin, params, kind, width, height,
                 view_azimuth, row_start, row_stop):
    rows, cols = np.mgrid[row_start:row_stop, 0:width]
    rows, cols = rows.ravel(), cols.ravel()
    spp = params.samples_per_pixel
    jitter, randoms = _pixel_randoms(params.seed, rows, cols, spp,
                                     params.max_bounces + 1)
    x = cols[:, None] + jitter[..., 0]
    y = rows[:, None] + jitter[..., 1]
    if kind is Projection.EQUIRECTANGULAR:
        theta = 2 * np.pi * x / width - np.pi
        phi = np.pi / 2 - np.pi * y / height
        dirs = np.stack([np.cos(phi) * np.sin(theta), np.sin(phi),
                         np.cos(phi) * np.cos(theta)], axis=-1)
    else:
        radius = width / 2
        px, py = x - radius, y - radius
        r = np.hypot(px, py)
        # Samples just past the rim of an edge pixel stay on the rim.
        scale = np.where(r > radius, radius / np.where(r > 0, r, 1.0), 1.0)
        local = fisheye_local_dirs(px * scale, py * scale, radius)
        dirs = to_world(local, view_azimuth)
    values = trace_paths(packed, lighting, np.asarray(origin),
                         dirs.reshape(-1, 3), randoms, params)
    tile = values.reshape(len(rows), spp).mean(axis=1)
    logger.debug('Rendered rows %d-%d', row_start, row_stop - 1)
    return row_start, tile.reshape(row_stop - row_start, width)


def _render(scene, sky, vp, params, kind, width, height, view_azimuth=0.0):
    params = RenderParams() if params is None else params
    packed = pack_scene(scene)
    check_viewpoint(packed, vp)
    out = np.zeros((height, width))
    if sky.is_dark or len(packed) == 0:
        return out
    lighting = _lighting(scene, sky)
    tiles = Parallel(n_jobs=params.workers, prefer='threads')(
        delayed(_render_tile)(packed, lighting, vp.position, params, kind,
                              width, height, view_azimuth, start,
                              min(start + TILE_ROWS, height))
        for start in range(0, height, TILE_ROWS))
    for start, tile in tiles:
        out[start:start + len(tile)] = tile
    return out


def render_panorama(scene: SceneModel, sky: SkyModel, vp: Viewpoint,
                    params: RenderParams = None,
                    height=DEFAULT_PANORAMA_HEIGHT) -> LuminanceMap:
    """Equirectangular luminance map, ``2 * height`` x ``height``."""
    values = _render(scene, sky, vp, params, Projection.EQUIRECTANGULAR,
                     2 * height, height)
    return LuminanceMap(values, Projection.EQUIRECTANGULAR)


def render_fisheye(scene: SceneModel, sky: SkyModel, vp: Viewpoint,
                   view_azimuth=None, params: RenderParams = None,
                   size=DEFAULT_FISHEYE_SIZE) -> LuminanceMap:
    """Equidistant 180 degree fisheye about a level axis at
    ``view_azimuth`` (radians, room frame; defaults to the viewpoint's)."""
    azimuth = vp.view_azimuth if view_azimuth is None else view_azimuth
    values = _render(scene, sky, vp, params, Projection.FISHEYE180, size,
                     size, azimuth)
    values = np.where(fisheye_grid(size).inside, values, 0.0)
    return LuminanceMap(values, Projection.FISHEYE180)


def render_labels(scene: SceneModel, vp: Viewpoint,
                  projection=Projection.EQUIRECTANGULAR, height=None,
                  view_azimuth=None) -> np.ndarray:
    """Index into ``REGION_LABELS`` of the surface each pixel centre sees.

    Apertures, open or glazed, count as ``window``; rays leaving the scene
    as ``outside``.
    """
    projection = Projection(projection)
    packed = pack_scene(scene, include_open=True)
    check_viewpoint(pack_scene(scene), vp)
    if projection is Projection.EQUIRECTANGULAR:
        height = DEFAULT_PANORAMA_HEIGHT if height is None else height
        dirs = equirect_directions(2 * height, height)
        inside = np.ones(dirs.shape[:2], dtype=bool)
    elif projection is Projection.FISHEYE180:
        size = DEFAULT_FISHEYE_SIZE if height is None else height
        azimuth = vp.view_azimuth if view_azimuth is None else view_azimuth
        grid = fisheye_grid(size)
        dirs = grid.world(azimuth)
        inside = grid.inside
    else:
        raise ValueError('Labels need an equirectangular or fisheye180'
                         ' projection.')
    flat = dirs.reshape(-1, 3)
    _, tri = intersect(packed, np.broadcast_to(vp.position, flat.shape), flat)
    labels = np.where(tri >= 0, packed.label[np.maximum(tri, 0)], 0)
    return np.where(inside, labels.reshape(dirs.shape[:2]), 0)
