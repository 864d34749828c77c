# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import logging
from dataclasses import dataclass, field

import numpy as np

from .reconstruct import RoomLayout, UP

logger = logging.getLogger(__name__)

SURFACE_KINDS = ('floor', 'ceiling', 'wall', 'window')
# Per-pixel region codes; 0 is a primary ray that leaves the scene.
REGION_LABELS = ('outside',) + SURFACE_KINDS
MATERIAL_KINDS = ('plastic', 'glass', 'open')
PLANARITY_TOL = 1e-9

DEFAULT_WALL_REFLECTANCE = 0.5
DEFAULT_CEILING_REFLECTANCE = 0.7
DEFAULT_FLOOR_REFLECTANCE = 0.2
DEFAULT_GLASS_TRANSMITTANCE = 0.88


class OverlappingApertures(ValueError):
    pass


@dataclass(frozen=True)
class Material:
    """Diffuse ``plastic`` (value = reflectance), ``glass`` (value =
    transmittance) or an ``open`` hole (no value)."""
    name: str
    kind: str = 'plastic'
    value: float | None = None

    def __post_init__(self):
        if self.kind not in MATERIAL_KINDS:
            raise ValueError('Material kind must be one of %s, got %r.'
                             % (', '.join(MATERIAL_KINDS), self.kind))
        if self.kind == 'open':
            if self.value is not None:
                raise ValueError('An open aperture takes no value.')
        elif self.value is None or not 0 <= self.value <= 1:
            raise ValueError('Material %r needs a value in [0, 1], got %r.'
                             % (self.name, self.value))

    @property
    def is_open(self) -> bool:
        return self.kind == 'open'

    @property
    def is_glazing(self) -> bool:
        return self.kind == 'glass'


@dataclass(frozen=True)
class MaterialSet:
    wall: Material = Material('wall_mat', 'plastic', DEFAULT_WALL_REFLECTANCE)
    ceiling: Material = Material('ceiling_mat', 'plastic',
                                 DEFAULT_CEILING_REFLECTANCE)
    floor: Material = Material('floor_mat', 'plastic',
                               DEFAULT_FLOOR_REFLECTANCE)
    window: Material = Material('window_open', 'open')

    def __post_init__(self):
        for kind in ('wall', 'ceiling', 'floor'):
            if getattr(self, kind).kind != 'plastic':
                raise ValueError('The %s material must be opaque plastic.'
                                 % kind)
        if self.window.kind == 'plastic':
            raise ValueError('The window material must be glass or open.')

    @classmethod
    def from_values(cls, wall=DEFAULT_WALL_REFLECTANCE,
                    ceiling=DEFAULT_CEILING_REFLECTANCE,
                    floor=DEFAULT_FLOOR_REFLECTANCE, glass=None):
        """Reflectances per surface class; ``glass`` is a transmittance, or
        None for open windows."""
        window = (Material('window_open', 'open') if glass is None
                  else Material('glass_mat', 'glass', glass))
        return cls(Material('wall_mat', 'plastic', wall),
                   Material('ceiling_mat', 'plastic', ceiling),
                   Material('floor_mat', 'plastic', floor),
                   window)


def polygon_normal(vertices) -> np.ndarray:
    """Unit Newell normal; the vertex order sets its sign."""
    v = np.asarray(vertices, dtype=float)
    nxt = np.roll(v, -1, axis=0)
    normal = np.array([
        np.sum((v[:, 1] - nxt[:, 1]) * (v[:, 2] + nxt[:, 2])),
        np.sum((v[:, 2] - nxt[:, 2]) * (v[:, 0] + nxt[:, 0])),
        np.sum((v[:, 0] - nxt[:, 0]) * (v[:, 1] + nxt[:, 1]))])
    length = np.linalg.norm(normal)
    if length == 0:
        raise ValueError('A degenerate polygon has no normal.')
    return normal / length


def triangulate(vertices) -> np.ndarray:
    """Ear-clipping triangulation of a simple planar polygon.

    Returns vertex index triples, shape (n - 2, 3) for polygons without
    collinear vertices.
    """
    v = np.asarray(vertices, dtype=float)
    if len(v) == 3:
        return np.array([[0, 1, 2]])
    normal = polygon_normal(v)
    keep = [i for i in range(3) if i != int(np.argmax(np.abs(normal)))]
    pts = v[:, keep]
    x, y = pts[:, 0], pts[:, 1]
    ccw = np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y) > 0
    idx = list(range(len(v))) if ccw else list(range(len(v)))[::-1]

    def cross(a, b, c):
        return ((pts[b, 0] - pts[a, 0]) * (pts[c, 1] - pts[b, 1])
                - (pts[b, 1] - pts[a, 1]) * (pts[c, 0] - pts[b, 0]))

    def inside(p, a, b, c):
        return (cross(a, b, p) >= 0 and cross(b, c, p) >= 0
                and cross(c, a, p) >= 0)

    eps = 1e-12
    triangles = []
    while len(idx) > 3:
        n = len(idx)
        for k in range(n):
            a, b, c = idx[k - 1], idx[k], idx[(k + 1) % n]
            if abs(cross(a, b, c)) <= eps:
                # collinear: drop the vertex, it adds no area
                del idx[k]
                break
            if cross(a, b, c) < 0:
                continue
            if any(inside(p, a, b, c) for p in idx if p not in (a, b, c)):
                continue
            triangles.append((a, b, c))
            del idx[k]
            break
        else:
            raise ValueError('The polygon cannot be triangulated; it may'
                             ' intersect itself.')
    triangles.append(tuple(idx))
    return np.array(triangles)


@dataclass(frozen=True, eq=False)
class Surface:
    name: str
    kind: str
    vertices: np.ndarray
    material: Material

    def __post_init__(self):
        vertices = np.asarray(self.vertices, dtype=float)
        object.__setattr__(self, 'vertices', vertices)
        if self.kind not in SURFACE_KINDS:
            raise ValueError('Surface kind must be one of %s, got %r.'
                             % (', '.join(SURFACE_KINDS), self.kind))
        if vertices.ndim != 2 or vertices.shape[1] != 3 or len(vertices) < 3:
            raise ValueError('Surface %r needs at least three 3D vertices.'
                             % self.name)
        offsets = (vertices - vertices[0]) @ self.normal
        if np.max(np.abs(offsets)) > PLANARITY_TOL:
            raise ValueError('Surface %r is not planar (deviation %.3g m).'
                             % (self.name, np.max(np.abs(offsets))))

    @property
    def normal(self) -> np.ndarray:
        return polygon_normal(self.vertices)

    @property
    def area(self) -> float:
        return float(np.sum([
            np.linalg.norm(np.cross(self.vertices[b] - self.vertices[a],
                                    self.vertices[c] - self.vertices[a]))
            for a, b, c in self.triangles()]) / 2)

    def triangles(self) -> np.ndarray:
        return triangulate(self.vertices)


@dataclass(frozen=True, eq=False)
class SceneModel:
    """Material-tagged planar surfaces.

    ``orientation_deg`` is the compass heading of the +z axis; room azimuth
    ``theta`` faces compass heading ``orientation_deg + theta``.
    ``viewpoint`` optionally records the capture position.
    """
    surfaces: tuple = ()
    orientation_deg: float = 0.0
    viewpoint: tuple | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, 'surfaces', tuple(self.surfaces))
        names = [s.name for s in self.surfaces]
        if len(set(names)) != len(names):
            raise ValueError('Surface names must be unique.')

    @property
    def materials(self) -> tuple:
        """Distinct materials in order of first use."""
        seen = {}
        for surface in self.surfaces:
            seen.setdefault(surface.material.name, surface.material)
        return tuple(seen.values())

    def by_kind(self, kind) -> tuple:
        return tuple(s for s in self.surfaces if s.kind == kind)


def _rect(wall, s0, s1, t0, t1, inward):
    corners = wall.point([s0, s1, s1, s0], [t0, t0, t1, t1])
    if polygon_normal(corners) @ inward < 0:
        corners = corners[::-1]
    return corners


def _wall_pieces(length, height, apertures):
    """Rectangles (s0, s1, t0, t1) covering the wall minus the apertures."""
    breaks = sorted({0.0, length, *(a.s0 for a in apertures),
                     *(a.s1 for a in apertures)})
    pieces = []
    for sa, sb in zip(breaks[:-1], breaks[1:]):
        if sb - sa <= 0:
            continue
        holes = sorted((a.t0, a.t1) for a in apertures
                       if a.s0 <= sa and a.s1 >= sb)
        t = 0.0
        for t0, t1 in holes:
            if t0 > t:
                pieces.append((sa, sb, t, t0))
            t = max(t, t1)
        if t < height:
            pieces.append((sa, sb, t, height))
    return pieces


def _check_overlaps(apertures):
    for i, a in enumerate(apertures):
        for b in apertures[i + 1:]:
            if (a.wall_index == b.wall_index
                    and min(a.s1, b.s1) > max(a.s0, b.s0)
                    and min(a.t1, b.t1) > max(a.t0, b.t0)):
                raise OverlappingApertures(
                    'Apertures %r and %r on wall %d overlap.'
                    % (a.rect, b.rect, a.wall_index))


def build_scene(room: RoomLayout, apertures=(), mats: MaterialSet = None,
                reveal_depth=0.0, orientation_deg=None) -> SceneModel:
    """Surfaces of a room with its window apertures.

    A wall with apertures is split into the rectangles framing them. With
    ``reveal_depth`` > 0 each aperture gains jamb, sill and head surfaces
    of that depth and moves to the outer face of the wall.
    """
    mats = MaterialSet() if mats is None else mats
    apertures = list(apertures)
    if reveal_depth < 0:
        raise ValueError('Reveal depth must be non-negative, got %r.'
                         % reveal_depth)
    for aperture in apertures:
        aperture.check_against(room)
    _check_overlaps(apertures)

    height = room.ceiling_height
    floor = np.column_stack([room.floor_polygon[:, 0],
                             np.zeros(len(room.floor_polygon)),
                             room.floor_polygon[:, 1]])
    if polygon_normal(floor) @ UP < 0:
        floor = floor[::-1]
    ceiling = (floor + height * UP)[::-1]
    surfaces = [Surface('floor', 'floor', floor, mats.floor),
                Surface('ceiling', 'ceiling', ceiling, mats.ceiling)]

    for wall in room.walls:
        inward = wall.inward_normal
        on_wall = [a for a in apertures if a.wall_index == wall.index]
        if not on_wall:
            surfaces.append(Surface(
                'wall_%d' % wall.index, 'wall',
                _rect(wall, 0.0, wall.length, 0.0, height, inward),
                mats.wall))
            continue
        pieces = _wall_pieces(wall.length, height, on_wall)
        for j, (s0, s1, t0, t1) in enumerate(pieces, start=1):
            surfaces.append(Surface('wall_%d_part_%d' % (wall.index, j),
                                    'wall',
                                    _rect(wall, s0, s1, t0, t1, inward),
                                    mats.wall))

    for k, a in enumerate(apertures):
        wall = room.wall(a.wall_index)
        inward = wall.inward_normal
        outward = -reveal_depth * inward
        window = _rect(wall, a.s0, a.s1, a.t0, a.t1, inward)
        surfaces.append(Surface('window_%d' % k, 'window', window + outward,
                                mats.window))
        if reveal_depth > 0:
            for side, (s0, s1, t0, t1) in (
                    ('left', (a.s0, a.s0, a.t0, a.t1)),
                    ('right', (a.s1, a.s1, a.t0, a.t1)),
                    ('sill', (a.s0, a.s1, a.t0, a.t0)),
                    ('head', (a.s0, a.s1, a.t1, a.t1))):
                if side in ('left', 'right'):
                    edge = wall.point([s0, s0], [t0, t1])
                else:
                    edge = wall.point([s0, s1], [t0, t0])
                quad = np.concatenate([edge, edge[::-1] + outward])
                surfaces.append(Surface('reveal_%d_%s' % (k, side), 'wall',
                                        quad, mats.wall))

    if orientation_deg is None:
        orientation_deg = room.orientation_deg
    logger.debug('Built scene with %d surfaces from %d walls and %d'
                 ' apertures', len(surfaces), len(room.walls),
                 len(apertures))
    return SceneModel(tuple(surfaces), orientation_deg,
                      tuple(map(float, room.camera)))
