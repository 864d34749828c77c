# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

from dataclasses import dataclass

import numpy as np
from matplotlib.path import Path
from pydantic import BaseModel, Field, ValidationError

from panolux.projection import pixel_to_dir, sph_to_cart
from .corners import CornerSet, SchemaError, DEFAULT_CAMERA_HEIGHT

MIN_FLOOR_ANGLE = 1e-3
UP = np.array([0.0, 1.0, 0.0])


class DegenerateCorner(ValueError):
    pass


class RayParallelToWall(ValueError):
    pass


class BehindCamera(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Wall:
    """Vertical wall from plan point ``start`` to ``end``.

    Wall-plane coordinates are ``s`` metres along the wall from ``start``
    and ``t`` metres above the floor.
    """
    index: int
    start: np.ndarray
    end: np.ndarray

    @property
    def length(self) -> float:
        return float(np.hypot(*(self.end - self.start)))

    @property
    def direction(self) -> np.ndarray:
        dx, dz = (self.end - self.start) / self.length
        return np.array([dx, 0.0, dz])

    @property
    def origin(self) -> np.ndarray:
        return np.array([self.start[0], 0.0, self.start[1]])

    @property
    def inward_normal(self) -> np.ndarray:
        dx, _, dz = self.direction
        normal = np.array([-dz, 0.0, dx])
        # The camera sits at the plan origin, inside the room.
        if normal @ -self.origin < 0:
            normal = -normal
        return normal

    def point(self, s, t) -> np.ndarray:
        s = np.asarray(s, dtype=float)[..., None]
        t = np.asarray(t, dtype=float)[..., None]
        return self.origin + s * self.direction + t * UP


def _segments_cross(p1, p2, q1, q2):
    def orient(a, b, c):
        return np.sign((b[0] - a[0]) * (c[1] - a[1])
                       - (b[1] - a[1]) * (c[0] - a[0]))

    return (orient(p1, p2, q1) * orient(p1, p2, q2) <= 0
            and orient(q1, q2, p1) * orient(q1, q2, p2) <= 0)


def is_simple_polygon(points) -> bool:
    points = np.asarray(points, dtype=float)
    n = len(points)
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if _segments_cross(points[i], points[(i + 1) % n],
                               points[j], points[(j + 1) % n]):
                return False
    return True


@dataclass(frozen=True, eq=False)
class RoomLayout:
    """Planar room: floor polygon at y = 0 in (x, z) metres, a flat ceiling,
    and the camera at ``(0, camera_height, 0)``.

    ``orientation_deg`` is the compass heading of the room's +z axis.
    """
    floor_polygon: np.ndarray
    ceiling_height: float
    camera_height: float = DEFAULT_CAMERA_HEIGHT
    orientation_deg: float = 0.0

    def __post_init__(self):
        polygon = np.asarray(self.floor_polygon, dtype=float)
        object.__setattr__(self, 'floor_polygon', polygon)
        if polygon.ndim != 2 or polygon.shape[1] != 2 or len(polygon) < 3:
            raise ValueError('The floor polygon needs at least three (x, z)'
                             ' vertices, got shape %r.' % (polygon.shape,))
        if not 0 < self.camera_height < self.ceiling_height:
            raise ValueError('The camera height must lie strictly between'
                             ' the floor and the ceiling (%g m), got %g m.'
                             % (self.ceiling_height, self.camera_height))
        if not is_simple_polygon(polygon):
            raise ValueError('The floor polygon intersects itself.')
        if not Path(polygon).contains_point((0.0, 0.0)):
            raise ValueError('The camera must stand inside the floor'
                             ' polygon.')

    @property
    def camera(self) -> np.ndarray:
        return np.array([0.0, self.camera_height, 0.0])

    @property
    def walls(self) -> tuple:
        n = len(self.floor_polygon)
        return tuple(Wall(i, self.floor_polygon[i],
                          self.floor_polygon[(i + 1) % n]) for i in range(n))

    def wall(self, index) -> Wall:
        if not 0 <= index < len(self.floor_polygon):
            raise ValueError('Wall index %d is out of range for a room with'
                             ' %d walls.' % (index, len(self.floor_polygon)))
        return self.walls[index]


@dataclass(frozen=True)
class WindowAperture:
    """Axis-aligned rectangle ``(s0, t0, s1, t1)`` on wall ``wall_index``."""
    wall_index: int
    s0: float
    t0: float
    s1: float
    t1: float

    def __post_init__(self):
        if self.wall_index < 0:
            raise ValueError('Wall index must be non-negative, got %d.'
                             % self.wall_index)
        if not (0 <= self.s0 < self.s1 and 0 <= self.t0 < self.t1):
            raise ValueError('An aperture needs 0 <= s0 < s1 and'
                             ' 0 <= t0 < t1, got %r.' % (self.rect,))

    @property
    def rect(self) -> tuple:
        return (self.s0, self.t0, self.s1, self.t1)

    @property
    def area(self) -> float:
        return (self.s1 - self.s0) * (self.t1 - self.t0)

    def check_against(self, room: RoomLayout):
        wall = room.wall(self.wall_index)
        tol = 1e-9
        if self.s1 > wall.length + tol or self.t1 > room.ceiling_height + tol:
            raise ValueError('Aperture %r extends past wall %d (%g m long,'
                             ' %g m high).' % (self.rect, self.wall_index,
                                               wall.length,
                                               room.ceiling_height))


def floor_point(theta, phi_floor, camera_height):
    """Plan position of a floor point seen at azimuth ``theta`` and
    altitude ``phi_floor`` (< 0) from ``camera_height``."""
    distance = camera_height / np.tan(-np.asarray(phi_floor))
    return (distance * np.sin(theta), distance * np.cos(theta))


def reconstruct_room(corners: CornerSet, camera_height=None,
                     orientation_deg=0.0) -> RoomLayout:
    h_c = corners.camera_height if camera_height is None else camera_height
    if not h_c > 0:
        raise ValueError('The camera height must be positive, got %r.' % h_c)
    floor = pixel_to_dir(corners.u, corners.v_floor, corners.width,
                         corners.height)
    ceiling = pixel_to_dir(corners.u, corners.v_ceiling, corners.width,
                           corners.height)
    theta = np.atleast_1d(floor.theta)
    phi_floor = np.atleast_1d(floor.phi)
    phi_ceiling = np.atleast_1d(ceiling.phi)

    bad = (phi_floor >= 0) | (np.abs(phi_floor) < MIN_FLOOR_ANGLE)
    if np.any(bad):
        i = int(np.flatnonzero(bad)[0])
        raise DegenerateCorner('Floor corner %d lies on or too close to the'
                               ' horizon (altitude %.2e rad); its distance'
                               ' is undefined.' % (i, phi_floor[i]))
    x, z = floor_point(theta, phi_floor, h_c)
    distance = np.hypot(x, z)
    ceiling_height = h_c + float(np.mean(distance * np.tan(phi_ceiling)))
    return RoomLayout(np.stack([x, z], axis=1), ceiling_height, h_c,
                      orientation_deg)


def project_window(quad, wall_index, room: RoomLayout, width,
                   height) -> WindowAperture:
    """Aperture spanned by four image points of a window on a wall.

    Each pixel ray is intersected with the wall's infinite plane; the
    bounding rectangle of the hits is clamped to the wall.
    """
    quad = np.asarray(quad, dtype=float)
    if quad.shape != (4, 2):
        raise ValueError('A window quad needs four (u, v) points, got shape'
                         ' %r.' % (quad.shape,))
    wall = room.wall(wall_index)
    normal = wall.inward_normal
    rays = sph_to_cart(pixel_to_dir(quad[:, 0], quad[:, 1], width,
                                    height)).as_array()
    facing = rays @ normal
    if np.any(np.abs(facing) < 1e-12):
        raise RayParallelToWall('A window ray runs parallel to wall %d.'
                                % wall_index)
    rng = ((wall.origin - room.camera) @ normal) / facing
    if np.any(rng <= 0):
        raise BehindCamera('Window rays do not reach wall %d; check that'
                           ' the quad belongs to this wall.' % wall_index)
    hits = room.camera + rng[:, None] * rays
    s = (hits - wall.origin) @ wall.direction
    t = hits[:, 1]
    s0, s1 = np.clip([s.min(), s.max()], 0.0, wall.length)
    t0, t1 = np.clip([t.min(), t.max()], 0.0, room.ceiling_height)
    if s1 <= s0 or t1 <= t0:
        raise BehindCamera('The window quad falls entirely outside wall %d.'
                           % wall_index)
    return WindowAperture(wall_index, float(s0), float(t0), float(s1),
                          float(t1))


class ApertureModel(BaseModel):
    wall: int = Field(..., ge=0)
    s0: float
    t0: float
    s1: float
    t1: float


class LayoutModel(BaseModel):
    floor_polygon: list[tuple[float, float]] = Field(..., min_length=3)
    ceiling_height_m: float = Field(..., gt=0)
    camera_height_m: float = Field(DEFAULT_CAMERA_HEIGHT, gt=0)
    orientation_deg: float = 0.0
    apertures: list[ApertureModel] = Field(default_factory=list)


def layout_to_json(room: RoomLayout, apertures=()) -> str:
    model = LayoutModel(
        floor_polygon=[tuple(map(float, p)) for p in room.floor_polygon],
        ceiling_height_m=room.ceiling_height,
        camera_height_m=room.camera_height,
        orientation_deg=room.orientation_deg,
        apertures=[ApertureModel(wall=a.wall_index, s0=a.s0, t0=a.t0,
                                 s1=a.s1, t1=a.t1) for a in apertures])
    return model.model_dump_json(indent=2)


def layout_from_json(text):
    """Inverse of :func:`layout_to_json`; returns ``(room, apertures)``."""
    try:
        model = LayoutModel.model_validate_json(text)
    except ValidationError as e:
        raise SchemaError('The layout file does not match the expected'
                          ' schema:\n%s' % e) from e
    room = RoomLayout(np.array(model.floor_polygon), model.ceiling_height_m,
                      model.camera_height_m, model.orientation_deg)
    apertures = [WindowAperture(a.wall, a.s0, a.t0, a.s1, a.t1)
                 for a in model.apertures]
    for aperture in apertures:
        aperture.check_against(room)
    return room, apertures
