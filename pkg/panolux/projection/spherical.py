# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import enum
from dataclasses import dataclass

import numpy as np


class Projection(str, enum.Enum):
    EQUIRECTANGULAR = 'equirectangular'
    FISHEYE180 = 'fisheye180'
    UNSPECIFIED = 'unspecified'


class BadDimensions(ValueError):
    pass


class BadProjection(ValueError):
    pass


class ZeroVector(ValueError):
    pass


@dataclass(frozen=True)
class SphericalDir:
    """Azimuth ``theta`` in (-pi, pi] and altitude ``phi`` in [-pi/2, pi/2].

    Fields may be scalars or equally shaped arrays.
    """
    theta: float | np.ndarray
    phi: float | np.ndarray


@dataclass(frozen=True)
class CartesianDir:
    """Unit vector with y up, z forward and x right."""
    x: float | np.ndarray
    y: float | np.ndarray
    z: float | np.ndarray

    def as_array(self) -> np.ndarray:
        return np.stack(np.broadcast_arrays(self.x, self.y, self.z), axis=-1)

    @classmethod
    def from_array(cls, v) -> 'CartesianDir':
        v = np.asarray(v, dtype=float)
        return cls(v[..., 0], v[..., 1], v[..., 2])


def sph_to_cart(d: SphericalDir) -> CartesianDir:
    cos_phi = np.cos(d.phi)
    return CartesianDir(cos_phi * np.sin(d.theta),
                        np.sin(d.phi),
                        cos_phi * np.cos(d.theta))


def cart_to_sph(v: CartesianDir) -> SphericalDir:
    x, y, z = (np.asarray(c, dtype=float) for c in (v.x, v.y, v.z))
    horizontal = np.hypot(x, z)
    if np.any(np.hypot(horizontal, y) == 0):
        raise ZeroVector('Cannot convert a zero-length vector to a spherical'
                         ' direction.')
    theta = np.arctan2(x, z)
    # arctan2 yields -pi for (-0.0, negative z); keep theta in (-pi, pi].
    theta = np.where(theta == -np.pi, np.pi, theta)
    # Same value as arcsin(y / |v|), without the loss of precision near the
    # poles.
    phi = np.arctan2(y, horizontal)
    return SphericalDir(_unwrap0d(theta), _unwrap0d(phi))


def _unwrap0d(a):
    return float(a) if np.ndim(a) == 0 else a


def _check_equirect(width, height):
    if width != 2 * height or height <= 0:
        raise BadDimensions('An equirectangular raster must be twice as wide'
                            ' as it is tall, got %dx%d.' % (width, height))


def pixel_to_dir(u, v, width: int, height: int) -> SphericalDir:
    """Direction through the centre of pixel column ``u``, row ``v``."""
    _check_equirect(width, height)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if np.any((u < 0) | (u >= width) | (v < 0) | (v >= height)):
        raise BadDimensions('Pixel coordinates must lie inside the %dx%d'
                            ' raster.' % (width, height))
    theta = 2 * np.pi * (u + 0.5) / width - np.pi
    phi = np.pi / 2 - np.pi * (v + 0.5) / height
    return SphericalDir(_unwrap0d(theta), _unwrap0d(phi))


def dir_to_pixel(d: SphericalDir, width: int, height: int):
    """Continuous (column, row) of ``d``; pixel centres are integers.

    Columns run from -0.5 at theta = -pi to ``width - 0.5`` at theta = pi,
    so the seam sits between the last and the first column.
    """
    _check_equirect(width, height)
    u = (np.asarray(d.theta) + np.pi) * width / (2 * np.pi) - 0.5
    v = (np.pi / 2 - np.asarray(d.phi)) * height / np.pi - 0.5
    return _unwrap0d(u), _unwrap0d(v)


def equirect_pixel_solid_angle(v, width: int, height: int):
    v = np.asarray(v, dtype=float)
    phi_top = np.pi / 2 - np.pi * v / height
    phi_bottom = np.pi / 2 - np.pi * (v + 1) / height
    return _unwrap0d(2 * np.pi / width
                     * (np.sin(phi_top) - np.sin(phi_bottom)))


def equirect_solid_angles(width: int, height: int) -> np.ndarray:
    """Per-pixel solid angles of a full panorama, shape (height, width)."""
    _check_equirect(width, height)
    rows = equirect_pixel_solid_angle(np.arange(height), width, height)
    return np.repeat(np.asarray(rows)[:, None], width, axis=1)


def equirect_directions(width: int, height: int) -> np.ndarray:
    """Unit vectors through every pixel centre, shape (height, width, 3)."""
    vv, uu = np.mgrid[0:height, 0:width]
    return sph_to_cart(pixel_to_dir(uu, vv, width, height)).as_array()


def fisheye_pixel_solid_angle(r, radius: float):
    """Solid angle of a unit-area equidistant fisheye pixel at radius ``r``."""
    r = np.asarray(r, dtype=float)
    scale = np.pi / (2 * radius)
    alpha = scale * r
    with np.errstate(invalid='ignore', divide='ignore'):
        ratio = np.where(r > 0, np.sin(alpha) / r, scale)
    return _unwrap0d(scale * ratio)


@dataclass(frozen=True)
class FisheyeGrid:
    """Per-pixel geometry of a square 180 degree equidistant fisheye.

    ``local`` holds view-frame unit vectors (x right, y up, z along the view
    axis); ``alpha`` the off-axis angle; ``inside`` the disk mask.
    """
    size: int
    radius: float
    r: np.ndarray
    alpha: np.ndarray
    inside: np.ndarray
    solid_angle: np.ndarray
    local: np.ndarray

    def world(self, view_azimuth: float) -> np.ndarray:
        """View-frame vectors rotated to a horizontal axis at ``view_azimuth``.
        """
        return to_world(self.local, view_azimuth)


def view_frame(view_azimuth: float):
    """``(right, up, forward)`` unit vectors of a level view."""
    forward = np.array([np.sin(view_azimuth), 0.0, np.cos(view_azimuth)])
    right = np.array([np.cos(view_azimuth), 0.0, -np.sin(view_azimuth)])
    return right, np.array([0.0, 1.0, 0.0]), forward


def to_world(local, view_azimuth: float) -> np.ndarray:
    right, up, forward = view_frame(view_azimuth)
    local = np.asarray(local, dtype=float)
    return (local[..., 0, None] * right + local[..., 1, None] * up
            + local[..., 2, None] * forward)


def fisheye_local_dirs(px, py, radius: float) -> np.ndarray:
    """View-frame unit vectors for image offsets ``(px, py)`` from the disk
    centre (x right, y down), equidistant mapping."""
    r = np.hypot(px, py)
    alpha = (np.pi / 2) * r / radius
    with np.errstate(invalid='ignore', divide='ignore'):
        cos_beta = np.where(r > 0, px / r, 0.0)
        sin_beta = np.where(r > 0, -py / r, 0.0)
    sin_alpha = np.sin(alpha)
    return np.stack([sin_alpha * cos_beta, sin_alpha * sin_beta,
                     np.cos(alpha)], axis=-1)


def fisheye_grid(size: int, offsets=None) -> FisheyeGrid:
    """Geometry of a ``size`` x ``size`` fisheye.

    ``offsets`` optionally replaces the pixel-centre offset (0.5, 0.5) with
    an array of sub-pixel positions of shape (size, size, 2) as (dx, dy).
    """
    if size <= 0:
        raise BadDimensions('Fisheye size must be positive, got %d.' % size)
    radius = size / 2
    rows, cols = np.mgrid[0:size, 0:size].astype(float)
    if offsets is None:
        px, py = cols + 0.5 - radius, rows + 0.5 - radius
    else:
        px = cols + offsets[..., 0] - radius
        py = rows + offsets[..., 1] - radius
    r = np.hypot(px, py)
    inside = r <= radius
    alpha = (np.pi / 2) * r / radius
    local = fisheye_local_dirs(px, py, radius)
    solid_angle = np.where(inside, fisheye_pixel_solid_angle(r, radius), 0.0)
    return FisheyeGrid(size, radius, r, alpha, inside, solid_angle, local)
