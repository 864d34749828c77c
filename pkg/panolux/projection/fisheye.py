# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import numpy as np
from scipy.ndimage import map_coordinates

from .spherical import (
    Projection, BadProjection, CartesianDir, cart_to_sph, dir_to_pixel,
    equirect_directions, fisheye_grid, view_frame)


def sample_equirect(raster: np.ndarray, dirs: np.ndarray) -> np.ndarray:
    """Bilinear lookup of unit directions ``dirs`` (..., 3) in a panorama.

    Longitude wraps across the seam; altitude clamps at the poles.
    """
    height, width = raster.shape[:2]
    sph = cart_to_sph(CartesianDir.from_array(dirs))
    u, v = dir_to_pixel(sph, width, height)
    extra = ((0, 0),) * (raster.ndim - 2)
    padded = np.pad(raster, ((1, 1), (0, 0)) + extra, mode='edge')
    padded = np.pad(padded, ((0, 0), (1, 1)) + extra, mode='wrap')
    coords = np.stack([np.asarray(v) + 1, np.asarray(u) + 1])
    return _map(padded, coords)


def _map(raster, coords):
    if raster.ndim == 2:
        return map_coordinates(raster, coords, order=1, mode='nearest')
    return np.stack([map_coordinates(raster[..., c], coords, order=1,
                                     mode='nearest')
                     for c in range(raster.shape[-1])], axis=-1)


def equirect_to_fisheye(raster: np.ndarray, view_azimuth: float,
                        out_size: int):
    """Resample a panorama array into an equidistant 180 degree fisheye.

    Returns the fisheye array and its disk mask; pixels outside the disk
    are zero.
    """
    grid = fisheye_grid(out_size)
    out = sample_equirect(raster, grid.world(view_azimuth))
    mask = grid.inside if out.ndim == 2 else grid.inside[..., None]
    return np.where(mask, out, 0.0), grid.inside


def fisheye_to_equirect(raster: np.ndarray, view_azimuth: float,
                        height: int):
    """Project a fisheye array back onto a ``2 * height`` x ``height``
    panorama. Directions behind the view plane are zero and unmasked.
    """
    size = raster.shape[0]
    radius = size / 2
    dirs = equirect_directions(2 * height, height)
    right, _, forward = view_frame(view_azimuth)
    lx = dirs @ right
    ly = dirs[..., 1]
    lz = dirs @ forward
    alpha = np.arccos(np.clip(lz, -1.0, 1.0))
    beta = np.arctan2(ly, lx)
    r = alpha / (np.pi / 2) * radius
    cols = r * np.cos(beta) + radius - 0.5
    rows = -r * np.sin(beta) + radius - 0.5
    out = _map(raster, np.stack([rows, cols]))
    mask = lz >= 0
    out = np.where(mask if out.ndim == 2 else mask[..., None], out, 0.0)
    return out, mask


def extract_fisheye(src, view_azimuth: float, out_size: int):
    """Fisheye view of an equirectangular image or luminance map.

    ``src`` is any raster value type of this package (``HdrImage`` or
    ``LuminanceMap``); the result has the same type, tagged fisheye180.
    """
    if src.projection is not Projection.EQUIRECTANGULAR:
        raise BadProjection('Fisheye extraction needs an equirectangular'
                            ' source, got %s.' % src.projection.value)
    out, _ = equirect_to_fisheye(src.raster, view_azimuth, out_size)
    return src.with_raster(out, Projection.FISHEYE180)


def view_azimuths(increment_deg: float) -> np.ndarray:
    """Horizontal view directions covering 360 degrees, in radians."""
    if not 0 < increment_deg <= 360:
        raise ValueError('The view increment must be in (0, 360] degrees,'
                         ' got %r.' % increment_deg)
    count = int(round(360.0 / increment_deg))
    if not np.isclose(count * increment_deg, 360.0):
        raise ValueError('The view increment %r does not divide 360 degrees.'
                         % increment_deg)
    return np.deg2rad(np.arange(count) * increment_deg)
