# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

from .spherical import (
    Projection, BadDimensions, BadProjection, ZeroVector, SphericalDir,
    CartesianDir, sph_to_cart, cart_to_sph, pixel_to_dir, dir_to_pixel,
    equirect_pixel_solid_angle, equirect_solid_angles, equirect_directions,
    fisheye_pixel_solid_angle, fisheye_grid, FisheyeGrid, view_frame,
    to_world, fisheye_local_dirs)
from .fisheye import (
    extract_fisheye, equirect_to_fisheye, fisheye_to_equirect,
    sample_equirect, view_azimuths)

__all__ = ['Projection', 'BadDimensions', 'BadProjection', 'ZeroVector',
           'SphericalDir', 'CartesianDir', 'sph_to_cart', 'cart_to_sph',
           'pixel_to_dir', 'dir_to_pixel', 'equirect_pixel_solid_angle',
           'equirect_solid_angles', 'equirect_directions',
           'fisheye_pixel_solid_angle', 'fisheye_grid', 'FisheyeGrid',
           'view_frame', 'to_world', 'fisheye_local_dirs',
           'extract_fisheye', 'equirect_to_fisheye', 'fisheye_to_equirect',
           'sample_equirect', 'view_azimuths']
