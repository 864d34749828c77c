# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import numpy as np

from panolux.layout import SceneModel
from panolux.projection import equirect_directions, equirect_solid_angles
from panolux.skymodel import SkyModel
from .geometry import pack_scene, trace
from .tracer import _lighting

DEFAULT_STEP_DEG = 0.25


def direct_horizontal_illuminance(scene: SceneModel, sky: SkyModel, point,
                                  normal=(0.0, 1.0, 0.0),
                                  step_deg=DEFAULT_STEP_DEG) -> float:
    """Illuminance in lux at ``point`` from sky and sun seen directly
    through the scene's apertures.

    Deterministic quadrature over an equirectangular direction grid of
    ``step_deg`` resolution; ``normal`` orients the sensor (upward by
    default, horizontal for a vertical sensor).
    """
    normal = np.asarray(normal, dtype=float)
    normal = normal / np.linalg.norm(normal)
    point = np.asarray(point, dtype=float)
    height = int(round(180.0 / step_deg))
    dirs = equirect_directions(2 * height, height).reshape(-1, 3)
    omega = equirect_solid_angles(2 * height, height).ravel()
    cos = dirs @ normal
    facing = cos > 0
    dirs, omega, cos = dirs[facing], omega[facing], cos[facing]

    packed = pack_scene(scene)
    lighting = _lighting(scene, sky)
    _, tri, trans = trace(packed, np.broadcast_to(point, dirs.shape), dirs)
    escaped = tri < 0
    lum = lighting.environment(dirs[escaped], primary=False)
    total = float(np.sum(lum * trans[escaped] * cos[escaped]
                         * omega[escaped]))

    if lighting.sun_dir is not None:
        cos_sun = float(lighting.sun_dir @ normal)
        if cos_sun > 0:
            _, tri, trans = trace(packed, point[None], lighting.sun_dir[None])
            if tri[0] < 0:
                total += (sky.sun_luminance * sky.sun_solid_angle * cos_sun
                          * trans[0])
    return total
