# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import enum
import logging
import math
from dataclasses import dataclass, replace

import numpy as np

from panolux.projection import SphericalDir
from .epw import EpwFile, EpwRecord
from .solar import DEFAULT_YEAR, SunPosition, solar_position

logger = logging.getLogger(__name__)

SUN_ANGULAR_RADIUS = math.radians(0.2665)
SUN_SOLID_ANGLE = 2 * math.pi * (1 - math.cos(SUN_ANGULAR_RADIUS))
LUMINOUS_EFFICACY = 110.0
# WMO sunshine threshold for direct normal radiation, W/m2.
CLEAR_DNR_THRESHOLD = 120.0
QUADRATURE_STEP_DEG = 0.5

# CIE standard clear sky, low turbidity.
CLEAR_A, CLEAR_B = -1.0, -0.32
CLEAR_C, CLEAR_D, CLEAR_E = 10.0, -3.0, 0.45


class SunBelowHorizon(ValueError):
    pass


class SkyCondition(str, enum.Enum):
    CLEAR = 'clear'
    OVERCAST = 'overcast'
    UNIFORM = 'uniform'


@dataclass(frozen=True)
class SkyModel:
    """Sky luminance distribution scaled by ``zenith_luminance``.

    Clear skies need a ``sun`` position; only they may carry a sun disk of
    ``sun_luminance``.
    """
    condition: SkyCondition
    sun: SunPosition | None = None
    zenith_luminance: float = 1.0
    sun_luminance: float = 0.0
    sun_angular_radius: float = SUN_ANGULAR_RADIUS

    def __post_init__(self):
        object.__setattr__(self, 'condition', SkyCondition(self.condition))
        if not (np.isfinite(self.zenith_luminance)
                and self.zenith_luminance >= 0):
            raise ValueError('Zenith luminance must be finite and'
                             ' non-negative, got %r.' % self.zenith_luminance)
        if not (np.isfinite(self.sun_luminance) and self.sun_luminance >= 0):
            raise ValueError('Sun luminance must be finite and non-negative,'
                             ' got %r.' % self.sun_luminance)
        if self.condition is SkyCondition.CLEAR and self.sun is None:
            raise ValueError('A clear sky needs a sun position.')
        if self.condition is not SkyCondition.CLEAR and self.sun_luminance:
            raise ValueError('Only a clear sky can carry a sun disk.')

    @property
    def is_dark(self) -> bool:
        return self.zenith_luminance == 0 and self.sun_luminance == 0

    @property
    def sun_solid_angle(self) -> float:
        return 2 * math.pi * (1 - math.cos(self.sun_angular_radius))


def _gradation(sin_phi):
    with np.errstate(divide='ignore', over='ignore'):
        return np.where(sin_phi > 0,
                        1 + CLEAR_A * np.exp(CLEAR_B / np.where(
                            sin_phi > 0, sin_phi, 1.0)),
                        1.0)


def _indicatrix(chi):
    return (1 + CLEAR_C * (np.exp(CLEAR_D * chi)
                           - np.exp(CLEAR_D * np.pi / 2))
            + CLEAR_E * np.cos(chi) ** 2)


def _angle_to_sun(sun: SunPosition, theta, phi):
    cos_chi = (np.sin(phi) * np.sin(sun.altitude)
               + np.cos(phi) * np.cos(sun.altitude)
               * np.cos(theta - sun.azimuth))
    return np.arccos(np.clip(cos_chi, -1.0, 1.0))


def _relative_luminance(sky: SkyModel, theta, phi):
    """Luminance for unit zenith luminance."""
    if sky.condition is SkyCondition.OVERCAST:
        return (1 + 2 * np.sin(phi)) / 3
    if sky.condition is SkyCondition.UNIFORM:
        return np.ones(np.broadcast(theta, phi).shape)
    zenith_angle = np.pi / 2 - sky.sun.altitude
    norm = _indicatrix(zenith_angle) * _gradation(1.0)
    return (_indicatrix(_angle_to_sun(sky.sun, theta, phi))
            * _gradation(np.sin(phi)) / norm)


def sky_luminance(sky: SkyModel, d: SphericalDir):
    """Diffuse sky luminance in cd/m2 towards ``d``.

    ``d.theta`` is the compass azimuth, clockwise from North. Directions
    below the horizon see 0. The sun disk is not included.
    """
    theta = np.asarray(d.theta, dtype=float)
    phi = np.asarray(d.phi, dtype=float)
    value = np.where(phi >= 0,
                     sky.zenith_luminance
                     * _relative_luminance(sky, theta, np.maximum(phi, 0.0)),
                     0.0)
    return float(value) if value.ndim == 0 else value


def sky_horizontal_illuminance(sky: SkyModel,
                               step_deg=QUADRATURE_STEP_DEG) -> float:
    """Diffuse horizontal illuminance by a Riemann sum over the dome."""
    step = math.radians(step_deg)
    n_phi = int(round((np.pi / 2) / step))
    n_theta = int(round(2 * np.pi / step))
    edges = np.linspace(0, np.pi / 2, n_phi + 1)
    phi = (edges[:-1] + edges[1:]) / 2
    theta = (np.arange(n_theta) + 0.5) * 2 * np.pi / n_theta
    band = (np.sin(edges[1:]) - np.sin(edges[:-1])) * 2 * np.pi / n_theta
    tt, pp = np.meshgrid(theta, phi)
    lum = sky_luminance(sky, SphericalDir(tt, pp))
    return float(np.sum(lum * np.sin(pp) * band[:, None]))


def normalize_sky(sky: SkyModel, evh_target: float) -> SkyModel:
    """Rescale the zenith luminance to a diffuse horizontal illuminance."""
    if not (np.isfinite(evh_target) and evh_target >= 0):
        raise ValueError('Target illuminance must be finite and'
                         ' non-negative, got %r.' % evh_target)
    if sky.condition is SkyCondition.OVERCAST:
        lz = 9 * evh_target / (7 * np.pi)
    elif sky.condition is SkyCondition.UNIFORM:
        lz = evh_target / np.pi
    else:
        unit = sky_horizontal_illuminance(replace(sky, zenith_luminance=1.0))
        lz = evh_target / unit
    return replace(sky, zenith_luminance=float(lz))


def sun_from_record(rec: EpwRecord, pos: SunPosition,
                    condition=SkyCondition.CLEAR) -> float:
    """Sun disk luminance in cd/m2 from the direct normal illuminance."""
    if not pos.above_horizon:
        raise SunBelowHorizon('The sun is below the horizon (altitude %.2f'
                              ' deg).' % math.degrees(pos.altitude))
    if SkyCondition(condition) is SkyCondition.OVERCAST:
        return 0.0
    if rec.has_direct_illuminance:
        e_dn = rec.direct_normal_illuminance
    else:
        logger.warning('Direct normal illuminance missing for %02d-%02d hour'
                       ' %d; using %g lm/W efficacy.', rec.month, rec.day,
                       rec.hour, LUMINOUS_EFFICACY)
        e_dn = max(rec.direct_normal_radiation, 0.0) * LUMINOUS_EFFICACY
    return e_dn / SUN_SOLID_ANGLE


def _diffuse_illuminance(rec: EpwRecord) -> float:
    if rec.has_diffuse_illuminance:
        return rec.diffuse_horizontal_illuminance
    logger.warning('Diffuse horizontal illuminance missing for %02d-%02d hour'
                   ' %d; using %g lm/W efficacy.', rec.month, rec.day,
                   rec.hour, LUMINOUS_EFFICACY)
    return max(rec.diffuse_horizontal_radiation, 0.0) * LUMINOUS_EFFICACY


def epw_hour(local_hour) -> int:
    """Record hour (1-24) whose interval contains ``local_hour``."""
    return min(int(math.floor(local_hour)) + 1, 24)


def build_sky(epw: EpwFile, month, day, local_hour, condition='auto',
              year=DEFAULT_YEAR) -> SkyModel:
    """Sky for a date and local standard time from the weather record.

    ``condition='auto'`` picks a clear sky when the direct normal radiation
    exceeds the sunshine threshold and an overcast sky otherwise.
    """
    loc = epw.location
    pos = solar_position(loc.latitude, loc.longitude, loc.timezone, month,
                         day, local_hour, year)
    rec = epw.record(month, day, epw_hour(local_hour))
    if condition == 'auto':
        condition = (SkyCondition.CLEAR
                     if rec.direct_normal_radiation > CLEAR_DNR_THRESHOLD
                     else SkyCondition.OVERCAST)
    condition = SkyCondition(condition)
    if not pos.above_horizon:
        logger.debug('Sun below horizon on %02d-%02d at %.2f h; dark sky',
                     month, day, local_hour)
        return SkyModel(condition, pos, 0.0, 0.0)

    sky = normalize_sky(SkyModel(condition, pos), _diffuse_illuminance(rec))
    if condition is SkyCondition.CLEAR:
        sky = replace(sky, sun_luminance=sun_from_record(rec, pos, condition))
    return sky


def sun_direction(sky: SkyModel, orientation_deg=0.0):
    """Unit vector towards the sun in room coordinates, or None."""
    if sky.sun is None or not sky.sun.above_horizon:
        return None
    theta = sky.sun.azimuth - math.radians(orientation_deg)
    cos_alt = math.cos(sky.sun.altitude)
    return np.array([cos_alt * math.sin(theta), math.sin(sky.sun.altitude),
                     cos_alt * math.cos(theta)])
