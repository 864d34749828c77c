# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

from .epw import (
    MissingLocationHeader, ShortRecord, NonNumericField, EpwLocation,
    EpwRecord, EpwFile, parse_epw, read_epw)
from .solar import SunPosition, solar_position, solar_noon, declination
from .sky import (
    SUN_ANGULAR_RADIUS, SUN_SOLID_ANGLE, LUMINOUS_EFFICACY, SunBelowHorizon,
    SkyCondition, SkyModel, sky_luminance, sky_horizontal_illuminance,
    normalize_sky, sun_from_record, epw_hour, build_sky, sun_direction)

__all__ = ['MissingLocationHeader', 'ShortRecord', 'NonNumericField',
           'EpwLocation', 'EpwRecord', 'EpwFile', 'parse_epw', 'read_epw',
           'SunPosition', 'solar_position', 'solar_noon', 'declination',
           'SUN_ANGULAR_RADIUS', 'SUN_SOLID_ANGLE', 'LUMINOUS_EFFICACY',
           'SunBelowHorizon', 'SkyCondition', 'SkyModel', 'sky_luminance',
           'sky_horizontal_illuminance', 'normalize_sky', 'sun_from_record',
           'epw_hour', 'build_sky', 'sun_direction']
