# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import calendar
import datetime
from dataclasses import dataclass

import numpy as np

DEFAULT_YEAR = 2023


@dataclass(frozen=True)
class SunPosition:
    """``altitude`` in radians above the horizon, ``azimuth`` in radians
    clockwise from North."""
    altitude: float
    azimuth: float

    def __post_init__(self):
        if not -np.pi / 2 <= self.altitude <= np.pi / 2:
            raise ValueError('Solar altitude must lie in [-pi/2, pi/2], got'
                             ' %r.' % self.altitude)
        if not 0 <= self.azimuth < 2 * np.pi:
            raise ValueError('Solar azimuth must lie in [0, 2 pi), got %r.'
                             % self.azimuth)

    @property
    def above_horizon(self) -> bool:
        return self.altitude > 0


def _fractional_year(month, day, local_hour, year):
    doy = datetime.date(year, month, day).timetuple().tm_yday
    days = 366 if calendar.isleap(year) else 365
    return 2 * np.pi / days * (doy - 1 + (local_hour - 12) / 24)


def _equation_of_time(gamma):
    """Minutes."""
    return 229.18 * (0.000075 + 0.001868 * np.cos(gamma)
                     - 0.032077 * np.sin(gamma)
                     - 0.014615 * np.cos(2 * gamma)
                     - 0.040849 * np.sin(2 * gamma))


def _declination(gamma):
    return (0.006918 - 0.399912 * np.cos(gamma) + 0.070257 * np.sin(gamma)
            - 0.006758 * np.cos(2 * gamma) + 0.000907 * np.sin(2 * gamma)
            - 0.002697 * np.cos(3 * gamma) + 0.00148 * np.sin(3 * gamma))


def solar_position(latitude, longitude, timezone, month, day, local_hour,
                   year=DEFAULT_YEAR) -> SunPosition:
    """NOAA general solar position; no atmospheric refraction.

    ``timezone`` is the standard-time offset in hours (Pittsburgh: -5) and
    ``local_hour`` the decimal local standard time.
    """
    if not 0 <= local_hour <= 24:
        raise ValueError('Local hour must lie in [0, 24], got %r.'
                         % local_hour)
    gamma = _fractional_year(month, day, local_hour, year)
    decl = _declination(gamma)
    offset = _equation_of_time(gamma) + 4 * longitude - 60 * timezone
    true_solar_minutes = local_hour * 60 + offset
    hour_angle = np.deg2rad(true_solar_minutes / 4 - 180)
    lat = np.deg2rad(latitude)

    sin_alt = (np.sin(lat) * np.sin(decl)
               + np.cos(lat) * np.cos(decl) * np.cos(hour_angle))
    altitude = float(np.arcsin(np.clip(sin_alt, -1.0, 1.0)))
    azimuth = float(np.arctan2(
        -np.sin(hour_angle) * np.cos(decl),
        np.sin(decl) * np.cos(lat)
        - np.cos(decl) * np.sin(lat) * np.cos(hour_angle)))
    azimuth = float(np.mod(azimuth, 2 * np.pi))
    if azimuth >= 2 * np.pi:
        azimuth = 0.0
    return SunPosition(altitude, azimuth)


def solar_noon(longitude, timezone, month, day, year=DEFAULT_YEAR) -> float:
    """Local standard time of solar noon, decimal hours."""
    gamma = _fractional_year(month, day, 12.0, year)
    minutes = 720 - 4 * longitude + 60 * timezone - _equation_of_time(gamma)
    return float(minutes / 60)


def declination(month, day, year=DEFAULT_YEAR) -> float:
    return float(_declination(_fractional_year(month, day, 12.0, year)))
