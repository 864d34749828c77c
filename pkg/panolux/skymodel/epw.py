# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

# 0-indexed columns of the hourly rows that are read.
EPW_FIELDS = {
    'year': 0,
    'month': 1,
    'day': 2,
    'hour': 3,
    'dirnorrad_Whm2': 14,
    'difhorrad_Whm2': 15,
    'dirnorillum_lux': 17,
    'difhorillum_lux': 18,
}
MIN_FIELDS = max(EPW_FIELDS.values()) + 1
HEADER_LINES = 8
MISSING_ILLUMINANCE = 999999.0
MISSING_RADIATION = 9999.0


class MissingLocationHeader(ValueError):
    pass


class ShortRecord(ValueError):
    pass


class NonNumericField(ValueError):
    pass


@dataclass(frozen=True)
class EpwLocation:
    city: str
    latitude: float
    longitude: float
    timezone: float
    elevation: float

    def __post_init__(self):
        if not -90 <= self.latitude <= 90:
            raise ValueError('Latitude must lie in [-90, 90], got %r.'
                             % self.latitude)
        if not -180 <= self.longitude <= 180:
            raise ValueError('Longitude must lie in [-180, 180], got %r.'
                             % self.longitude)


@dataclass(frozen=True)
class EpwRecord:
    """One hourly weather row. Hour ``h`` covers local standard time
    ``h - 1`` to ``h``. Missing-value sentinels are kept as read."""
    month: int
    day: int
    hour: int
    direct_normal_radiation: float
    diffuse_horizontal_radiation: float
    direct_normal_illuminance: float
    diffuse_horizontal_illuminance: float

    @property
    def has_direct_illuminance(self) -> bool:
        return 0 <= self.direct_normal_illuminance < MISSING_ILLUMINANCE

    @property
    def has_diffuse_illuminance(self) -> bool:
        return 0 <= self.diffuse_horizontal_illuminance < MISSING_ILLUMINANCE


@dataclass(frozen=True, eq=False)
class EpwFile:
    location: EpwLocation
    data: pd.DataFrame

    def __len__(self):
        return len(self.data)

    def _row_to_record(self, row) -> EpwRecord:
        return EpwRecord(int(row['month']), int(row['day']), int(row['hour']),
                         float(row['dirnorrad_Whm2']),
                         float(row['difhorrad_Whm2']),
                         float(row['dirnorillum_lux']),
                         float(row['difhorillum_lux']))

    @property
    def records(self) -> list:
        return [self._row_to_record(row) for _, row in self.data.iterrows()]

    def record(self, month, day, hour) -> EpwRecord:
        match = self.data[(self.data['month'] == month)
                          & (self.data['day'] == day)
                          & (self.data['hour'] == hour)]
        if match.empty:
            raise ValueError('The weather file has no record for %02d-%02d'
                             ' hour %d.' % (month, day, hour))
        return self._row_to_record(match.iloc[0])


def _location(line) -> EpwLocation:
    fields = [f.strip() for f in line.split(',')]
    if len(fields) < 10:
        raise MissingLocationHeader('The LOCATION line needs 10 fields, got'
                                    ' %d.' % len(fields))
    try:
        lat, lon, tz, elev = (float(f) for f in fields[6:10])
    except ValueError:
        raise NonNumericField('The LOCATION line has a non-numeric'
                              ' latitude, longitude, time zone or'
                              ' elevation: %r.' % line)
    return EpwLocation(fields[1], lat, lon, tz, elev)


def parse_epw(text: str) -> EpwFile:
    lines = text.splitlines()
    if not lines or not lines[0].startswith('LOCATION,'):
        raise MissingLocationHeader('An EPW file must start with a LOCATION'
                                    ' line.')
    location = _location(lines[0])

    start = 1
    # Files trimmed for tests may omit some of the eight header lines.
    while start < min(len(lines), HEADER_LINES) and not (
            lines[start].split(',')[0].strip().lstrip('-').isdigit()):
        start += 1

    rows, numbers = [], []
    for number, line in enumerate(lines[start:], start=start + 1):
        if not line.strip():
            continue
        fields = line.split(',')
        if len(fields) < MIN_FIELDS:
            raise ShortRecord('Line %d has %d fields; hourly records need at'
                              ' least %d.' % (number, len(fields),
                                              MIN_FIELDS))
        rows.append([fields[i] for i in EPW_FIELDS.values()])
        numbers.append(number)

    data = pd.DataFrame(rows, columns=list(EPW_FIELDS))
    for column in data.columns:
        converted = pd.to_numeric(data[column].str.strip(), errors='coerce')
        if converted.isna().any():
            bad = int(np.flatnonzero(converted.isna().to_numpy())[0])
            raise NonNumericField('Field %r of line %d is not numeric: %r.'
                                  % (column, numbers[bad],
                                     data[column].iloc[bad]))
        data[column] = converted
    for column in ('year', 'month', 'day', 'hour'):
        data[column] = data[column].astype(int)

    if len(data) not in (8760, 8784):
        logger.warning('Weather file holds %d hourly records instead of'
                       ' 8760.', len(data))
    return EpwFile(location, data)


def read_epw(path) -> EpwFile:
    with open(path, encoding='latin-1') as fh:
        return parse_epw(fh.read())
