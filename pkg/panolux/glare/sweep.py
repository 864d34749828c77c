# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import logging
import math
import re
from dataclasses import replace

import pandas as pd
from joblib import Parallel, delayed

from panolux.layout import SceneModel
from panolux.projection import view_azimuths
from panolux.renderer import RenderParams, Viewpoint, render_fisheye
from panolux.skymodel import EpwFile, build_sky
from .dgp import SourcePolicy, evaluate_glare

logger = logging.getLogger(__name__)

DEFAULT_DATES = ((3, 21), (6, 21), (9, 21), (12, 21))
DEFAULT_HOURS = tuple(8.5 + h for h in range(9))
DEFAULT_INCREMENT_DEG = 22.5
SWEEP_SIZE = 64
SWEEP_SAMPLES = 16
SWEEP_COLUMNS = ['date', 'hour', 'view', 'azimuth_deg', 'ev_lux', 'dgp',
                 'level']

_DATE = re.compile(r'^(\d{1,2})-(\d{1,2})$')
_HOUR = re.compile(r'^(\d{1,2}):(\d{2})$')


def parse_date(text) -> tuple:
    """``'MM-DD'`` to ``(month, day)``."""
    match = _DATE.match(text.strip())
    if match is None:
        raise ValueError('Dates are written MM-DD, got %r.' % text)
    month, day = int(match.group(1)), int(match.group(2))
    if not (1 <= month <= 12 and 1 <= day <= 31):
        raise ValueError('%r is not a calendar date.' % text)
    return month, day


def parse_hour(text) -> float:
    """``'HH:MM'`` or a decimal hour."""
    text = text.strip()
    match = _HOUR.match(text)
    hour = (int(match.group(1)) + int(match.group(2)) / 60 if match
            else float(text))
    if not 0 <= hour < 24:
        raise ValueError('Hours must lie in [0, 24), got %r.' % text)
    return hour


def format_date(month, day) -> str:
    return '%02d-%02d' % (month, day)


def format_hour(hour) -> str:
    minutes = int(round(hour * 60))
    return '%02d:%02d' % divmod(minutes, 60)


def _view_task(scene, sky, position, azimuth, params, size, policy):
    lum = render_fisheye(scene, sky, Viewpoint(position, azimuth),
                         azimuth, params, size)
    return evaluate_glare(lum, policy)


def dgp_sweep(scene: SceneModel, epw: EpwFile, position,
              dates=DEFAULT_DATES, hours=DEFAULT_HOURS,
              params: RenderParams = None, size=SWEEP_SIZE,
              increment_deg=DEFAULT_INCREMENT_DEG, condition='auto',
              policy: SourcePolicy = None) -> pd.DataFrame:
    """Glare table over dates, hours and level views around ``position``.

    One row per (date, hour, view), ordered date, hour, view. View 1 looks
    along room azimuth 0.
    """
    if params is None:
        params = RenderParams(samples_per_pixel=SWEEP_SAMPLES)
    azimuths = view_azimuths(increment_deg)
    task_params = replace(params, n_jobs=1)
    keys, tasks = [], []
    for month, day in dates:
        for hour in hours:
            sky = build_sky(epw, month, day, hour, condition)
            for view, azimuth in enumerate(azimuths, start=1):
                keys.append((format_date(month, day), format_hour(hour),
                             view, math.degrees(azimuth)))
                tasks.append(delayed(_view_task)(
                    scene, sky, position, azimuth, task_params, size,
                    policy))
    logger.debug('Evaluating %d sweep views', len(tasks))
    results = Parallel(n_jobs=params.workers, prefer='threads')(tasks)

    rows = [(*key, r.ev, r.dgp, r.level) for key, r in zip(keys, results)]
    table = pd.DataFrame(rows, columns=SWEEP_COLUMNS)
    return set_sweep_attrs(table)


def set_sweep_attrs(table: pd.DataFrame) -> pd.DataFrame:
    table['date'].attrs.update({
        'title': 'date',
        'description': 'Month and day of the simulated sky (MM-DD).'
    })
    table['hour'].attrs.update({
        'title': 'hour',
        'description': 'Local standard time (HH:MM).'
    })
    table['view'].attrs.update({
        'title': 'view',
        'description': 'View number; view 1 looks along room azimuth 0.'
    })
    table['azimuth_deg'].attrs.update({
        'title': 'azimuth',
        'description': 'View direction in degrees, room coordinates.'
    })
    table['ev_lux'].attrs.update({
        'title': 'vertical illuminance',
        'description': 'Illuminance at the eye in lux.'
    })
    table['dgp'].attrs.update({
        'title': 'DGP',
        'description': 'Daylight glare probability.'
    })
    table['level'].attrs.update({
        'title': 'glare level',
        'description': 'Imperceptible, perceptible, disturbing or'
                       ' intolerable.'
    })
    return table


def write_sweep_csv(table: pd.DataFrame, path_or_buf):
    table = table[SWEEP_COLUMNS].copy()
    for column in ('azimuth_deg', 'ev_lux', 'dgp'):
        table[column] = table[column].astype(float)
    table.to_csv(path_or_buf, index=False, float_format='%.4f')


def read_sweep_csv(path_or_buf) -> pd.DataFrame:
    table = pd.read_csv(path_or_buf, dtype={'date': str, 'hour': str})
    missing = set(SWEEP_COLUMNS) - set(table.columns)
    if missing:
        raise ValueError('Sweep table is missing columns: %s.'
                         % ', '.join(sorted(missing)))
    table['view'] = table['view'].astype(int)
    return set_sweep_attrs(table[SWEEP_COLUMNS].copy())
