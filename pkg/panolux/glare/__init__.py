# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

from .dgp import (
    DEFAULT_MULTIPLIER, DEFAULT_ABSOLUTE_THRESHOLD, LEVELS,
    ZeroEvWithSources, SourcePolicy, GlareSource, GlareResult,
    vertical_illuminance, guth_position_index, detect_sources, classify,
    compute_dgp, evaluate_glare)
from .sweep import (
    DEFAULT_DATES, DEFAULT_HOURS, SWEEP_COLUMNS, parse_date, parse_hour,
    format_date, format_hour, dgp_sweep, write_sweep_csv, read_sweep_csv)

__all__ = ['DEFAULT_MULTIPLIER', 'DEFAULT_ABSOLUTE_THRESHOLD', 'LEVELS',
           'ZeroEvWithSources', 'SourcePolicy', 'GlareSource', 'GlareResult',
           'vertical_illuminance', 'guth_position_index', 'detect_sources',
           'classify', 'compute_dgp', 'evaluate_glare', 'DEFAULT_DATES',
           'DEFAULT_HOURS', 'SWEEP_COLUMNS', 'parse_date', 'parse_hour',
           'format_date', 'format_hour', 'dgp_sweep', 'write_sweep_csv',
           'read_sweep_csv']
