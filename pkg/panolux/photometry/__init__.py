# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

from .luminance import (
    LUMINANCE_COEFFS, EmptyRegion, ZeroRegionLuminance, CalibrationFactor,
    LuminanceMap, pixel_luminance, to_luminance_map, luminance_to_hdr,
    compute_k)
from .falsecolor import (
    RAMP, RAMP_SIZE, BadRange, FalseColorImage, ramp_index, false_color)
from .error import (
    DEFAULT_CLIP, DimensionMismatch, ErrorStats, ErrorMap, error_map,
    region_error_stats)

__all__ = ['LUMINANCE_COEFFS', 'EmptyRegion', 'ZeroRegionLuminance',
           'CalibrationFactor', 'LuminanceMap', 'pixel_luminance',
           'to_luminance_map', 'luminance_to_hdr', 'compute_k', 'RAMP',
           'RAMP_SIZE', 'BadRange', 'FalseColorImage', 'ramp_index',
           'false_color', 'DEFAULT_CLIP', 'DimensionMismatch', 'ErrorStats',
           'ErrorMap', 'error_map', 'region_error_stats']
