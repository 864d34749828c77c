# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

from .geometry import PackedScene, pack_scene, intersect, trace
from .tracer import (
    DEFAULT_SAMPLES, DEFAULT_BOUNCES, DEFAULT_LIMIT_WEIGHT,
    ViewpointOutsideRoom, RenderParams, Viewpoint, check_viewpoint,
    trace_paths, render_panorama, render_fisheye, render_labels)
from .illuminance import direct_horizontal_illuminance

__all__ = ['PackedScene', 'pack_scene', 'intersect', 'trace',
           'DEFAULT_SAMPLES', 'DEFAULT_BOUNCES', 'DEFAULT_LIMIT_WEIGHT',
           'ViewpointOutsideRoom', 'RenderParams', 'Viewpoint',
           'check_viewpoint', 'trace_paths', 'render_panorama',
           'render_fisheye', 'render_labels',
           'direct_horizontal_illuminance']
