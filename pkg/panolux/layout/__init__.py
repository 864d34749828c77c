# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

from .corners import (
    DEFAULT_CAMERA_HEIGHT, SchemaError, CornerOrderError, HorizonViolation,
    WindowQuad, CornerSet, parse_corner_json)
from .reconstruct import (
    DegenerateCorner, RayParallelToWall, BehindCamera, Wall, RoomLayout,
    WindowAperture, is_simple_polygon, floor_point, reconstruct_room,
    project_window, layout_to_json, layout_from_json)
from .scene import (
    SURFACE_KINDS, REGION_LABELS, OverlappingApertures, Material,
    MaterialSet, Surface, SceneModel, polygon_normal, triangulate,
    build_scene)
from .formats import export_rad, export_obj, import_rad

__all__ = ['DEFAULT_CAMERA_HEIGHT', 'SchemaError', 'CornerOrderError',
           'HorizonViolation', 'WindowQuad', 'CornerSet', 'parse_corner_json',
           'DegenerateCorner', 'RayParallelToWall', 'BehindCamera', 'Wall',
           'RoomLayout', 'WindowAperture', 'is_simple_polygon', 'floor_point',
           'reconstruct_room', 'project_window', 'layout_to_json',
           'layout_from_json', 'SURFACE_KINDS', 'REGION_LABELS',
           'OverlappingApertures', 'Material', 'MaterialSet', 'Surface',
           'SceneModel', 'polygon_normal', 'triangulate', 'build_scene',
           'export_rad', 'export_obj', 'import_rad']
