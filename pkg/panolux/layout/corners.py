# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, Field, ValidationError

from panolux.projection import pixel_to_dir

DEFAULT_CAMERA_HEIGHT = 1.6


class SchemaError(ValueError):
    pass


class CornerOrderError(ValueError):
    pass


class HorizonViolation(ValueError):
    pass


class ImageModel(BaseModel):
    width: int = Field(..., gt=0)
    height: int = Field(..., gt=0)


class CornerModel(BaseModel):
    u: float
    v_floor: float
    v_ceiling: float


class WindowModel(BaseModel):
    wall: int = Field(..., ge=0)
    quad: list[tuple[float, float]] = Field(..., min_length=4, max_length=4)


class CornerFileModel(BaseModel):
    image: ImageModel
    camera_height_m: float = Field(DEFAULT_CAMERA_HEIGHT, gt=0)
    corners: list[CornerModel] = Field(..., min_length=3)
    windows: list[WindowModel] = Field(default_factory=list)


@dataclass(frozen=True, eq=False)
class WindowQuad:
    wall: int
    quad: np.ndarray


@dataclass(frozen=True, eq=False)
class CornerSet:
    """Wall-corner annotations on an equirectangular panorama.

    Columns run monotonically around the room in either direction, with at
    most one wrap across the panorama seam.
    """
    width: int
    height: int
    u: np.ndarray
    v_floor: np.ndarray
    v_ceiling: np.ndarray
    camera_height: float = DEFAULT_CAMERA_HEIGHT
    windows: tuple = ()

    def __len__(self):
        return len(self.u)


def parse_corner_json(text) -> CornerSet:
    try:
        model = CornerFileModel.model_validate_json(text)
    except ValidationError as e:
        raise SchemaError('The corner file does not match the expected'
                          ' schema:\n%s' % e) from e

    width, height = model.image.width, model.image.height
    if width != 2 * height:
        raise SchemaError('Corner annotations must refer to an'
                          ' equirectangular image (width = 2 x height), got'
                          ' %dx%d.' % (width, height))
    u = np.array([c.u for c in model.corners])
    v_floor = np.array([c.v_floor for c in model.corners])
    v_ceiling = np.array([c.v_ceiling for c in model.corners])
    for name, values, limit in (('u', u, width), ('v_floor', v_floor, height),
                                ('v_ceiling', v_ceiling, height)):
        if np.any((values < 0) | (values >= limit)):
            raise SchemaError('Corner %s values must lie in [0, %d).'
                              % (name, limit))
    for i, window in enumerate(model.windows):
        if window.wall >= len(u):
            raise SchemaError('Window %d refers to wall %d but the room has'
                              ' only %d walls.' % (i, window.wall, len(u)))

    theta = np.asarray(pixel_to_dir(u, v_floor, width, height).theta)
    phi_floor = np.asarray(pixel_to_dir(u, v_floor, width, height).phi)
    phi_ceiling = np.asarray(pixel_to_dir(u, v_ceiling, width, height).phi)
    for i in range(len(u)):
        if phi_floor[i] >= 0:
            raise HorizonViolation('Floor corner %d (v=%g) is not below the'
                                   ' horizon row %g.'
                                   % (i, v_floor[i], height / 2 - 0.5))
        if phi_ceiling[i] <= 0:
            raise HorizonViolation('Ceiling corner %d (v=%g) is not above'
                                   ' the horizon row %g.'
                                   % (i, v_ceiling[i], height / 2 - 0.5))
    _check_order(theta)

    windows = tuple(WindowQuad(w.wall, np.array(w.quad, dtype=float))
                    for w in model.windows)
    return CornerSet(width, height, u, v_floor, v_ceiling,
                     model.camera_height_m, windows)


def _check_order(theta):
    # Azimuth must sweep exactly one turn, in either direction.
    turn = 2 * np.pi
    closed = np.append(theta, theta[0])
    forward = np.mod(np.diff(closed), turn)
    backward = np.mod(-np.diff(closed), turn)
    for steps in (forward, backward):
        if np.all(steps > 0) and np.isclose(steps.sum(), turn):
            return
    raise CornerOrderError('Corners must be listed in panorama column order'
                           ' (either direction, wrapping across the seam at'
                           ' most once) without repeats; otherwise the plan'
                           ' polygon is not simple.')
