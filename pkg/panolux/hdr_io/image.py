# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import dataclasses
from dataclasses import dataclass, field

import numpy as np

from panolux.projection import Projection


@dataclass(frozen=True, eq=False)
class HdrImage:
    """Linear RGB radiance raster.

    ``pixels`` has shape (height, width, 3). Values are already divided by
    ``exposure``; the field only records what the source header declared.
    ``header`` keeps header lines that are carried but not interpreted
    (PRIMARIES, VIEW, software tags).
    """
    pixels: np.ndarray
    exposure: float = 1.0
    projection: Projection = Projection.UNSPECIFIED
    header: tuple = field(default=())

    def __post_init__(self):
        pixels = np.asarray(self.pixels, dtype=np.float64)
        object.__setattr__(self, 'pixels', pixels)
        if pixels.ndim != 3 or pixels.shape[2] != 3:
            raise ValueError('HDR pixels must have shape (height, width, 3),'
                             ' got %r.' % (pixels.shape,))
        if not np.all(np.isfinite(pixels)) or np.any(pixels < 0):
            raise ValueError('HDR pixel components must be finite and'
                             ' non-negative.')
        if not (np.isfinite(self.exposure) and self.exposure > 0):
            raise ValueError('Exposure must be a positive finite number, got'
                             ' %r.' % self.exposure)
        object.__setattr__(self, 'projection', Projection(self.projection))
        if (self.projection is Projection.EQUIRECTANGULAR
                and self.width != 2 * self.height):
            raise ValueError('An equirectangular image must be twice as wide'
                             ' as it is tall, got %dx%d.'
                             % (self.width, self.height))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def raster(self) -> np.ndarray:
        return self.pixels

    def with_raster(self, raster, projection) -> 'HdrImage':
        return dataclasses.replace(self, pixels=raster, projection=projection)
