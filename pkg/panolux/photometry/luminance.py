# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import dataclasses
from dataclasses import dataclass

import numpy as np

from panolux.hdr_io import HdrImage
from panolux.projection import Projection

LUMINANCE_COEFFS = np.array([0.2127, 0.7151, 0.0722])


class EmptyRegion(ValueError):
    pass


class ZeroRegionLuminance(ValueError):
    pass


@dataclass(frozen=True)
class CalibrationFactor:
    k: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.k) and self.k > 0):
            raise ValueError('The calibration factor must be positive and'
                             ' finite, got %r.' % self.k)


@dataclass(frozen=True, eq=False)
class LuminanceMap:
    """Per-pixel luminance in cd/m2, shape (height, width)."""
    values: np.ndarray
    projection: Projection = Projection.UNSPECIFIED

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, 'values', values)
        object.__setattr__(self, 'projection', Projection(self.projection))
        if values.ndim != 2:
            raise ValueError('A luminance map must be two-dimensional, got'
                             ' shape %r.' % (values.shape,))
        if not np.all(np.isfinite(values)) or np.any(values < 0):
            raise ValueError('Luminance values must be finite and'
                             ' non-negative.')
        if (self.projection is Projection.EQUIRECTANGULAR
                and self.width != 2 * self.height):
            raise ValueError('An equirectangular map must be twice as wide as'
                             ' it is tall, got %dx%d.'
                             % (self.width, self.height))
        if (self.projection is Projection.FISHEYE180
                and self.width != self.height):
            raise ValueError('A fisheye map must be square, got %dx%d.'
                             % (self.width, self.height))

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def raster(self) -> np.ndarray:
        return self.values

    def with_raster(self, raster, projection) -> 'LuminanceMap':
        return dataclasses.replace(self, values=raster, projection=projection)


def _factor(k) -> float:
    if isinstance(k, CalibrationFactor):
        return k.k
    return CalibrationFactor(float(k)).k


def pixel_luminance(rgb, k=1.0):
    rgb = np.asarray(rgb, dtype=float)
    if not np.all(np.isfinite(rgb)) or np.any(rgb < 0):
        raise ValueError('RGB components must be finite and non-negative.')
    if rgb.shape[-1:] != (3,):
        raise ValueError('RGB values need a last axis of length 3, got shape'
                         ' %r.' % (rgb.shape,))
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    # Weights sum to one; expanding about g keeps grey pixels exact.
    value = _factor(k) * (g + LUMINANCE_COEFFS[0] * (r - g)
                          + LUMINANCE_COEFFS[2] * (b - g))
    return float(value) if np.ndim(value) == 0 else value


def to_luminance_map(img: HdrImage, k=1.0) -> LuminanceMap:
    return LuminanceMap(pixel_luminance(img.pixels, k), img.projection)


def luminance_to_hdr(lum: LuminanceMap) -> HdrImage:
    """Store luminance as a grey picture.

    The weights sum to one, so converting back with k = 1 returns the same
    values up to RGBE quantisation.
    """
    return HdrImage(np.repeat(lum.values[..., None], 3, axis=-1),
                    projection=lum.projection)


def compute_k(measured: float, region, img: HdrImage) -> CalibrationFactor:
    """Scale factor matching a spot luminance measurement.

    ``region`` is a half-open pixel rectangle ``(u0, v0, u1, v1)``: columns
    ``u0 <= u < u1`` and rows ``v0 <= v < v1``.
    """
    if not (np.isfinite(measured) and measured > 0):
        raise ValueError('The measured luminance must be positive, got %r.'
                         % measured)
    u0, v0, u1, v1 = (int(c) for c in region)
    u0, u1 = max(u0, 0), min(u1, img.width)
    v0, v1 = max(v0, 0), min(v1, img.height)
    if u1 <= u0 or v1 <= v0:
        raise EmptyRegion('The calibration region %r holds no pixels of the'
                          ' %dx%d image.' % (tuple(region), img.width,
                                             img.height))
    mean = float(pixel_luminance(img.pixels[v0:v1, u0:u1]).mean())
    if mean <= 0:
        raise ZeroRegionLuminance('The calibration region %r is black; its'
                                  ' luminance cannot be scaled to %g cd/m2.'
                                  % (tuple(region), measured))
    return CalibrationFactor(measured / mean)
