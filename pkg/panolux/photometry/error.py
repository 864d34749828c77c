# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

from dataclasses import dataclass

import numpy as np
import pandas as pd
from matplotlib.colors import LinearSegmentedColormap

from panolux.projection import Projection, fisheye_grid
from .luminance import LuminanceMap

DEFAULT_CLIP = 3000.0
# Odd so that a zero difference lands exactly on white.
DIVERGING_SIZE = 257
DIVERGING = LinearSegmentedColormap.from_list(
    'panolux_error', ['blue', 'white', 'red'], N=DIVERGING_SIZE)


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class ErrorStats:
    mae: float
    rmse: float
    bias: float
    n_pixels: int
    clip: float

    def to_dict(self) -> dict:
        return {'mae': self.mae, 'rmse': self.rmse, 'bias': self.bias,
                'n_pixels': self.n_pixels, 'clip': self.clip}


@dataclass(frozen=True, eq=False)
class ErrorMap:
    """Signed per-pixel difference ``a - b`` in cd/m2.

    ``mask`` marks the pixels that enter the statistics; it excludes the
    corners of a fisheye raster.
    """
    signed_diff: np.ndarray
    mask: np.ndarray
    clip: float
    stats: ErrorStats

    @property
    def width(self) -> int:
        return self.signed_diff.shape[1]

    @property
    def height(self) -> int:
        return self.signed_diff.shape[0]

    def raster(self) -> np.ndarray:
        """Blue below zero, white at zero, red above; saturates at clip."""
        t = (np.clip(self.signed_diff / self.clip, -1.0, 1.0) + 1.0) / 2
        index = np.rint(t * (DIVERGING_SIZE - 1)).astype(int)
        out = DIVERGING(index, bytes=True)[..., :3]
        out[~self.mask] = 0
        return out


def _summarise(diff, clip) -> ErrorStats:
    if diff.size == 0:
        return ErrorStats(float('nan'), float('nan'), float('nan'), 0, clip)
    return ErrorStats(mae=float(np.abs(diff).mean()),
                      rmse=float(np.sqrt(np.square(diff).mean())),
                      bias=float(diff.mean()),
                      n_pixels=int(diff.size),
                      clip=clip)


def error_map(a: LuminanceMap, b: LuminanceMap, clip=DEFAULT_CLIP):
    """Compare two luminance maps of the same view.

    Returns the :class:`ErrorMap` and its diverging colour raster.
    Statistics use the raw, unclipped differences.
    """
    if a.values.shape != b.values.shape or a.projection != b.projection:
        raise DimensionMismatch(
            'Luminance maps must share dimensions and projection, got %dx%d'
            ' %s and %dx%d %s.' % (a.width, a.height, a.projection.value,
                                   b.width, b.height, b.projection.value))
    if not (np.isfinite(clip) and clip > 0):
        raise ValueError('The display clip must be positive, got %r.' % clip)
    diff = a.values - b.values
    if a.projection is Projection.FISHEYE180:
        mask = fisheye_grid(a.width).inside
    else:
        mask = np.ones(diff.shape, dtype=bool)
    result = ErrorMap(diff, mask, float(clip),
                      _summarise(diff[mask], float(clip)))
    return result, result.raster()


def region_error_stats(err: ErrorMap, labels, names) -> pd.DataFrame:
    """Error statistics grouped by the surface seen in each pixel.

    ``labels`` holds, per pixel, an index into ``names``.
    """
    labels = np.asarray(labels)
    if labels.shape != err.signed_diff.shape:
        raise DimensionMismatch('Labels of shape %r do not match the %dx%d'
                                ' error map.' % (labels.shape, err.width,
                                                 err.height))
    rows = []
    for code, name in enumerate(names):
        selected = err.mask & (labels == code)
        if not selected.any():
            continue
        stats = _summarise(err.signed_diff[selected], err.clip)
        rows.append({'region': name, 'mae': stats.mae, 'rmse': stats.rmse,
                     'bias': stats.bias, 'n_pixels': stats.n_pixels})
    df = pd.DataFrame(rows, columns=['region', 'mae', 'rmse', 'bias',
                                     'n_pixels'])

    df['region'].attrs.update({
        'title': 'region',
        'description': 'Surface class hit by the primary ray of the pixel.'
    })
    df['mae'].attrs.update({
        'title': 'mean absolute error',
        'description': 'Mean of |A - B| over the region, in cd/m2.'
    })
    df['rmse'].attrs.update({
        'title': 'root mean square error',
        'description': 'Square root of the mean of (A - B)^2, in cd/m2.'
    })
    df['bias'].attrs.update({
        'title': 'mean bias',
        'description': 'Mean of A - B; negative values mean A'
                       ' underestimates B.'
    })
    df['n_pixels'].attrs.update({
        'title': 'count',
        'description': 'The number of pixels in the region.'
    })
    return df
