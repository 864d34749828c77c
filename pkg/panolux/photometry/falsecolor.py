# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

from dataclasses import dataclass

import numpy as np
from matplotlib.colors import LinearSegmentedColormap

from .luminance import LuminanceMap

RAMP_SIZE = 256
RAMP = LinearSegmentedColormap.from_list(
    'panolux_falsecolor', ['blue', 'cyan', 'lime', 'yellow', 'red'],
    N=RAMP_SIZE)
DEFAULT_LO = 0.0
DEFAULT_HI = 1000.0
LEGEND_WIDTH = 32
SCALES = ('linear', 'log')


class BadRange(ValueError):
    pass


def _check_range(lo, hi, scale):
    if scale not in SCALES:
        raise BadRange('Scale must be one of %s, got %r.'
                       % (', '.join(SCALES), scale))
    if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
        raise BadRange('The false-colour range needs lo < hi, got lo=%r,'
                       ' hi=%r.' % (lo, hi))
    if scale == 'log' and lo <= 0:
        raise BadRange('A logarithmic scale needs lo > 0, got %r.' % lo)


def ramp_index(values, lo=DEFAULT_LO, hi=DEFAULT_HI,
               scale='linear') -> np.ndarray:
    """Ramp entry (0 .. RAMP_SIZE - 1) for each luminance."""
    _check_range(lo, hi, scale)
    values = np.asarray(values, dtype=float)
    if scale == 'log':
        with np.errstate(divide='ignore'):
            t = ((np.log10(values) - np.log10(lo))
                 / (np.log10(hi) - np.log10(lo)))
    else:
        t = (values - lo) / (hi - lo)
    return np.clip(np.floor(t * RAMP_SIZE), 0, RAMP_SIZE - 1).astype(int)


@dataclass(frozen=True, eq=False)
class FalseColorImage:
    """Colour raster plus a legend strip of the same height.

    The legend runs from ``hi`` at the top row to ``lo`` at the bottom;
    ``ticks`` pairs legend rows with the luminance they stand for.
    """
    image: np.ndarray
    legend: np.ndarray
    lo: float
    hi: float
    scale: str
    ticks: tuple

    def composite(self) -> np.ndarray:
        return np.concatenate([self.image, self.legend], axis=1)


def _legend_values(height, lo, hi, scale):
    t = 1.0 - (np.arange(height) + 0.5) / height
    if scale == 'log':
        return lo * (hi / lo) ** t
    return lo + t * (hi - lo)


def false_color(lum: LuminanceMap, lo=DEFAULT_LO, hi=DEFAULT_HI,
                scale='linear', legend_width=LEGEND_WIDTH) -> FalseColorImage:
    index = ramp_index(lum.values, lo, hi, scale)
    image = RAMP(index, bytes=True)[..., :3]

    legend_values = _legend_values(lum.height, lo, hi, scale)
    column = RAMP(ramp_index(legend_values, lo, hi, scale), bytes=True)
    legend = np.repeat(column[:, None, :3], legend_width, axis=1)
    rows = np.linspace(0, lum.height - 1, min(lum.height, 5)).round()
    ticks = tuple((int(r), float(legend_values[int(r)])) for r in rows)
    return FalseColorImage(image, legend, float(lo), float(hi), scale, ticks)
