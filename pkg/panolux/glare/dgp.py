# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from panolux.photometry import LuminanceMap
from panolux.projection import BadProjection, Projection, fisheye_grid

DEFAULT_MULTIPLIER = 5.0
DEFAULT_ABSOLUTE_THRESHOLD = 2000.0
MIN_SOURCE_SOLID_ANGLE = 1e-6

LEVELS = ('imperceptible', 'perceptible', 'disturbing', 'intolerable')
# Lower bounds of the upper three levels.
LEVEL_BOUNDS = (0.35, 0.40, 0.45)


class ZeroEvWithSources(ValueError):
    pass


@dataclass(frozen=True)
class SourcePolicy:
    """Glare-source threshold: ``multiplier`` times the mean luminance of
    the view, or a fixed ``absolute`` luminance in cd/m2 when given."""
    multiplier: float = DEFAULT_MULTIPLIER
    absolute: float | None = None

    def __post_init__(self):
        if not self.multiplier > 0:
            raise ValueError('The source multiplier must be positive, got %r.'
                             % self.multiplier)
        if self.absolute is not None and not self.absolute > 0:
            raise ValueError('The absolute threshold must be positive, got'
                             ' %r.' % self.absolute)

    def threshold(self, values, solid_angle) -> float:
        if self.absolute is not None:
            return self.absolute
        mean = np.sum(values * solid_angle) / np.sum(solid_angle)
        return self.multiplier * float(mean)


@dataclass(frozen=True)
class GlareSource:
    mean_luminance: float
    solid_angle: float
    position_index: float
    direction: tuple

    def __post_init__(self):
        if not self.mean_luminance > 0:
            raise ValueError('Source luminance must be positive.')
        if not self.solid_angle > 0:
            raise ValueError('Source solid angle must be positive.')
        if not self.position_index >= 1:
            raise ValueError('The position index is at least 1, got %r.'
                             % self.position_index)

    def to_dict(self) -> dict:
        return {'mean_luminance': self.mean_luminance,
                'solid_angle': self.solid_angle,
                'position_index': self.position_index,
                'direction': list(self.direction)}


@dataclass(frozen=True)
class GlareResult:
    dgp: float
    ev: float
    sources: tuple
    level: str

    def to_dict(self) -> dict:
        return {'dgp': self.dgp, 'ev_lux': self.ev, 'level': self.level,
                'sources': [s.to_dict() for s in self.sources]}


def _fisheye(lum: LuminanceMap):
    if lum.projection is not Projection.FISHEYE180:
        raise BadProjection('Glare evaluation needs a fisheye180 map, got'
                            ' %s.' % lum.projection.value)
    return fisheye_grid(lum.width)


def vertical_illuminance(lum: LuminanceMap) -> float:
    """Cosine-weighted sum of luminance over the fisheye disk, in lux."""
    grid = _fisheye(lum)
    cos_alpha = grid.local[..., 2]
    return float(np.sum(np.where(grid.inside,
                                 lum.values * cos_alpha * grid.solid_angle,
                                 0.0)))


def guth_position_index(sigma, tau) -> float:
    """Position index for a source ``sigma`` radians off the line of sight,
    ``tau`` radians from the vertical through it."""
    if not 0 <= sigma <= math.pi / 2 + 1e-12:
        raise ValueError('sigma must lie in [0, pi/2], got %r.' % sigma)
    s, t = math.degrees(sigma), math.degrees(tau)
    ln_p = ((35.2 - 0.31889 * t - 1.22 * math.exp(-2 * t / 9)) * 1e-3 * s
            + (21 + 0.26667 * t - 0.002963 * t * t) * 1e-5 * s * s)
    return max(1.0, math.exp(ln_p))


def _source_angles(direction):
    lx, ly, lz = direction
    sigma = math.acos(min(max(lz, -1.0), 1.0))
    lateral = math.hypot(lx, ly)
    # sources below the line of sight are mirrored above it
    tau = math.acos(min(abs(ly) / lateral, 1.0)) if lateral > 0 else 0.0
    return sigma, tau


def detect_sources(lum: LuminanceMap, policy: SourcePolicy = None) -> list:
    """4-connected regions brighter than the policy threshold."""
    policy = SourcePolicy() if policy is None else policy
    grid = _fisheye(lum)
    values = np.where(grid.inside, lum.values, 0.0)
    threshold = policy.threshold(values, grid.solid_angle)
    labels, count = ndimage.label(grid.inside & (values > threshold))
    if count == 0:
        return []
    index = np.arange(1, count + 1)
    omega = ndimage.sum_labels(grid.solid_angle, labels, index)
    flux = ndimage.sum_labels(values * grid.solid_angle, labels, index)
    weighted = [ndimage.sum_labels(grid.local[..., i] * grid.solid_angle,
                                   labels, index) for i in range(3)]
    sources = []
    for k in range(count):
        if omega[k] < MIN_SOURCE_SOLID_ANGLE:
            continue
        direction = np.array([w[k] for w in weighted])
        direction /= np.linalg.norm(direction)
        sigma, tau = _source_angles(direction)
        sources.append(GlareSource(float(flux[k] / omega[k]), float(omega[k]),
                                   guth_position_index(sigma, tau),
                                   tuple(map(float, direction))))
    return sources


def classify(dgp: float) -> str:
    if not 0 <= dgp <= 1:
        raise ValueError('DGP must lie in [0, 1], got %r.' % dgp)
    return LEVELS[int(np.searchsorted(LEVEL_BOUNDS, dgp, side='right'))]


def compute_dgp(ev: float, sources=()) -> GlareResult:
    if not (math.isfinite(ev) and ev >= 0):
        raise ValueError('Vertical illuminance must be finite and'
                         ' non-negative, got %r.' % ev)
    sources = tuple(sources)
    if ev == 0:
        if sources:
            raise ZeroEvWithSources('Glare sources were given with zero'
                                    ' vertical illuminance; the source term'
                                    ' is undefined.')
        dgp = 0.16
    else:
        term = sum(s.mean_luminance ** 2 * s.solid_angle
                   / (ev ** 1.87 * s.position_index ** 2) for s in sources)
        dgp = 5.87e-5 * ev + 9.8e-2 * math.log10(1 + term) + 0.16
    dgp = min(max(dgp, 0.0), 1.0)
    return GlareResult(dgp, float(ev), sources, classify(dgp))


def evaluate_glare(lum: LuminanceMap,
                   policy: SourcePolicy = None) -> GlareResult:
    return compute_dgp(vertical_illuminance(lum), detect_sources(lum, policy))
