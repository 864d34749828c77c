# ----------------------------------------------------------------------------
# Copyright (c) 2026, panolux development team.
#
# Distributed under the terms of the Modified BSD License.
#
# The full license is in the file LICENSE, distributed with this software.
# ----------------------------------------------------------------------------

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from panolux.layout import REGION_LABELS, SceneModel

RAY_EPSILON = 1e-7
# Upper bound on rays x triangles per intersection batch.
BATCH_ELEMENTS = 2_000_000
MAX_GLAZING_LAYERS = 8


@dataclass(frozen=True, eq=False)
class PackedScene:
    """Scene triangles as flat arrays for vectorised ray casting.

    ``label`` indexes ``REGION_LABELS``; ``glazing`` triangles are crossed
    with throughput ``transmittance``; ``opening`` triangles exist only
    when packed for labelling.
    """
    v0: np.ndarray
    e1: np.ndarray
    e2: np.ndarray
    normal: np.ndarray
    reflectance: np.ndarray
    transmittance: np.ndarray
    glazing: np.ndarray
    opening: np.ndarray
    label: np.ndarray

    def __len__(self):
        return len(self.v0)

    @cached_property
    def planes(self):
        """Projection basis ``(3, 3T)`` and offsets ``(3T,)`` for casting.

        For a point ``p`` the columns of ``p @ basis - offset`` hold, per
        triangle, the plane distance scaled by the normal length and the
        barycentric coordinates ``u`` and ``v`` of ``p`` along ``e1`` and
        ``e2``.
        """
        normal = np.cross(self.e1, self.e2)
        area2 = np.sum(normal * normal, axis=1)
        scale = np.where(area2 > 0, 1.0 / np.where(area2 > 0, area2, 1.0),
                         0.0)[:, None]
        along_e1 = np.cross(self.e2, normal) * scale
        along_e2 = np.cross(normal, self.e1) * scale
        rows = np.concatenate([normal, along_e1, along_e2])
        offset = np.sum(np.tile(self.v0, (3, 1)) * rows, axis=1)
        return np.ascontiguousarray(rows.T), offset


def pack_scene(scene: SceneModel, include_open=False) -> PackedScene:
    v0, e1, e2, normal = [], [], [], []
    refl, trans, glazing, opening, label = [], [], [], [], []
    for surface in scene.surfaces:
        material = surface.material
        if material.is_open and not include_open:
            continue
        n = surface.normal
        for a, b, c in surface.triangles():
            pa, pb, pc = surface.vertices[[a, b, c]]
            v0.append(pa)
            e1.append(pb - pa)
            e2.append(pc - pa)
            normal.append(n)
            refl.append(material.value if material.kind == 'plastic'
                        else 0.0)
            trans.append(material.value if material.is_glazing else 0.0)
            glazing.append(material.is_glazing)
            opening.append(material.is_open)
            label.append(REGION_LABELS.index(surface.kind))

    def arr(values, dtype=float, shape=(0,)):
        return np.array(values, dtype=dtype) if values else np.zeros(
            shape, dtype=dtype)

    return PackedScene(arr(v0, shape=(0, 3)), arr(e1, shape=(0, 3)),
                       arr(e2, shape=(0, 3)), arr(normal, shape=(0, 3)),
                       arr(refl), arr(trans), arr(glazing, bool),
                       arr(opening, bool), arr(label, int))


def intersect(packed: PackedScene, origins, dirs):
    """Nearest triangle along each ray.

    Returns ``(distance, triangle)``; misses have infinite distance and
    triangle -1.
    """
    origins = np.asarray(origins, dtype=float)
    dirs = np.asarray(dirs, dtype=float)
    n_rays = len(origins)
    distance = np.full(n_rays, np.inf)
    triangle = np.full(n_rays, -1, dtype=int)
    if n_rays == 0 or len(packed) == 0:
        return distance, triangle

    n_tri = len(packed)
    basis, offset = packed.planes
    batch = max(1, BATCH_ELEMENTS // (3 * n_tri))
    for start in range(0, n_rays, batch):
        stop = min(start + batch, n_rays)
        o = origins[start:stop] @ basis - offset
        d = dirs[start:stop] @ basis
        facing = d[:, :n_tri]
        valid = np.abs(facing) > 1e-12
        t = -o[:, :n_tri] / np.where(valid, facing, 1.0)
        u = o[:, n_tri:2 * n_tri] + t * d[:, n_tri:2 * n_tri]
        v = o[:, 2 * n_tri:] + t * d[:, 2 * n_tri:]
        hit = valid & (u >= 0) & (v >= 0) & (u + v <= 1) & (t > RAY_EPSILON)
        t = np.where(hit, t, np.inf)
        best = np.argmin(t, axis=1)
        best_t = t[np.arange(len(best)), best]
        distance[start:stop] = best_t
        triangle[start:stop] = np.where(np.isfinite(best_t), best, -1)
    return distance, triangle


def trace(packed: PackedScene, origins, dirs):
    """Nearest opaque hit, crossing glazing on the way.

    Returns ``(distance, triangle, transmittance)`` where distance is
    measured from the original origins and transmittance is the product of
    the glazing crossed.
    """
    origins = np.array(origins, dtype=float)
    dirs = np.asarray(dirs, dtype=float)
    travelled = np.zeros(len(origins))
    transmittance = np.ones(len(origins))
    distance, triangle = intersect(packed, origins, dirs)
    pending = np.flatnonzero(triangle >= 0)
    pending = pending[packed.glazing[triangle[pending]]]
    for _ in range(MAX_GLAZING_LAYERS):
        if not len(pending):
            break
        transmittance[pending] *= packed.transmittance[triangle[pending]]
        step = distance[pending] + RAY_EPSILON
        travelled[pending] += step
        origins[pending] += step[:, None] * dirs[pending]
        d, tri = intersect(packed, origins[pending], dirs[pending])
        distance[pending] = d
        triangle[pending] = tri
        keep = tri >= 0
        pending = pending[keep][packed.glazing[tri[keep]]]
    else:
        if len(pending):
            transmittance[pending] = 0.0
    return distance + travelled, triangle, transmittance


def facing_normals(packed: PackedScene, triangle, dirs) -> np.ndarray:
    """Triangle normals flipped against the incoming directions."""
    n = packed.normal[triangle]
    flip = np.sum(n * dirs, axis=-1) > 0
    return np.where(flip[:, None], -n, n)


def cosine_directions(normals, u1, u2) -> np.ndarray:
    """Cosine-weighted hemisphere samples about ``normals``."""
    helper = np.where((np.abs(normals[:, 0]) < 0.9)[:, None],
                      np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]))
    tangent = np.cross(normals, helper)
    tangent /= np.linalg.norm(tangent, axis=1, keepdims=True)
    bitangent = np.cross(normals, tangent)
    r = np.sqrt(u1)
    angle = 2 * np.pi * u2
    return ((r * np.cos(angle))[:, None] * tangent
            + (r * np.sin(angle))[:, None] * bitangent
            + np.sqrt(np.maximum(1 - u1, 0.0))[:, None] * normals)
