"""Benefit evaluation: decay kernels, point benefit, and grid fields.

The benefit a point k receives from amenity i with attractiveness A at
Euclidean distance d, under moving efficiency E, is

    rational:     A / (1 + d / E)
    gaussian:     A * exp(-E * d^2)
    exponential:  A * exp(-E * d)

and the benefit of a point is the plain sum of these over all amenities.

E convention trap: the three families use the same letter with opposite
decay semantics. For the rational family a larger E means *slower* decay
(moving is easier, the amenity reaches farther); for the gaussian and
exponential families a larger E means *faster* decay. Both conventions are
kept exactly as stated above; do not port an E value across families.

Amenity contributions are accumulated in amenity-index order in double
precision, so identical inputs give bit-identical rasters regardless of how
the grid is partitioned.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NegativeDistanceError
from .scene import Amenity, GridSpec, Kernel, Raster, Scene, resolve_profile

__all__ = [
    "PointBenefit",
    "FieldParts",
    "kernel_benefit",
    "point_benefit",
    "evaluate_field",
    "evaluate_field_parts",
]


@dataclass(frozen=True)
class PointBenefit:
    """Benefit at one point, with the amenity/disamenity split.

    ``positive_part`` sums contributions of amenities with attractiveness
    > 0, ``negative_part`` those with attractiveness < 0. ``total`` is the
    straight sum over all amenities in order, so it equals
    positive_part + negative_part up to float rounding (1e-12 relative).
    """

    total: float
    positive_part: float
    negative_part: float


@dataclass(frozen=True)
class FieldParts:
    """A benefit raster together with its positive/negative companions."""

    total: Raster
    positive: Raster
    negative: Raster


def _kernel_values(attractiveness: float, d, kernel: Kernel):
    # d: scalar or ndarray of nonnegative distances; caller guarantees the sign.
    if kernel.family == "rational":
        return attractiveness / (1.0 + d / kernel.efficiency)
    if kernel.family == "gaussian":
        return attractiveness * np.exp(-kernel.efficiency * d * d)
    return attractiveness * np.exp(-kernel.efficiency * d)


def kernel_benefit(attractiveness: float, distance, kernel: Kernel):
    """Benefit from a single amenity at the given distance(s).

    ``distance`` may be a scalar or an ndarray; the result matches. At
    distance 0 every family returns ``attractiveness`` exactly. Negative
    distances raise :class:`NegativeDistanceError`.
    """
    d = np.asarray(distance, dtype=float)
    if np.any(d < 0):
        raise NegativeDistanceError(f"distance must be >= 0, got {distance!r}")
    out = _kernel_values(float(attractiveness), d, kernel)
    if d.ndim == 0:
        return float(out)
    return out


def point_benefit(amenities, kernel: Kernel, x: float, y: float) -> PointBenefit:
    """Total benefit at (x, y): the sum of kernel_benefit over all amenities,
    split into positive (attractiveness > 0) and negative parts."""
    total = 0.0
    pos = 0.0
    neg = 0.0
    for am in amenities:
        d = float(np.hypot(x - am.x, y - am.y))
        b = float(_kernel_values(float(am.attractiveness), d, kernel))
        total += b
        if am.attractiveness > 0:
            pos += b
        elif am.attractiveness < 0:
            neg += b
    return PointBenefit(total=total, positive_part=pos, negative_part=neg)


def _distance_grid(am: Amenity, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    return np.hypot(xs[np.newaxis, :] - am.x, ys[:, np.newaxis] - am.y)


def evaluate_field(
    scene: Scene,
    kernel: Kernel,
    grid: GridSpec,
    profile: str | None = None,
) -> Raster:
    """Evaluate the benefit field on a grid under an optional profile.

    Cell (i, j) of the result is the point benefit at that cell's center
    with the profile's attractiveness overrides and personal E applied.
    Every amenity contributes to every cell; there is no cutoff radius.
    """
    amenities, kern = resolve_profile(scene, kernel, profile)
    xs = grid.x_coords()
    ys = grid.y_coords()
    total = np.zeros((grid.nrows, grid.ncols), dtype=float)
    for am in amenities:
        total += _kernel_values(float(am.attractiveness), _distance_grid(am, xs, ys), kern)
    return Raster(grid, total.reshape(-1))


def evaluate_field_parts(
    scene: Scene,
    kernel: Kernel,
    grid: GridSpec,
    profile: str | None = None,
) -> FieldParts:
    """Like :func:`evaluate_field` but also returns the positive-only and
    negative-only companion rasters (inert amenities contribute to neither).
    """
    amenities, kern = resolve_profile(scene, kernel, profile)
    xs = grid.x_coords()
    ys = grid.y_coords()
    shape = (grid.nrows, grid.ncols)
    total = np.zeros(shape, dtype=float)
    pos = np.zeros(shape, dtype=float)
    neg = np.zeros(shape, dtype=float)
    for am in amenities:
        contrib = _kernel_values(float(am.attractiveness), _distance_grid(am, xs, ys), kern)
        total += contrib
        if am.attractiveness > 0:
            pos += contrib
        elif am.attractiveness < 0:
            neg += contrib
    return FieldParts(
        total=Raster(grid, total.reshape(-1)),
        positive=Raster(grid, pos.reshape(-1)),
        negative=Raster(grid, neg.reshape(-1)),
    )
