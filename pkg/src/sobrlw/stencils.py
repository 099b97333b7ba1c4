"""Axis-wise finite-difference operators on nodal fields.

Four operators, each applied along one axis:

  half_diff    first difference at half points, (u_{i+1} - u_i)/h
  second_diff  three-point second difference, exact for quadratics
  wide_first   five-point fourth-order first derivative
  wide_second  five-point fourth-order second derivative

The wide stencils are defined on the interior range 2..M-2 only; entries
outside the valid range are zero-filled and must not be read downstream.

wide_first uses (u_{i-2} - 8u_{i-1} + 8u_{i+1} - u_{i+2}) / (12h), the sign
that approximates +d/dz.  A sign-flipped variant of this stencil appears in
print elsewhere; flipping the sign makes wide_first(x) evaluate to -1, which
the consistency tests reject.
"""
from __future__ import annotations

from enum import Enum

import numpy as np

from .grid import Field

# five-point stencil weights, offsets -2..+2, before the 1/(12h^p) scale
WIDE_FIRST_W = np.array([1.0, -8.0, 0.0, 8.0, -1.0])
WIDE_SECOND_W = np.array([-1.0, 16.0, -30.0, 16.0, -1.0])


class Axis(Enum):
    X = 0
    Y = 1


def _h(grid, axis: Axis) -> float:
    return grid.hx if axis is Axis.X else grid.hy


def _as_values(field) -> np.ndarray:
    return field.values if isinstance(field, Field) else np.asarray(field, float)


def half_diff_values(values: np.ndarray, h: float, axis: Axis) -> np.ndarray:
    """Half-point differences; entry m holds the value at m + 1/2."""
    if axis is Axis.X:
        return (values[1:, :] - values[:-1, :]) / h
    return (values[:, 1:] - values[:, :-1]) / h


def second_diff_values(values: np.ndarray, h: float, axis: Axis) -> np.ndarray:
    M = values.shape[0] - 1
    out = np.zeros_like(values)
    if axis is Axis.X:
        out[1:M, :] = (values[2:, :] - 2 * values[1:M, :] + values[:M - 1, :]) / (h * h)
    else:
        out[:, 1:M] = (values[:, 2:] - 2 * values[:, 1:M] + values[:, :M - 1]) / (h * h)
    return out


def _wide(values: np.ndarray, h: float, axis: Axis, w: np.ndarray, scale: float) -> np.ndarray:
    M = values.shape[0] - 1
    out = np.zeros_like(values)
    if axis is Axis.X:
        out[2:M - 1, :] = (w[0] * values[0:M - 3, :] + w[1] * values[1:M - 2, :]
                           + w[2] * values[2:M - 1, :] + w[3] * values[3:M, :]
                           + w[4] * values[4:M + 1, :]) / scale
    else:
        out[:, 2:M - 1] = (w[0] * values[:, 0:M - 3] + w[1] * values[:, 1:M - 2]
                           + w[2] * values[:, 2:M - 1] + w[3] * values[:, 3:M]
                           + w[4] * values[:, 4:M + 1]) / scale
    return out


def wide_first_values(values: np.ndarray, h: float, axis: Axis) -> np.ndarray:
    return _wide(values, h, axis, WIDE_FIRST_W, 12.0 * h)


def wide_second_values(values: np.ndarray, h: float, axis: Axis) -> np.ndarray:
    return _wide(values, h, axis, WIDE_SECOND_W, 12.0 * h * h)


def half_diff(field: Field, axis: Axis) -> np.ndarray:
    """Staggered first differences of a field (not a nodal Field)."""
    return half_diff_values(field.values, _h(field.grid, axis), axis)


def second_diff(field: Field, axis: Axis) -> Field:
    return field.with_values(second_diff_values(field.values, _h(field.grid, axis), axis))


def wide_first(field: Field, axis: Axis) -> Field:
    return field.with_values(wide_first_values(field.values, _h(field.grid, axis), axis))


def wide_second(field: Field, axis: Axis) -> Field:
    return field.with_values(wide_second_values(field.values, _h(field.grid, axis), axis))
