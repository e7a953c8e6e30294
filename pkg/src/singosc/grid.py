"""Uniform half-line grids and centered finite-difference stencils.

Derivatives are returned on the full grid with NaN in the ``order // 2``
points next to each edge, so composed operators shrink their valid region
automatically and norms only see points where every stencil was complete.
"""

from dataclasses import dataclass, field
import warnings

import numpy as np


class GridResolutionWarning(UserWarning):
    """The stencil error estimate exceeds the requested tolerance."""


_D1 = {
    4: np.array([1 / 12, -2 / 3, 0.0, 2 / 3, -1 / 12]),
    6: np.array([-1 / 60, 3 / 20, -3 / 4, 0.0, 3 / 4, -3 / 20, 1 / 60]),
    8: np.array([1 / 280, -4 / 105, 1 / 5, -4 / 5, 0.0, 4 / 5, -1 / 5, 4 / 105, -1 / 280]),
}
_D2 = {
    4: np.array([-1 / 12, 4 / 3, -5 / 2, 4 / 3, -1 / 12]),
    6: np.array([1 / 90, -3 / 20, 3 / 2, -49 / 18, 3 / 2, -3 / 20, 1 / 90]),
    8: np.array([-1 / 560, 8 / 315, -1 / 5, 8 / 5, -205 / 72, 8 / 5, -1 / 5, 8 / 315, -1 / 560]),
}


@dataclass(frozen=True)
class SpatialGrid:
    """Uniform grid on ``[x_min, x_max]`` with ``x_min > 0``."""

    x_min: float
    x_max: float
    n: int
    order: int = 8
    x: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.x_min > 0:
            raise ValueError("the grid lives on the half line: need x_min > 0")
        if not self.x_max > self.x_min:
            raise ValueError("need x_max > x_min")
        if self.order not in _D1:
            raise ValueError(f"stencil order must be one of {sorted(_D1)}")
        object.__setattr__(self, "x", np.linspace(self.x_min, self.x_max, int(self.n)))

    @classmethod
    def with_spacing(cls, x_min, x_max, h, order=8):
        n = int(round((x_max - x_min) / h)) + 1
        return cls(x_min, x_min + (n - 1) * h, n, order)

    @property
    def h(self):
        return (self.x_max - self.x_min) / (self.n - 1)

    @property
    def halfwidth(self):
        return self.order // 2


def _apply_stencil(f, coef, scale):
    f = np.asarray(f)
    m = len(coef) // 2
    out = np.full(f.shape, np.nan, dtype=np.result_type(f, float))
    acc = np.zeros(f.shape[0] - 2 * m, dtype=out.dtype)
    for k, ck in enumerate(coef):
        if ck != 0.0:
            acc = acc + ck * f[k : f.shape[0] - 2 * m + k]
    out[m : f.shape[0] - m] = acc / scale
    return out


def d1(f, grid, order=None):
    order = order or grid.order
    return _apply_stencil(f, _D1[order], grid.h)


def d2(f, grid, order=None):
    order = order or grid.order
    return _apply_stencil(f, _D2[order], grid.h**2)


def check_resolution(f, grid, tol=1e-6, stacklevel=3):
    """Warn when the low- and high-order second derivatives disagree.

    Returns the relative discrepancy between the order-4 and the grid-order
    stencils, which bounds the lower-order truncation error.
    """
    hi = d2(f, grid)
    lo = d2(f, grid, order=4)
    mask = np.isfinite(hi) & np.isfinite(lo)
    scale = np.sqrt(np.sum(np.abs(hi[mask]) ** 2)) or 1.0
    est = float(np.sqrt(np.sum(np.abs(hi[mask] - lo[mask]) ** 2)) / scale)
    if est > tol:
        warnings.warn(
            f"grid spacing {grid.h:.3g} too coarse: stencil error estimate {est:.2e} > {tol:.1e}",
            GridResolutionWarning,
            stacklevel=stacklevel,
        )
    return est


def grid_norm(f, grid):
    """Discrete L2 norm over the finite entries of ``f``."""
    f = np.asarray(f)
    mask = np.isfinite(f)
    return float(np.sqrt(np.sum(np.abs(f[mask]) ** 2) * grid.h))


def grid_inner(f, h, grid):
    """Discrete ``<f|h>`` over points where both are finite."""
    f = np.asarray(f)
    h = np.asarray(h)
    mask = np.isfinite(f) & np.isfinite(h)
    return complex(np.sum(np.conj(f[mask]) * h[mask]) * grid.h)


def rayleigh_quotient(f, op_f, grid):
    """``Re <f|O f> / <f|f>`` with both sums over the region where ``O f`` is valid."""
    f = np.asarray(f)
    f_valid = np.where(np.isfinite(op_f), f, np.nan)
    return grid_inner(f_valid, op_f, grid).real / grid_inner(f_valid, f_valid, grid).real


def relative_residual(lhs, rhs, ref, grid):
    """``||lhs - rhs|| / ||ref||`` restricted to the common valid region."""
    diff = np.asarray(lhs) - np.asarray(rhs)
    mask = np.isfinite(diff)
    ref = np.where(mask, ref, np.nan)
    return grid_norm(np.where(mask, diff, np.nan), grid) / grid_norm(ref, grid)
