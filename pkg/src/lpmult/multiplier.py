"""Discrete Fourier multiplier operators on the torus grid."""

from __future__ import annotations

import numpy as np

from .exponents import ExponentConfig
from .grid import GridFunction, TorusGrid, coefficients, from_coefficients, lp_norm
from .symbols import MultiplierSymbol

__all__ = ["apply_discrete_multiplier", "operator_ratio", "l2_operator_norm"]


def apply_discrete_multiplier(f: GridFunction, M: MultiplierSymbol) -> GridFunction:
    """Multiply every centered-lattice Fourier coefficient of f by M(k).

    Scalar and vector symbols act on scalar functions; matrix symbols act
    on C^m-valued functions.  Frequencies are taken in [-G/2, G/2)^d.
    """
    grid = f.grid
    if grid.d != M.d:
        raise ValueError(f"grid dimension {grid.d} != symbol dimension {M.d}")
    if M.shape in ("scalar", "vector") and f.m != 0:
        raise ValueError(f"{M.shape} symbols act on scalar functions, got m={f.m}")
    if M.shape == "matrix" and f.m != M.m:
        raise ValueError(f"matrix symbol needs C^{M.m}-valued input, got m={f.m}")

    axes = tuple(range(grid.d))
    c = coefficients(f.values, grid, axes)
    vals = M.evaluate(grid.frequency_mesh())
    if M.shape == "scalar":
        out_c = vals * c
    elif M.shape == "vector":
        out_c = vals * c[..., None]
    else:
        out_c = np.einsum("...ij,...j->...i", vals, c)
    return GridFunction(grid, from_coefficients(out_c, grid, axes))


def operator_ratio(f: GridFunction, M: MultiplierSymbol, exps: ExponentConfig) -> float:
    """||T_M f||_{p0} / ||f||_p on the grid."""
    den = lp_norm(f, exps.p)
    if den == 0.0:
        raise ZeroDivisionError("input function has zero Lp norm")
    return lp_norm(apply_discrete_multiplier(f, M), exps.p0) / den


def l2_operator_norm(M: MultiplierSymbol, G: int) -> float:
    """Exact L2 -> L2 norm: max pointwise operator norm over [-G/2, G/2)^d."""
    grid = TorusGrid(M.d, G)
    return float(np.max(M.pointwise_operator_norm(grid.frequency_mesh())))
