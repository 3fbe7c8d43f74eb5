"""Degree-zero homogeneous multiplier symbols evaluated on frequency lattices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = ["MultiplierSymbol", "homogeneity_defect"]

_SHAPES = ("scalar", "vector", "matrix")


@dataclass(frozen=True)
class MultiplierSymbol:
    """A symbol xi -> scalar / C^m vector / m x m matrix on R^d minus the origin.

    ``evaluator`` must accept an array of shape (..., d) of nonzero
    frequencies and return values of shape (...), (..., m) or (..., m, m)
    according to ``shape``.  Homogeneous symbols take the zero value of
    their shape at xi = 0; symbols declared ``total`` (e.g. constants)
    are evaluated there as well.
    """

    d: int
    shape: str
    evaluator: Callable[[np.ndarray], np.ndarray]
    m: int = 1
    even: bool = False
    sup_bound: float = 1.0
    total: bool = False
    name: str = "symbol"

    def __post_init__(self):
        if self.shape not in _SHAPES:
            raise ValueError(f"shape must be one of {_SHAPES}, got {self.shape!r}")
        if self.d < 1 or self.m < 1:
            raise ValueError("d and m must be positive")

    def _value_shape(self) -> tuple[int, ...]:
        if self.shape == "scalar":
            return ()
        if self.shape == "vector":
            return (self.m,)
        return (self.m, self.m)

    def evaluate(self, xi) -> np.ndarray:
        """Evaluate at frequencies of shape (..., d); zeros map to zero unless total."""
        xi = np.asarray(xi, dtype=float)
        if xi.shape[-1:] != (self.d,):
            raise ValueError(f"frequency arrays must end in a length-{self.d} axis")
        if self.total:
            return np.asarray(self.evaluator(xi), dtype=complex)
        zero = np.all(xi == 0.0, axis=-1)
        # Dodge the singularity at the origin, then mask the result to zero.
        safe = np.where(zero[..., None], 1.0, xi)
        out = np.asarray(self.evaluator(safe), dtype=complex)
        extra = out.ndim - zero.ndim
        mask = zero.reshape(zero.shape + (1,) * extra)
        return np.where(mask, 0.0, out)

    def pointwise_operator_norm(self, xi) -> np.ndarray:
        """|value|, Euclidean length, or largest singular value, per shape."""
        vals = self.evaluate(xi)
        if self.shape == "scalar":
            return np.abs(vals)
        if self.shape == "vector":
            return np.linalg.norm(vals, axis=-1)
        return np.linalg.norm(vals, ord=2, axis=(-2, -1))


def homogeneity_defect(sym: MultiplierSymbol, rng: np.random.Generator,
                       samples: int = 64) -> float:
    """Max deviation |sym(lam*xi) - sym(xi)| over random directions and scales."""
    xi = rng.standard_normal((samples, sym.d))
    lam = rng.uniform(0.1, 10.0, size=(samples, 1))
    a = sym.evaluate(xi)
    b = sym.evaluate(lam * xi)
    return float(np.max(np.abs(a - b)))
