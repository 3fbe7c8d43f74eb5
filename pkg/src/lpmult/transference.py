"""Gaussian-damped transference pairing and multiplier deviation sweeps.

The pairing uses the unit-period torus and characters exp(2 pi i (j, x)),
separate from the [-pi, pi) convention used elsewhere; the two conventions
never mix inside one computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .symbols import MultiplierSymbol

__all__ = ["GaussianPairingConfig", "gaussian_damped_pairing", "multiplier_deviation"]

# exp(-x) < 1e-12 for x > 27.7; the auto radius targets 1e-14.
_TAIL_LOG = math.log(1e12)
_AUTO_TAIL_LOG = math.log(1e14)


@dataclass(frozen=True)
class GaussianPairingConfig:
    """Inputs for the damped pairing of exp(2pi i (j,x)) against exp(2pi i (k,x)) b."""

    d: int
    j: tuple
    k: tuple
    eps: float
    b: tuple = (1.0,)
    p0: float = 2.0
    R: float | None = None   # quadrature truncation radius (auto if None)
    h: float | None = None   # quadrature step (auto if None)

    def __post_init__(self):
        j = tuple(float(v) for v in self.j)
        k = tuple(float(v) for v in self.k)
        if len(j) != self.d or len(k) != self.d:
            raise ValueError(f"frequencies must have length d={self.d}")
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "b", tuple(complex(v) for v in self.b))
        if self.eps <= 0:
            raise ValueError("eps must be positive")
        if self.p0 <= 1:
            raise ValueError("p0 must exceed 1")
        if self.R is not None and self.h is not None:
            ratio = self.R / self.h
            if abs(ratio - round(ratio)) > 1e-9:
                raise ValueError("R must be an integral multiple of h")

    @property
    def q0(self) -> float:
        return self.p0 / (self.p0 - 1.0)


def gaussian_damped_pairing(cfg: GaussianPairingConfig, M: MultiplierSymbol) -> complex:
    """eps^{d/2} integral of (T_M(P L_{eps/p0}), Q L_{eps/q0}) over R^d.

    P = exp(2 pi i (j, x)), Q = exp(2 pi i (k, x)) b, L_a(x) = exp(-pi a |x|^2).
    T_M acts through the closed-form Gaussian spectrum of P L_{eps/p0}, and
    the x-integral collapses in closed form, leaving a single trapezoidal
    frequency quadrature of (M(xi), b) against the Gaussian window

        (p0 q0 / eps)^{d/2} exp(-pi (p0 |xi - j|^2 + q0 |xi - k|^2) / eps),

    whose total mass is exp(-pi |j - k|^2 / eps) since 1/p0 + 1/q0 = 1.
    As eps -> 0 the value converges to (M(j), b) delta_{jk}.
    """
    if M.d != cfg.d:
        raise ValueError(f"symbol dimension {M.d} != config dimension {cfg.d}")
    if M.shape == "matrix":
        raise ValueError("pairing is defined for scalar and vector symbols")
    b = np.asarray(cfg.b, dtype=complex)
    if M.shape == "vector" and b.shape != (M.m,):
        raise ValueError(f"b must have length {M.m} for this symbol")
    if M.shape == "scalar" and b.shape != (1,):
        raise ValueError("scalar pairing takes a single component b")

    p0, q0, eps, d = cfg.p0, cfg.q0, cfg.eps, cfg.d
    s = p0 + q0
    j = np.asarray(cfg.j)
    k = np.asarray(cfg.k)
    center = (p0 * j + q0 * k) / s

    R = cfg.R if cfg.R is not None else math.sqrt(_AUTO_TAIL_LOG * eps / (math.pi * s))
    h = cfg.h if cfg.h is not None else R / 32.0
    if math.pi * s * R * R / eps < _TAIL_LOG:
        raise ValueError(
            f"truncation radius {R} leaves Gaussian tail above 1e-12 at eps={eps}")

    n = int(round(R / h))
    axis = center[:, None] + h * np.arange(-n, n + 1)[None, :]
    grids = np.meshgrid(*axis, indexing="ij")
    xi = np.stack(grids, axis=-1)

    diff_j = xi - j
    diff_k = xi - k
    weight = np.exp(-math.pi * (p0 * np.sum(diff_j**2, axis=-1)
                                + q0 * np.sum(diff_k**2, axis=-1)) / eps)

    vals = M.evaluate(xi)
    if M.shape == "scalar":
        integrand = vals * np.conj(b[0]) * weight
    else:
        integrand = np.einsum("...i,i->...", vals, np.conj(b)) * weight

    # Trapezoid weights: 1/2 at the box faces.
    for ax in range(d):
        w = np.ones(integrand.shape[ax])
        w[0] = w[-1] = 0.5
        shape = [1] * d
        shape[ax] = -1
        integrand = integrand * w.reshape(shape)

    quad = np.sum(integrand) * h**d
    return complex((p0 * q0 / eps) ** (d / 2.0) * quad)


def multiplier_deviation(M: MultiplierSymbol, support, N: int) -> float:
    """max over (l_1, ..., l_k) of ||M(l_k + l_{k-1}/N + ... + l_1/N^{k-1}) - M(l_k)||.

    Homogeneity turns the scaled argument M(N l_1 + ... + N^k l_k) into the
    perturbed direction above, so this measures how far the lifted symbol
    sits from its blockwise limit.  Every tuple must end in l_k != 0.
    """
    if N < 1:
        raise ValueError("N must be positive")
    worst = 0.0
    for tup in support:
        ls = [np.asarray(l, dtype=float) for l in tup]
        if any(l.shape != (M.d,) for l in ls):
            raise ValueError(f"support frequencies must have length {M.d}")
        if not np.any(ls[-1]):
            raise ValueError("the last frequency in each tuple must be nonzero")
        xi = sum(l / N ** (len(ls) - 1 - i) for i, l in enumerate(ls))
        a = M.evaluate(xi)
        bval = M.evaluate(ls[-1])
        diff = a - bval
        if M.shape == "scalar":
            dev = abs(complex(diff))
        elif M.shape == "vector":
            dev = float(np.linalg.norm(diff))
        else:
            dev = float(np.linalg.norm(diff, ord=2))
        worst = max(worst, dev)
    return worst
