"""Integration operators of Volterra type and their boundedness test.

The criterion never touches the operator itself: it conjugates the
symbol derivative by the square root of the locally averaged weight
and watches the norm against the distance to the boundary.  The
companion integral form replaces the pointwise norm by a disc average;
mean-value subharmonicity makes the pointwise form controlled by the
integral one with constant 1/ratio**2, and that inequality is checked,
not assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .analytic import GridReport, OperatorPoly, default_lambda_grid
from .disc_geometry import HyperbolicDisc
from .linalg import op_norm, psd_inv_sqrt, psd_sqrt, sandwich
from .quadrature import DEFAULT_BUDGET, DEFAULT_TOL, PLAIN, integrate_values
from .weights import averaged_weight


class LogSymbol:
    """log(1/(1-z)) times the identity: the standard unbounded symbol
    with bounded criterion value."""

    def __init__(self, dim: int = 1):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dimension = dim

    def __call__(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        return (-np.log(1.0 - z))[:, None, None] * np.eye(self.dimension)

    def derivative_at(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        return (1.0 / (1.0 - z))[:, None, None] * np.eye(self.dimension)


def _derivative_fn(symbol) -> tuple[int, Callable[[np.ndarray], np.ndarray]]:
    if hasattr(symbol, "derivative_at"):
        return symbol.dimension, symbol.derivative_at
    if hasattr(symbol, "derivative"):
        d = symbol.derivative()
        return symbol.dimension, lambda z: d(np.asarray(z, dtype=complex))
    raise TypeError(f"cannot differentiate {type(symbol).__name__}")


def volterra_condition(
    symbol,
    weight,
    eta: float = 0.0,
    ratio: float = 0.5,
    lambda_grid: Sequence[complex] | None = None,
    tol: float = DEFAULT_TOL,
    budget: int = DEFAULT_BUDGET,
) -> GridReport:
    """Pointwise criterion: gap times the averaged-weight conjugated
    norm of the symbol derivative, sup over the grid.

    eta tags the ambient space in reports; the weight average itself is
    taken against plain area, per the definition of the local mean.
    """
    del eta
    if lambda_grid is None:
        lambda_grid = default_lambda_grid(ratio)
    if not lambda_grid:
        raise ValueError("lambda grid must be nonempty")
    dim, deriv = _derivative_fn(symbol)
    if getattr(weight, "dim", dim) != dim:
        raise ValueError("weight and symbol dimensions differ")
    values = []
    best = (-math.inf, None)
    for lam in lambda_grid:
        avg = averaged_weight(weight, lam, ratio, tol=tol, budget=budget)
        conjugated = psd_sqrt(avg) @ deriv(np.array([lam]))[0] @ psd_inv_sqrt(avg)
        value = (1.0 - abs(lam)) * op_norm(conjugated)
        values.append((lam, value))
        if value > best[0]:
            best = (value, lam)
    return GridReport(sup_value=best[0], argmax_point=best[1], values=tuple(values))


def volterra_integral_condition(
    symbol,
    weight,
    ratio: float = 0.5,
    lambda_grid: Sequence[complex] | None = None,
    tol: float = DEFAULT_TOL,
    budget: int = DEFAULT_BUDGET,
) -> GridReport:
    """Integral form: disc average of the conjugated symbol derivative
    in the square mean, sup over the grid."""
    if lambda_grid is None:
        lambda_grid = default_lambda_grid(ratio)
    if not lambda_grid:
        raise ValueError("lambda grid must be nonempty")
    dim, deriv = _derivative_fn(symbol)
    values = []
    best = (-math.inf, None)
    for lam in lambda_grid:
        disc = HyperbolicDisc(center=lam, ratio=ratio)
        avg = averaged_weight(weight, lam, ratio, tol=tol, budget=budget)

        def fn(z, avg=avg):
            g = deriv(z)
            return np.einsum("mji,jk,mkl->mil", np.conj(g), avg, g)

        inner = integrate_values(
            fn, (dim, dim), disc, PLAIN, tol=tol, budget=budget
        )
        inner = 0.5 * (inner + inner.conj().T)
        value = op_norm(sandwich(psd_inv_sqrt(avg), inner))
        values.append((lam, value))
        if value > best[0]:
            best = (value, lam)
    return GridReport(sup_value=best[0], argmax_point=best[1], values=tuple(values))


@dataclass(frozen=True)
class ConsistencyReport:
    """Pointwise-vs-integral comparison on a common grid.

    ``max_ratio`` is the largest observed gap**2 * pointwise**2 over
    integral; subharmonicity caps it by ``theoretical_bound`` =
    1/ratio**2.
    """

    pointwise: GridReport
    integral: GridReport
    max_ratio: float
    theoretical_bound: float
    ratio_parameter: float

    @property
    def satisfied(self) -> bool:
        return self.max_ratio <= self.theoretical_bound * (1.0 + 1e-9)


def volterra_consistency(
    symbol,
    weight,
    ratio: float = 0.5,
    lambda_grid: Sequence[complex] | None = None,
    tol: float = DEFAULT_TOL,
    budget: int = DEFAULT_BUDGET,
) -> ConsistencyReport:
    if lambda_grid is None:
        lambda_grid = default_lambda_grid(ratio)
    pointwise = volterra_condition(
        symbol, weight, ratio=ratio, lambda_grid=lambda_grid, tol=tol, budget=budget
    )
    integral = volterra_integral_condition(
        symbol, weight, ratio=ratio, lambda_grid=lambda_grid, tol=tol, budget=budget
    )
    worst = 0.0
    for (lam, s), (_, i) in zip(pointwise.values, integral.values):
        gap = 1.0 - abs(lam)
        if i == 0.0:
            if s != 0.0:
                raise ArithmeticError("pointwise value without integral mass")
            continue
        worst = max(worst, gap * gap * s * s / i)
    return ConsistencyReport(
        pointwise=pointwise,
        integral=integral,
        max_ratio=worst,
        theoretical_bound=1.0 / (ratio * ratio),
        ratio_parameter=ratio,
    )


def apply_volterra(symbol, f, z: complex, steps: int = 32) -> np.ndarray:
    """Volterra image at one point: the symbol derivative against the
    function along the radial segment from the origin.

    Gauss quadrature with ``steps`` nodes; exact up to roundoff when
    the integrand is a polynomial of degree below 2*steps.
    """
    if steps < 8:
        raise ValueError("need at least 8 quadrature nodes")
    if abs(z) >= 1.0:
        raise ValueError("evaluation point must lie inside the open disc")
    _, deriv = _derivative_fn(symbol)
    nodes, weights = np.polynomial.legendre.leggauss(steps)
    t = 0.5 * (nodes + 1.0)
    zeta = t * z
    g = deriv(zeta)
    fv = np.atleast_2d(np.asarray(f(zeta)))
    integrand = np.einsum("mij,mj->mi", g, fv)
    return 0.5 * z * np.einsum("m,mi->i", weights, integrand)
