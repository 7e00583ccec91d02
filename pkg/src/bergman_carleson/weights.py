"""Operator weights on the disc and their square-average diagnostics.

A weight W assigns a positive invertible matrix to each point of the
disc.  The families here (identity, scalar power times a constant PSD
matrix, diagonal powers conjugated by a unitary, block composites) all
have closed-form inverses, which the two-average checker needs.

``b2_constant`` evaluates, over a grid of boundary squares
S(h, theta) = {1-h < r < 1, |t-theta| < pi h}, the norm of

    [W]^{1/2} [W^{-1}] [W]^{1/2}

where [.] is the dA_eta average over S.  This symmetrized product form
is the square of the cross-term norm for commuting averages and is
exactly 1 for the identity weight; it is the quantity whose blow-up as
a power exponent approaches 1+eta the checker is meant to exhibit.

Averages are always formed as a ratio of two integrals computed by the
same panel engine, so constant weights average to themselves exactly.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .disc_geometry import HyperbolicDisc, TWO_PI
from .errors import DegenerateWeightError
from .linalg import PSD_FLOOR, hermitize, op_norm, psd_sqrt
from .quadrature import (
    DEFAULT_BUDGET,
    DEFAULT_TOL,
    MatrixField,
    MeasureSpec,
    PLAIN,
    identity_field,
    integrate,
    integrate_annulus,
    integrate_polar_rect,
    radial_integral,
    radial_power_field,
)


def _encode_matrix(m: np.ndarray) -> list:
    """JSON-safe encoding: nested [real, imag] pairs."""
    return [[[float(v.real), float(v.imag)] for v in row] for row in np.asarray(m, dtype=complex)]


def _decode_matrix(raw) -> np.ndarray:
    arr = np.asarray(raw, dtype=float)
    if arr.ndim == 3:
        return arr[..., 0] + 1j * arr[..., 1]
    return np.asarray(raw, dtype=complex)


def _require_invertible_constant(matrix: np.ndarray, label: str) -> np.ndarray:
    m = hermitize(np.asarray(matrix, dtype=complex))
    vals = np.linalg.eigvalsh(m)
    if vals[0] <= 0.0:
        raise DegenerateWeightError(f"{label} must be positive definite")
    return m


@dataclass(frozen=True)
class IdentityWeight:
    dim: int

    def field(self) -> MatrixField:
        return identity_field(self.dim)

    def inverse(self) -> "IdentityWeight":
        return self

    def b2_membership(self, eta: float) -> bool:
        return True

    @property
    def descriptor(self) -> dict:
        return {"kind": "identity", "dim": self.dim}


class ScalarPowerWeight:
    """W(z) = (1-|z|)**exponent times a constant positive matrix."""

    def __init__(self, exponent: float, matrix: np.ndarray | None = None, dim: int = 1):
        self.exponent = float(exponent)
        if matrix is None:
            matrix = np.eye(dim)
        self.matrix = _require_invertible_constant(matrix, "scalar power factor")
        self.dim = self.matrix.shape[0]

    def field(self) -> MatrixField:
        return radial_power_field(self.exponent, self.matrix)

    def inverse(self) -> "ScalarPowerWeight":
        return ScalarPowerWeight(-self.exponent, np.linalg.inv(self.matrix))

    def b2_membership(self, eta: float) -> bool:
        return abs(self.exponent) < 1.0 + eta

    @property
    def descriptor(self) -> dict:
        desc = {
            "kind": "scalar_power",
            "exponent": self.exponent,
            "dim": self.dim,
        }
        if not np.array_equal(self.matrix, np.eye(self.dim)):
            desc["matrix"] = _encode_matrix(self.matrix)
        return desc


class DiagonalPowerWeight:
    """W = U diag((1-|z|)**a_i) U* for a constant unitary U."""

    def __init__(self, exponents: Sequence[float], unitary: np.ndarray | None = None):
        self.exponents = tuple(float(a) for a in exponents)
        if not self.exponents:
            raise ValueError("need at least one exponent")
        self.dim = len(self.exponents)
        self.unitary = None
        if unitary is not None:
            u = np.asarray(unitary, dtype=complex)
            if u.shape != (self.dim, self.dim):
                raise ValueError("unitary shape does not match exponent count")
            if not np.allclose(u @ u.conj().T, np.eye(self.dim), atol=1e-10):
                raise ValueError("conjugating matrix is not unitary")
            self.unitary = u

    def field(self) -> MatrixField:
        exps = np.asarray(self.exponents)
        u = self.unitary

        def evaluator(z: np.ndarray) -> np.ndarray:
            profs = (1.0 - np.abs(z))[:, None] ** exps[None, :]
            if u is None:
                return profs[:, :, None] * np.eye(self.dim)
            return np.einsum("ab,mb,cb->mac", u, profs, u.conj())

        def band(r0, r1, spec, tol, budget):
            # per-component exact power integrals, then conjugate back
            coeffs = np.array(
                [
                    (spec.eta + 1.0)
                    * radial_integral(
                        lambda r: 2.0 * r, r0, r1, q=spec.eta + a,
                        tol=tol, budget=budget,
                    )
                    for a in self.exponents
                ],
                dtype=complex,
            )
            diag = np.diag(coeffs)
            if u is None:
                return diag
            return u @ diag @ u.conj().T

        return MatrixField(
            dim=self.dim,
            evaluator=evaluator,
            singular_exponent=min(0.0, min(self.exponents)),
            radial=True,
            radial_band=band,
        )

    def inverse(self) -> "DiagonalPowerWeight":
        return DiagonalPowerWeight(
            tuple(-a for a in self.exponents), self.unitary
        )

    def b2_membership(self, eta: float) -> bool:
        return all(abs(a) < 1.0 + eta for a in self.exponents)

    @property
    def descriptor(self) -> dict:
        desc = {"kind": "diagonal_power", "exponents": list(self.exponents)}
        if self.unitary is not None:
            desc["unitary"] = _encode_matrix(self.unitary)
        return desc


class BlockWeight:
    """Direct sum of weights; inherits radial structure blockwise."""

    def __init__(self, blocks: Sequence):
        if not blocks:
            raise ValueError("need at least one block")
        self.blocks = tuple(blocks)
        self.dim = sum(b.dim for b in self.blocks)

    def field(self) -> MatrixField:
        fields = [b.field() for b in self.blocks]
        offsets = np.cumsum([0] + [f.dim for f in fields])
        dim = self.dim

        def evaluator(z: np.ndarray) -> np.ndarray:
            out = np.zeros((z.shape[0], dim, dim), dtype=complex)
            for f, lo, hi in zip(fields, offsets[:-1], offsets[1:]):
                out[:, lo:hi, lo:hi] = f.evaluator(z)
            return out

        band = None
        if all(f.radial_band is not None for f in fields):

            def band(r0, r1, spec, tol, budget):
                out = np.zeros((dim, dim), dtype=complex)
                for f, lo, hi in zip(fields, offsets[:-1], offsets[1:]):
                    out[lo:hi, lo:hi] = f.radial_band(r0, r1, spec, tol, budget)
                return out

        return MatrixField(
            dim=dim,
            evaluator=evaluator,
            singular_exponent=min(f.singular_exponent for f in fields),
            radial=all(f.radial for f in fields),
            radial_band=band,
        )

    def inverse(self) -> "BlockWeight":
        return BlockWeight(tuple(b.inverse() for b in self.blocks))

    def b2_membership(self, eta: float) -> bool:
        return all(b.b2_membership(eta) for b in self.blocks)

    @property
    def descriptor(self) -> dict:
        return {"kind": "block", "blocks": [b.descriptor for b in self.blocks]}


def weight_from_descriptor(desc: Mapping):
    kind = desc.get("kind")
    if kind == "identity":
        return IdentityWeight(int(desc["dim"]))
    if kind == "scalar_power":
        matrix = None
        if "matrix" in desc:
            matrix = _decode_matrix(desc["matrix"])
        return ScalarPowerWeight(
            float(desc["exponent"]), matrix=matrix, dim=int(desc.get("dim", 1))
        )
    if kind == "diagonal_power":
        unitary = None
        if "unitary" in desc:
            unitary = _decode_matrix(desc["unitary"])
        elif "seed" in desc:
            from .measures import random_unitary

            unitary = random_unitary(len(desc["exponents"]), int(desc["seed"]))
        return DiagonalPowerWeight(
            [float(a) for a in desc["exponents"]], unitary=unitary
        )
    if kind == "block":
        return BlockWeight([weight_from_descriptor(b) for b in desc["blocks"]])
    raise ValueError(f"unknown weight descriptor kind: {kind!r}")


# ---------------------------------------------------------------------------
# averages


def _require_nondegenerate(avg: np.ndarray, label: str) -> np.ndarray:
    vals = np.linalg.eigvalsh(hermitize(avg))
    if vals[-1] <= 0.0 or vals[0] < PSD_FLOOR * vals[-1]:
        raise DegenerateWeightError(
            f"{label} is numerically singular "
            f"(eigenvalues {vals[0]:.6e} to {vals[-1]:.6e})"
        )
    return avg


def averaged_weight(
    weight,
    z: complex,
    r: float,
    tol: float = DEFAULT_TOL,
    budget: int = DEFAULT_BUDGET,
) -> np.ndarray:
    """Mean of W over the disc about z of radius r*(1-|z|), against dA.

    Numerator and denominator run through the same quadrature panels,
    so the average of a constant weight is that constant without
    roundoff; in particular the identity averages to the identity
    exactly.
    """
    region = HyperbolicDisc(z, r)
    num = integrate(weight.field(), region, PLAIN, tol=tol, budget=budget)
    den = integrate(identity_field(weight.dim), region, PLAIN, tol=tol, budget=budget)
    avg = num / den[0, 0].real
    return _require_nondegenerate(avg, "averaged weight")


def default_h_grid() -> tuple[float, ...]:
    return tuple(2.0 ** -j for j in range(11)) + (0.9, 0.75)


def _theta_count(h: float) -> int:
    return 2 ** max(0, round(math.log2(1.0 / h)))


def _square_average(field_w, field_inv, dim, h, theta, spec, tol, budget, radial):
    """Averages of W and W^{-1} over S(h, theta); shared denominators."""
    if radial:
        num_w = integrate_annulus(field_w, 1.0 - h, 1.0, spec, tol, budget)
        num_inv = integrate_annulus(field_inv, 1.0 - h, 1.0, spec, tol, budget)
        den = integrate_annulus(identity_field(dim), 1.0 - h, 1.0, spec, tol, budget)
    else:
        lo, hi = theta - math.pi * h, theta + math.pi * h
        num_w = integrate_polar_rect(field_w, 1.0 - h, 1.0, lo, hi, spec, tol, budget)
        num_inv = integrate_polar_rect(
            field_inv, 1.0 - h, 1.0, lo, hi, spec, tol, budget
        )
        den = integrate_polar_rect(
            identity_field(dim), 1.0 - h, 1.0, lo, hi, spec, tol, budget
        )
    mass = den[0, 0].real
    return num_w / mass, num_inv / mass


def b2_constant(
    weight,
    eta: float = 0.0,
    h_grid: Sequence[float] | None = None,
    theta_grid: Sequence[float] | None = None,
    tol: float = DEFAULT_TOL,
    budget: int = DEFAULT_BUDGET,
    workers: int | None = None,
) -> float:
    """Grid supremum of the symmetrized two-average norm.

    For each square the value is ||A^{1/2} B A^{1/2}|| with A, B the
    dA_eta averages of W and its closed-form inverse.  The result is a
    lower bound for the supremum over all squares; it is >= 1 always
    (the two averages multiply to at least the identity in norm) and
    exactly 1 for the identity weight.

    ``theta_grid`` overrides the per-h automatic grids (2**j equispaced
    angles for h = 2**-j).  Radial weights are angle-independent and are
    evaluated once per h.  Ties in the max go to the earliest grid
    point, so results do not depend on ``workers``.
    """
    spec = MeasureSpec(eta)
    hs = tuple(h_grid) if h_grid is not None else default_h_grid()
    if not hs:
        raise ValueError("h grid must be nonempty")
    for h in hs:
        if not 0.0 < h <= 1.0:
            raise ValueError(f"square height {h} outside (0, 1]")
    field_w = weight.field()
    field_inv = weight.inverse().field()
    radial = field_w.radial and field_inv.radial

    jobs: list[tuple[float, float]] = []
    for h in hs:
        if theta_grid is not None:
            thetas = tuple(float(t) for t in theta_grid)
        else:
            count = 1 if radial else _theta_count(h)
            thetas = tuple(TWO_PI * i / count for i in range(count))
        jobs.extend((h, t) for t in thetas)

    def evaluate(job: tuple[float, float]) -> float:
        h, theta = job
        avg_w, avg_inv = _square_average(
            field_w, field_inv, weight.dim, h, theta, spec, tol, budget, radial
        )
        _require_nondegenerate(avg_w, f"average of W over S({h:g}, {theta:g})")
        _require_nondegenerate(avg_inv, f"average of W^-1 over S({h:g}, {theta:g})")
        root = psd_sqrt(avg_w)
        return op_norm(root @ avg_inv @ root)

    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(evaluate, jobs))
    else:
        values = [evaluate(job) for job in jobs]

    best = values[0]
    for v in values[1:]:
        if v > best:
            best = v
    return best
