"""Adaptive quadrature on the unit disc in polar coordinates.

Integrals are taken against the normalized area measure dA (total mass
one) or its weighted variant dA_eta = (eta+1)*(1-|z|)**eta dA.  The
scheme is a tensor product of Gauss-Legendre nodes on polar rectangles.
Initial panels are aligned with the boundary of the requested region, a
coarse/fine estimate pair gives every panel an error indicator, and the
panel with the worst indicator is split until the summed indicators drop
below ``tol * (1 + |result|)`` or the evaluation budget runs out, in
which case :class:`ToleranceNotReached` carries the best estimate out.

Panels that touch |z| = 1 while the integrand carries a radial power
(1-|z|)**q with q != 0 are integrated in the substituted variable u
with 1-r = u**p, where the integer p is chosen so that the transplanted
power p*(1+q)-1 of u is a non-negative integer whenever q is rational
with a moderate denominator.  The radial factor then turns into a
polynomial and integrable singularities (q > -1) converge at the
smooth-panel rate instead of stalling the refinement loop.

Reductions are performed in a fixed panel order, so repeated calls with
identical inputs produce bit-identical results.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field as dataclass_field
from typing import Callable, Sequence

import numpy as np

from .disc_geometry import (
    CarlesonSquare,
    HyperbolicDisc,
    Region,
    TildeDisc,
    TopHalf,
    TWO_PI,
    WholeDisc,
)
from .errors import ToleranceNotReached

DEFAULT_TOL = 1e-8
#: Node evaluation budget per integrate call.
DEFAULT_BUDGET = 2_000_000
GAUSS_ORDER = 10
#: Points mapped closer to the boundary than this are clamped before the
#: field evaluator sees them; keeps substituted panels clear of 1-|z| == 0.
_BOUNDARY_CLAMP = 1e-15

_gauss_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gauss(order: int) -> tuple[np.ndarray, np.ndarray]:
    if order not in _gauss_cache:
        _gauss_cache[order] = np.polynomial.legendre.leggauss(order)
    return _gauss_cache[order]


def _panel_nodes(a: float, b: float, order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = _gauss(order)
    half = 0.5 * (b - a)
    return half * x + 0.5 * (a + b), half * w


@dataclass(frozen=True)
class MeasureSpec:
    """Reference measure dA_eta; eta = 0 is the plain normalized area."""

    eta: float = 0.0

    def __post_init__(self):
        if not self.eta > -1.0:
            raise ValueError(f"eta must exceed -1, got {self.eta}")

    @property
    def is_plain(self) -> bool:
        return self.eta == 0.0


PLAIN = MeasureSpec(0.0)


@dataclass(frozen=True)
class MatrixField:
    """Hermitian-matrix-valued function of a point of the disc.

    ``evaluator`` takes a complex array of shape (m,) and returns values
    of shape (m, dim, dim).  ``singular_exponent`` declares boundary
    behavior like (1-|z|)**s so quadrature can pick the substituted
    radial variable; ``radial`` marks fields depending on |z| alone,
    unlocking one-dimensional fast paths.  ``pure_radial_power`` is set
    by the library constructors when the field is exactly
    (1-|z|)**s * M for a constant matrix M, in which case several
    integrals reduce to power integrals handled without cancellation.
    """

    dim: int
    evaluator: Callable[[np.ndarray], np.ndarray]
    singular_exponent: float = 0.0
    radial: bool = False
    pure_radial_power: tuple[float, np.ndarray] | None = dataclass_field(
        default=None, compare=False
    )
    #: Optional exact band integrator (r0, r1, spec, tol, budget) -> matrix
    #: giving the full-annulus integral of the field against dA_eta.
    #: Structured fields attach one so boundary powers are applied
    #: analytically instead of through the cancellation-prone 1-|z|.
    radial_band: Callable | None = dataclass_field(default=None, compare=False)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        if self.singular_exponent <= -1.0:
            raise ValueError("singular exponent must exceed -1 to be integrable")


def _power_band(matrix: np.ndarray, exponent: float) -> Callable:
    """Exact annulus integrator for (1-|z|)**exponent * M against dA_eta."""

    def band(r0, r1, spec, tol, budget):
        scale = (spec.eta + 1.0) * radial_integral(
            lambda r: 2.0 * r, r0, r1, q=spec.eta + exponent, tol=tol, budget=budget
        )
        return scale * matrix

    return band


def constant_field(matrix: np.ndarray) -> MatrixField:
    """Field taking a single constant Hermitian value."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("constant field needs a square matrix")

    def evaluator(z: np.ndarray) -> np.ndarray:
        return np.broadcast_to(m, (z.shape[0],) + m.shape).copy()

    return MatrixField(
        dim=m.shape[0],
        evaluator=evaluator,
        radial=True,
        pure_radial_power=(0.0, m),
        radial_band=_power_band(m, 0.0),
    )


def identity_field(dim: int) -> MatrixField:
    return constant_field(np.eye(dim))


def radial_power_field(exponent: float, matrix: np.ndarray) -> MatrixField:
    """Field (1-|z|)**exponent * M for a constant Hermitian M."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("radial power field needs a square matrix")
    s = float(exponent)

    def evaluator(z: np.ndarray) -> np.ndarray:
        prof = (1.0 - np.abs(z)) ** s
        return prof[:, None, None] * m

    return MatrixField(
        dim=m.shape[0],
        evaluator=evaluator,
        singular_exponent=min(s, 0.0),
        radial=True,
        pure_radial_power=(s, m),
        radial_band=_power_band(m, s),
    )


def radial_profile_field(
    profile: Callable[[np.ndarray], np.ndarray],
    matrix: np.ndarray,
    singular_exponent: float = 0.0,
) -> MatrixField:
    """Field profile(|z|) * M for a scalar radial profile."""
    m = np.asarray(matrix, dtype=complex)

    def evaluator(z: np.ndarray) -> np.ndarray:
        return np.asarray(profile(np.abs(z)))[:, None, None] * m

    return MatrixField(
        dim=m.shape[0],
        evaluator=evaluator,
        singular_exponent=singular_exponent,
        radial=True,
    )


# ---------------------------------------------------------------------------
# adaptive engine


class _PolarPatch:
    """Polar rectangle in plain (r, t) coordinates."""

    def __init__(self, fn, eta, shape):
        self.fn = fn
        self.eta = eta
        self.shape = shape

    def estimate(self, rect, order):
        r0, r1, t0, t1 = rect
        r, wr = _panel_nodes(r0, r1, order)
        t, wt = _panel_nodes(t0, t1, order)
        z = r[:, None] * np.exp(1j * t)[None, :]
        vals = np.asarray(self.fn(z.ravel())).reshape(r.size, t.size, *self.shape)
        radial_w = wr * (self.eta + 1.0) * (1.0 - r) ** self.eta * r / math.pi
        return np.einsum("i,j,ij...->...", radial_w, wt, vals), r.size * t.size


def _power_substitution(q: float) -> int:
    """Integer p for the boundary substitution 1-r = u**p.

    Preference: smallest p <= 128 making p*(1+q) a positive integer, so
    the transplanted radial power u**(p*(1+q)-1) is polynomial.  When no
    such p exists the power stays fractional but is kept non-negative,
    which leaves the integrand bounded.
    """
    power = 1.0 + q
    for p in range(1, 129):
        t = p * power
        if round(t) >= 1 and abs(t - round(t)) < 1e-9 * max(1.0, t):
            return p
    return max(1, math.ceil(1.0 / power))


class _SubstitutedPolarPatch:
    """Polar rectangle in (u, t) with 1 - r = u**p.

    The measure factor (eta+1)*(1-r)**eta dr becomes
    (eta+1)*p*u**(p*(1+eta)-1) du, exact powers of u.  A field carrying
    (1-|z|)**s contributes u**(p*s) through its evaluator, and p is
    chosen from the combined exponent q = eta + s so the product seen by
    the quadrature nodes is smooth.
    """

    def __init__(self, fn, eta, q, shape):
        self.fn = fn
        self.eta = eta
        self.p = _power_substitution(q)
        self.shape = shape

    def estimate(self, rect, order):
        u0, u1, t0, t1 = rect
        u, wu = _panel_nodes(u0, u1, order)
        t, wt = _panel_nodes(t0, t1, order)
        p = self.p
        r = np.minimum(1.0 - u ** p, 1.0 - _BOUNDARY_CLAMP)
        z = r[:, None] * np.exp(1j * t)[None, :]
        vals = np.asarray(self.fn(z.ravel())).reshape(r.size, t.size, *self.shape)
        radial_w = (
            wu
            * (self.eta + 1.0)
            * p
            * u ** (p * (1.0 + self.eta) - 1.0)
            * r
            / math.pi
        )
        return np.einsum("i,j,ij...->...", radial_w, wt, vals), r.size * t.size


class _LocalPolarPatch:
    """Polar rectangle (s, phi) about an interior center point.

    The measure weight is evaluated at the global modulus of each mapped
    node.  An optional indicator restricts integration to a sub-region;
    nodes outside are zeroed after the weight is computed on a clamped
    modulus, so no invalid powers are formed.
    """

    def __init__(self, fn, eta, center, shape, indicator=None):
        self.fn = fn
        self.eta = eta
        self.center = center
        self.shape = shape
        self.indicator = indicator

    def estimate(self, rect, order):
        s0, s1, p0, p1 = rect
        s, ws = _panel_nodes(s0, s1, order)
        phi, wp = _panel_nodes(p0, p1, order)
        z = self.center + s[:, None] * np.exp(1j * phi)[None, :]
        az = np.abs(z)
        safe = np.minimum(az, 1.0 - _BOUNDARY_CLAMP)
        weight = np.outer(ws * s, wp) / math.pi
        weight = weight * (self.eta + 1.0) * (1.0 - safe) ** self.eta
        if self.indicator is not None:
            weight = weight * self.indicator(z, az)
        # Nodes at |z| >= 1 carry zero weight (indicator regions only);
        # pull them just inside so the evaluator never sees bad points.
        pulled = z * np.where(
            az >= 1.0, (1.0 - _BOUNDARY_CLAMP) / np.maximum(az, 1.0), 1.0
        )
        vals = np.asarray(self.fn(pulled.ravel())).reshape(s.size, phi.size, *self.shape)
        return np.einsum("ij,ij...->...", weight, vals), s.size * phi.size


def _value_norm(v) -> float:
    return float(np.linalg.norm(np.asarray(v).ravel()))


def _split(rect):
    x0, x1, y0, y1 = rect
    xm = 0.5 * (x0 + x1)
    ym = 0.5 * (y0 + y1)
    return (
        (x0, xm, y0, ym),
        (x0, xm, ym, y1),
        (xm, x1, y0, ym),
        (xm, x1, ym, y1),
    )


def _adapt(entries, tol, budget, order):
    """Greedy worst-panel refinement over (patch, rect) seed panels.

    Returns (value, error_estimate, evaluations).  The reported value is
    re-summed over surviving panels in a fixed order for bit stability.
    """
    live = {}
    heap = []
    counter = 0
    evals = 0
    total = None
    err_sum = 0.0

    def measure(patch, rect):
        nonlocal evals
        coarse, n1 = patch.estimate(rect, order)
        fine = None
        for child in _split(rect):
            v, n2 = patch.estimate(child, order)
            fine = v if fine is None else fine + v
            n1 += n2
        evals += n1
        return fine, _value_norm(coarse - fine)

    for pid, (patch, rect) in enumerate(entries):
        fine, err = measure(patch, rect)
        live[counter] = (pid, rect, fine, err)
        heapq.heappush(heap, (-err, counter))
        total = fine if total is None else total + fine
        err_sum += err
        counter += 1

    while True:
        if err_sum <= tol * (1.0 + _value_norm(total)) or not heap:
            ordered = sorted(live.values(), key=lambda it: (it[0], it[1]))
            final = ordered[0][2]
            for item in ordered[1:]:
                final = final + item[2]
            return final, err_sum, evals
        neg_err, idx = heapq.heappop(heap)
        if idx not in live:
            continue
        if evals >= budget:
            raise ToleranceNotReached(
                f"error estimate {err_sum:.3e} above requested {tol:.3e} "
                f"after {evals} evaluations",
                value=total,
                achieved=err_sum,
                evaluations=evals,
            )
        pid, rect, fine, err = live.pop(idx)
        total = total - fine
        err_sum -= err
        for child in _split(rect):
            cfine, cerr = measure(entries[pid][0], child)
            live[counter] = (pid, child, cfine, cerr)
            heapq.heappush(heap, (-cerr, counter))
            total = total + cfine
            err_sum += cerr
            counter += 1


def _seed_rects(x0, x1, xbreaks, y0, y1, ybreaks, max_y_span=0.5 * math.pi):
    xs = [x0] + sorted(b for b in xbreaks if x0 < b < x1) + [x1]
    ys = [y0] + sorted(b for b in ybreaks if y0 < b < y1) + [y1]
    refined = []
    for a, b in zip(ys[:-1], ys[1:]):
        pieces = max(1, math.ceil((b - a) / max_y_span))
        step = (b - a) / pieces
        refined.extend(a + i * step for i in range(pieces))
    refined.append(y1)
    ys = refined
    return [
        (xa, xb, ya, yb)
        for xa, xb in zip(xs[:-1], xs[1:])
        for ya, yb in zip(ys[:-1], ys[1:])
    ]


def _polar_rect_integrate(
    fn, shape, eta, singular_exponent, r0, r1, t0, t1, tol, budget,
    radial_breaks=(), angular_breaks=(), order=GAUSS_ORDER,
):
    q = eta + singular_exponent
    if q != 0.0 and r1 >= 1.0 - 1e-14:
        patch = _SubstitutedPolarPatch(fn, eta, q, shape)
        inv_p = 1.0 / patch.p
        x1 = (1.0 - r0) ** inv_p
        xbreaks = [(1.0 - rb) ** inv_p for rb in radial_breaks if r0 < rb < r1]
        rects = _seed_rects(0.0, x1, xbreaks, t0, t1, angular_breaks)
    else:
        patch = _PolarPatch(fn, eta, shape)
        rects = _seed_rects(r0, r1, radial_breaks, t0, t1, angular_breaks)
    entries = [(patch, r) for r in rects]
    return _adapt(entries, tol, budget, order)


def _local_polar_integrate(
    fn, shape, eta, center, rho, tol, budget, indicator=None,
    radial_seed_breaks=(), order=GAUSS_ORDER,
):
    patch = _LocalPolarPatch(fn, eta, center, shape, indicator=indicator)
    breaks = sorted(set([0.5 * rho, *radial_seed_breaks]))
    rects = _seed_rects(0.0, rho, breaks, 0.0, TWO_PI, ())
    entries = [(patch, r) for r in rects]
    return _adapt(entries, tol, budget, order)


# ---------------------------------------------------------------------------
# one-dimensional radial integrals


class _LinePatch:
    def __init__(self, fn, shape):
        self.fn = fn
        self.shape = shape

    def estimate(self, seg, order):
        a, b = seg
        x, w = _panel_nodes(a, b, order)
        vals = np.asarray(self.fn(x)).reshape(x.size, *self.shape)
        return np.einsum("i,i...->...", w, vals), x.size


def _adapt_line(fn, shape, a, b, tol, budget, order, breaks=()):
    patch = _LinePatch(fn, shape)
    pts = [a] + sorted(p for p in breaks if a < p < b) + [b]
    live = {}
    heap = []
    counter = 0
    evals = 0
    total = None
    err_sum = 0.0

    def measure(seg):
        nonlocal evals
        coarse, n1 = patch.estimate(seg, order)
        mid = 0.5 * (seg[0] + seg[1])
        left, n2 = patch.estimate((seg[0], mid), order)
        right, n3 = patch.estimate((mid, seg[1]), order)
        evals += n1 + n2 + n3
        fine = left + right
        return fine, _value_norm(coarse - fine)

    for seg in zip(pts[:-1], pts[1:]):
        fine, err = measure(seg)
        live[counter] = (seg, fine, err)
        heapq.heappush(heap, (-err, counter))
        total = fine if total is None else total + fine
        err_sum += err
        counter += 1

    while True:
        if err_sum <= tol * (1.0 + _value_norm(total)) or not heap:
            ordered = sorted(live.values(), key=lambda it: it[0])
            final = ordered[0][1]
            for item in ordered[1:]:
                final = final + item[1]
            return final, err_sum, evals
        neg_err, idx = heapq.heappop(heap)
        if idx not in live:
            continue
        if evals >= budget:
            raise ToleranceNotReached(
                f"radial error estimate {err_sum:.3e} above requested {tol:.3e}",
                value=total,
                achieved=err_sum,
                evaluations=evals,
            )
        seg, fine, err = live.pop(idx)
        total = total - fine
        err_sum -= err
        mid = 0.5 * (seg[0] + seg[1])
        for child in ((seg[0], mid), (mid, seg[1])):
            cfine, cerr = measure(child)
            live[counter] = (child, cfine, cerr)
            heapq.heappush(heap, (-cerr, counter))
            total = total + cfine
            err_sum += cerr
            counter += 1


def radial_integral(
    fn: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    q: float = 0.0,
    tol: float = DEFAULT_TOL,
    budget: int = DEFAULT_BUDGET,
):
    """Integral of fn(r) * (1-r)**q over [a, b] for smooth vectorized fn.

    The power factor is applied by the integrator itself in the
    substituted variable 1-r = u**p, where it becomes the polynomial
    p * u**(p*(1+q)-1): no (1-r)**q is ever formed near r = 1, so power
    weights integrate without cancellation.
    """
    if not q > -1.0:
        raise ValueError("q must exceed -1 for an integrable power")
    if not a < b <= 1.0:
        raise ValueError("need a < b <= 1")
    probe = np.asarray(fn(np.array([0.5 * (a + b)])))
    shape = probe.shape[1:]
    if q == 0.0:
        value, _, _ = _adapt_line(fn, shape, a, b, tol, budget, GAUSS_ORDER)
        return value if shape else complex(value).real

    p = _power_substitution(q)
    alpha = p * (1.0 + q) - 1.0
    ua = (1.0 - a) ** (1.0 / p)
    ub = (1.0 - b) ** (1.0 / p)

    def integrand(u: np.ndarray) -> np.ndarray:
        vals = np.asarray(fn(1.0 - u ** p))
        w = p * u ** alpha
        return vals * w.reshape((-1,) + (1,) * (vals.ndim - 1))

    value, _, _ = _adapt_line(integrand, shape, ub, ua, tol, budget, GAUSS_ORDER)
    return value if shape else complex(value).real


def _radial_field_integral(
    fn, shape, eta, singular_exponent, a, b, tol, budget, breaks=()
):
    """1-D path for radial fields: integral of fn(r) * w_eta(r) * 2r dr."""
    q = eta + singular_exponent
    if q != 0.0 and b >= 1.0 - 1e-14:
        p = _power_substitution(q)

        def integrand(u):
            r = np.minimum(1.0 - u ** p, 1.0 - _BOUNDARY_CLAMP)
            vals = np.asarray(fn(r.astype(complex)))
            w = (eta + 1.0) * p * u ** (p * (1.0 + eta) - 1.0) * 2.0 * r
            return vals * w.reshape((-1,) + (1,) * (vals.ndim - 1))

        ua = (1.0 - a) ** (1.0 / p)
        value, err, evals = _adapt_line(
            integrand, shape, 0.0, ua, tol, budget, GAUSS_ORDER
        )
        return value

    def integrand(r):
        vals = np.asarray(fn(r.astype(complex)))
        w = (eta + 1.0) * (1.0 - r) ** eta * 2.0 * r
        return vals * w.reshape((-1,) + (1,) * (vals.ndim - 1))

    value, err, evals = _adapt_line(
        integrand, shape, a, b, tol, budget, GAUSS_ORDER, breaks=breaks
    )
    return value


# ---------------------------------------------------------------------------
# public entry points


def _dyadic_bounds(region) -> tuple[float, float, float, float]:
    if isinstance(region, WholeDisc):
        return 0.0, 1.0, 0.0, TWO_PI
    if isinstance(region, CarlesonSquare):
        n = region.index.level
        lo, hi = region.index.theta_bounds()
        return 1.0 - 2.0 ** -n, 1.0, lo, hi
    if isinstance(region, TopHalf):
        n = region.index.level
        lo, hi = region.index.theta_bounds()
        return 1.0 - 2.0 ** -n, 1.0 - 2.0 ** -(n + 1), lo, hi
    raise TypeError(f"not a polar-rectangle region: {region!r}")


def integrate_values(
    fn: Callable[[np.ndarray], np.ndarray],
    value_shape: Sequence[int],
    region: Region,
    spec: MeasureSpec = PLAIN,
    tol: float = DEFAULT_TOL,
    budget: int = DEFAULT_BUDGET,
    singular_exponent: float = 0.0,
    radial: bool = False,
    radial_breaks: Sequence[float] = (),
    angular_breaks: Sequence[float] = (),
) -> np.ndarray:
    """Integrate an array-valued function over a region against dA_eta.

    This is the generic engine entry; ``integrate`` and
    ``integrate_scalar`` wrap it for matrices and scalars.
    """
    shape = tuple(value_shape)
    eta = spec.eta
    if isinstance(region, (WholeDisc, CarlesonSquare, TopHalf)):
        r0, r1, t0, t1 = _dyadic_bounds(region)
        frac = (t1 - t0) / TWO_PI
        if radial:
            band = _radial_field_integral(
                fn, shape, eta, singular_exponent, r0, r1, tol, budget,
                breaks=radial_breaks,
            )
            return frac * band
        value, _, _ = _polar_rect_integrate(
            fn, shape, eta, singular_exponent, r0, r1, t0, t1, tol, budget,
            radial_breaks=radial_breaks, angular_breaks=angular_breaks,
        )
        return np.asarray(value)
    if isinstance(region, HyperbolicDisc):
        value, _, _ = _local_polar_integrate(
            fn, shape, eta, region.center, region.euclidean_radius, tol, budget
        )
        return np.asarray(value)
    if isinstance(region, TildeDisc):
        center, ratio = region.center, region.ratio

        def indicator(z, az):
            return (np.abs(z - center) < ratio * (1.0 - az)) & (az < 1.0)

        # membership is certain inside this radius, so the indicator only
        # needs resolving on the outer annulus
        inscribed = ratio * (1.0 - abs(center)) / (1.0 + ratio)
        value, _, _ = _local_polar_integrate(
            fn, shape, eta, center, region.bounding_radius, tol, budget,
            indicator=indicator, radial_seed_breaks=[inscribed],
        )
        return np.asarray(value)
    raise TypeError(f"not a region: {region!r}")


def integrate(
    field: MatrixField,
    region: Region,
    spec: MeasureSpec = PLAIN,
    tol: float = DEFAULT_TOL,
    budget: int = DEFAULT_BUDGET,
    radial_breaks: Sequence[float] = (),
    angular_breaks: Sequence[float] = (),
) -> np.ndarray:
    """Matrix integral of a field over a region against dA_eta.

    Returns a Hermitian matrix; positive semidefiniteness of the field
    survives up to roundoff because all quadrature weights are positive.
    Fields carrying an exact band integrator use it on radially banded
    regions, which sidesteps boundary cancellation entirely.
    """
    if field.radial_band is not None and isinstance(
        region, (WholeDisc, CarlesonSquare, TopHalf)
    ):
        r0, r1, t0, t1 = _dyadic_bounds(region)
        frac = (t1 - t0) / TWO_PI
        value = frac * np.asarray(field.radial_band(r0, r1, spec, tol, budget))
        return 0.5 * (value + value.conj().T)
    value = integrate_values(
        field.evaluator,
        (field.dim, field.dim),
        region,
        spec=spec,
        tol=tol,
        budget=budget,
        singular_exponent=field.singular_exponent,
        radial=field.radial,
        radial_breaks=radial_breaks,
        angular_breaks=angular_breaks,
    )
    return 0.5 * (value + value.conj().T)


def integrate_scalar(
    fn: Callable[[np.ndarray], np.ndarray],
    region: Region,
    spec: MeasureSpec = PLAIN,
    tol: float = DEFAULT_TOL,
    budget: int = DEFAULT_BUDGET,
    singular_exponent: float = 0.0,
    radial: bool = False,
    radial_breaks: Sequence[float] = (),
    angular_breaks: Sequence[float] = (),
) -> float:
    """Scalar integral over a region against dA_eta; returns the real part."""
    value = integrate_values(
        fn,
        (),
        region,
        spec=spec,
        tol=tol,
        budget=budget,
        singular_exponent=singular_exponent,
        radial=radial,
        radial_breaks=radial_breaks,
        angular_breaks=angular_breaks,
    )
    return float(np.real(value))


def integrate_polar_rect(
    field: MatrixField,
    r0: float,
    r1: float,
    t0: float,
    t1: float,
    spec: MeasureSpec = PLAIN,
    tol: float = DEFAULT_TOL,
    budget: int = DEFAULT_BUDGET,
) -> np.ndarray:
    """Matrix integral over the polar rectangle [r0, r1] x [t0, t1).

    Used for regions, like the continuous squares of the weight checker,
    that are polar rectangles without being dyadic.
    """
    if not 0.0 <= r0 < r1 <= 1.0:
        raise ValueError("need 0 <= r0 < r1 <= 1")
    value, _, _ = _polar_rect_integrate(
        field.evaluator,
        (field.dim, field.dim),
        spec.eta,
        field.singular_exponent,
        r0,
        r1,
        t0,
        t1,
        tol,
        budget,
    )
    value = np.asarray(value)
    return 0.5 * (value + value.conj().T)


def integrate_annulus(
    field: MatrixField,
    r0: float,
    r1: float,
    spec: MeasureSpec = PLAIN,
    tol: float = DEFAULT_TOL,
    budget: int = DEFAULT_BUDGET,
) -> np.ndarray:
    """Matrix integral over the full annulus r0 <= |z| < r1.

    Radial fields take the one-dimensional band route; others sweep the
    whole angle through the 2-D engine.
    """
    if not 0.0 <= r0 < r1 <= 1.0:
        raise ValueError("need 0 <= r0 < r1 <= 1")
    shape = (field.dim, field.dim)
    if field.radial_band is not None:
        value = np.asarray(field.radial_band(r0, r1, spec, tol, budget))
    elif field.radial:
        value = _radial_field_integral(
            field.evaluator, shape, spec.eta, field.singular_exponent,
            r0, r1, tol, budget,
        )
    else:
        value, _, _ = _polar_rect_integrate(
            field.evaluator, shape, spec.eta, field.singular_exponent,
            r0, r1, 0.0, TWO_PI, tol, budget,
        )
    value = np.asarray(value)
    return 0.5 * (value + value.conj().T)


def scalar_polar_rect(
    r0: float,
    r1: float,
    t0: float,
    t1: float,
    spec: MeasureSpec = PLAIN,
    tol: float = DEFAULT_TOL,
    budget: int = DEFAULT_BUDGET,
) -> float:
    """dA_eta mass of a polar rectangle, via the same panel engine."""
    value, _, _ = _polar_rect_integrate(
        lambda z: np.ones(z.shape[0]),
        (),
        spec.eta,
        0.0,
        r0,
        r1,
        t0,
        t1,
        tol,
        budget,
    )
    return float(np.real(value))
