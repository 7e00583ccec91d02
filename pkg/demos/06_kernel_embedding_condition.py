"""
Derivative embedding: sufficiency against necessity
===================================================

The sufficiency side averages the symbol and the weight over small
hyperbolic discs and takes a generalized eigenvalue norm; the
necessity side tests the embedding on reproducing kernel directions
anchored at the same centers.  For radial power symbols the two sides
must blow up at the same rate toward the boundary.
"""

import numpy as np

from bergman_carleson.analytic import (
    EmbeddingProblem,
    VectorPoly,
    condition_constant,
    embedding_ratio,
    growth_exponent,
    necessity_lower_bound,
)
from bergman_carleson.quadrature import radial_power_field
from bergman_carleson.weights import IdentityWeight

# Monomial desk check.  For the symbol (1-|z|)^2 and first derivatives,
# the ratio for z^m is m/(2m+1): strictly below 1/2 and exactly
# computable through the moment recurrences.
problem = EmbeddingProblem(
    symbol=radial_power_field(2.0, np.eye(1)),
    weight=IdentityWeight(1),
    order=1,
)
print("monomial ratios against m/(2m+1)")
for m in (1, 2, 8, 32, 64):
    ratio = embedding_ratio(VectorPoly.monomial(m, np.ones(1)), problem)
    print(f"  m={m:3d}: {ratio:.12f}  (exact {m / (2 * m + 1):.12f})")

# Growth comparison for the singular symbol (1-|z|)^(-1/2).  Fit the
# log-log slope of each side along a radial grid approaching 1.
grid = [1.0 - 2.0**-j + 0j for j in range(3, 11)]
singular = EmbeddingProblem(
    symbol=radial_power_field(-0.5, np.eye(1)), weight=IdentityWeight(1)
)
condition = condition_constant(singular, grid)
cond_slope = growth_exponent([(1.0 - abs(l), v) for l, v in condition.values])
nec_pairs = [(1.0 - abs(l), necessity_lower_bound(singular, 1.0, l)) for l in grid]
nec_slope = growth_exponent(nec_pairs)

print("\nsingular symbol (1-|z|)^(-1/2), radial grid")
print("   gap        sufficiency   necessity")
for (gap, nec), (_, cond) in zip(nec_pairs, ((1.0 - abs(l), v) for l, v in condition.values)):
    print(f"  {gap:.6f}   {cond:10.6f}   {nec:10.6f}")
print(f"fitted exponents: sufficiency {cond_slope:.4f}, necessity {nec_slope:.4f}")

# Integrable symbols keep both sides bounded along the same grid.
for s in (0.5, 1.0):
    p = EmbeddingProblem(symbol=radial_power_field(s, np.eye(1)), weight=IdentityWeight(1))
    top = max(v for _, v in condition_constant(p, grid).values)
    print(f"\nsymbol (1-|z|)^{s}: sup of sufficiency on grid = {top:.6f}")
