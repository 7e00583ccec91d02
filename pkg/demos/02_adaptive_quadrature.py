"""
Adaptive integration on the disc
================================
"""

# The quadrature engine refines polar panels greedily until a requested
# tolerance is met, and substitutes away boundary singularities of the
# form (1-|z|)^q so that singular weights converge at machine speed.

import numpy as np

from bergman_carleson.disc_geometry import HyperbolicDisc, WholeDisc
from bergman_carleson.quadrature import (
    MeasureSpec,
    PLAIN,
    integrate_values,
    radial_integral,
)

# Total mass of the weighted measures (eta+1)(1-|z|)^eta dA.  The exact
# value is 2/(eta+2).
print("weighted disc masses")
for eta in (0.0, 0.5, 1.0, 2.0):
    mass = float(integrate_values(lambda z: np.ones(z.shape[0]), (), WholeDisc(), MeasureSpec(eta)))
    print(f"  eta={eta:3.1f}: {mass:.12f}  (exact {2.0 / (eta + 2.0):.12f})")

# An integrable singularity at the boundary.  Declaring the exponent
# routes the radial direction through a power substitution, so ten-digit
# accuracy costs only a handful of panels.
singular = float(
    integrate_values(
        lambda z: (1.0 - np.abs(z)) ** -0.5,
        (),
        WholeDisc(),
        PLAIN,
        singular_exponent=-0.5,
    )
)
print(f"\nboundary singularity: {singular:.12f}  (exact {8.0 / 3.0:.12f})")

# One-dimensional radial integrals accept the same declaration.  Here
# the integrand r/(sqrt(1-r)) integrates to 4/3.
line = radial_integral(lambda r: r, 0.0, 1.0, q=-0.5)
print(f"radial line integral: {float(line):.12f}  (exact {4.0 / 3.0:.12f})")

# Integrals over small hyperbolic discs feed the embedding conditions.
# For the flat integrand the result is just the disc area, quadratic in
# the distance to the boundary.
print("\nhyperbolic disc areas (aperture 1/2)")
for j in (1, 3, 5, 7):
    center = 1.0 - 2.0**-j
    disc = HyperbolicDisc(center=center, ratio=0.5)
    area = float(integrate_values(lambda z: np.ones(z.shape[0]), (), disc, PLAIN))
    exact = 0.25 * (1.0 - center) ** 2
    print(f"  center {center:.5f}: {area:.3e}  (exact {exact:.3e})")
