"""
Two-average norms for matrix weights
====================================

For a weight W on the disc, average W and its inverse over the same
boundary window and multiply.  The norm of that product, maximized
over window sizes and positions, measures how far W is from flat.
Scalar powers of the boundary distance stay finite below exponent 1
and blow up as the exponent approaches it.
"""

from bergman_carleson.weights import (
    DiagonalPowerWeight,
    IdentityWeight,
    ScalarPowerWeight,
    b2_constant,
    default_h_grid,
)

# Flat weights are a fixed point: both averages are the same constant
# matrix and the product is exactly the identity.
print(f"identity weight: {b2_constant(IdentityWeight(3))!r}")

# Raising the boundary-distance exponent toward 1 makes the inverse
# average diverge faster than the direct average decays.
print("\nscalar power weights (1-|z|)^a")
print("   a    constant")
reference = None
for a in (0.1, 0.5, 0.9, 0.99):
    value = b2_constant(ScalarPowerWeight(a))
    if a == 0.5:
        reference = value
    print(f"{a:5.2f}  {value:12.6f}")
print(f"growth from a=0.5 to a=0.99: {b2_constant(ScalarPowerWeight(0.99)) / reference:.1f}x")

# The profile over window sizes shows where the sup is attained; for
# these radial weights it is the full window h=1.
print("\nwindow profile for a=0.5")
for h in sorted(default_h_grid(), reverse=True):
    value = b2_constant(ScalarPowerWeight(0.5), h_grid=[h])
    print(f"  h={h:8.5f}: {value:.9f}")

# A genuinely matrix-valued example: eigenvalue directions tilted by a
# seeded unitary, exponents of opposite sign.  Off-diagonal mixing is
# what the matrix norm distinguishes from a pair of scalar weights.
tilted = DiagonalPowerWeight((0.5, -0.5))
print(f"\ndiagonal power weight (0.5, -0.5): {b2_constant(tilted):.6f}")
