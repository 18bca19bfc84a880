"""Certifying convexity in a direction on a disk grid.

A certificate is the smallest real part of the shear criterion over the
grid after searching the two free parameters; non-negative means certified.
"""

import math

from harmconv import DiskGrid, direction_convexity, local_univalence, rz_search
from harmconv import canonical as C
from harmconv.series import TruncatedSeries, order_for_radius

grid = DiskGrid()
order = order_for_radius(grid.max_radius)

f0 = C.right_halfplane_f0(order)
u = local_univalence(f0, grid)
print("f0 locally univalent:", u.passed, "min Jacobian", u.min_jacobian)
cert = direction_convexity(f0, 0.0, grid)
print("f0, direction 0:", cert.min_real_part, "at mu, nu =", cert.mu, cert.nu)

# z**2 is not univalent, and no choice of parameters rescues it
bad = rz_search(TruncatedSeries([0, 0, 1]), grid)
print("z^2 best certificate:", bad.min_real_part)

# half-plane members are convex in the direction of their boundary line
p = C.SlantParams(0.4, math.pi / 6)
f = C.slanted_halfplane_canonical(p, order)
print("slanted half-plane, direction -phi:", direction_convexity(f, -p.phi, grid).min_real_part)
