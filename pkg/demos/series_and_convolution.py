"""Truncated series and the coefficientwise convolution of harmonic maps.

Builds two half-plane maps, convolves them, and checks that rotating the
factors rotates the product.
"""

import cmath

import numpy as np

from harmconv import SlantParams, convolve, rotate, slanted_halfplane_canonical
from harmconv.harmonic import evaluate_map

f1 = slanted_halfplane_canonical(SlantParams(0.3, 0.0), order=64)
f2 = slanted_halfplane_canonical(SlantParams(-0.2 + 0.1j, 0.7), order=64)
print("f1:", f1.h)
print("f2:", f2.h)

product = convolve(f1, f2)
print("h of f1*f2:", product.h)

mu, nu = cmath.exp(0.4j), cmath.exp(-1.1j)
lhs = convolve(rotate(f1, mu), rotate(f2, nu))
rhs = rotate(product, mu * nu)
z = 0.6 * np.exp(2j * np.pi * np.arange(8) / 8)
print("rotation identity, max |difference| on |z|=0.6:",
      np.max(np.abs(evaluate_map(lhs, z) - evaluate_map(rhs, z))))
