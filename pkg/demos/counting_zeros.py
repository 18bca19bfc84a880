"""Counting polynomial zeros inside, on and outside the unit circle.

The reduction never computes roots; the root finder is only the cross-check.
The last part builds the cubic whose zeros decide when a convolution of two
half-plane maps stays locally univalent.
"""

import numpy as np

from harmconv import Polynomial, count_zeros_in_disk, roots_oracle
from harmconv import schur_cohn as SC
from harmconv.schur_cohn import Case

t = Polynomial.from_roots([0.5, -0.3j, 1j, 2.0])
report = count_zeros_in_disk(t)
print("inside/on/outside:", report.zeros_inside, report.zeros_on_boundary, report.zeros_outside)
for step in report.trace:
    print("  ", step["action"], "|a0| =", round(step["abs_a0"], 4), "|an| =", round(step["abs_an"], 4))
print("root moduli:", np.round(np.sort(np.abs(roots_oracle(t))), 6))

for a1, a2 in [(0.3, 0.4), (-0.8, 0.9)]:
    ok = SC.theorem43_condition_check(a1, a2, Case.MINUS_ONE)
    cubic = SC.theorem43_cubic(a1, a2, Case.MINUS_ONE)
    counts = count_zeros_in_disk(cubic.polynomial)
    print(f"a1'={a1}, a2'={a2}: condition {ok}, zeros in/on/out",
          counts.zeros_inside, counts.zeros_on_boundary, counts.zeros_outside)
