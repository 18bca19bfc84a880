"""Maps built by shearing: a half-plane map, a strip map, and the F family.

Each member is determined by its dilatation; we print the leading
coefficients and the residual of the defining relation h - e g = psi.
"""

import math

from harmconv import DilatationSpec, FLambdaDeltaParams, StripParams
from harmconv import canonical as C

order = 256

hp = C.SlantParams(0.25 + 0.1j, 0.5)
print(f"a' = {hp.a_prime:.4f}, phi = {hp.phi:.4f}")
# the dilatation must take the value the family prescribes at the origin
origin = hp.a_prime * complex(math.cos(2 * hp.phi), math.sin(2 * hp.phi))
omega = DilatationSpec.moebius(math.atan2(origin.imag, origin.real), abs(origin), 1.0, 1)
f = C.halfplane_member(hp, omega, order)
print("half-plane member h:", f.h)
print("  relation residual:", C.relation_residual(f, C.halfplane_relation(hp)))

sp = StripParams(0.1, math.pi / 3)
origin = sp.b_prime * complex(math.cos(2 * sp.gamma_b), math.sin(2 * sp.gamma_b))
omega = DilatationSpec.moebius(math.atan2(origin.imag, origin.real), abs(origin), 2.0, -1)
f = C.strip_member(sp, omega, order)
print("strip member h:", f.h)
print("  relation residual:", C.relation_residual(f, C.strip_relation(sp)))

fp = FLambdaDeltaParams(0.2, 1j, 1.0)
origin = fp.a_prime * fp.delta**2 * complex(math.cos(2 * fp.gamma_a), math.sin(2 * fp.gamma_a))
omega = DilatationSpec.moebius(math.atan2(origin.imag, origin.real), abs(origin), 0.3, 1)
f = C.f_lambda_delta_member(fp, omega, order)
print("F-family member h:", f.h)
print("  relation residual:", C.relation_residual(f, C.f_lambda_delta_relation(fp)))
