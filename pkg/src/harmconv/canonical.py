"""Constructors for the explicit families of convex harmonic maps.

Every member is produced the same way.  A family fixes a linear relation
h' + c g' = psi' with a rational right side, and the dilatation fixes
g' = omega h'.  Together these give

    h' = psi' / (1 + c omega),    g' = omega psi' / (1 + c omega),

and both are rational whenever omega is, so they are expanded directly from
their polynomial numerators and denominators and then integrated with
h(0) = g(0) = 0.  Integrating the rational derivative also avoids choosing
a logarithm branch for the strip maps.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import series as S
from .errors import BadWeights, InconsistentDilatationAtOrigin, NotInDisk, OutOfRange
from .harmonic import ClassTag, DilatationSpec, HarmonicMap, reduce_angle, weakest_tag
from .series import TruncatedSeries

ORIGIN_TOL = 1e-9
WEIGHT_TOL = 1e-12


def aux_params(a):
    """(a', gamma_a) = (|1+a| - 1, arg(1 + conj(a)))."""
    S.check_finite(a)
    a = complex(a)
    if abs(a) >= 1.0:
        raise NotInDisk(f"|a| = {abs(a)!r} must be < 1")
    return abs(1.0 + a) - 1.0, cmath.phase(1.0 + a.conjugate())


@dataclass(frozen=True)
class SlantParams:
    a: complex
    gamma: float

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        aux_params(self.a)
        object.__setattr__(self, "gamma", reduce_angle(self.gamma))

    @property
    def a_prime(self):
        return aux_params(self.a)[0]

    @property
    def gamma_a(self):
        return aux_params(self.a)[1]

    @property
    def phi(self):
        """gamma + gamma_a, the total slant angle."""
        return self.gamma + self.gamma_a


@dataclass(frozen=True)
class StripParams:
    b: complex
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "b", complex(self.b))
        aux_params(self.b)
        S.check_finite(self.beta)
        if not 0.0 < self.beta < math.pi:
            raise OutOfRange(f"beta must lie strictly inside (0, pi), got {self.beta!r}")
        object.__setattr__(self, "beta", float(self.beta))

    @property
    def b_prime(self):
        return aux_params(self.b)[0]

    @property
    def gamma_b(self):
        return aux_params(self.b)[1]

    @property
    def walls(self):
        """(lower, upper) bounds of Re(w/(1+b)) on the image strip."""
        s = 2.0 * math.sin(self.beta)
        return (self.beta - math.pi) / s, self.beta / s


@dataclass(frozen=True)
class FLambdaDeltaParams:
    a: complex
    lam: complex
    delta: complex

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        aux_params(self.a)
        object.__setattr__(self, "lam", S.check_unimodular(self.lam, name="lambda"))
        object.__setattr__(self, "delta", S.check_unimodular(self.delta, name="delta"))

    @property
    def a_prime(self):
        return aux_params(self.a)[0]

    @property
    def gamma_a(self):
        return aux_params(self.a)[1]


# The three linear relations h' + c g' = psi', as (c, psi' numerator, psi' poles):
# psi' = numerator / prod(1 - p z) over the poles p.


def halfplane_relation(p):
    e = cmath.exp(1j * p.phi)
    c = cmath.exp(-2j * p.phi)
    return c, np.array([1.0 + p.a_prime]), (e, e)


def strip_relation(p):
    u = cmath.exp(1j * (p.beta + p.gamma_b))
    v = cmath.exp(-1j * (p.beta - p.gamma_b))
    c = cmath.exp(-2j * p.gamma_b)
    return c, np.array([1.0 + p.b_prime]), (-u, -v)


def f_lambda_delta_relation(p):
    rot = p.delta * cmath.exp(1j * p.gamma_a)
    u = p.lam * rot
    v = p.lam.conjugate() * rot
    c = (p.delta**2).conjugate() * cmath.exp(-2j * p.gamma_a)
    return c, np.array([1.0 + p.a_prime]), (-u, -v)


def relation_denominator(relation):
    """Ascending coefficients of prod(1 - p z) for the relation's poles."""
    den = np.array([1.0 + 0j])
    for pole in relation[2]:
        den = np.convolve(den, [1.0, -pole])
    return den


def reciprocal_roots(poly):
    """Points p with poly(z) = poly(0) * prod(1 - p z)."""
    c = np.asarray(poly, dtype=complex)
    keep = c.size
    while keep > 1 and c[keep - 1] == 0:
        keep -= 1
    # the roots of the reversed polynomial are the reciprocals of the roots of poly
    return np.roots(c[:keep]) if keep > 1 else np.array([], dtype=complex)


def _solve_member(relation, omega, expected_origin, order):
    c, psi_num, psi_poles = relation
    if not isinstance(omega, DilatationSpec):
        raise TypeError("omega must be a DilatationSpec")
    w0 = omega.at_origin()
    if abs(w0 - expected_origin) > ORIGIN_TOL:
        raise InconsistentDilatationAtOrigin(
            f"omega(0) = {w0:.12g} but the normalization h'(0) = 1 needs {expected_origin:.12g}"
        )
    w_num, w_den = omega.rational()
    n = max(w_num.size, w_den.size)
    w_num = np.r_[w_num, np.zeros(n - w_num.size)]
    w_den = np.r_[w_den, np.zeros(n - w_den.size)]
    mixed = w_den + c * w_num
    poles = list(psi_poles) + list(reciprocal_roots(mixed))
    hp = TruncatedSeries.from_poles(np.convolve(psi_num, w_den), poles, order - 1, mixed[0])
    gp = TruncatedSeries.from_poles(np.convolve(psi_num, w_num), poles, order - 1, mixed[0])
    h = S.antidifferentiate(hp)
    g = S.antidifferentiate(gp)
    # h'(0) = 1 holds to ORIGIN_TOL; pin it so the class check sees the exact normalization
    hc = h.coeffs.copy()
    hc[1] = 1.0
    return HarmonicMap(TruncatedSeries(hc), g, ClassTag.H)


def slanted_halfplane_canonical(p, order=S.DEFAULT_ORDER):
    """The map f^a_gamma with dilatation exp(2i phi)(a' - z e^{i phi})/(1 - a' z e^{i phi}).

    Built from its closed form: with I(z) = z/(1 - e^{i phi} z),
    h = ((1+a') I + (1-a') z I')/2 and e^{-2i phi} g = ((1+a') I - (1-a') z I')/2.
    """
    k = np.arange(order + 1)
    geo = np.exp(1j * (k - 1) * p.phi)
    geo[0] = 0.0
    ap = p.a_prime
    h = geo * ((1.0 + ap) + (1.0 - ap) * k) / 2.0
    g = cmath.exp(2j * p.phi) * geo * ((1.0 + ap) - (1.0 - ap) * k) / 2.0
    return HarmonicMap(h, g, ClassTag.H)


def canonical_dilatation(p):
    """DilatationSpec of f^a_gamma."""
    return DilatationSpec.moebius(2.0 * p.phi, p.a_prime, p.phi, sign=-1)


def right_halfplane_f0(order=S.DEFAULT_ORDER):
    return slanted_halfplane_canonical(SlantParams(0.0, 0.0), order)


def halfplane_member(p, omega, order=S.DEFAULT_ORDER):
    """Member of the slanted half-plane class with dilatation ``omega``."""
    expected = p.a_prime * cmath.exp(2j * p.phi)
    return _solve_member(halfplane_relation(p), omega, expected, order)


def strip_member(p, omega, order=S.DEFAULT_ORDER):
    expected = p.b_prime * cmath.exp(2j * p.gamma_b)
    return _solve_member(strip_relation(p), omega, expected, order)


def f_lambda_delta_member(p, omega, order=S.DEFAULT_ORDER):
    expected = p.a_prime * p.delta**2 * cmath.exp(2j * p.gamma_a)
    return _solve_member(f_lambda_delta_relation(p), omega, expected, order)


def relation_residual(f, relation):
    """max_k |(h' + c g')_k - (psi')_k|, the coefficient defect of a relation."""
    c, psi_num, psi_poles = relation
    hp, gp = S.differentiate(f.h), S.differentiate(f.g)
    lhs = S.linear_combine(1.0, hp, c, gp)
    rhs = TruncatedSeries.from_poles(psi_num, psi_poles, lhs.order)
    return float(np.max(np.abs(lhs.coeffs - rhs.coeffs)))


def convex_combination(maps, weights):
    maps = list(maps)
    w = np.asarray(weights, dtype=float)
    if not maps or w.shape != (len(maps),):
        raise BadWeights(f"{len(maps)} maps but weights of shape {w.shape}")
    S.check_finite(w)
    if np.any(w < 0):
        raise BadWeights("weights must be nonnegative")
    if abs(w.sum() - 1.0) > WEIGHT_TOL:
        raise BadWeights(f"weights sum to {w.sum()!r}, not 1")
    orders = {f.order for f in maps}
    if len(orders) != 1:
        raise BadWeights(f"maps have different orders {sorted(orders)}")
    h = sum(wj * f.h.coeffs for wj, f in zip(w, maps))
    g = sum(wj * f.g.coeffs for wj, f in zip(w, maps))
    tag = weakest_tag(*(f.class_tag for f in maps))
    if tag is not ClassTag.UNCONSTRAINED:
        h = h.copy()
        h[1] = 1.0
    return HarmonicMap(h, g, tag)


def shear_quotient(f, c, z):
    """(h' - c g')/(h' + c g') at the points z; positive real part on members."""
    hp = S.evaluate(S.differentiate(f.h), z)
    gp = S.evaluate(S.differentiate(f.g), z)
    return (hp - c * gp) / (hp + c * gp)


def strip_shear_coefficients(b_prime, beta, order=S.DEFAULT_ORDER):
    """Coefficients of ((1+b')/(2i sin beta)) log((1+z e^{i beta})/(1+z e^{-i beta})).

    Independent of the rational route: the k-th term of the log difference is
    (-1)^(k+1) 2i sin(k beta) / k.
    """
    k = np.arange(1, order + 1)
    c = (1.0 + b_prime) * (-1.0) ** (k + 1) * np.sin(k * beta) / (k * math.sin(beta))
    return np.r_[0.0, c].astype(complex)
