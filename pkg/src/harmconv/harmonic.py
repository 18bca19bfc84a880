"""Harmonic maps f = h + conj(g) on the unit disk.

A :class:`HarmonicMap` holds the analytic part ``h`` and the co-analytic part
``g`` as truncated series of equal order.  The operations here are the ones
that act on the pair: evaluation, Jacobian, dilatation g'/h', rotation
f -> conj(mu) f(mu z), and the coefficientwise (Hadamard) convolution.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import series as S
from .errors import ClassViolation, OutOfRange
from .series import TruncatedSeries

CLASS_TOL = 1e-10
TWO_PI = 2.0 * math.pi


def reduce_angle(theta):
    S.check_finite(theta)
    return float(theta) % TWO_PI


class ClassTag(str, enum.Enum):
    H = "H"
    H0 = "H0"
    UNCONSTRAINED = "unconstrained"


def weakest_tag(*tags):
    tags = [ClassTag(t) for t in tags]
    if ClassTag.UNCONSTRAINED in tags:
        return ClassTag.UNCONSTRAINED
    if all(t is ClassTag.H0 for t in tags):
        return ClassTag.H0
    return ClassTag.H


@dataclass(frozen=True)
class DilatationSpec:
    """Closed-form dilatation.

    ``monomial``: exp(i*theta) * z**n.

    ``moebius_of_rotation``:
    exp(i*prefactor_angle) * (a + s*z*exp(i*inner_angle)) / (1 + s*a*z*exp(i*inner_angle))
    with s = ``sign`` and a = ``a_param`` in (-1, 1).
    """

    kind: str
    theta: float = 0.0
    n: int = 1
    prefactor_angle: float = 0.0
    a_param: float = 0.0
    inner_angle: float = 0.0
    sign: int = 1

    def __post_init__(self):
        if self.kind == "monomial":
            if int(self.n) != self.n or self.n < 1:
                raise OutOfRange(f"monomial exponent must be a positive integer, got {self.n!r}")
            object.__setattr__(self, "n", int(self.n))
            object.__setattr__(self, "theta", reduce_angle(self.theta))
        elif self.kind == "moebius_of_rotation":
            S.check_finite(self.a_param)
            if not -1.0 < self.a_param < 1.0:
                raise OutOfRange(f"a_param must lie in (-1, 1), got {self.a_param!r}")
            if self.sign not in (1, -1):
                raise OutOfRange(f"sign must be +1 or -1, got {self.sign!r}")
            object.__setattr__(self, "a_param", float(self.a_param))
            object.__setattr__(self, "prefactor_angle", reduce_angle(self.prefactor_angle))
            object.__setattr__(self, "inner_angle", reduce_angle(self.inner_angle))
        else:
            raise OutOfRange(f"unknown dilatation kind {self.kind!r}")

    @classmethod
    def monomial(cls, theta, n):
        return cls("monomial", theta=theta, n=n)

    @classmethod
    def moebius(cls, prefactor_angle, a_param, inner_angle, sign=1):
        return cls(
            "moebius_of_rotation",
            prefactor_angle=prefactor_angle,
            a_param=a_param,
            inner_angle=inner_angle,
            sign=sign,
        )

    def rational(self):
        """(numerator, denominator) ascending coefficient arrays."""
        if self.kind == "monomial":
            num = np.zeros(self.n + 1, dtype=complex)
            num[self.n] = np.exp(1j * self.theta)
            return num, np.array([1.0 + 0j])
        rot = self.sign * np.exp(1j * self.inner_angle)
        pre = np.exp(1j * self.prefactor_angle)
        num = pre * np.array([self.a_param, rot], dtype=complex)
        den = np.array([1.0, self.a_param * rot], dtype=complex)
        return num, den

    def at_origin(self):
        num, den = self.rational()
        return complex(num[0] / den[0])

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        num, den = self.rational()
        out = np.polyval(num[::-1], z) / np.polyval(den[::-1], z)
        return complex(out) if out.ndim == 0 else out

    def series(self, order=S.DEFAULT_ORDER):
        num, den = self.rational()
        return TruncatedSeries.from_rational(num, den, order)


class HarmonicMap:
    """f = h + conj(g) with a class tag checked at construction."""

    __slots__ = ("h", "g", "class_tag")

    def __init__(self, h, g, class_tag=ClassTag.H):
        if not isinstance(h, TruncatedSeries):
            h = TruncatedSeries(h)
        if not isinstance(g, TruncatedSeries):
            g = TruncatedSeries(g)
        if h.order != g.order:
            raise ValueError(f"h has order {h.order} but g has order {g.order}")
        tag = ClassTag(class_tag)
        if tag is not ClassTag.UNCONSTRAINED:
            _check_class(h, g, tag)
        self.h = h
        self.g = g
        self.class_tag = tag

    @property
    def order(self):
        return self.h.order

    def __repr__(self):
        return f"HarmonicMap(order={self.order}, class_tag={self.class_tag.value})"

    def __call__(self, z, r_max=S.R_MAX):
        return evaluate_map(self, z, r_max=r_max)

    def __neg__(self):
        return HarmonicMap(-self.h, -self.g, ClassTag.UNCONSTRAINED)

    def truncate(self, order):
        return HarmonicMap(self.h.truncate(order), self.g.truncate(order), self.class_tag)


def _check_class(h, g, tag):
    if h.order < 1:
        raise ClassViolation("class H needs order >= 1")
    bad = []
    if abs(h[0]) > CLASS_TOL:
        bad.append(f"h(0) = {h[0]}")
    if abs(g[0]) > CLASS_TOL:
        bad.append(f"g(0) = {g[0]}")
    if abs(h[1] - 1.0) > CLASS_TOL:
        bad.append(f"h'(0) = {h[1]}")
    if tag is ClassTag.H0 and abs(g[1]) > CLASS_TOL:
        bad.append(f"g'(0) = {g[1]}")
    if bad:
        raise ClassViolation(f"not in class {tag.value}: " + ", ".join(bad))


def identity_map(order=S.DEFAULT_ORDER):
    """The convolution unit z/(1-z) + conj(z/(1-z))."""
    c = np.ones(order + 1, dtype=complex)
    c[0] = 0.0
    return HarmonicMap(c, c, ClassTag.UNCONSTRAINED)


def evaluate_map(f, z, r_max=S.R_MAX):
    return S.evaluate(f.h, z, r_max) + np.conj(S.evaluate(f.g, z, r_max))


def dilatation(f):
    return S.series_divide(S.differentiate(f.g), S.differentiate(f.h))


def jacobian_at(f, z, r_max=S.R_MAX):
    hp = S.evaluate(S.differentiate(f.h), z, r_max)
    gp = S.evaluate(S.differentiate(f.g), z, r_max)
    out = np.abs(hp) ** 2 - np.abs(gp) ** 2
    return float(out) if np.ndim(out) == 0 else out


def rotate(f, mu):
    """f^mu(z) = conj(mu) f(mu z): h -> conj(mu) h(mu z), g -> mu g(mu z)."""
    mu = S.check_unimodular(mu)
    h = np.conj(mu) * S.compose_rotation(f.h, mu)
    g = mu * S.compose_rotation(f.g, mu)
    return HarmonicMap(h, g, f.class_tag)


def convolve(f, F):
    return HarmonicMap(
        S.hadamard(f.h, F.h),
        S.hadamard(f.g, F.g),
        weakest_tag(f.class_tag, F.class_tag),
    )


def euler_operator(s):
    """z * s'(z), kept at the order of s."""
    return TruncatedSeries(np.arange(s.order + 1) * s.coeffs)


def convolution_dilatation_parts(a, f):
    """Numerator and denominator series of the dilatation of f^a_0 * f.

    Returns (2a g' - (1-a) z g'', 2 h' + (1-a) z h'').
    """
    S.check_finite(a)
    a = float(a)
    if not -1.0 < a < 1.0:
        raise OutOfRange(f"a must lie in (-1, 1), got {a!r}")
    hp, gp = S.differentiate(f.h), S.differentiate(f.g)
    zhpp = euler_operator(hp)
    zgpp = euler_operator(gp)
    num = S.linear_combine(2.0 * a, gp, -(1.0 - a), zgpp)
    den = S.linear_combine(2.0, hp, 1.0 - a, zhpp)
    return num, den


def convolution_dilatation_f_a0(a, f):
    """Series of (2a g' - (1-a) z g'') / (2h' + (1-a) z h'')."""
    num, den = convolution_dilatation_parts(a, f)
    return S.series_divide(num, den)
