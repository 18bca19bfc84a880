"""Zero location of complex polynomials relative to the unit circle.

The counting uses the Cohn reduction t -> (conj(a_n) t - a_0 t*)/z, where
t* is the conjugate-reversed polynomial.  When |a_n| > |a_0| the reduced
polynomial z*t_next has as many zeros inside the disk as t; when
|a_0| > |a_n| it has as many as t*, whose zeros are the reflections of
those of t.  Zeros on the circle are common to t and t* and ride along
through every step, so they only surface when a step becomes degenerate;
at that point they are found with the root oracle and deflated.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DegenerateStep, NoConvergence, OutOfRange

TRIM_TOL = 1e-13
DEGENERACY_TOL = 1e-10
BOUNDARY_TOL = 1e-7
VANISH_TOL = 1e-12
MAX_ITER = 500


class Polynomial:
    """a_0 + a_1 z + ... + a_n z^n, ascending coefficients.

    Trailing coefficients below ``TRIM_TOL`` times the largest magnitude are
    dropped unless ``trim=False``, which keeps a formal degree.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs, trim=True):
        c = np.array(coeffs, dtype=complex).ravel()
        if c.size == 0 or not np.all(np.isfinite(c)):
            raise ValueError("polynomial coefficients must be finite and non-empty")
        if trim:
            scale = np.max(np.abs(c))
            keep = c.size
            while keep > 1 and abs(c[keep - 1]) <= TRIM_TOL * scale:
                keep -= 1
            c = c[:keep]
        c.setflags(write=False)
        self._c = c

    @classmethod
    def from_roots(cls, roots, leading=1.0):
        c = np.array([1.0 + 0j])
        for r in roots:
            c = np.convolve(c, [-r, 1.0])
        return cls(leading * c)

    @property
    def coeffs(self):
        return self._c

    @property
    def degree(self):
        return self._c.size - 1

    def __call__(self, z):
        out = np.polyval(self._c[::-1], np.asarray(z, dtype=complex))
        return complex(out) if np.ndim(out) == 0 else out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._c.shape == other._c.shape and bool(np.all(self._c == other._c))

    __hash__ = None

    def __repr__(self):
        return f"Polynomial({np.array2string(self._c, precision=6)})"


def reciprocal(t):
    """t*(z) = z^n conj(t(1/conj z)); keeps the formal degree n."""
    return Polynomial(np.conj(t.coeffs[::-1]), trim=False)


@dataclass(frozen=True)
class RationalDilatation:
    """prefactor * num(z) / den(z)."""

    prefactor: complex
    num: Polynomial
    den: Polynomial

    def __call__(self, z):
        return self.prefactor * self.num(z) / self.den(z)


class CohnStep(NamedTuple):
    t_next: Polynomial
    inside_increment: int
    swapped: bool


def _degenerate(a0, an, scale):
    return abs(abs(a0) - abs(an)) <= DEGENERACY_TOL * scale


def cohn_step(t):
    """One Cohn reduction.

    Counts of t follow from counts of t_next as
    inside(t) = inside_increment + (outside(t_next) if swapped else inside(t_next)).
    """
    c = t.coeffs
    n = c.size - 1
    if n < 1:
        raise ValueError("cohn_step needs degree >= 1")
    a0, an = c[0], c[-1]
    scale = float(np.max(np.abs(c)))
    if _degenerate(a0, an, scale):
        raise DegenerateStep(f"|a0| = {abs(a0):.17g} and |an| = {abs(an):.17g} coincide", t)
    full = np.conj(an) * c - a0 * np.conj(c[::-1])
    if abs(full[0]) > VANISH_TOL * scale * scale:
        raise ArithmeticError(f"constant term {full[0]!r} of the reduction did not vanish")
    nxt = full[1:]
    nxt = nxt / np.max(np.abs(nxt))
    swapped = abs(a0) > abs(an)
    return CohnStep(Polynomial(nxt, trim=False), 0 if swapped else 1, swapped)


@dataclass
class SchurCohnReport:
    zeros_inside: int
    zeros_on_boundary: int
    zeros_outside: int
    degenerate: bool = False
    trace: list = field(default_factory=list)

    @property
    def degree(self):
        return self.zeros_inside + self.zeros_on_boundary + self.zeros_outside

    def as_dict(self):
        return {
            "zeros_inside": self.zeros_inside,
            "zeros_on_boundary": self.zeros_on_boundary,
            "zeros_outside": self.zeros_outside,
            "degenerate": self.degenerate,
            "trace": self.trace,
        }


def _deflate(coeffs, root):
    """Synthetic division by (z - root); returns the quotient."""
    desc = coeffs[::-1]
    q = np.empty(desc.size - 1, dtype=complex)
    acc = 0j
    for i in range(desc.size - 1):
        acc = acc * root + desc[i]
        q[i] = acc
    return q[::-1]


def classify_roots(roots, boundary_tol=BOUNDARY_TOL):
    m = np.abs(np.asarray(roots))
    on = np.abs(m - 1.0) <= boundary_tol
    return int(np.sum((m < 1.0) & ~on)), int(np.sum(on)), int(np.sum((m > 1.0) & ~on))


def count_zeros_in_disk(t):
    """Zeros of t inside, on, and outside the unit circle."""
    if not isinstance(t, Polynomial):
        t = Polynomial(t)
    t = Polynomial(t.coeffs)  # trim any formal leading zeros
    if t.degree < 1:
        return SchurCohnReport(0, 0, 0)
    trace = []
    steps = []
    boundary = 0
    degenerate = False
    cur = t
    base_in = base_out = 0
    while cur.degree >= 1:
        c = cur.coeffs
        entry = {
            "coeffs": [[float(x.real), float(x.imag)] for x in c],
            "abs_a0": float(abs(c[0])),
            "abs_an": float(abs(c[-1])),
        }
        try:
            step = cohn_step(cur)
        except DegenerateStep:
            roots = roots_oracle(cur)
            on = np.abs(np.abs(roots) - 1.0) <= BOUNDARY_TOL
            entry["action"] = f"deflate {int(on.sum())} unimodular root(s)"
            trace.append(entry)
            if not on.any():
                # no circle factor to cancel: classify what is left directly
                base_in, _, base_out = classify_roots(roots)
                degenerate = True
                break
            q = c
            for r in roots[on]:
                q = _deflate(q, r)
            boundary += int(on.sum())
            cur = Polynomial(q / np.max(np.abs(q)), trim=False)
            continue
        entry["action"] = "swap" if step.swapped else "keep"
        trace.append(entry)
        steps.append(step)
        cur = step.t_next
    zin, zout = base_in, base_out
    for step in reversed(steps):
        if step.swapped:
            zin, zout = zout, zin
        zin += step.inside_increment
        zout += 1 - step.inside_increment
    return SchurCohnReport(zin, boundary, zout, degenerate, trace)


def roots_oracle(t, max_iter=MAX_ITER, rtol=1e-9):
    """All roots by Durand-Kerner iteration, polished with Newton steps.

    Acceptance: |t(root)| <= rtol * max|a_k| * max(1, |root|)^n.
    """
    if not isinstance(t, Polynomial):
        t = Polynomial(t)
    t = Polynomial(t.coeffs)
    n = t.degree
    if n < 1:
        raise ValueError("roots_oracle needs degree >= 1")
    c = t.coeffs
    monic = c / c[-1]
    desc = monic[::-1]
    # perturbed roots of unity on the circle of the geometric-mean root modulus
    radius = abs(monic[0]) ** (1.0 / n) if monic[0] != 0 else 0.5
    radius = min(max(radius, 0.1), 1.0 + float(np.max(np.abs(monic[:-1]))))
    k = np.arange(n)
    z = radius * (1.0 + 0.05 * k / n) * np.exp(1j * (2.0 * np.pi * k / n + 0.4))
    for _ in range(max_iter):
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        corr = np.polyval(desc, z) / np.prod(diff, axis=1)
        z = z - corr
        if np.all(np.abs(corr) <= 1e-15 * np.maximum(1.0, np.abs(z))):
            break
    dp = np.polyder(desc)
    for _ in range(3):
        d = np.polyval(dp, z)
        ok = np.abs(d) > 0
        step = np.zeros_like(z)
        step[ok] = np.polyval(desc, z[ok]) / d[ok]
        cand = z - step
        better = np.abs(np.polyval(desc, cand)) <= np.abs(np.polyval(desc, z))
        z = np.where(better, cand, z)
    res = np.abs(t(z))
    bound = rtol * np.max(np.abs(c)) * np.maximum(1.0, np.abs(z)) ** n
    if not np.all(res <= bound):
        raise NoConvergence(f"residuals {res} exceed {bound}", roots=z, residuals=res)
    return z


class Case(str, enum.Enum):
    MINUS_ONE = "minus_one"
    PLUS_ONE = "plus_one"


@dataclass(frozen=True)
class Theorem43Cubic:
    """t(z) = z^3 + c2 z^2 + c1 z + c0 of the half-plane convolution dilatation.

    ``case`` selects cos(theta - gamma_2 - gamma_a2) = -1 (minus_one) or +1.
    """

    a1_prime: float
    a2_prime: float
    case: Case
    c2: complex
    c1: complex
    c0: complex

    @property
    def polynomial(self):
        return Polynomial([self.c0, self.c1, self.c2, 1.0])

    @property
    def rotation(self):
        """exp(i(theta - gamma_2 - gamma_a2)) for the selected case."""
        return -1.0 if self.case is Case.MINUS_ONE else 1.0

    def dilatation(self):
        """-exp(2i theta') t/t*."""
        t = self.polynomial
        return RationalDilatation(-(self.rotation**2) + 0j, t, reciprocal(t))

    def b_coefficients(self):
        """(b2, b1, b0) of the first reduction t1 = (t - c0 t*)/z."""
        a1, a2 = self.a1_prime, self.a2_prime
        b2 = 1.0 - (a1 * a2) ** 2
        b1 = (1.0 - a1) * (1.0 + 3.0 * a2 + 3.0 * a1 * a2 + a1 * a2**2) / 2.0
        b0 = (1.0 + a2) * (1.0 - 3.0 * a1 + 3.0 * a1 * a2 - a1**2 * a2) / 2.0
        return b2, b1, b0

    def second_reduction_zero(self):
        b2, b1, b0 = self.b_coefficients()
        return -b1 / (b2 + b0)


def _check_prime(x, name):
    if not np.isfinite(x) or not -1.0 < x < 1.0:
        raise OutOfRange(f"{name} must lie in (-1, 1), got {x!r}")
    return float(x)


def theorem43_cubic(a1p, a2p, case):
    a1 = _check_prime(a1p, "a1p")
    a2 = _check_prime(a2p, "a2p")
    case = Case(case)
    if case is Case.MINUS_ONE:
        c2 = -(3 * a1 + 3 * a2 - a1 * a2 + 1) / 2
        c1 = (3 * a1 + 3 * a2 + a1 * a2 - 1) / 2
    else:
        c2 = (-a1 + 3 * a2 - a1 * a2 + 1) / 2
        c1 = (-3 * a1 + a2 - a1 * a2 + 1) / 2
    c0 = -a1 * a2
    return Theorem43Cubic(a1, a2, case, complex(c2), complex(c1), complex(c0))


def theorem43_cubic_general(a1p, a2p, rotation):
    """Coefficients for an arbitrary unimodular exp(i theta'); cross-checks the cases."""
    a1 = _check_prime(a1p, "a1p")
    a2 = _check_prime(a2p, "a2p")
    e = 1.0 / complex(rotation)
    c2 = (a1 + 3 * a2 - a1 * a2 + 1) / 2 * e - a1
    c1 = a2 * e**2 - (3 * a1 + a2 + a1 * a2 - 1) / 2 * e
    c0 = -a1 * a2 * e**2
    return c2, c1, c0


def theorem43_condition_value(a1p, a2p, case):
    a1 = _check_prime(a1p, "a1p")
    a2 = _check_prime(a2p, "a2p")
    if Case(case) is Case.MINUS_ONE:
        return 1 + 3 * a1 + 3 * a2 + a1 * a2
    return 1 + 3 * a1 + 3 * a1 * a2 + a1**2 * a2


def theorem43_condition_check(a1p, a2p, case):
    v = theorem43_condition_value(a1p, a2p, case)
    return bool(v >= 0) if Case(case) is Case.MINUS_ONE else bool(v > 0)
