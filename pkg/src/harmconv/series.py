"""Truncated complex power series.

Every analytic object in the package (analytic parts, co-analytic parts,
dilatations, shears) is carried as a :class:`TruncatedSeries`: the
coefficients c_0..c_N of a power series about the origin.  Binary operations
truncate to the smaller order; nothing is ever zero-padded.
"""

from __future__ import annotations

import numpy as np
from scipy.signal import lfilter

from .errors import (
    DivisorVanishesAtOrigin,
    NonFiniteValue,
    NotUnimodular,
    OutsideDisk,
)

DEFAULT_ORDER = 128
DIVIDE_FLOOR = 1e-12
UNIT_MODULUS_TOL = 1e-12
R_MAX = 0.999


def check_finite(*values):
    for v in values:
        if not np.all(np.isfinite(v)):
            raise NonFiniteValue(f"non-finite value {v!r}")


def check_unimodular(mu, tol=UNIT_MODULUS_TOL, name="mu"):
    check_finite(mu)
    if abs(abs(mu) - 1.0) > tol:
        raise NotUnimodular(f"|{name}| = {abs(mu)!r} is not 1 (tol {tol})")
    return complex(mu)


class TruncatedSeries:
    """Coefficients c_0..c_N of a complex power series, immutable.

    >>> s = TruncatedSeries([0, 1, 1, 1])
    >>> s.order
    3
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=complex).ravel()
        if c.size == 0:
            raise ValueError("a series needs at least one coefficient")
        check_finite(c)
        c.setflags(write=False)
        self._c = c

    @property
    def coeffs(self):
        return self._c

    @property
    def order(self):
        return self._c.size - 1

    def __len__(self):
        return self._c.size

    def __getitem__(self, k):
        return self._c[k]

    def __repr__(self):
        head = ", ".join(f"{c:.6g}" for c in self._c[:6])
        more = ", ..." if self._c.size > 6 else ""
        return f"TruncatedSeries(order={self.order}, [{head}{more}])"

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._c.shape == other._c.shape and bool(np.all(self._c == other._c))

    __hash__ = None

    def __add__(self, other):
        return linear_combine(1.0, self, 1.0, other)

    def __sub__(self, other):
        return linear_combine(1.0, self, -1.0, other)

    def __neg__(self):
        return TruncatedSeries(-self._c)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return cauchy_product(self, other)
        check_finite(other)
        return TruncatedSeries(complex(other) * self._c)

    __rmul__ = __mul__

    def __call__(self, z, r_max=R_MAX):
        return evaluate(self, z, r_max=r_max)

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(self._c[: order + 1])

    def shift(self, k=1):
        """Multiply by z**k, keeping the order."""
        out = np.zeros_like(self._c)
        if k < self._c.size:
            out[k:] = self._c[: self._c.size - k]
        return TruncatedSeries(out)

    def max_abs(self):
        return float(np.max(np.abs(self._c)))

    # constructors

    @classmethod
    def zeros(cls, order=DEFAULT_ORDER):
        return cls(np.zeros(order + 1, dtype=complex))

    @classmethod
    def monomial(cls, k, order=DEFAULT_ORDER, coefficient=1.0):
        c = np.zeros(order + 1, dtype=complex)
        if k <= order:
            c[k] = coefficient
        return cls(c)

    @classmethod
    def geometric(cls, ratio=1.0, order=DEFAULT_ORDER):
        """Series of 1/(1 - ratio*z)."""
        return cls(np.power(complex(ratio), np.arange(order + 1)))

    @classmethod
    def from_rational(cls, num, den, order=DEFAULT_ORDER):
        """Expand num(z)/den(z) (ascending polynomial coefficients)."""
        num = np.atleast_1d(np.asarray(num, dtype=complex))
        den = np.atleast_1d(np.asarray(den, dtype=complex))
        check_finite(num, den)
        if abs(den[0]) <= DIVIDE_FLOOR:
            raise DivisorVanishesAtOrigin(f"|den(0)| = {abs(den[0])!r}")
        impulse = np.zeros(order + 1, dtype=complex)
        impulse[0] = 1.0
        return cls(lfilter(num, den, impulse))

    @classmethod
    def from_poles(cls, num, poles, order=DEFAULT_ORDER, scale=1.0):
        """Expand num(z) / (scale * prod(1 - p z)) one first-order factor at a time.

        With poles on or near the unit circle the cascade keeps the rounding
        error linear in k, where a single recurrence on the multiplied-out
        denominator lets it grow like a power of k set by the pole multiplicity.
        """
        num = np.atleast_1d(np.asarray(num, dtype=complex))
        check_finite(num, poles, scale)
        if abs(scale) <= DIVIDE_FLOOR:
            raise DivisorVanishesAtOrigin(f"|den(0)| = {abs(scale)!r}")
        y = np.zeros(order + 1, dtype=complex)
        m = min(num.size, order + 1)
        y[:m] = num[:m]
        for p in poles:
            y = lfilter([1.0], [1.0, -complex(p)], y)
        return cls(y / scale)


def _pair(s, t):
    n = min(s.order, t.order) + 1
    return s.coeffs[:n], t.coeffs[:n]


def linear_combine(alpha, s, beta, t):
    check_finite(alpha, beta)
    a, b = _pair(s, t)
    return TruncatedSeries(complex(alpha) * a + complex(beta) * b)


def cauchy_product(s, t):
    a, b = _pair(s, t)
    return TruncatedSeries(np.convolve(a, b)[: a.size])


def series_divide(num, den):
    a, b = _pair(num, den)
    if abs(b[0]) <= DIVIDE_FLOOR:
        raise DivisorVanishesAtOrigin(
            f"|den_0| = {abs(b[0])!r} is below the division floor {DIVIDE_FLOOR}"
        )
    # q*den = num is a lower-triangular Toeplitz system; lfilter runs the recurrence
    return TruncatedSeries(lfilter(a, b, np.r_[1.0 + 0j, np.zeros(a.size - 1)]))


def differentiate(s):
    if s.order < 1:
        raise ValueError("differentiate needs order >= 1")
    k = np.arange(1, s.order + 1)
    return TruncatedSeries(k * s.coeffs[1:])


def antidifferentiate(s):
    k = np.arange(1, s.order + 2)
    return TruncatedSeries(np.r_[0.0, s.coeffs / k])


def hadamard(s, t):
    a, b = _pair(s, t)
    # spelled out in reals: numpy's complex multiply may fuse operations
    # asymmetrically, and s * t must equal t * s bit for bit
    re = a.real * b.real - a.imag * b.imag
    im = a.real * b.imag + a.imag * b.real
    return TruncatedSeries(re + 1j * im)


def _check_disk(z, r_max):
    if not 0 < r_max < 1:
        raise ValueError(f"r_max must lie in (0, 1), got {r_max!r}")
    check_finite(z)
    m = np.max(np.abs(z)) if np.ndim(z) else abs(z)
    if m > r_max:
        raise OutsideDisk(f"|z| = {m!r} exceeds the evaluation radius {r_max}")


def evaluate(s, z, r_max=R_MAX):
    """Horner evaluation; ``z`` may be a scalar or an array."""
    _check_disk(z, r_max)
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for c in s.coeffs[::-1]:
        acc = acc * z + c
    return complex(acc) if acc.ndim == 0 else acc


def tail_bound(s, r):
    """Geometric estimate of the truncation tail at radius ``r``.

    Returns r**(N+1)/(1-r) scaled by the largest coefficient magnitude in the
    upper half of the series.  It is an estimate, not a rigorous bound, when
    coefficients keep growing past N.
    """
    r = float(r)
    if not 0 <= r < 1:
        raise OutsideDisk(f"radius {r!r} is not inside the disk")
    upper = s.coeffs[s.order // 2 :]
    scale = max(1.0, float(np.max(np.abs(upper))))
    return scale * r ** (s.order + 1) / (1.0 - r)


def evaluate_with_tail(s, z, r_max=R_MAX):
    value = evaluate(s, z, r_max=r_max)
    return value, tail_bound(s, float(np.max(np.abs(z))))


def evaluate_rings(s, radii, angles_per_ring):
    """Values on the points r*exp(2*pi*i*j/m); shape (len(radii), m).

    Coefficients are folded modulo m and summed with one FFT per ring, so the
    cost does not grow with the number of sample angles times the order.
    """
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    if np.any(radii < 0) or np.any(radii >= 1):
        raise OutsideDisk("ring radii must lie in [0, 1)")
    m = int(angles_per_ring)
    c = s.coeffs
    pad = (-c.size) % m
    k = np.arange(c.size)
    out = np.empty((radii.size, m), dtype=complex)
    for i, r in enumerate(radii):
        w = c * np.power(r, k)
        folded = np.r_[w, np.zeros(pad)].reshape(-1, m).sum(axis=0)
        out[i] = np.fft.ifft(folded) * m
    return out


def compose_rotation(s, mu):
    """Coefficients of s(mu*z) for unimodular mu."""
    mu = check_unimodular(mu)
    return TruncatedSeries(np.power(mu, np.arange(s.order + 1)) * s.coeffs)


def order_for_radius(r, growth=3, tol=1e-13, minimum=DEFAULT_ORDER):
    """Smallest N with N**growth * r**N / (1 - r) below ``tol``.

    ``growth`` is the polynomial growth degree of the coefficients being
    summed (3 for derivatives of convolutions of half-plane maps).
    """
    if not 0 < r < 1:
        raise OutsideDisk(f"radius {r!r} is not inside the disk")
    log_r = np.log(r)
    target = np.log(tol) + np.log(1.0 - r)
    n = max(int(minimum), 2)
    while growth * np.log(n) + n * log_r > target:
        n = int(n * 1.1) + 1
    return n
