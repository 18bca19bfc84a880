"""Grid certificates for local univalence, directional convexity and membership.

All checks work on a :class:`DiskGrid` of concentric rings with equally
spaced angles.  Series are evaluated ring by ring with one FFT each, which
keeps high truncation orders affordable near the boundary circle.

A certificate is numerical evidence on a finite grid, never a proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import series as S
from .errors import ConstantFunction, NotLocallyUnivalent, NotInDisk, OutOfRange
from .harmonic import DilatationSpec, HarmonicMap, reduce_angle
from .series import TruncatedSeries

CERT_TOL = 1e-9
CONSISTENCY_TOL = 1e-9
DEFAULT_MAX_RADIUS = 0.995
TWO_PI = 2.0 * math.pi


def default_radii(levels=24, max_radius=DEFAULT_MAX_RADIUS, min_radius=0.1):
    """Radii with geometrically shrinking distance to the unit circle."""
    return tuple(1.0 - np.geomspace(1.0 - min_radius, 1.0 - max_radius, levels))


@dataclass(frozen=True)
class DiskGrid:
    radii: tuple = field(default_factory=default_radii)
    angles_per_ring: int = 256

    def __post_init__(self):
        r = tuple(float(x) for x in np.atleast_1d(self.radii))
        if not r or any(not 0.0 < x < 1.0 for x in r):
            raise OutOfRange("grid radii must lie in (0, 1)")
        if any(b <= a for a, b in zip(r, r[1:])):
            raise OutOfRange("grid radii must be strictly increasing")
        if int(self.angles_per_ring) < 8:
            raise OutOfRange("a grid needs at least 8 angles per ring")
        object.__setattr__(self, "radii", r)
        object.__setattr__(self, "angles_per_ring", int(self.angles_per_ring))

    @property
    def max_radius(self):
        return self.radii[-1]

    @property
    def angles(self):
        return TWO_PI * np.arange(self.angles_per_ring) / self.angles_per_ring

    @property
    def points(self):
        """Complex grid points, shape (rings, angles)."""
        return np.asarray(self.radii)[:, None] * np.exp(1j * self.angles)[None, :]

    @property
    def size(self):
        return len(self.radii) * self.angles_per_ring

    def refined(self):
        """Same rings, twice the angles; the old points are a subset."""
        return DiskGrid(self.radii, 2 * self.angles_per_ring)

    def evaluate(self, s):
        return S.evaluate_rings(s, self.radii, self.angles_per_ring)

    def point(self, index):
        i, j = np.unravel_index(index, (len(self.radii), self.angles_per_ring))
        return complex(self.radii[i] * np.exp(1j * TWO_PI * j / self.angles_per_ring))

    def as_dict(self):
        return {"radii": list(self.radii), "angles_per_ring": self.angles_per_ring}


def _witness(values, grid, mode):
    idx = int(np.argmin(values) if mode == "min" else np.argmax(values))
    return float(values.flat[idx]), grid.point(idx)


@dataclass
class UnivalenceReport:
    min_jacobian: float
    max_dilatation_modulus: float
    jacobian_witness: complex
    dilatation_witness: complex
    grid: DiskGrid
    consistent: bool
    tail_bound: float

    @property
    def passed(self):
        return self.min_jacobian > 0 and self.max_dilatation_modulus < 1

    def as_dict(self):
        return {
            "min_jacobian": self.min_jacobian,
            "max_dilatation_modulus": self.max_dilatation_modulus,
            "jacobian_witness": [self.jacobian_witness.real, self.jacobian_witness.imag],
            "dilatation_witness": [self.dilatation_witness.real, self.dilatation_witness.imag],
            "consistent": self.consistent,
            "tail_bound": self.tail_bound,
            "passed": self.passed,
            "grid": self.grid.as_dict(),
        }


def derivative_values(f, grid):
    hp = grid.evaluate(S.differentiate(f.h))
    gp = grid.evaluate(S.differentiate(f.g))
    return hp, gp


def local_univalence(f, grid=None):
    """Extremes of J_f = |h'|^2 - |g'|^2 and |g'/h'| over the grid."""
    grid = grid or DiskGrid()
    hp, gp = derivative_values(f, grid)
    jac = np.abs(hp) ** 2 - np.abs(gp) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        mod = np.where(np.abs(hp) > 0, np.abs(gp) / np.abs(hp), np.inf)
    # sign(J) must agree with |omega| < 1 wherever J is clear of zero
    clear = np.abs(jac) > CONSISTENCY_TOL * np.maximum(np.abs(hp) ** 2, 1.0)
    consistent = bool(np.all((jac[clear] > 0) == (mod[clear] < 1)))
    jmin, jw = _witness(jac, grid, "min")
    wmax, ww = _witness(mod, grid, "max")
    tail = S.tail_bound(S.differentiate(f.h), grid.max_radius)
    return UnivalenceReport(jmin, wmax, jw, ww, grid, consistent, tail)


def _rz_parts(dphi_values, points):
    """Real-valued pieces P, Q, R with

    Re{e^{i mu}(1 - 2 z e^{-i mu} cos nu + z^2 e^{-2i mu}) phi'(z)}
        = cos(mu) P - sin(mu) Q - 2 cos(nu) R.
    """
    a = dphi_values
    c = points**2 * a
    b = points * a
    return a.real + c.real, a.imag - c.imag, b.real


def rz_value(phi, mu, nu, z, r_max=S.R_MAX):
    """Re{e^{i mu}(1 - 2 z e^{-i mu} cos nu + z^2 e^{-2i mu}) phi'(z)}."""
    z = np.asarray(z, dtype=complex)
    d = S.evaluate(S.differentiate(phi), z, r_max)
    w = np.exp(1j * mu) * (1.0 - 2.0 * z * np.exp(-1j * mu) * np.cos(nu) + z**2 * np.exp(-2j * mu))
    out = np.real(w * d)
    return float(out) if out.ndim == 0 else out


@dataclass
class ConvexityCertificate:
    mu: float
    nu: float
    min_real_part: float
    witness: complex
    grid: DiskGrid
    tail_bound: float = 0.0

    def passes(self, tol=CERT_TOL):
        return self.min_real_part >= -tol

    def as_dict(self):
        return {
            "mu": self.mu,
            "nu": self.nu,
            "min_real_part": self.min_real_part,
            "witness": [self.witness.real, self.witness.imag],
            "tail_bound": self.tail_bound,
            "grid": self.grid.as_dict(),
        }


class _RZField:
    """phi' sampled once on a grid; answers min over the grid for any (mu, nu)."""

    def __init__(self, phi, grid):
        dphi = S.differentiate(phi)
        if dphi.max_abs() <= 1e-14:
            raise ConstantFunction("phi' vanishes identically")
        self.grid = grid
        self.P, self.Q, self.R = _rz_parts(grid.evaluate(dphi), grid.points)
        self.tail = S.tail_bound(dphi, grid.max_radius)

    def values(self, mu, nu):
        return math.cos(mu) * self.P - math.sin(mu) * self.Q - 2.0 * math.cos(nu) * self.R

    def minimum(self, mu, nu):
        return float(np.min(self.values(mu, nu)))

    def certificate(self, mu, nu):
        v, w = _witness(self.values(mu, nu), self.grid, "min")
        return ConvexityCertificate(mu, nu, v, w, self.grid, self.tail)


def rz_certificate(phi, mu, nu, grid=None):
    grid = grid or DiskGrid()
    return _RZField(phi, grid).certificate(reduce_angle(mu), float(nu))


def _better(v, mu, nu, best):
    bv, bmu, bnu = best
    if v != bv:
        return v > bv
    return (mu, nu) < (bmu, bnu)


def _search(field, mu_steps, nu_steps, refine_rounds=5, candidates=32):
    mus = TWO_PI * np.arange(mu_steps) / mu_steps
    nus = math.pi * np.arange(nu_steps) / max(nu_steps - 1, 1)
    # The expression is the real part of an analytic function, so its minimum over
    # the disk sits on the outer ring; rank all pairs there, then rescore the best.
    P, Q, R = field.P[-1], field.Q[-1], field.R[-1]
    base = np.cos(mus)[:, None] * P[None, :] - np.sin(mus)[:, None] * Q[None, :]
    cn = -2.0 * np.cos(nus)
    coarse = np.empty((mu_steps, nu_steps))
    for i in range(mu_steps):
        coarse[i] = np.min(base[i][None, :] + cn[:, None] * R[None, :], axis=1)
    flat = np.argsort(-coarse, axis=None, kind="stable")[:candidates]
    best = (-np.inf, np.inf, np.inf)
    for idx in flat:
        i, j = np.unravel_index(idx, coarse.shape)
        v = field.minimum(mus[i], nus[j])
        if _better(v, mus[i], nus[j], best):
            best = (v, float(mus[i]), float(nus[j]))
    step_mu = TWO_PI / mu_steps
    step_nu = math.pi / max(nu_steps - 1, 1)
    for _ in range(refine_rounds):
        step_mu /= 2.0
        step_nu /= 2.0
        moved = True
        while moved:
            moved = False
            _, m0, n0 = best
            for dm in (-step_mu, 0.0, step_mu):
                for dn in (-step_nu, 0.0, step_nu):
                    if dm == 0.0 and dn == 0.0:
                        continue
                    m = (m0 + dm) % TWO_PI
                    n = min(max(n0 + dn, 0.0), math.pi)
                    v = field.minimum(m, n)
                    if v > best[0]:
                        best = (v, m, n)
                        moved = True
    return field.certificate(best[1], best[2])


def rz_search(phi, grid=None, mu_steps=360, nu_steps=181):
    """Best (mu, nu) by grid minimum, then 5 rounds of step-halving refinement."""
    grid = grid or DiskGrid()
    return _search(_RZField(phi, grid), mu_steps, nu_steps)


def shear(f, alpha):
    """exp(-i alpha)(h - exp(2i alpha) g), the analytic shear in direction alpha."""
    return S.linear_combine(np.exp(-1j * alpha), f.h, -np.exp(1j * alpha), f.g)


def direction_convexity(f, alpha, grid=None, mu_steps=360, nu_steps=181, univalence=None):
    """Royster-Ziegler certificate for the shear of ``f`` in direction ``alpha``.

    Requires the local univalence check to pass first on the same grid; a
    precomputed ``univalence`` report may be passed to skip recomputing it.
    """
    grid = grid or DiskGrid()
    report = univalence if univalence is not None else local_univalence(f, grid)
    if not report.passed:
        raise NotLocallyUnivalent(
            f"min Jacobian {report.min_jacobian:.3g}, max |omega| {report.max_dilatation_modulus:.6g}",
            report,
        )
    return rz_search(shear(f, alpha), grid, mu_steps, nu_steps)


def map_values(f, grid):
    return grid.evaluate(f.h) + np.conj(grid.evaluate(f.g))


def halfplane_membership(f, a, gamma, grid=None):
    """min over the grid of Re(e^{i gamma} f / (1 + a)) + 1/2."""
    grid = grid or DiskGrid()
    a = complex(a)
    if abs(a) >= 1:
        raise NotInDisk(f"|a| = {abs(a)!r} must be < 1")
    w = map_values(f, grid)
    return float(np.min(np.real(np.exp(1j * gamma) * w / (1.0 + a)))) + 0.5


def strip_membership(f, b, beta, grid=None):
    """(lower_margin, upper_margin) of Re(f/(1+b)) against the strip walls."""
    grid = grid or DiskGrid()
    b = complex(b)
    if abs(b) >= 1:
        raise NotInDisk(f"|b| = {abs(b)!r} must be < 1")
    if not 0 < beta < math.pi:
        raise OutOfRange("beta must lie in (0, pi)")
    re = np.real(map_values(f, grid) / (1.0 + b))
    s = 2.0 * math.sin(beta)
    return float(np.min(re) - (beta - math.pi) / s), float(beta / s - np.max(re))


def _dilatation_values(w, points):
    if isinstance(w, DilatationSpec):
        return w(points)
    if isinstance(w, TruncatedSeries):
        return S.evaluate(w, points)
    return np.asarray(w(points), dtype=complex)


def fhm_realpart_check(omega1, omega2, theta, grid=None):
    """min over the grid of
    Re{(1 - w1 conj(w2)) / ((1 + e^{-2i theta} w1)(1 + e^{2i theta} conj(w2)))}.
    """
    grid = grid or DiskGrid()
    z = grid.points
    w1 = _dilatation_values(omega1, z)
    w2c = np.conj(_dilatation_values(omega2, z))
    num = 1.0 - w1 * w2c
    den = (1.0 + np.exp(-2j * theta) * w1) * (1.0 + np.exp(2j * theta) * w2c)
    return float(np.min(np.real(num / den)))
