import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmconv import canonical as C
from harmconv import geometry as G
from harmconv import harmonic as H
from harmconv import series as S
from harmconv.errors import ConstantFunction, NotLocallyUnivalent
from harmconv.harmonic import ClassTag, DilatationSpec, HarmonicMap
from harmconv.series import TruncatedSeries as T


@pytest.fixture(scope="module")
def f0(small_order):
    return C.right_halfplane_f0(small_order)


@pytest.fixture(scope="module")
def arctan_map(small_order):
    return C.strip_member(C.StripParams(0, math.pi / 2), DilatationSpec.monomial(0, 1), small_order)


def geometric_tail(order):
    return T(np.r_[0.0, np.ones(order)])


class TestGrid:
    def test_default(self):
        g = G.DiskGrid()
        assert g.max_radius == pytest.approx(0.995)
        assert g.points.shape == (24, 256)

    def test_refined(self):
        g = G.DiskGrid(G.default_radii(4, 0.9), 16).refined()
        assert g.points.shape == (4, 32)

    @given(st.floats(-0.9, 0.9), st.floats(0, 2 * math.pi), st.floats(0, 2 * math.pi), st.sampled_from([8, 12, 20]))
    @settings(max_examples=20, deadline=None)
    def test_monotone_refinement(self, a, gamma, theta, m):
        p = C.SlantParams(a, gamma)
        f = C.halfplane_member(p, DilatationSpec.moebius(2 * p.phi, p.a_prime, theta, 1), 400)
        coarse = G.DiskGrid(G.default_radii(5, 0.9), m)
        fine = coarse.refined()
        # shared points are summed by FFTs of different sizes, hence the rounding slack
        def slack(x):
            return 1e-12 * max(1.0, abs(x))

        jc = G.local_univalence(f, coarse).min_jacobian
        assert G.local_univalence(f, fine).min_jacobian <= jc + slack(jc)
        phi = G.shear(f, -p.phi)
        rc = G.rz_certificate(phi, 0.3, 1.0, coarse).min_real_part
        assert G.rz_certificate(phi, 0.3, 1.0, fine).min_real_part <= rc + slack(rc)

    def test_evaluate_matches_horner(self):
        g = G.DiskGrid(G.default_radii(4, 0.9), 16)
        s = T(1.0 / np.arange(1, 200))
        assert np.allclose(g.evaluate(s), S.evaluate(s, g.points), atol=1e-12)


class TestUnivalence:
    def test_f0(self, f0, small_grid):
        rep = G.local_univalence(f0, small_grid)
        assert rep.min_jacobian > 0 and rep.consistent
        assert rep.max_dilatation_modulus == pytest.approx(small_grid.max_radius, abs=1e-9)

    def test_conformal(self, small_grid):
        f = HarmonicMap([0, 1, 0.25], [0, 0, 0], ClassTag.H0)
        assert G.local_univalence(f, small_grid).max_dilatation_modulus == 0

    def test_f0_squared(self, f0, small_grid):
        rep = G.local_univalence(H.convolve(f0, f0), small_grid)
        z = small_grid.points
        closed = np.abs(z * (1 + 2 * z) / (2 + z)).max()
        assert rep.passed
        assert rep.max_dilatation_modulus == pytest.approx(closed, abs=1e-8)

    def test_flip_fails(self, small_grid):
        f = HarmonicMap([0, 0, 0], [0, 1, 0], ClassTag.UNCONSTRAINED)
        rep = G.local_univalence(f, small_grid)
        assert not rep.passed and rep.min_jacobian < 0
        assert rep.as_dict()["passed"] is False


class TestRZ:
    def test_identity(self):
        phi = T([0, 1])
        for r in (0.2, 0.7):
            assert G.rz_value(phi, 0, math.pi / 2, 1j * r) == pytest.approx(1 - r * r)

    def test_geometric_constant(self, small_grid, small_order):
        phi = geometric_tail(small_order)
        z = 0.6 * np.exp(1j * np.linspace(0, 6, 20))
        assert np.allclose(G.rz_value(phi, 0, 0, z), 1, atol=1e-10)
        cert = G.rz_certificate(phi, 0, 0, small_grid)
        assert cert.min_real_part == pytest.approx(1, abs=1e-9)

    def test_koebe_value(self):
        k = np.arange(301)
        phi = T(k.astype(float))
        z = 0.5 * np.exp(0.8j)
        assert G.rz_value(phi, 0, 0, z) == pytest.approx(((1 + z) / (1 - z)).real, abs=1e-10)

    def test_search_geometric(self, small_grid, small_order):
        cert = G.rz_search(geometric_tail(small_order), small_grid)
        assert cert.min_real_part >= 1 - 1e-9

    def test_search_koebe(self, small_grid, small_order):
        phi = T(np.arange(small_order + 1, dtype=float))
        cert = G.rz_search(phi, small_grid)
        assert cert.passes()
        assert abs(np.angle(np.exp(1j * cert.mu))) < 0.1

    def test_z_squared_fails(self, small_grid):
        cert = G.rz_search(T([0, 0, 1]), small_grid)
        assert cert.min_real_part < -1e-3

    def test_arctan_certificate(self, arctan_map, small_grid):
        phi = G.shear(arctan_map, 0.0)
        cert = G.rz_search(phi, small_grid)
        assert cert.passes()
        again = G.rz_certificate(phi, cert.mu, cert.nu, small_grid)
        assert again.min_real_part == pytest.approx(cert.min_real_part)

    def test_constant(self, small_grid):
        with pytest.raises(ConstantFunction):
            G.rz_search(T([3.0, 0, 0]), small_grid)


class TestDirectionConvexity:
    def test_f0_real_direction(self, f0, small_grid):
        cert = G.direction_convexity(f0, 0.0, small_grid)
        assert cert.passes()

    @pytest.mark.parametrize("alpha", [0, math.pi / 4, math.pi / 2, 3 * math.pi / 4])
    def test_f0_all_directions(self, f0, small_grid, alpha):
        assert G.direction_convexity(f0, alpha, small_grid).passes()

    def test_f0_times_arctan(self, f0, arctan_map, small_grid):
        assert G.direction_convexity(H.convolve(f0, arctan_map), 0.0, small_grid).passes()

    def test_requires_univalence(self, small_grid):
        f = HarmonicMap([0, 0.5, 0], [0, 1, 0], ClassTag.UNCONSTRAINED)
        with pytest.raises(NotLocallyUnivalent) as info:
            G.direction_convexity(f, 0.0, small_grid)
        assert info.value.report is not None

    def test_rotation_covariance(self, small_grid, small_order):
        p = C.SlantParams(0.3 + 0.1j, 0.4)
        f = C.halfplane_member(p, DilatationSpec.moebius(2 * p.phi, p.a_prime, 1.0, 1), small_order)
        a = G.direction_convexity(f, -p.phi, small_grid)
        b = G.direction_convexity(f, -p.phi + math.pi, small_grid)
        assert a.passes() and b.passes()


class TestMembership:
    def test_f0(self, f0, small_grid):
        assert G.halfplane_membership(f0, 0, 0, small_grid) > 0

    def test_flipped(self, f0, small_grid):
        assert G.halfplane_membership(-f0, 0, 0, small_grid) < 0

    def test_slanted(self, small_grid, small_order):
        f = C.slanted_halfplane_canonical(C.SlantParams(0.999999 * 1j, math.pi / 3), small_order)
        assert G.halfplane_membership(f, 0.999999 * 1j, math.pi / 3, small_grid) > 0

    def test_arctan(self, arctan_map, small_grid):
        lo, hi = G.strip_membership(arctan_map, 0, math.pi / 2, small_grid)
        assert lo > 0 and hi > 0

    def test_f0_leaves_strip(self, f0, small_grid):
        assert G.strip_membership(f0, 0, math.pi / 2, small_grid)[1] < 0

    def test_strip_scaling(self, small_order, small_grid):
        p = C.StripParams(0.3, math.pi / 2)
        f = C.strip_member(p, DilatationSpec.moebius(0.0, 0.3, 0.0, 1), small_order)
        lo, hi = G.strip_membership(f, 0.3, math.pi / 2, small_grid)
        re = np.real(G.map_values(f, small_grid)) / 1.3
        assert lo == pytest.approx(re.min() + math.pi / 4)
        assert hi == pytest.approx(math.pi / 4 - re.max())


class TestFHM:
    def test_zero(self, small_grid):
        assert G.fhm_realpart_check(T([0, 0]), T([0, 0]), 0.3, small_grid) == pytest.approx(1)

    def test_z(self, small_grid):
        w = DilatationSpec.monomial(0, 1)
        v = G.fhm_realpart_check(w, w, 0.0, small_grid)
        z = small_grid.points
        assert v == pytest.approx(np.min((1 - np.abs(z) ** 2) / np.abs(1 + z) ** 2))
        assert v > 0

    @given(
        st.floats(-0.95, 0.95), st.floats(0, 2 * math.pi), st.floats(0, 2 * math.pi),
        st.floats(-0.95, 0.95), st.floats(0, 2 * math.pi), st.floats(0, 2 * math.pi),
        st.floats(0, 2 * math.pi),
    )
    @settings(max_examples=50, deadline=None)
    def test_blaschke_pairs(self, a1, p1, i1, a2, p2, i2, theta):
        grid = G.DiskGrid(G.default_radii(8, 0.99), 64)
        w1 = DilatationSpec.moebius(p1, a1, i1)
        w2 = DilatationSpec.moebius(p2, a2, i2)
        assert G.fhm_realpart_check(w1, w2, theta, grid) > 0
