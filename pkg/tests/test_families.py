import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from xpoly.errors import DegenerateDegree, ParameterViolation
from xpoly.families import (
    Family,
    FamilySpec,
    StableEvaluator,
    deforming_poly,
    exceptional_poly,
    mirror_map,
)
from xpoly.polynomial import derivative, evaluate, jacobi, laguerre
from xpoly.roots import find_roots

EXT = 256
JAC = {"J1": (4.0, 3.0), "J2": (3.0, 4.0)}


def spec_for(family, ell, n, g=2.0):
    if family in JAC:
        g, h = JAC[family]
        return FamilySpec(family, g, h, ell, n)
    return FamilySpec(family, g, None, ell, n)


def max_rel(p, ref):
    with mpmath.workdps(oracles.DPS):
        got = [mpmath.mpf(str(c)) for c in p.coeffs]
        return float(max(abs(a - b) for a, b in zip(got, ref)) / max(abs(b) for b in ref))


class TestFamilySpec:
    def test_family_constraints(self):
        with pytest.raises(ParameterViolation):
            FamilySpec("L1", 0.0)
        with pytest.raises(ParameterViolation):
            FamilySpec("J2", 4.0, 3.0)
        with pytest.raises(ParameterViolation):
            FamilySpec("J1", 3.0, 4.0)
        with pytest.raises(ParameterViolation):
            FamilySpec("J2", 3.0)
        with pytest.raises(ParameterViolation):
            FamilySpec("L1", 1.0, ell=-1)
        with pytest.raises(ParameterViolation):
            FamilySpec("L1", 1.0, n=1.5)

    def test_unchecked_spec_skips_ordering(self):
        assert FamilySpec("J2", 5.0, 5.0, check=False).g == 5.0

    def test_shift_and_mirror(self):
        s = FamilySpec("J2", 3.0, 4.0, 2, 1)
        assert s.shifted() == FamilySpec("J2", 4.0, 5.0, 2, 1)
        assert s.mirrored() == FamilySpec("J1", 4.0, 3.0, 2, 1)
        assert s.mirrored().mirrored() == s
        assert s.degree == 3
        assert Family.L1.domain == (0.0, float("inf"))
        assert Family.J2.domain == (-1.0, 1.0)


class TestDeforming:
    def test_l1_degree_one_root(self):
        # xi_1 = g + 1/2 + eta
        rs = find_roots(deforming_poly(FamilySpec("L1", 2.0, ell=1)), 1e-13, 50)
        assert rs.roots[0] == pytest.approx(-2.5)

    def test_l1_table_row(self):
        rs = find_roots(deforming_poly(FamilySpec("L1", 2.0, ell=5), precision=EXT), 1e-13, 500)
        np.testing.assert_allclose(np.sort(rs.roots.real),
                                   [-21.0456, -14.0274, -9.1375, -5.5071, -2.7824], atol=1e-4)

    def test_j2_shifted_row(self):
        p = deforming_poly(FamilySpec("J2", 3.0, 4.0, ell=4), shifted=True, precision=EXT)
        z = find_roots(p, 1e-13, 500).roots
        upper = np.sort_complex(z[z.imag > 0])
        np.testing.assert_allclose(upper, [1.56846 + 2.10278j, 3.00297 + 0.91199j], atol=1e-5)

    @pytest.mark.parametrize("family", ["L1", "L2", "J1", "J2"])
    @pytest.mark.parametrize("shifted", [False, True])
    def test_matches_oracle(self, family, shifted):
        s = spec_for(family, 4, 0)
        ref = oracles.deforming_coeffs(family, s.g, s.h, 4, shifted)
        assert max_rel(deforming_poly(s, shifted, EXT), ref) < 1e-30


class TestExceptional:
    @pytest.mark.parametrize("family", ["L1", "L2", "J1", "J2"])
    @pytest.mark.parametrize("ell,n", [(1, 0), (1, 3), (3, 4), (5, 10)])
    def test_matches_oracle(self, family, ell, n):
        s = spec_for(family, ell, n)
        ref = oracles.exceptional_coeffs(family, s.g, s.h, ell, n)
        assert max_rel(exceptional_poly(s, EXT), ref) < 1e-25

    @pytest.mark.parametrize("family", ["L1", "L2", "J1", "J2"])
    def test_degree_is_ell_plus_n(self, family):
        for ell in (1, 4, 10):
            for n in (0, 7, 60):
                assert exceptional_poly(spec_for(family, ell, n)).degree == ell + n

    @pytest.mark.parametrize("family", ["L1", "L2", "J1", "J2"])
    def test_ell_zero_is_classical(self, family):
        # with xi_0 = 1 the bilinear form collapses to P_n at the unshifted parameters
        s = spec_for(family, 0, 5)
        p = exceptional_poly(s, EXT)
        if s.family.is_laguerre:
            q = laguerre(5, s.g - 0.5, EXT)
        else:
            q = jacobi(5, s.g - 0.5, s.h - 0.5, EXT)
        ratio = [float(a / b) for a, b in zip(p.coeffs, q.coeffs)]
        assert np.ptp(ratio) <= 1e-12 * abs(ratio[0])

    def test_degenerate_degree_is_reported(self):
        with pytest.raises(DegenerateDegree):
            exceptional_poly(FamilySpec("J2", 1e3, 1e3, 1, 2, check=False), EXT)

    def test_mirror_of_deforming_polynomial(self):
        j1 = deforming_poly(FamilySpec("J1", 4.0, 3.0, ell=4), precision=EXT)
        j2 = deforming_poly(FamilySpec("J2", 3.0, 4.0, ell=4), precision=EXT)
        m = mirror_map(j1, 4)
        dev = max(abs(a - b) for a, b in zip(m.coeffs, j2.coeffs)) / max(abs(c) for c in j2.coeffs)
        assert dev <= 1e-10

    @given(st.lists(st.floats(-5, 5, allow_nan=False), min_size=1, max_size=7), st.integers(0, 6))
    def test_mirror_map_is_involution(self, coeffs, ell):
        from xpoly.polynomial import DensePoly
        p = DensePoly(coeffs)
        assert np.array_equal(mirror_map(mirror_map(p, ell), ell).coeffs, p.coeffs)

    @pytest.mark.parametrize("ell", [1, 2, 3])
    @pytest.mark.parametrize("n", [0, 2, 5])
    def test_mirror_of_full_polynomial(self, ell, n):
        j1 = exceptional_poly(FamilySpec("J1", 4.0, 3.0, ell, n), EXT)
        j2 = exceptional_poly(FamilySpec("J2", 3.0, 4.0, ell, n), EXT)
        m = mirror_map(j1, ell + n)
        c = float(j2.leading / m.leading)
        dev = max(abs(c * a - b) for a, b in zip(m.coeffs, j2.coeffs)) / max(abs(x) for x in j2.coeffs)
        assert dev <= 1e-10


class TestStableEvaluator:
    @pytest.mark.parametrize("family", ["L1", "L2", "J1", "J2"])
    def test_ratio_matches_extended_coefficients(self, family):
        s = spec_for(family, 4, 40)
        ev = StableEvaluator(s)
        p = exceptional_poly(s, 400)
        z = np.array([-3.0 + 0.5j, 0.3 + 0.1j, 2.0 - 1.0j])
        val, der, _ = ev(z)
        for k, zk in enumerate(z):
            ref_v = evaluate(p, zk)
            ref_d = evaluate(derivative(p), zk)
            assert complex(val[k] / der[k]) == pytest.approx(complex(ref_v / ref_d), rel=1e-12)
