import math
from fractions import Fraction

import pytest

from specdeform import repcat as rc


SU = rc.suq2_ring(Fraction(1, 2))
AO3 = rc.aof_ring(3)


# -- independent oracle: decompose character products in Z[x] --
#
# The class r_k has character the Chebyshev-like polynomial p_k with
# p_0 = 1, p_1 = x, p_{k+1} = x p_k - p_{k-1}.  Fusion multiplicities are
# the coefficients of p_j * p_k re-expanded in the p-basis.

def _cheb(k):
    polys = [[1], [0, 1]]
    while len(polys) <= k:
        prev, cur = polys[-2], polys[-1]
        nxt = [0] + cur
        nxt = [a - b for a, b in zip(nxt, prev + [0] * (len(nxt) - len(prev)))]
        polys.append(nxt)
    return polys[k]


def _poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def fusion_oracle(j, k):
    prod = _poly_mul(_cheb(j), _cheb(k))
    coeffs = {}
    # repeatedly strip the top-degree term
    while any(prod):
        deg = max(i for i, a in enumerate(prod) if a)
        c = prod[deg]
        coeffs[deg] = c
        basis = _cheb(deg) + [0] * (len(prod) - deg - 1)
        prod = [a - c * b for a, b in zip(prod, basis)]
    return coeffs


class TestFuse:
    def test_unit_law(self):
        assert rc.fuse(SU, SU.label(0), SU.label(5)) == [SU.label(5)]

    def test_r1_r1(self):
        out = rc.fuse(SU, SU.label(1), SU.label(1))
        assert out == [SU.label(0), SU.label(2)]
        dims = [rc.dim_classical(SU, x) for x in out]
        assert sum(dims) == 2 * 2 == 1 + 3

    def test_against_character_oracle(self):
        for j in range(9):
            for k in range(9):
                out = rc.fuse(SU, SU.label(j), SU.label(k))
                got = {x.index: 1 for x in out}
                assert got == fusion_oracle(j, k), (j, k)

    def test_aof_dimension_bookkeeping(self):
        out = rc.fuse(AO3, AO3.label(2), AO3.label(2))
        assert [x.index for x in out] == [0, 2, 4]
        dims = [rc.dim_classical(AO3, x) for x in out]
        assert dims == [1, 8, 55]
        assert sum(dims) == 8 * 8

    def test_family_mismatch(self):
        with pytest.raises(ValueError):
            rc.fuse(SU, SU.label(1), AO3.label(1))


class TestDimensions:
    def test_m2_is_k_plus_1(self):
        assert rc.dim_classical(SU, SU.label(7)) == 8

    def test_m3_values(self):
        assert rc.dim_classical(AO3, AO3.label(0)) == 1
        assert rc.dim_classical(AO3, AO3.label(2)) == 8  # 3^2 - 1

    def test_recursion_matches_closed_form(self):
        for m in (2, 3, 4, 7):
            ring = rc.aof_ring(m)
            for k in range(31):
                assert rc.dim_classical(ring, ring.label(k)) == \
                    rc.dim_classical_closed_form(m, k)

    def test_log_concavity(self):
        for m in (3, 4, 5):
            ring = rc.aof_ring(m)
            d = [rc.dim_classical(ring, ring.label(k)) for k in range(31)]
            for k in range(1, 30):
                assert d[k + 1] * d[k - 1] <= d[k] ** 2

    def test_strict_growth_already_at_m3(self):
        # growth beyond k+1 holds for every m >= 3, not only m >= 4
        for m in (3, 4, 5):
            ring = rc.aof_ring(m)
            for k in range(1, 31):
                assert rc.dim_classical(ring, ring.label(k)) > k + 1

    def test_m_below_2_rejected(self):
        with pytest.raises(ValueError):
            rc.aof_ring(1)


class TestQuantumDimension:
    def test_r0(self):
        assert rc.dim_quantum(SU, SU.label(0), Fraction(1, 3)) == 1

    def test_r1_at_half(self):
        assert rc.dim_quantum(SU, SU.label(1), Fraction(1, 2)) == Fraction(5, 2)

    def test_r2_at_half(self):
        assert rc.dim_quantum(SU, SU.label(2), Fraction(1, 2)) == Fraction(21, 4)

    def test_q_one_gives_classical(self):
        for k in range(6):
            assert rc.dim_quantum(SU, SU.label(k), 1) == k + 1

    def test_zero_q_rejected(self):
        with pytest.raises(ValueError):
            rc.dim_quantum(SU, SU.label(1), 0)

    @pytest.mark.parametrize("q", [Fraction(1, 2), Fraction(-1, 3), Fraction(2, 5)])
    def test_fusion_compatibility(self, q):
        for j in range(16):
            for k in range(16):
                out = rc.fuse(SU, SU.label(j), SU.label(k))
                lhs = sum(rc.dim_quantum(SU, x, q) for x in out)
                rhs = rc.dim_quantum(SU, SU.label(j), q) * \
                    rc.dim_quantum(SU, SU.label(k), q)
                assert lhs == rhs

    def test_classical_fusion_compatibility(self):
        for ring in (SU, AO3):
            for j in range(16):
                for k in range(16):
                    out = rc.fuse(ring, ring.label(j), ring.label(k))
                    assert sum(rc.dim_classical(ring, x) for x in out) == \
                        rc.dim_classical(ring, ring.label(j)) * \
                        rc.dim_classical(ring, ring.label(k))


class TestOrthogonalMatrix:
    def test_f_q_half(self):
        spec = rc.f_q_matrix(Fraction(1, 2))
        assert abs(spec.c - (-1)) < 1e-12
        assert spec.shape == "type2"
        a = spec.as_array()
        assert abs(a[0, 1] - math.sqrt(0.5)) < 1e-15
        assert abs(a[1, 0] + math.sqrt(2)) < 1e-15

    def test_identity3(self):
        rep = rc.check_orthogonal_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        assert rep.admissible and abs(rep.c - 1) < 1e-12
        assert rep.shape == "type1" and rep.spec.k == 0

    def test_non_scalar_rejected(self):
        rep = rc.check_orthogonal_matrix([[1, 1], [0, 1]])
        assert not rep.admissible

    def test_singular_rejected(self):
        rep = rc.check_orthogonal_matrix([[1, 1], [1, 1]])
        assert not rep.admissible


class TestValidatePartner:
    def test_f_q_accepted_dimension_preserving(self):
        e = rc.validate_partner(Fraction(1, 2), rc.f_q_matrix(Fraction(1, 2)))
        assert e.dimension_preserving
        assert e.residual == 0

    def test_negative_q_dim3(self):
        lam = math.sqrt((7 - math.sqrt(13)) / 6)
        spec = rc.canonical_f_matrix([lam], 3, +1)
        e = rc.validate_partner(Fraction(-1, 3), spec)
        assert not e.dimension_preserving
        assert e.target.m == 3

    def test_rejection_with_residual(self):
        spec = rc.canonical_f_matrix([1.0, 1.0], 4, -1)
        with pytest.raises(rc.PartnerRejected) as exc:
            rc.validate_partner(Fraction(1, 2), spec)
        assert abs(exc.value.residual - 1.5) < 1e-12

    def test_wrong_shape_for_sign(self):
        spec = rc.canonical_f_matrix([0.5], 2, +1)
        with pytest.raises(rc.PartnerRejected):
            rc.validate_partner(Fraction(1, 2), spec)


class TestSubcategory:
    def test_even_closed(self):
        s = rc.even_subcategory(SU)
        out = rc.fuse(SU, SU.label(2), SU.label(2))
        assert all(s.contains(x) for x in out)
        assert rc.subcategory_indices(s, 8) == [0, 2, 4, 6, 8]

    def test_even_closure_brute_force_to_20(self):
        s = rc.even_subcategory(SU)
        idx = rc.subcategory_indices(s, 20)
        for j in idx:
            for k in idx:
                for x in rc.fuse(SU, SU.label(j), SU.label(k)):
                    if x.index <= 20:
                        assert s.contains(x)

    def test_odd_set_not_closed(self):
        with pytest.raises(ValueError):
            rc.Subcategory(SU, frozenset({0, 1, 3, 5}))

    def test_r0_r1_not_closed(self):
        with pytest.raises(ValueError):
            rc.Subcategory(SU, frozenset({0, 1}))


class TestRestrict:
    def test_restrict_to_even_relabels_qiso(self):
        e = rc.validate_partner(Fraction(1, 2), rc.f_q_matrix(Fraction(1, 2)))
        r = rc.restrict_equivalence(e, rc.even_subcategory(SU))
        assert r.qiso_names == ("SO_q(3)", "I(F)")
        assert r.in_domain(SU.label(4))
        assert not r.in_domain(SU.label(3))

    def test_full_restriction_is_identity_like(self):
        e = rc.validate_partner(Fraction(1, 2), rc.f_q_matrix(Fraction(1, 2)))
        s = rc.Subcategory(SU, frozenset(range(0, 21)), check_bound=10)
        r = rc.restrict_equivalence(e, s)
        assert r.in_domain(SU.label(7))

    def test_phi_preserves_index(self):
        lam = math.sqrt((7 - math.sqrt(13)) / 6)
        spec = rc.canonical_f_matrix([lam], 3, +1)
        e = rc.validate_partner(Fraction(-1, 3), spec)
        y = e.phi(rc.IrrepLabel(rc.Family.SUQ2, 4))
        assert y.index == 4 and y.family == rc.Family.AOF
        assert rc.dim_classical(e.target, y) == 55
