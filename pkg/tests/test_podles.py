from fractions import Fraction

import numpy as np
import pytest

from specdeform.suq2.pbw import SUq2
from specdeform.suq2.podles import (
    PodlesRelationError, podles_generators, relation_residuals_symbolic,
    rho_variant_generators, truncated_podles_triple,
)

Q = Fraction(1, 2)
T_PARAM = Fraction(1, 2)


@pytest.fixture(scope="module")
def pd():
    return podles_generators(Q, T_PARAM)


@pytest.fixture(scope="module")
def triple32():
    return truncated_podles_triple(Q, T_PARAM, 1, 0, Fraction(3, 2))


class TestGenerators:
    def test_relations_hold_exactly(self, pd):
        res = relation_residuals_symbolic(pd.ctx, pd.A, pd.B, pd.c)
        assert all(r == {} for r in res.values())

    def test_c_parameter(self, pd):
        assert pd.c == Fraction(3, 2)
        assert pd.u * pd.u == Fraction(3, 2)

    def test_rho_metadata(self, pd):
        # rho^2 = q^2 t^2 / ((q^2+1)^2 (1-t)) is carried as recorded data
        assert pd.rho2 == Q**2 * T_PARAM**2 / ((Q**2 + 1)**2 * (1 - T_PARAM))

    def test_rho_variant_reported_not_fixed(self):
        ctx, A, B, c, res = rho_variant_generators(Q, T_PARAM)
        assert res["A* = A"] == {}
        assert res["A B = q^-2 B A"] != {}
        assert res["B* B = A - A^2 + c"] != {}

    def test_x0_recovers_spherical_generator(self, pd):
        # x0 = t (1 - (1+q^2) A~) is self-adjoint with vanishing spin-0
        # component; its Peter-Weyl support is pure spin 1
        from specdeform.suq2.peterweyl import PeterWeylBasis
        ctx = pd.ctx
        x0 = pd.x0()
        assert ctx.sub(ctx.star(x0), x0) == {}
        h = triple_free_haar(ctx)
        assert h.eval(x0) == 0  # orthogonal to the constants
        basis = PeterWeylBasis(ctx, 1)
        assert {key[0] for key in basis.expand(x0)} == {Fraction(1)}

    def test_multiplet_structure(self, pd):
        # A~ and B~ are one symmetric profile paired with two neighbouring
        # columns of the spin-1 corepresentation matrix (printed gauge)
        from specdeform.suq2.peterweyl import PeterWeylBasis, spin_one_matrix
        basis = PeterWeylBasis(pd.ctx, 1)
        d1 = spin_one_matrix(pd.ctx, basis)
        ctx = pd.ctx
        cm1 = -pd.u / (Q**2 + 1)
        c0 = Fraction(-1) / (Q**2 + 1)
        a0 = -c0
        want_A = ctx.add(
            ctx.scale(a0, ctx.one()),
            ctx.scale(cm1, d1[0][1]), ctx.scale(c0, d1[1][1]),
            ctx.scale(cm1, d1[2][1]))
        assert ctx.sub(pd.A, want_A) == {}
        beta = Q**2 + 1
        want_B = ctx.add(
            ctx.scale(beta * cm1, d1[0][0]), ctx.scale(beta * c0, d1[1][0]),
            ctx.scale(beta * cm1, d1[2][0]))
        assert ctx.sub(ctx.scale(Fraction(-1), pd.B), want_B) == {}

    def test_domain_validation(self):
        with pytest.raises(ValueError):
            podles_generators(Fraction(3, 2), T_PARAM)
        with pytest.raises(ValueError):
            podles_generators(Q, 1)


def triple_free_haar(ctx):
    from specdeform.suq2.haar import HaarState
    return HaarState(ctx, max_power=4)


class TestTruncatedTriple:
    def test_dimension_count(self):
        t = truncated_podles_triple(Q, T_PARAM, 1, 0, Fraction(5, 2))
        assert t.dim == 2 * (2 + 4 + 6) == 24

    def test_spectrum(self):
        t = truncated_podles_triple(Q, T_PARAM, 1, 0, Fraction(5, 2))
        spec = t.dirac_spectrum()
        assert spec == {
            Fraction(1, 2): 2, Fraction(-1, 2): 2,
            Fraction(3, 2): 4, Fraction(-3, 2): 4,
            Fraction(5, 2): 6, Fraction(-5, 2): 6,
        }

    def test_interior_relations(self, triple32):
        res = triple32.relation_residuals(interior=True)
        assert all(v < 1e-9 for v in res.values()), res

    def test_closure_residual_tiny(self, triple32):
        assert triple32.closure_residual < 1e-12

    def test_block_structure(self, triple32):
        assert triple32.block_structure_ok()

    def test_dirac_flips_mu(self, triple32):
        D = triple32.D_mat
        for i, (n, mu, l) in enumerate(triple32.labels):
            j = triple32.index(n, -mu, l)
            assert D[j, i] == pytest.approx(float(n))
            assert D[i, i] == 0.0

    def test_equivariance_blockwise(self, triple32):
        # D acts as the same 2x2 flip on every l within a spin block
        D = triple32.D_mat
        A = triple32.A_mat
        # A preserves l and never exceeds one spin step (already in
        # block_structure_ok); additionally the diagonal blocks of A are
        # l-dependent scalars on each mu line, i.e. A does not mix mu
        for i, (n1, m1, l1) in enumerate(triple32.labels):
            for j, (n2, m2, l2) in enumerate(triple32.labels):
                if m1 != m2 and abs(A[i, j]) > 1e-10:
                    pytest.fail("A~ mixes the two spinor bundle components")

    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            truncated_podles_triple(Q, T_PARAM, 1, 0, Fraction(2, 1))
        with pytest.raises(ValueError):
            truncated_podles_triple(Q, T_PARAM, 0, 0, Fraction(3, 2))


class TestStabilization:
    def test_commutator_norm_stabilizes_small_q(self):
        # geometric damping ~ q^6 per level; at q = 1/8 two successive
        # truncations agree far below 1e-6
        prev = truncated_podles_triple(Fraction(1, 8), T_PARAM, 1, 0,
                                       Fraction(5, 2)).commutator_norms()
        cur = truncated_podles_triple(Fraction(1, 8), T_PARAM, 1, 0,
                                      Fraction(7, 2)).commutator_norms()
        for key in prev:
            assert abs(prev[key] - cur[key]) < 1e-6, key

    def test_geometric_decay_at_half(self):
        norms = [truncated_podles_triple(Q, T_PARAM, 1, 0, N).commutator_norms()
                 for N in (Fraction(3, 2), Fraction(5, 2), Fraction(7, 2))]
        d1 = abs(norms[1]["[D, A]"] - norms[0]["[D, A]"])
        d2 = abs(norms[2]["[D, A]"] - norms[1]["[D, A]"])
        assert d2 < d1 / 10
