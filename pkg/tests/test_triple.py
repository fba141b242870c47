import math
import random
from fractions import Fraction

import numpy as np
import pytest

from specdeform import repcat as rc
from specdeform import triple as tr

Q = Fraction(1, 2)


@pytest.fixture(scope="module")
def dim3_descriptor():
    lam = math.sqrt((7 - math.sqrt(13)) / 6)
    spec = rc.canonical_f_matrix([lam], 3, +1)
    return rc.validate_partner(Fraction(-1, 3), spec)


@pytest.fixture(scope="module")
def dim2_descriptor():
    return rc.validate_partner(Q, rc.f_q_matrix(Q))


@pytest.fixture(scope="module")
def podles():
    return tr.podles_profile(Q, 1, 0, Fraction(5, 2))


class TestProfileBasics:
    def test_total_dim(self, podles):
        assert podles.total_dim == 2 * (2 + 4 + 6)

    def test_verify_clean(self, podles):
        assert podles.verify() == []

    def test_noncommuting_twist_flagged(self):
        lab = rc.IrrepLabel(rc.Family.SUQ2, 1)
        b = tr.ProfileBlock.make(lab, 2, 2,
                                 ((0, 1), (1, 0)),
                                 twist=((1, 0), (0, 2)))
        p = tr.IsotypicProfile.make([b])
        assert p.verify()

    def test_canonical_ordering(self):
        lab = rc.IrrepLabel(rc.Family.SUQ2, 0)
        b1 = tr.ProfileBlock.make(lab, 1, 1, Fraction(2))
        b2 = tr.ProfileBlock.make(lab, 1, 1, Fraction(-1))
        assert tr.IsotypicProfile.make([b1, b2]) == \
            tr.IsotypicProfile.make([b2, b1])


class TestSpectrumTable:
    def test_single_block(self):
        lab = rc.IrrepLabel(rc.Family.SUQ2, 2)
        p = tr.IsotypicProfile.make(
            [tr.ProfileBlock.make(lab, 3, 1, Fraction(7))])
        t = tr.spectrum_table(p)
        assert t.rows == ((Fraction(7), 3, (str(lab),)),)

    def test_podles_undeformed(self, podles):
        t = tr.spectrum_table(podles)
        assert t.as_dict() == {
            "-5/2": 6, "-3/2": 4, "-1/2": 2, "1/2": 2, "3/2": 4, "5/2": 6}

    def test_eigenvalues_strictly_increasing(self, podles):
        evs = [float(e) for e in tr.spectrum_table(podles).eigenvalues()]
        assert evs == sorted(evs) and len(set(evs)) == len(evs)


class TestCheckers:
    def test_zero_algebra_passes(self):
        D = np.diag([0.0, 1.0, 2.0])
        rep = tr.check_spectral_triple([], D)
        assert rep["ok"]
        assert rep["eigenvalue_growth"] == [0.0, 1.0, 2.0]

    def test_non_selfadjoint_fails(self):
        D = np.array([[0.0, 1.0], [0.0, 0.0]])
        assert not tr.check_spectral_triple([], D)["ok"]

    def test_podles_matrices_pass(self):
        from specdeform.suq2.podles import truncated_podles_triple
        T = truncated_podles_triple(Q, Fraction(1, 2), 1, 0, Fraction(3, 2))
        rep = tr.check_spectral_triple([T.A_mat, T.B_mat], T.D_mat)
        assert rep["ok"]
        assert all(n < 10 for n in rep["commutator_norms"])
        eq = tr.check_equivariance(T.labels, [T.A_mat, T.B_mat], T.D_mat)
        assert eq["ok"]

    def test_equivariance_detects_block_violation(self):
        labels = [(Fraction(1, 2),), (Fraction(3, 2),), (Fraction(5, 2),)]
        D = np.diag([1.0, 2.0, 3.0])
        bad = np.zeros((3, 3))
        bad[0, 2] = 1.0  # connects spins two steps apart
        rep = tr.check_equivariance(labels, [bad], D)
        assert not rep["ok"]


class TestWoronowicz:
    def test_suq2_fundamental(self):
        F, trF = tr.suq2_fundamental_f_matrix(Q)
        assert trF == Fraction(5, 2)
        diag = sorted([F[0][0], F[1][1]])
        assert diag == [Q, 1 / Q]
        assert F[0][1] == 0 and F[1][0] == 0
        from specdeform._linalg import invert_dense
        Finv = invert_dense([[Fraction(v) for v in row] for row in F])
        assert sum(Finv[i][i] for i in range(2)) == Fraction(5, 2)

    def test_classical_identity(self):
        # finite engine analogue: a group-like corep of C[Z2^2] has F = 1
        from specdeform.hopf_twist import cyclic_group_algebra
        from specdeform.hopf_twist.algebra import ONE
        H = cyclic_group_algebra([2, 2])
        g = 1  # any nontrivial group-like is a 1-dim corepresentation
        val = H.haar_eval(H.mul({g: ONE}, H.star({g: ONE})))
        table = {(0, 0, 0, 0): val.rational_value()}
        F, trF = tr.woronowicz_F(table, 1)
        assert trF == 1 and F[0][0] == 1

    def test_aof_fundamental(self, dim3_descriptor):
        M, trace = tr.aof_fundamental_f_matrix(dim3_descriptor.f_spec)
        assert abs(trace - float(abs(Fraction(-1, 3) + Fraction(-3)))) < 1e-9
        eig = np.linalg.eigvalsh(M)
        assert eig.min() > 0

    def test_fq_partner_trace(self, dim2_descriptor):
        M, trace = tr.aof_fundamental_f_matrix(dim2_descriptor.f_spec)
        assert abs(trace - 2.5) < 1e-12


class TestRTwistedVolume:
    def test_podles_blockwise(self, podles):
        rep = tr.check_r_twisted_volume(podles, q=Q)
        assert rep["ok"], rep

    def test_swapped_block_fails(self, podles):
        blocks = list(podles.blocks)
        bad = tr.ProfileBlock(blocks[0].label, blocks[0].d, blocks[0].w,
                              blocks[0].dirac, blocks[0].twist,
                              tr.FBlock(trace=Fraction(-3)))
        p = tr.IsotypicProfile.make([bad] + blocks[1:])
        assert not tr.check_r_twisted_volume(p)["ok"]

    def test_noncommuting_R_fails(self):
        lab = rc.IrrepLabel(rc.Family.SUQ2, 1)
        b = tr.ProfileBlock.make(lab, 2, 2, ((0, 1), (1, 0)),
                                 twist=((1, 0), (0, 2)))
        p = tr.IsotypicProfile.make([b])
        assert not tr.check_r_twisted_volume(p)["ok"]


class TestDeform:
    def test_identity_descriptor(self, podles, dim2_descriptor):
        out = tr.deform_profile(podles, dim2_descriptor)
        assert tr.spectrum_table(out).as_dict() == \
            tr.spectrum_table(podles).as_dict()
        assert out.total_dim == podles.total_dim

    def test_dim3_multiplicities(self, podles, dim3_descriptor):
        out = tr.deform_profile(podles, dim3_descriptor)
        t = tr.spectrum_table(out)
        assert t.as_dict() == {
            "-5/2": 144, "-3/2": 21, "-1/2": 3,
            "1/2": 3, "3/2": 21, "5/2": 144}

    def test_eigenvalue_set_invariant(self, podles, dim3_descriptor):
        before = tr.spectrum_table(podles).eigenvalues()
        after = tr.spectrum_table(
            tr.deform_profile(podles, dim3_descriptor)).eigenvalues()
        assert before == after

    def test_multiplicity_spaces_invariant(self, podles, dim3_descriptor):
        out = tr.deform_profile(podles, dim3_descriptor)
        assert [b.w for b in out.blocks] == [b.w for b in podles.blocks]

    def test_quantum_dimension_invariant(self, podles, dim3_descriptor):
        out = tr.deform_profile(podles, dim3_descriptor)
        for b0, b1 in zip(podles.blocks, out.blocks):
            assert b0.fblock.trace == b1.fblock.trace

    def test_label_out_of_domain(self, podles, dim2_descriptor):
        restricted = rc.restrict_equivalence(
            dim2_descriptor, rc.even_subcategory(dim2_descriptor.source))
        lab = rc.IrrepLabel(rc.Family.SUQ2, 1)
        p = tr.IsotypicProfile.make(
            [tr.ProfileBlock.make(lab, 2, 1, Fraction(1))])
        with pytest.raises(ValueError):
            tr.deform_profile(p, restricted)

    def test_deformed_profile_passes_r_criterion(self, podles,
                                                 dim3_descriptor):
        out = tr.deform_profile(podles, dim3_descriptor)
        assert tr.check_r_twisted_volume(out)["ok"]


class TestRoundTrip:
    def test_identity(self, podles, dim2_descriptor):
        assert tr.round_trip(podles, dim2_descriptor)["ok"]

    def test_podles_dim3(self, podles, dim3_descriptor):
        assert tr.round_trip(podles, dim3_descriptor)["ok"]

    def test_hundred_random_profiles(self, dim3_descriptor):
        rng = random.Random(20240809)
        ring = dim3_descriptor.source
        for _ in range(100):
            p = tr.random_profile(ring, rng)
            assert tr.round_trip(p, dim3_descriptor)["ok"]


class TestQiso:
    def test_podles_support_map(self, dim3_descriptor):
        ring = dim3_descriptor.source
        sub = rc.even_subcategory(ring)
        labels = tr.QisoLabels(ambient="QISO+(SU_q(2))", support=sub,
                               derived="SO_q(3)")
        restricted = rc.restrict_equivalence(dim3_descriptor, sub)
        new, line = tr.qiso_deform(labels, restricted)
        assert line == "QISO: SO_q(3) -> I(F)"
        assert new.support_indices(20) == list(range(0, 21, 2))
        # support closure re-verified post-map
        assert rc.Subcategory(restricted.target, new.support.indices)

    def test_trivial_support(self, dim2_descriptor):
        ring = dim2_descriptor.source
        sub = rc.Subcategory(ring, frozenset({0}))
        labels = tr.QisoLabels("QISO+(SU_q(2))", sub, "SU_q(2)")
        new, line = tr.qiso_deform(labels, dim2_descriptor)
        assert new.support_indices(10) == [0]

    def test_restriction_agrees_with_support_image(self, dim3_descriptor):
        ring = dim3_descriptor.source
        sub = rc.even_subcategory(ring)
        restricted = rc.restrict_equivalence(dim3_descriptor, sub)
        labels = tr.QisoLabels("QISO+(SU_q(2))", sub, "SO_q(3)")
        new, _ = tr.qiso_deform(labels, restricted)
        bound = 20
        img = [restricted.phi(rc.IrrepLabel(ring.family, i)).index
               for i in labels.support_indices(bound)]
        assert img == new.support_indices(bound)


class TestCrossEngine:
    def test_toy_triple_agreement(self, dim3_descriptor):
        # every grading line of the Z2^2 toy triple is a trivial-class
        # block; deform_profile leaves it unchanged and must match the
        # literal spectrum of the deformed Dirac operator exactly
        from specdeform.hopf_twist import deform_triple_finite
        from specdeform.hopf_twist.examples import (
            toy_triple_z2z2, z2z2_bicharacter)
        T = toy_triple_z2z2()
        res = deform_triple_finite(T, z2z2_bicharacter(T.H))
        lab = rc.IrrepLabel(rc.Family.SUQ2, 0)
        blocks = [tr.ProfileBlock.make(lab, 1, 1, lam)
                  for lam, mult in T.spectrum().items()
                  for _ in range(mult)]
        prof = tr.IsotypicProfile.make(blocks)
        out = tr.deform_profile(prof, dim3_descriptor)
        assert tr.spectrum_table(out).as_dict() == \
            {str(k): v for k, v in sorted(res.spectrum.items())}
