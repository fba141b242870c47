from fractions import Fraction

import pytest

from specdeform.suq2.haar import HaarState
from specdeform.suq2.pbw import ALPHA, ALPHA_STAR, GAMMA, GAMMA_STAR, SUq2
from specdeform.suq2.peterweyl import (
    PeterWeylBasis, canonical_matrix, canonical_scales, fundamental_matrix,
    spin_one_matrix, _verify_corep,
)

CTX = SUq2(Fraction(1, 2))
Q = CTX.q
HALF = Fraction(1, 2)


@pytest.fixture(scope="module")
def basis():
    return PeterWeylBasis(CTX, Fraction(7, 2))


class TestLadder:
    def test_fundamental_entries_pinned(self, basis):
        # index convention: alpha sits at (k, l) = (-1/2, -1/2)
        assert basis.entry(HALF, -HALF, -HALF) == {ALPHA: Fraction(1)}
        assert basis.entry(HALF, HALF, -HALF) == {GAMMA: Fraction(1)}
        assert basis.entry(HALF, -HALF, HALF) == {GAMMA_STAR: Fraction(1)}
        assert basis.entry(HALF, HALF, HALF) == {ALPHA_STAR: Fraction(1)}

    def test_orthogonality_exact_to_seven_halves(self, basis):
        assert basis.check_orthogonality()

    def test_cross_spin_orthogonality(self, basis):
        d_half = basis.entry(HALF, -HALF, -HALF)
        for k in (-1, 0, 1):
            for l in (-1, 0, 1):
                d1 = basis.entry(1, k, l)
                assert basis.haar.inner(d_half, d1) == 0

    def test_expand_roundtrip(self, basis):
        x = CTX.normal_form(["a", "g", "g*"])
        exp = basis.expand(x)
        rec = {}
        for (n, k, l), c in exp.items():
            rec = CTX.add(rec, CTX.scale(c, basis.entry(n, k, l)))
        assert CTX.sub(rec, x) == {}

    def test_norms_positive(self, basis):
        assert all(v > 0 for v in basis.norm2.values())


class TestPrintedMatrices:
    def test_fundamental_matrix(self):
        f = fundamental_matrix(CTX)
        assert f[0][0] == {ALPHA: Fraction(1)}
        assert f[0][1] == {GAMMA_STAR: -Q}
        assert f[1][0] == {GAMMA: Fraction(1)}
        assert f[1][1] == {ALPHA_STAR: Fraction(1)}

    def test_spin_one_matches_printed_array(self, basis):
        # the published 3x3 array, read in ascending (k, l); the printed
        # version lists indices descending, i.e. this matrix reflected
        d1 = spin_one_matrix(CTX, basis)
        Q2 = Q * Q + 1
        expected = {
            (0, 0): {(2, 0, 0): Fraction(1)},                    # alpha^2
            (0, 1): {(1, 0, 1): -Q2 / Q},                        # -(q^2+1) gamma* alpha / normal form
            (0, 2): {(0, 0, 2): -Q},                             # -q gamma*^2... reflected: gamma^2 slot
            (1, 0): {(1, 1, 0): Fraction(1)},                    # alpha gamma
            (1, 1): {(0, 0, 0): Fraction(1), (0, 1, 1): -Q2},    # 1 - (q^2+1) gamma* gamma
            (1, 2): {(-1, 0, 1): Q},                             # gamma* alpha* in normal form
            (2, 0): {(0, 2, 0): -Q},
            (2, 1): {(-1, 1, 0): -Q2},
            (2, 2): {(-2, 0, 0): Fraction(1)},
        }
        for (i, j), want in expected.items():
            assert CTX.sub(d1[i][j], want) == {}, (i, j)

    def test_spin_one_corep_property(self, basis):
        d1 = spin_one_matrix(CTX, basis)
        _verify_corep(CTX, d1)  # raises on failure

    def test_entries_proportional_to_ladder(self, basis):
        d1 = spin_one_matrix(CTX, basis)
        for i, k in enumerate((-1, 0, 1)):
            for j, l in enumerate((-1, 0, 1)):
                raw = basis.entry(1, k, l)
                lead = min(raw, key=CTX.degree)
                c = d1[i][j][lead] / raw[lead]
                assert CTX.sub(d1[i][j], CTX.scale(c, raw)) == {}


class TestCanonicalScales:
    @pytest.mark.parametrize("n", [Fraction(1, 2), 1, Fraction(3, 2), 2])
    def test_corep_property(self, basis, n):
        mat = canonical_matrix(basis, n)
        _verify_corep(CTX, mat)

    def test_counit_normalization(self, basis):
        mat = canonical_matrix(basis, Fraction(5, 2))
        size = len(mat)
        for i in range(size):
            for j in range(size):
                assert CTX.counit(mat[i][j]) == (1 if i == j else 0)

    def test_scales_rational(self, basis):
        sc = canonical_scales(basis, 2)
        assert all(isinstance(v, Fraction) for v in sc.values())

    def test_other_q(self):
        ctx = SUq2(Fraction(1, 3))
        b = PeterWeylBasis(ctx, Fraction(3, 2))
        mat = canonical_matrix(b, Fraction(3, 2))
        _verify_corep(ctx, mat)
