from fractions import Fraction

import pytest

from specdeform._linalg import solve
from specdeform.suq2.haar import HaarState, _monomials_up_to
from specdeform.suq2.pbw import ALPHA, SUq2


CTX = SUq2(Fraction(1, 2))


@pytest.fixture(scope="module")
def haar():
    return HaarState(CTX, max_power=8)


def dense_invariance_solve(ctx, max_degree):
    """Oracle: solve the full invariance system over every monomial of
    degree <= max_degree, with no weight-grading shortcut."""
    monos = sorted(_monomials_up_to(max_degree))
    pos = {m: i for i, m in enumerate(monos)}
    rows, rhs = [], []
    for m in monos:
        T = ctx.delta_mono(m)
        grouped_left, grouped_right = {}, {}
        for (m1, m2), c in T.items():
            grouped_left.setdefault(m2, {}).setdefault(m1, Fraction(0))
            grouped_left[m2][m1] += c
            grouped_right.setdefault(m1, {}).setdefault(m2, Fraction(0))
            grouped_right[m1][m2] += c
        for other, comb in grouped_left.items():
            row = {pos[m1]: c for m1, c in comb.items() if m1 in pos and c}
            if other == (0, 0, 0):
                row[pos[m]] = row.get(pos[m], Fraction(0)) - 1
            if row:
                rows.append(row)
                rhs.append(Fraction(0))
        for other, comb in grouped_right.items():
            row = {pos[m2]: c for m2, c in comb.items() if m2 in pos and c}
            if other == (0, 0, 0):
                row[pos[m]] = row.get(pos[m], Fraction(0)) - 1
            if row:
                rows.append(row)
                rhs.append(Fraction(0))
    rows.append({pos[(0, 0, 0)]: Fraction(1)})
    rhs.append(Fraction(1))
    sol = solve(rows, rhs, len(monos))
    assert sol is not None
    return {m: sol.get(pos[m], Fraction(0)) for m in monos}


class TestHaar:
    def test_normalized(self, haar):
        assert haar.eval(CTX.one()) == 1

    def test_alpha_vanishes(self, haar):
        assert haar.eval({ALPHA: Fraction(1)}) == 0

    def test_gamma_star_gamma(self, haar):
        assert haar.eval(CTX.normal_form(["g*", "g"])) == Fraction(4, 5)

    def test_invariance_identity_direct(self, haar):
        # the defining identity, applied to gamma* gamma explicitly
        m = CTX.normal_form(["g*", "g"])
        T = CTX.delta(m)
        left = {}
        for (m1, m2), c in T.items():
            v = haar.value(m1)
            if v:
                left[m2] = left.get(m2, Fraction(0)) + c * v
        left = {k: v for k, v in left.items() if v}
        assert left == {(0, 0, 0): Fraction(4, 5)}

    def test_invariance_on_span(self, haar):
        assert haar.verify_invariance(5)

    def test_matches_dense_oracle(self, haar):
        oracle = dense_invariance_solve(CTX, 4)
        for m, v in oracle.items():
            assert haar.value(m) == v, m

    def test_other_q(self):
        h = HaarState(SUq2(Fraction(1, 3)), max_power=4)
        assert h.eval(SUq2(Fraction(1, 3)).normal_form(["g*", "g"])) == \
            Fraction(9, 10)  # 1/(1+q^2) at q = 1/3
        assert h.verify_invariance(4)

    def test_positivity_of_grams(self, haar):
        # <x, x> > 0 for a spanning set of low-degree elements
        import itertools
        for mono in _monomials_up_to(3):
            x = {mono: Fraction(1)}
            v = haar.inner(x, x)
            assert v > 0, mono

    def test_tracial_on_gamma_subalgebra(self, haar):
        x = CTX.normal_form(["g", "g*"])
        y = CTX.normal_form(["g*", "g", "g", "g*"])
        assert haar.eval(CTX.mul(x, y)) == haar.eval(CTX.mul(y, x))
