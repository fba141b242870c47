from fractions import Fraction

import pytest

from specdeform._scalars import Cyc
from specdeform.hopf_twist import (
    ComoduleAlgebra, StarAlgebra, algebra_invariants, cyclic_group_algebra,
    function_algebra,
)
from specdeform.hopf_twist.algebra import ONE, ZERO, vadd, vscale


@pytest.fixture(scope="module")
def z22():
    return cyclic_group_algebra([2, 2])


@pytest.fixture(scope="module")
def fz22():
    return function_algebra([2, 2])


class TestHopfAxioms:
    def test_group_algebra_axioms(self, z22):
        assert z22.verify_hopf().ok

    def test_function_algebra_axioms(self, fz22):
        assert fz22.verify_hopf().ok

    def test_z4_and_z33(self):
        assert cyclic_group_algebra([4]).verify_hopf().ok
        assert cyclic_group_algebra([3, 3]).verify_hopf().ok

    def test_perturbed_product_fails(self, z22):
        bad = {k: dict(v) for k, v in z22.product.items()}
        bad[(1, 2)] = {0: ONE}
        import specdeform.hopf_twist.algebra as alg
        H = alg.FiniteHopfAlgebra(
            z22.dim, bad, z22.unit, z22.star_table, z22.coproduct,
            z22.counit, z22.antipode)
        assert not H.verify_hopf().ok


class TestHaar:
    def test_group_algebra_haar_is_delta_at_unit(self, z22):
        h = z22.haar()
        assert h[0] == ONE
        assert all(h[i].is_zero() for i in range(1, 4))

    def test_function_algebra_haar_is_uniform(self, fz22):
        h = fz22.haar()
        assert all(v == Cyc.rational(Fraction(1, 4)) for v in h.values())

    def test_invariance_identity(self, z22):
        # (id (x) h) Delta(x) = h(x) 1 on the basis
        h = z22.haar()
        for i in range(4):
            out = {}
            for (j, k), c in z22.coproduct[i].items():
                out[j] = out.get(j, ZERO) + c * h[k]
            target = vscale(h[i], z22.unit)
            assert vadd(out, vscale(-1, target)) == {}


class TestInvariants:
    def test_commutative_group_algebra(self, z22):
        inv = algebra_invariants(z22)
        assert inv == {"dim": 4, "center_dim": 4,
                       "block_sizes": (1, 1, 1, 1)}

    def test_center_dimension_matrix_like(self):
        # quaternion-like twisted algebra built by hand: pauli relations
        # X^2 = Y^2 = 1, XY = -YX on basis (1, X, Y, XY)
        m = Cyc.rational(-1)
        prod = {}
        table = {
            (0, 0): {0: ONE}, (0, 1): {1: ONE}, (0, 2): {2: ONE},
            (0, 3): {3: ONE},
            (1, 0): {1: ONE}, (1, 1): {0: ONE}, (1, 2): {3: ONE},
            (1, 3): {2: ONE},
            (2, 0): {2: ONE}, (2, 1): {3: m}, (2, 2): {0: ONE},
            (2, 3): {1: m},
            (3, 0): {3: ONE}, (3, 1): {2: m}, (3, 2): {1: ONE},
            (3, 3): {0: m},
        }
        star = {0: {0: ONE}, 1: {1: ONE}, 2: {2: ONE}, 3: {3: m}}
        A = StarAlgebra(4, table, {0: ONE}, star)
        assert A.verify_algebra().ok
        inv = algebra_invariants(A)
        assert inv["center_dim"] == 1
        assert inv["block_sizes"] == (2,)


class TestComodule:
    def test_regular_coaction(self, z22):
        A = StarAlgebra(4, z22.product, z22.unit, z22.star_table)
        co = ComoduleAlgebra(A, z22, {i: dict(v) for i, v in
                                      z22.coproduct.items()}, side="right")
        assert co.verify().ok

    def test_translation_coaction_on_functions(self, fz22):
        # the group translating itself: C(Gamma) as a right comodule over
        # the function Hopf algebra, coaction = the coproduct
        A = StarAlgebra(4, fz22.product, fz22.unit, fz22.star_table)
        co = ComoduleAlgebra(A, fz22,
                             {i: dict(v) for i, v in fz22.coproduct.items()},
                             side="right")
        assert co.verify().ok

    def test_broken_coaction_fails(self, z22):
        # a -> a (x) g with g a nontrivial group-like: coassociative and
        # counital-free but not multiplicative (g^2 = e != g)
        A = StarAlgebra(4, z22.product, z22.unit, z22.star_table)
        coaction = {i: {(i, 1): ONE} for i in range(4)}
        co = ComoduleAlgebra(A, z22, coaction, side="right")
        assert not co.verify().ok
