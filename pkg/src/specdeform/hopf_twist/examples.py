"""Ready-made finite instances: bicharacter cocycles on abelian group
algebras and the graded toy triple used throughout the tests."""

from __future__ import annotations

from fractions import Fraction

from .._scalars import Cyc
from .algebra import (
    ComoduleAlgebra, FiniteHopfAlgebra, StarAlgebra, ONE, ZERO,
    cyclic_group_algebra,
)
from .cocycle import DualCocycle, bicharacter_cocycle
from .galois import FiniteEquivariantTriple

__all__ = [
    "z2z2_bicharacter", "z3z3_bicharacter", "z4_bicharacter",
    "z4z4_bicharacter", "toy_triple_z2z2", "graded_toy_triple",
]


def z2z2_bicharacter(H=None) -> DualCocycle:
    """sigma((a1,a2),(b1,b2)) = (-1)^{a2 b1} on C[Z2 x Z2]."""
    H = H or cyclic_group_algebra([2, 2])
    return bicharacter_cocycle(
        H, lambda g, h: Cyc.rational((-1) ** (g[1] * h[0])))


def z3z3_bicharacter(H=None) -> DualCocycle:
    """Cube-root bicharacter zeta_3^{a2 b1} on C[Z3 x Z3]."""
    H = H or cyclic_group_algebra([3, 3])
    return bicharacter_cocycle(H, lambda g, h: Cyc.zeta(3, g[1] * h[0]))


def z4_bicharacter(H=None) -> DualCocycle:
    """i^{a b} on C[Z4]; a self-pairing bicharacter."""
    H = H or cyclic_group_algebra([4])
    return bicharacter_cocycle(H, lambda g, h: Cyc.zeta(4, g[0] * h[0]))


def z4z4_bicharacter(H=None) -> DualCocycle:
    """i^{a2 b1} on C[Z4 x Z4], the largest stock instance (dim 16)."""
    H = H or cyclic_group_algebra([4, 4])
    return bicharacter_cocycle(H, lambda g, h: Cyc.zeta(4, g[1] * h[0]))


def graded_toy_triple(orders, weights) -> FiniteEquivariantTriple:
    """The regular triple of a finite abelian group.

    A = C[Gamma] acting on itself, graded corepresentation xi_g -> xi_g (x) g,
    Dirac = diag of `weights[g]` (rationals keyed by group tuple, or a
    callable).  The Haar-GNS basis is orthonormal, so the Gram is the
    identity.
    """
    H = cyclic_group_algebra(orders)
    n = H.dim
    elems = H.group_elements
    index = H.group_index
    add = H.group_add

    gram = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    rep = []
    for i in range(n):
        M = [[ZERO] * n for _ in range(n)]
        for j in range(n):
            M[index[add(elems[i], elems[j])]][j] = ONE
        rep.append(M)
    corep = [[({i: ONE} if i == j else {}) for j in range(n)]
             for i in range(n)]
    if callable(weights):
        wmap = {g: weights(g) for g in elems}
    else:
        wmap = dict(weights)
    dirac = [[(Cyc.rational(wmap[elems[i]]) if i == j else ZERO)
              for j in range(n)] for i in range(n)]
    coaction = {i: {(i, i): ONE} for i in range(n)}
    A = ComoduleAlgebra(StarAlgebra(n, H.product, H.unit, H.star_table,
                                    name=f"C[{orders}] as function algebra"),
                        H, coaction, side="right")
    return FiniteEquivariantTriple(H=H, A=A, gram=gram, rep=rep,
                                   corep=corep, dirac=dirac)


def toy_triple_z2z2() -> FiniteEquivariantTriple:
    """A = C(Z2 x Z2), regular H = C[Z2 x Z2] grading, D = diag(0,1,1,2)."""
    return graded_toy_triple([2, 2], lambda g: Fraction(g[0] + g[1]))
