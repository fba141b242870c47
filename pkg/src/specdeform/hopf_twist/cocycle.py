"""Dual 2-cocycles on finite Hopf *-algebras and everything twisted by them:
the Hopf algebra H^sigma, the one-sided smash algebras, the twisted comodule
algebras, the U/V functionals correcting antipode and star, the deformed
representation pi_sigma, and the dictionary between cocycles sigma on the
Hopf algebra and block unitaries Omega on the dual.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .._linalg import invert_dense, solve
from .._scalars import Cyc
from .algebra import (
    ComoduleAlgebra, FiniteHopfAlgebra, Report, StarAlgebra, ONE, ZERO,
    sc, vadd, vclean, veq, vscale, vsub,
)

__all__ = [
    "DualCocycle", "UVFunctionals", "trivial_cocycle", "bicharacter_cocycle",
    "check_dual_cocycle", "convolution_inverse", "uv_functionals",
    "twist_hopf", "twist_comodule_algebra", "smash_left", "smash_right",
    "omega_from_sigma", "sigma_from_omega", "pi_sigma",
]


class DualCocycle:
    """A scalar table sigma(e_i, e_j) on a Hopf algebra basis."""

    def __init__(self, H: FiniteHopfAlgebra, table: dict):
        self.H = H
        self.table = {k: sc(v) for k, v in table.items()
                      if not sc(v).is_zero()}
        self._inverse: Optional[dict] = None

    def __call__(self, x: dict, y: dict) -> Cyc:
        out = ZERO
        for i, a in x.items():
            for j, b in y.items():
                c = self.table.get((i, j))
                if c is not None:
                    out = out + a * b * c
        return out

    def inverse_table(self) -> dict:
        if self._inverse is None:
            self._inverse = convolution_inverse(self.H, self.table)
        return self._inverse

    def inv(self, x: dict, y: dict) -> Cyc:
        t = self.inverse_table()
        out = ZERO
        for i, a in x.items():
            for j, b in y.items():
                c = t.get((i, j))
                if c is not None:
                    out = out + a * b * c
        return out

    def inverse_cocycle_on_twist(self, H_sigma) -> "DualCocycle":
        """sigma^{-1} as a cocycle on H^sigma (same coalgebra)."""
        out = DualCocycle(H_sigma, self.inverse_table())
        out._inverse = dict(self.table)
        return out


def trivial_cocycle(H: FiniteHopfAlgebra) -> DualCocycle:
    """sigma = eps (x) eps."""
    table = {}
    for i in range(H.dim):
        ei = H.counit.get(i)
        if ei is None:
            continue
        for j in range(H.dim):
            ej = H.counit.get(j)
            if ej is not None:
                table[(i, j)] = ei * ej
    return DualCocycle(H, table)


def bicharacter_cocycle(H: FiniteHopfAlgebra, chi) -> DualCocycle:
    """Cocycle from a bicharacter chi(g, h) on a group algebra.

    chi takes two group tuples and returns a Cyc root of unity; bilinearity
    in both slots makes the cocycle identity automatic, which the checker
    re-verifies anyway.
    """
    elems = H.group_elements
    table = {(i, j): sc(chi(g, h))
             for i, g in enumerate(elems) for j, h in enumerate(elems)}
    return DualCocycle(H, table)


def convolution_inverse(H: FiniteHopfAlgebra, table: dict) -> dict:
    """Solve sigma * tau = eps (x) eps in the convolution algebra ((H (x) H)*.

    Returns the table of tau; raises ArithmeticError when the convolution
    operator is singular.  The two-sided property is verified afterwards.
    """
    n = H.dim
    idx = {(i, j): i * n + j for i in range(n) for j in range(n)}
    rows = [dict() for _ in range(n * n)]
    rhs = [ZERO] * (n * n)
    for i in range(n):
        di = H.coproduct.get(i, {})
        for j in range(n):
            dj = H.coproduct.get(j, {})
            r = rows[idx[(i, j)]]
            for (k, m), c in di.items():
                for (l, p), d in dj.items():
                    s = table.get((k, l))
                    if s is not None:
                        col = idx[(m, p)]
                        r[col] = r.get(col, ZERO) + c * d * s
            ei = H.counit.get(i, ZERO) * H.counit.get(j, ZERO)
            rhs[idx[(i, j)]] = ei
    sol = solve(rows, rhs, n * n)
    if sol is None:
        raise ArithmeticError("cocycle is not convolution invertible")
    tau = {}
    for (i, j), col in idx.items():
        v = sol.get(col)
        if v is not None and not v.is_zero():
            tau[(i, j)] = v
    # verify the other side: tau * sigma = eps (x) eps
    for i in range(n):
        for j in range(n):
            acc = ZERO
            for (k, m), c in H.coproduct.get(i, {}).items():
                for (l, p), d in H.coproduct.get(j, {}).items():
                    t = tau.get((k, l))
                    s = table.get((m, p))
                    if t is not None and s is not None:
                        acc = acc + c * d * t * s
            target = H.counit.get(i, ZERO) * H.counit.get(j, ZERO)
            if not (acc - target).is_zero():
                raise ArithmeticError(
                    "one-sided convolution inverse only; cocycle degenerate")
    return tau


def check_dual_cocycle(H: FiniteHopfAlgebra, sigma: DualCocycle) -> Report:
    """Cocycle identity on all basis triples, normalization, invertibility,
    unitarity."""
    rep = Report()
    ok, bad = True, ""
    for i, j, k in itertools.product(range(H.dim), repeat=3):
        # sigma(a1, b1) sigma(a2 b2, c) over Sweedler legs of (e_i, e_j)
        lhs = ZERO
        for (a1, a2), c1 in H.coproduct.get(i, {}).items():
            for (b1, b2), c2 in H.coproduct.get(j, {}).items():
                s1 = sigma.table.get((a1, b1))
                if s1 is None:
                    continue
                prod = H.product.get((a2, b2), {})
                for m, cm in prod.items():
                    s2 = sigma.table.get((m, k))
                    if s2 is not None:
                        lhs = lhs + c1 * c2 * cm * s1 * s2
        # sigma(b1, c1) sigma(a, b2 c2)
        rhs = ZERO
        for (b1, b2), c2 in H.coproduct.get(j, {}).items():
            for (c1c, c2c), c3 in H.coproduct.get(k, {}).items():
                s1 = sigma.table.get((b1, c1c))
                if s1 is None:
                    continue
                prod = H.product.get((b2, c2c), {})
                for m, cm in prod.items():
                    s2 = sigma.table.get((i, m))
                    if s2 is not None:
                        rhs = rhs + c2 * c3 * cm * s1 * s2
        if not (lhs - rhs).is_zero():
            ok, bad = False, f"violating triple ({i},{j},{k})"
            break
    rep.add("cocycle identity", ok, bad)

    norm_ok = True
    for i in range(H.dim):
        l = sigma(H.unit, {i: ONE})
        r = sigma({i: ONE}, H.unit)
        if not ((l - H.counit.get(i, ZERO)).is_zero()
                and (r - H.counit.get(i, ZERO)).is_zero()):
            norm_ok = False
            break
    rep.add("normalization sigma(1,h) = sigma(h,1) = eps(h)", norm_ok)

    try:
        sigma.inverse_table()
        rep.add("convolution invertible", True)
    except ArithmeticError as exc:
        rep.add("convolution invertible", False, str(exc))
        return rep

    uni_ok, bad = True, ""
    for i, j in itertools.product(range(H.dim), repeat=2):
        lhs = sigma.table.get((i, j), ZERO).conj()
        rhs = sigma.inv(H.star(H.S({i: ONE})), H.star(H.S({j: ONE})))
        if not (lhs - rhs).is_zero():
            uni_ok, bad = False, f"pair ({i},{j})"
            break
    rep.add("unitarity conj(sigma(a,b)) = sigma^{-1}(S(a)*, S(b)*)",
            uni_ok, bad)
    return rep


@dataclass
class UVFunctionals:
    """U(h) = sigma(h1, S(h2)) and V(h) = U(S^{-1} h), with inverses."""
    U: dict
    U_inv: dict
    V: dict
    V_inv: dict

    def apply(self, table: dict, x: dict) -> Cyc:
        out = ZERO
        for i, a in x.items():
            c = table.get(i)
            if c is not None:
                out = out + a * c
        return out


def uv_functionals(H: FiniteHopfAlgebra, sigma: DualCocycle) -> UVFunctionals:
    U, U_inv, V, V_inv = {}, {}, {}, {}
    for i in range(H.dim):
        u = ZERO
        ui = ZERO
        for (a, b), c in H.coproduct.get(i, {}).items():
            u = u + c * sigma({a: ONE}, H.S({b: ONE}))
            ui = ui + c * sigma.inv(H.S({a: ONE}), {b: ONE})
        U[i] = u
        U_inv[i] = ui
    for i in range(H.dim):
        si = H.S_inv({i: ONE})
        V[i] = sum((c * U[j] for j, c in si.items()), ZERO)
        V_inv[i] = sum((c * U_inv[j] for j, c in si.items()), ZERO)
    uv = UVFunctionals(U, U_inv, V, V_inv)
    # convolution-inverse identities
    for i in range(H.dim):
        for tab, tabi in ((uv.U, uv.U_inv), (uv.V, uv.V_inv)):
            acc = ZERO
            for (a, b), c in H.coproduct.get(i, {}).items():
                acc = acc + c * tab.get(a, ZERO) * tabi.get(b, ZERO)
            if not (acc - H.counit.get(i, ZERO)).is_zero():
                raise ArithmeticError(
                    f"U/V convolution-inverse identity fails at basis {i}")
    return uv


def twist_hopf(H: FiniteHopfAlgebra, sigma: DualCocycle,
               verify: bool = True) -> FiniteHopfAlgebra:
    """The twisted Hopf *-algebra H^sigma.

    Product  g .sigma h = sigma(g1,h1) g2 h2 sigma^{-1}(g3,h3),
    antipode S_sigma(h) = U(h1) S(h2) U^{-1}(h3),
    star     h^{*sigma} = V^{-1}((h*)1) (h*)2 V((h*)3);
    the coalgebra is untouched.
    """
    uv = uv_functionals(H, sigma)
    dim = H.dim
    product = {}
    for i, j in itertools.product(range(dim), repeat=2):
        out = {}
        for (a, b, c), c1 in H.delta2({i: ONE}).items():
            for (d, e, f), c2 in H.delta2({j: ONE}).items():
                s1 = sigma.table.get((a, d))
                if s1 is None:
                    continue
                s2 = sigma.inverse_table().get((c, f))
                if s2 is None:
                    continue
                coef = c1 * c2 * s1 * s2
                for m, cm in H.product.get((b, e), {}).items():
                    out[m] = out.get(m, ZERO) + coef * cm
        product[(i, j)] = vclean(out)

    antipode = {}
    star = {}
    for i in range(dim):
        out = {}
        for (a, b, c), c1 in H.delta2({i: ONE}).items():
            coef = c1 * uv.U.get(a, ZERO) * uv.U_inv.get(c, ZERO)
            if coef.is_zero():
                continue
            for m, cm in H.antipode.get(b, {}).items():
                out[m] = out.get(m, ZERO) + coef * cm
        antipode[i] = vclean(out)

        w = H.star({i: ONE})
        out = {}
        for (a, b, c), c1 in _delta2_of(H, w).items():
            coef = c1 * uv.V_inv.get(a, ZERO) * uv.V.get(c, ZERO)
            if not coef.is_zero():
                out[b] = out.get(b, ZERO) + coef
        star[i] = vclean(out)

    Hs = FiniteHopfAlgebra(
        dim, product, dict(H.unit), star,
        {i: dict(v) for i, v in H.coproduct.items()},
        dict(H.counit), antipode,
        name=(H.name + "^sigma") if H.name else "H^sigma")
    if verify:
        rep = Hs.verify_hopf()
        if not rep.ok:
            raise ArithmeticError(
                f"twisted Hopf axioms fail: {rep.first_failure().name} "
                f"{rep.first_failure().detail} (bad cocycle data?)")
    return Hs


def _delta2_of(H: FiniteHopfAlgebra, x: dict) -> dict:
    out = {}
    for i, a in x.items():
        for key, c in H.delta2({i: ONE}).items():
            out[key] = out.get(key, ZERO) + a * c
    return vclean(out)


def twist_comodule_algebra(A: ComoduleAlgebra, sigma: DualCocycle,
                           H_sigma: Optional[FiniteHopfAlgebra] = None,
                           verify: bool = True) -> ComoduleAlgebra:
    """A #_{sigma^{-1}} C for a right H-comodule *-algebra A.

    Product (a#1)(a'#1) = a0 a'0 sigma^{-1}(a1, a'1); star
    (a#1)* = (a*)0 V((a*)1) # 1; the coaction is unchanged as a linear map
    but now takes values in A (x) H^sigma.
    """
    if A.side != "right":
        raise ValueError("twist_comodule_algebra expects a right comodule")
    H = A.hopf
    uv = uv_functionals(H, sigma)
    alg = A.algebra
    dim = alg.dim
    product = {}
    for i, j in itertools.product(range(dim), repeat=2):
        out = {}
        for (a, u), c1 in A.coaction.get(i, {}).items():
            for (b, v), c2 in A.coaction.get(j, {}).items():
                s = sigma.inverse_table().get((u, v))
                if s is None:
                    continue
                coef = c1 * c2 * s
                for m, cm in alg.product.get((a, b), {}).items():
                    out[m] = out.get(m, ZERO) + coef * cm
        product[(i, j)] = vclean(out)
    star = {}
    for i in range(dim):
        w = alg.star({i: ONE})
        out = {}
        for k, ck in w.items():
            for (a, u), c in A.coaction.get(k, {}).items():
                coef = ck * c * uv.V.get(u, ZERO)
                if not coef.is_zero():
                    out[a] = out.get(a, ZERO) + coef
        star[i] = vclean(out)
    twisted = StarAlgebra(dim, product, dict(alg.unit), star,
                          name=(alg.name + " #sigma^{-1} C") if alg.name else "")
    Hs = H_sigma or twist_hopf(H, sigma)
    out = ComoduleAlgebra(twisted, Hs, {i: dict(v) for i, v in
                                        A.coaction.items()}, side="right")
    if verify:
        rep = twisted.verify_algebra()
        rep2 = out.verify()
        if not (rep.ok and rep2.ok):
            fail = (rep if not rep.ok else rep2).first_failure()
            raise ArithmeticError(
                f"twisted comodule algebra fails: {fail.name} {fail.detail}")
    return out


def smash_left(H: FiniteHopfAlgebra, sigma: DualCocycle,
               H_sigma: Optional[FiniteHopfAlgebra] = None,
               verify: bool = True):
    """B = H #_{sigma^{-1}} C as an (H, H^sigma)-bi-Galois object.

    Returned as a GaloisObjectFinite (imported lazily to avoid a cycle).
    """
    from .galois import GaloisObjectFinite
    Hs = H_sigma or twist_hopf(H, sigma, verify=verify)
    regular = ComoduleAlgebra(
        StarAlgebra(H.dim, H.product, H.unit, H.star_table),
        H, {i: {(j, k): c for (j, k), c in H.coproduct.get(i, {}).items()}
            for i in range(H.dim)}, side="right")
    twisted = twist_comodule_algebra(regular, sigma, H_sigma=Hs, verify=verify)
    B = twisted.algebra
    beta1 = {i: {(j, k): c for (j, k), c in H.coproduct.get(i, {}).items()}
             for i in range(H.dim)}  # left coaction of H, legs (h, b)
    beta2 = {i: dict(v) for i, v in twisted.coaction.items()}  # (b, h) legs
    omega = dict(H.haar())
    gal = GaloisObjectFinite(B=B, H=H, H_sigma=Hs, beta1=beta1, beta2=beta2,
                             omega=omega, sigma=sigma)
    if verify:
        rep = gal.verify()
        if not rep.ok:
            fail = rep.first_failure()
            raise ArithmeticError(
                f"Galois object verification fails: {fail.name} {fail.detail}")
    return gal


def smash_right(H: FiniteHopfAlgebra, sigma: DualCocycle,
                H_sigma: Optional[FiniteHopfAlgebra] = None,
                verify: bool = True) -> ComoduleAlgebra:
    """C #_sigma H: product (1#g)(1#h) = sigma(g1,h1) # g2 h2, star
    (1#h)* = 1 # V^{-1}((h*)1) (h*)2, right H-comodule via Delta."""
    uv = uv_functionals(H, sigma)
    dim = H.dim
    product = {}
    for i, j in itertools.product(range(dim), repeat=2):
        out = {}
        for (a, b), c1 in H.coproduct.get(i, {}).items():
            for (c, d), c2 in H.coproduct.get(j, {}).items():
                s = sigma.table.get((a, c))
                if s is None:
                    continue
                coef = c1 * c2 * s
                for m, cm in H.product.get((b, d), {}).items():
                    out[m] = out.get(m, ZERO) + coef * cm
        product[(i, j)] = vclean(out)
    star = {}
    for i in range(dim):
        w = H.star({i: ONE})
        out = {}
        for k, ck in w.items():
            for (a, b), c in H.coproduct.get(k, {}).items():
                coef = ck * c * uv.V_inv.get(a, ZERO)
                if not coef.is_zero():
                    out[b] = out.get(b, ZERO) + coef
        star[i] = vclean(out)
    alg = StarAlgebra(dim, product, dict(H.unit), star,
                      name=(("C #sigma " + H.name) if H.name else ""))
    coaction = {i: {(j, k): c for (j, k), c in H.coproduct.get(i, {}).items()}
                for i in range(dim)}
    out = ComoduleAlgebra(alg, H, coaction, side="right")
    if verify:
        rep = alg.verify_algebra()
        rep2 = out.verify()
        if not (rep.ok and rep2.ok):
            fail = (rep if not rep.ok else rep2).first_failure()
            raise ArithmeticError(
                f"right smash fails: {fail.name} {fail.detail}")
    return out


# -- Omega <-> sigma dictionary --

def _coefficient_basis(H: FiniteHopfAlgebra, irreps):
    """Linear iso between the matrix-coefficient index set and the H basis.

    irreps: list of (d, U) with U a d x d matrix of H elements.  Returns
    (slots, to_H, from_H) where slots enumerates (x, i, j).
    """
    slots = []
    cols = []
    for x, (d, U) in enumerate(irreps):
        for i in range(d):
            for j in range(d):
                slots.append((x, i, j))
                cols.append(U[i][j])
    n = H.dim
    if len(slots) != n:
        raise ValueError("matrix coefficients do not number dim H")
    M = [[cols[s].get(r, ZERO) for s in range(n)] for r in range(n)]
    Minv = invert_dense(M, ZERO, ONE)
    if Minv is None:
        raise ValueError("matrix coefficients are not a basis of H")
    return slots, M, Minv


def omega_from_sigma(H: FiniteHopfAlgebra, sigma: DualCocycle, irreps):
    """Block table Omega[(x,y)][(i,k),(j,l)] = sigma(u^x_{ij}, u^y_{kl})."""
    out = {}
    for x, (dx, Ux) in enumerate(irreps):
        for y, (dy, Uy) in enumerate(irreps):
            block = [[ZERO] * (dx * dy) for _ in range(dx * dy)]
            for i in range(dx):
                for j in range(dx):
                    for k in range(dy):
                        for l in range(dy):
                            block[i * dy + k][j * dy + l] = \
                                sigma(Ux[i][j], Uy[k][l])
            out[(x, y)] = block
    return out


def omega_check(H: FiniteHopfAlgebra, irreps, omega) -> Report:
    """Unitarity and normalization of a block table Omega."""
    rep = Report()
    ok = True
    for (x, y), block in omega.items():
        n = len(block)
        for i in range(n):
            for j in range(n):
                acc = ZERO
                for k in range(n):
                    acc = acc + block[k][i].conj() * block[k][j]
                target = ONE if i == j else ZERO
                if not (acc - target).is_zero():
                    ok = False
    rep.add("Omega unitary (blockwise)", ok)
    norm_ok = True
    for (x, y), block in omega.items():
        dx = irreps[x][0]
        dy = irreps[y][0]
        if (dx == 1 and _is_trivial_irrep(H, irreps[x])) or \
                (dy == 1 and _is_trivial_irrep(H, irreps[y])):
            if any(not (block[i][j] - (ONE if i == j else ZERO)).is_zero()
                   for i in range(len(block)) for j in range(len(block))):
                norm_ok = False
    rep.add("Omega normalized on trivial blocks", norm_ok)
    return rep


def _is_trivial_irrep(H: FiniteHopfAlgebra, ir):
    d, U = ir
    from .algebra import veq
    return d == 1 and veq(U[0][0], H.unit)


def sigma_from_omega(H: FiniteHopfAlgebra, omega: dict, irreps) -> DualCocycle:
    """Invert the matrix-coefficient dictionary: from Omega blocks back to a
    sigma table on the H basis."""
    slots, M, Minv = _coefficient_basis(H, irreps)
    slot_pos = {s: p for p, s in enumerate(slots)}
    n = H.dim
    table = {}
    for a in range(n):
        for b in range(n):
            acc = ZERO
            # e_a = sum_s Minv[s][a] u_s ; sigma bilinear over slots
            for (x, i, j) in slots:
                ca = Minv[slot_pos[(x, i, j)]][a]
                if ca.is_zero():
                    continue
                for (y, k, l) in slots:
                    cb = Minv[slot_pos[(y, k, l)]][b]
                    if cb.is_zero():
                        continue
                    block = omega.get((x, y))
                    if block is None:
                        continue
                    dy = irreps[y][0]
                    val = block[i * dy + k][j * dy + l]
                    if not val.is_zero():
                        acc = acc + ca * cb * val
            if not acc.is_zero():
                table[(a, b)] = acc
    return DualCocycle(H, table)


def grouplike_irreps(H: FiniteHopfAlgebra):
    """Each basis element of a group algebra is a 1-dim corepresentation."""
    return [(1, [[{i: ONE}]]) for i in range(H.dim)]


def pi_sigma(A: ComoduleAlgebra, rep_matrices, corep, sigma: DualCocycle):
    """Deformed representation pi_sigma(a) xi = a0 xi0 sigma^{-1}(a1, xi1).

    rep_matrices[i] is the dense matrix of the A basis element e_i on the
    Hilbert space; corep[r][m] is the H element with u(xi_m) =
    sum_r xi_r (x) u_{rm}.  Returns the list of deformed dense matrices.
    """
    if A.side != "right":
        raise ValueError("pi_sigma expects a right comodule algebra")
    nH = len(corep)
    out = []
    for i in range(A.algebra.dim):
        M = [[ZERO] * nH for _ in range(nH)]
        for (p, s), c in A.coaction.get(i, {}).items():
            R = rep_matrices[p]
            for m in range(nH):
                for r in range(nH):
                    u_rm = corep[r][m]
                    w = ZERO
                    for t, ct in u_rm.items():
                        sv = sigma.inverse_table().get((s, t))
                        if sv is not None:
                            w = w + ct * sv
                    if w.is_zero():
                        continue
                    coef = c * w
                    for row in range(nH):
                        val = R[row][r]
                        if not val.is_zero():
                            M[row][m] = M[row][m] + coef * val
        out.append(M)
    return out
