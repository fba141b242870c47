"""Finite-dimensional *-algebras and Hopf *-algebras as structure tensors.

Everything is basis-indexed and sparse: an element is a dict {index: Cyc},
a product tensor maps (i, j) to the element e_i e_j, a coproduct maps i to
{(j, k): coefficient}.  All verification loops are brute force over basis
tuples; at the dimensions used here (<= 16) that is fast and exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .._linalg import invert_dense, rank, solve
from .._scalars import Cyc

__all__ = [
    "Check", "Report", "vec", "vadd", "vscale", "vsub", "vclean", "veq",
    "StarAlgebra", "FiniteHopfAlgebra", "ComoduleAlgebra",
    "cyclic_group_algebra", "function_algebra", "algebra_invariants",
    "adjoint_wrt_gram", "gram_is_positive_definite",
]

ZERO = Cyc.rational(0)
ONE = Cyc.rational(1)


def sc(x) -> Cyc:
    return x if isinstance(x, Cyc) else Cyc._promote(x)


# -- sparse vectors --

def vec(*pairs) -> dict:
    return {i: sc(c) for i, c in pairs if not sc(c).is_zero()}


def vclean(v: dict) -> dict:
    return {i: c for i, c in v.items() if not c.is_zero()}


def vadd(*vs) -> dict:
    out: dict = {}
    for v in vs:
        for i, c in v.items():
            out[i] = out.get(i, ZERO) + c
    return vclean(out)


def vscale(c, v: dict) -> dict:
    c = sc(c)
    if c.is_zero():
        return {}
    return {i: c * x for i, x in v.items()}


def vsub(u: dict, v: dict) -> dict:
    return vadd(u, vscale(-1, v))


def veq(u: dict, v: dict) -> bool:
    return not vsub(u, v)


def vconj(v: dict) -> dict:
    return {i: c.conj() for i, c in v.items()}


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def as_dict(self):
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


class Report:
    """Ordered collection of named pass/fail checks."""

    def __init__(self, checks: Optional[list] = None):
        self.checks = checks or []

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append(Check(name, bool(ok), detail))
        return ok

    def extend(self, other: "Report"):
        self.checks.extend(other.checks)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def first_failure(self) -> Optional[Check]:
        for c in self.checks:
            if not c.ok:
                return c
        return None

    def as_dict(self):
        return {"ok": self.ok, "checks": [c.as_dict() for c in self.checks]}

    def __repr__(self):
        status = "ok" if self.ok else f"FAIL at {self.first_failure().name}"
        return f"Report({len(self.checks)} checks, {status})"


class StarAlgebra:
    """Unital associative *-algebra over exact cyclotomic scalars."""

    def __init__(self, dim: int, product: dict, unit: dict, star: dict,
                 name: str = ""):
        self.dim = dim
        self.product = {k: vclean(v) for k, v in product.items()}
        self.unit = vclean(unit)
        self.star_table = {i: vclean(v) for i, v in star.items()}
        self.name = name

    # -- operations on elements --

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                ab = a * b
                if ab.is_zero():
                    continue
                for k, c in self.product.get((i, j), {}).items():
                    out[k] = out.get(k, ZERO) + ab * c
        return vclean(out)

    def mul_many(self, *xs) -> dict:
        out = self.unit
        for x in xs:
            out = self.mul(out, x)
        return out

    def star(self, x: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            ac = a.conj()
            for j, c in self.star_table.get(i, {}).items():
                out[j] = out.get(j, ZERO) + ac * c
        return vclean(out)

    def basis(self):
        return ({i: ONE} for i in range(self.dim))

    # -- verification --

    def verify_algebra(self, rep: Optional[Report] = None) -> Report:
        rep = rep or Report()
        assoc_ok, bad = True, ""
        for i, j, k in itertools.product(range(self.dim), repeat=3):
            lhs = self.mul(self.product.get((i, j), {}), {k: ONE})
            rhs = self.mul({i: ONE}, self.product.get((j, k), {}))
            if not veq(lhs, rhs):
                assoc_ok, bad = False, f"basis triple ({i},{j},{k})"
                break
        rep.add("associativity", assoc_ok, bad)
        unit_ok = all(
            veq(self.mul(self.unit, {i: ONE}), {i: ONE})
            and veq(self.mul({i: ONE}, self.unit), {i: ONE})
            for i in range(self.dim))
        rep.add("unit law", unit_ok)
        inv_ok = all(veq(self.star(self.star({i: ONE})), {i: ONE})
                     for i in range(self.dim))
        rep.add("star involutive", inv_ok)
        anti_ok, bad = True, ""
        for i, j in itertools.product(range(self.dim), repeat=2):
            lhs = self.star(self.product.get((i, j), {}))
            rhs = self.mul(self.star({j: ONE}), self.star({i: ONE}))
            if not veq(lhs, rhs):
                anti_ok, bad = False, f"basis pair ({i},{j})"
                break
        rep.add("star antimultiplicative", anti_ok, bad)
        rep.add("star preserves unit", veq(self.star(self.unit), self.unit))
        return rep

    def left_multiplication_matrix(self, x: dict):
        """Dense column-convention matrix of y -> x y on the basis."""
        cols = [self.mul(x, {j: ONE}) for j in range(self.dim)]
        return [[cols[j].get(i, ZERO) for j in range(self.dim)]
                for i in range(self.dim)]

    def center_dimension(self) -> int:
        rows = []
        for j in range(self.dim):  # commutation with each basis element
            for k in range(self.dim):
                row = {}
                for i in range(self.dim):
                    d = vsub(self.product.get((i, j), {}),
                             self.product.get((j, i), {}))
                    if k in d:
                        row[i] = d[k]
                if row:
                    rows.append(row)
        return self.dim - rank(rows)


class FiniteHopfAlgebra(StarAlgebra):
    """Hopf *-algebra with coproduct, counit, antipode structure tensors."""

    def __init__(self, dim, product, unit, star, coproduct, counit, antipode,
                 name=""):
        super().__init__(dim, product, unit, star, name)
        self.coproduct = {i: vclean(v) for i, v in coproduct.items()}
        self.counit = {i: sc(c) for i, c in counit.items()
                       if not sc(c).is_zero()}
        self.antipode = {i: vclean(v) for i, v in antipode.items()}
        self._antipode_inv = None
        self._haar = None

    # -- coalgebra operations --

    def delta(self, x: dict) -> dict:
        """Coproduct of an element, as {(j, k): coeff}."""
        out: dict = {}
        for i, a in x.items():
            for jk, c in self.coproduct.get(i, {}).items():
                out[jk] = out.get(jk, ZERO) + a * c
        return vclean(out)

    def delta2(self, x: dict) -> dict:
        """(Delta (x) id) Delta x, as {(j, k, l): coeff}."""
        out: dict = {}
        for (j, k), c in self.delta(x).items():
            for (a, b), d in self.coproduct.get(j, {}).items():
                key = (a, b, k)
                out[key] = out.get(key, ZERO) + c * d
        return vclean(out)

    def eps(self, x: dict) -> Cyc:
        out = ZERO
        for i, a in x.items():
            out = out + a * self.counit.get(i, ZERO)
        return out

    def S(self, x: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, c in self.antipode.get(i, {}).items():
                out[j] = out.get(j, ZERO) + a * c
        return vclean(out)

    def S_inv(self, x: dict) -> dict:
        if self._antipode_inv is None:
            mat = [[self.antipode.get(j, {}).get(i, ZERO)
                    for j in range(self.dim)] for i in range(self.dim)]
            inv = invert_dense(mat, ZERO, ONE)
            if inv is None:
                raise ArithmeticError("antipode is not invertible")
            self._antipode_inv = {
                j: vclean({i: inv[i][j] for i in range(self.dim)})
                for j in range(self.dim)}
        out: dict = {}
        for i, a in x.items():
            for j, c in self._antipode_inv.get(i, {}).items():
                out[j] = out.get(j, ZERO) + a * c
        return vclean(out)

    # -- Haar functional --

    def haar(self) -> dict:
        """The unique two-sided invariant functional with h(1) = 1.

        Solved exactly from (id (x) h) Delta = h(.) 1 = (h (x) id) Delta.
        """
        if self._haar is not None:
            return self._haar
        rows, rhs = [], []

        def eq(row, val):
            rows.append(vclean(row))
            rhs.append(val)

        for i in range(self.dim):
            di = self.coproduct.get(i, {})
            for j in range(self.dim):
                left = {}
                right = {}
                for (a, b), c in di.items():
                    if a == j:
                        left[b] = left.get(b, ZERO) + c
                    if b == j:
                        right[a] = right.get(a, ZERO) + c
                uj = self.unit.get(j, ZERO)
                if not uj.is_zero():
                    left[i] = left.get(i, ZERO) - uj
                    right[i] = right.get(i, ZERO) - uj
                if vclean(left):
                    eq(left, ZERO)
                if vclean(right):
                    eq(right, ZERO)
        eq(dict(self.unit), ONE)
        sol = solve(rows, rhs, self.dim)
        if sol is None:
            raise ArithmeticError("invariance system for the Haar functional "
                                  "is inconsistent")
        self._haar = {i: sol.get(i, ZERO) for i in range(self.dim)}
        return self._haar

    def haar_eval(self, x: dict) -> Cyc:
        h = self.haar()
        out = ZERO
        for i, a in x.items():
            out = out + a * h.get(i, ZERO)
        return out

    # -- verification --

    def verify_hopf(self, rep: Optional[Report] = None) -> Report:
        rep = rep or Report()
        self.verify_algebra(rep)
        dim = self.dim
        ok, bad = True, ""
        for i in range(dim):
            lhs = {}
            rhs = {}
            for (j, k), c in self.coproduct.get(i, {}).items():
                for (a, b), d in self.coproduct.get(j, {}).items():
                    lhs[(a, b, k)] = lhs.get((a, b, k), ZERO) + c * d
                for (a, b), d in self.coproduct.get(k, {}).items():
                    rhs[(j, a, b)] = rhs.get((j, a, b), ZERO) + c * d
            if not veq(vclean(lhs), vclean(rhs)):
                ok, bad = False, f"basis {i}"
                break
        rep.add("coassociativity", ok, bad)

        ok = True
        for i in range(dim):
            l, r = {}, {}
            for (j, k), c in self.coproduct.get(i, {}).items():
                l[k] = l.get(k, ZERO) + c * self.counit.get(j, ZERO)
                r[j] = r.get(j, ZERO) + c * self.counit.get(k, ZERO)
            if not (veq(vclean(l), {i: ONE}) and veq(vclean(r), {i: ONE})):
                ok = False
                break
        rep.add("counit law", ok)

        ok, bad = True, ""
        for i in range(dim):
            l, r = {}, {}
            for (j, k), c in self.coproduct.get(i, {}).items():
                l = vadd(l, vscale(c, self.mul(self.S({j: ONE}), {k: ONE})))
                r = vadd(r, vscale(c, self.mul({j: ONE}, self.S({k: ONE}))))
            target = vscale(self.counit.get(i, ZERO), self.unit)
            if not (veq(l, target) and veq(r, target)):
                ok, bad = False, f"basis {i}"
                break
        rep.add("antipode convolution inverse", ok, bad)

        ok = all(veq(self.delta({i: ONE}),
                     _tensor_star(self, self.delta(self.star({i: ONE}))))
                 for i in range(dim))
        rep.add("coproduct is a *-map", ok)

        ok = all(veq(self.star(self.S(self.star(self.S({i: ONE})))), {i: ONE})
                 for i in range(dim))
        rep.add("(star S)^2 = id", ok)

        mult_ok, bad = True, ""
        for i, j in itertools.product(range(dim), repeat=2):
            lhs = self.delta(self.product.get((i, j), {}))
            rhs = _tensor_mul(self, self.delta({i: ONE}), self.delta({j: ONE}))
            if not veq(lhs, rhs):
                mult_ok, bad = False, f"pair ({i},{j})"
                break
        rep.add("coproduct multiplicative", mult_ok, bad)
        return rep


def _tensor_mul(H: FiniteHopfAlgebra, t1: dict, t2: dict) -> dict:
    out: dict = {}
    for (a, b), c in t1.items():
        for (x, y), d in t2.items():
            cd = c * d
            for p, cp in H.product.get((a, x), {}).items():
                for q, cq in H.product.get((b, y), {}).items():
                    key = (p, q)
                    out[key] = out.get(key, ZERO) + cd * cp * cq
    return vclean(out)


def _tensor_star(H: FiniteHopfAlgebra, t: dict) -> dict:
    """(star (x) star)(t), legs kept in place."""
    out: dict = {}
    for (a, b), c in t.items():
        sa = H.star({a: ONE})
        sb = H.star({b: ONE})
        cc = c.conj()
        for p, cp in sa.items():
            for q, cq in sb.items():
                key = (p, q)
                out[key] = out.get(key, ZERO) + cc * cp * cq
    return vclean(out)


# -- constructors --

def _tuple_group(orders):
    elems = list(itertools.product(*[range(n) for n in orders]))
    index = {g: i for i, g in enumerate(elems)}

    def add(g, h):
        return tuple((a + b) % n for a, b, n in zip(g, h, orders))

    def neg(g):
        return tuple((-a) % n for a, n in zip(g, orders))

    return elems, index, add, neg


def cyclic_group_algebra(orders) -> FiniteHopfAlgebra:
    """C[Z_{n_1} x ... x Z_{n_r}] with g* = g^{-1}, S(g) = g^{-1}."""
    elems, index, add, neg = _tuple_group(orders)
    dim = len(elems)
    product = {(i, j): {index[add(elems[i], elems[j])]: ONE}
               for i in range(dim) for j in range(dim)}
    unit = {index[tuple(0 for _ in orders)]: ONE}
    star = {i: {index[neg(elems[i])]: ONE} for i in range(dim)}
    coproduct = {i: {(i, i): ONE} for i in range(dim)}
    counit = {i: ONE for i in range(dim)}
    antipode = {i: {index[neg(elems[i])]: ONE} for i in range(dim)}
    H = FiniteHopfAlgebra(dim, product, unit, star, coproduct, counit,
                          antipode, name=f"C[Z{'x Z'.join(map(str, orders))}]")
    H.group_elements = elems
    H.group_index = index
    H.group_add = add
    H.group_neg = neg
    return H


def function_algebra(orders) -> FiniteHopfAlgebra:
    """C(Z_{n_1} x ... x Z_{n_r}) on the delta-function basis."""
    elems, index, add, neg = _tuple_group(orders)
    dim = len(elems)
    product = {(i, j): ({i: ONE} if i == j else {})
               for i in range(dim) for j in range(dim)}
    unit = {i: ONE for i in range(dim)}
    star = {i: {i: ONE} for i in range(dim)}
    coproduct = {}
    for i, g in enumerate(elems):
        t = {}
        for j, a in enumerate(elems):
            b = tuple((x - y) % n for x, y, n in zip(g, a, orders))
            t[(j, index[b])] = ONE
        coproduct[i] = t
    counit = {index[tuple(0 for _ in orders)]: ONE}
    antipode = {i: {index[neg(elems[i])]: ONE} for i in range(dim)}
    H = FiniteHopfAlgebra(dim, product, unit, star, coproduct, counit,
                          antipode, name=f"C(Z{'x Z'.join(map(str, orders))})")
    H.group_elements = elems
    H.group_index = index
    return H


@dataclass
class ComoduleAlgebra:
    """*-algebra with a one-sided coaction of a Hopf *-algebra.

    For side == "right" the coaction maps e_i to sum c * e_a (x) e_h with
    keys (a, h); for side == "left" keys are (h, a).
    """
    algebra: StarAlgebra
    hopf: FiniteHopfAlgebra
    coaction: dict
    side: str = "right"

    def coact(self, x: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for key, c in self.coaction.get(i, {}).items():
                out[key] = out.get(key, ZERO) + a * c
        return vclean(out)

    def verify(self, rep: Optional[Report] = None) -> Report:
        rep = rep or Report()
        A, H = self.algebra, self.hopf
        right = self.side == "right"

        ok, bad = True, ""
        for i in range(A.dim):
            t = self.coaction.get(i, {})
            lhs, rhs = {}, {}
            for key, c in t.items():
                a, h = (key if right else (key[1], key[0]))
                for key2, d in self.coaction.get(a, {}).items():
                    a2, h2 = (key2 if right else (key2[1], key2[0]))
                    k = (a2, h2, h) if right else (h, h2, a2)
                    lhs[k] = lhs.get(k, ZERO) + c * d
                for (p, q), d in H.coproduct.get(h, {}).items():
                    k = (a, p, q) if right else (p, q, a)
                    rhs[k] = rhs.get(k, ZERO) + c * d
            if not veq(vclean(lhs), vclean(rhs)):
                ok, bad = False, f"basis {i}"
                break
        rep.add("coaction coassociativity", ok, bad)

        ok = True
        for i in range(A.dim):
            out = {}
            for key, c in self.coaction.get(i, {}).items():
                a, h = (key if right else (key[1], key[0]))
                out[a] = out.get(a, ZERO) + c * H.counit.get(h, ZERO)
            if not veq(vclean(out), {i: ONE}):
                ok = False
                break
        rep.add("coaction counital", ok)

        ok, bad = True, ""
        for i, j in itertools.product(range(A.dim), repeat=2):
            lhs = self.coact(A.product.get((i, j), {}))
            rhs = {}
            for key1, c in self.coaction.get(i, {}).items():
                for key2, d in self.coaction.get(j, {}).items():
                    a1, h1 = (key1 if right else (key1[1], key1[0]))
                    a2, h2 = (key2 if right else (key2[1], key2[0]))
                    cd = c * d
                    for p, cp in A.product.get((a1, a2), {}).items():
                        for q, cq in H.product.get((h1, h2), {}).items():
                            key = (p, q) if right else (q, p)
                            rhs[key] = rhs.get(key, ZERO) + cd * cp * cq
            if not veq(lhs, vclean(rhs)):
                ok, bad = False, f"pair ({i},{j})"
                break
        rep.add("coaction multiplicative", ok, bad)

        unit_img = self.coact(A.unit)
        target = {}
        for a, c in A.unit.items():
            for h, d in self.hopf.unit.items():
                key = (a, h) if right else (h, a)
                target[key] = target.get(key, ZERO) + c * d
        rep.add("coaction unital", veq(unit_img, vclean(target)))

        ok = True
        for i in range(A.dim):
            lhs = self.coact(A.star({i: ONE}))
            rhs = {}
            for key, c in self.coaction.get(i, {}).items():
                a, h = (key if right else (key[1], key[0]))
                cc = c.conj()
                for p, cp in A.star({a: ONE}).items():
                    for q, cq in H.star({h: ONE}).items():
                        key2 = (p, q) if right else (q, p)
                        rhs[key2] = rhs.get(key2, ZERO) + cc * cp * cq
            if not veq(lhs, vclean(rhs)):
                ok = False
                break
        rep.add("coaction is a *-map", ok)
        return rep


def adjoint_wrt_gram(mat, gram):
    """Adjoint of a dense Cyc matrix for the inner product <x, G y>."""
    n = len(mat)
    ginv = invert_dense(gram, ZERO, ONE)
    if ginv is None:
        raise ArithmeticError("Gram matrix is singular")
    # A^dagger = G^{-1} A^{*T} G
    ct = [[mat[j][i].conj() for j in range(n)] for i in range(n)]
    tmp = _dense_mul(ct, gram)
    return _dense_mul(ginv, tmp)


def _dense_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[sum((a[i][k] * b[k][j] for k in range(m)), ZERO)
             for j in range(p)] for i in range(n)]


def gram_is_positive_definite(gram) -> bool:
    """Exact LDL* when entries are rational; float eigenvalues otherwise."""
    n = len(gram)
    if all(gram[i][j].is_rational() or gram[i][j].conj() == gram[j][i]
           for i in range(n) for j in range(n)):
        try:
            return _ldl_positive(gram)
        except ValueError:
            pass
    import numpy as np
    M = np.array([[gram[i][j].to_complex() for j in range(n)]
                  for i in range(n)])
    return bool(np.linalg.eigvalsh(M).min() > 1e-12)


def _ldl_positive(gram) -> bool:
    # plain elimination pivots are the leading-minor ratios; for a Hermitian
    # matrix they are all positive iff it is positive definite
    n = len(gram)
    a = [[gram[i][j] for j in range(n)] for i in range(n)]
    for k in range(n):
        piv = a[k][k]
        if not piv.is_rational():
            raise ValueError("non-rational pivot")
        if piv.rational_value() <= 0:
            return False
        for i in range(k + 1, n):
            f = a[i][k] / piv
            for j in range(k + 1, n):
                a[i][j] = a[i][j] - f * a[k][j]
    return True


def algebra_invariants(A: StarAlgebra, state=None) -> dict:
    """Canonical *-isomorphism invariants: dimension, center dimension, and
    the multiset of Artin-Wedderburn block sizes.

    Block sizes come from eigenvalue multiplicities of a pseudo-random
    self-adjoint element in a faithful representation, following the usual
    numerical block-diagonalization trick.
    """
    import numpy as np
    n = A.dim
    center = A.center_dimension()
    rng = np.random.default_rng(20240811)
    coeffs = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    x = {i: _cyc_from_float(coeffs[i]) for i in range(n)}
    x = vadd(x, A.star(x))  # self-adjoint
    mat = A.left_multiplication_matrix(x)
    M = np.array([[mat[i][j].to_complex() for j in range(n)]
                  for i in range(n)])
    # symmetrize in floats; left-regular rep of a self-adjoint element need
    # not be numerically Hermitian unless the basis is orthonormal, so use
    # plain eigenvalues and cluster them
    eig = np.sort(np.linalg.eigvals(M).real)
    clusters = []
    for ev in eig:
        if clusters and abs(ev - clusters[-1][0]) < 1e-6:
            clusters[-1][1] += 1
        else:
            clusters.append([ev, 1])
    mults = sorted(c[1] for c in clusters)
    block_sizes = []
    # multiplicity m appears once per eigenvalue of an m x m block, i.e. m
    # times per block of size m in the left regular representation
    from collections import Counter
    cnt = Counter(mults)
    for m, c in sorted(cnt.items()):
        if c % m == 0:
            block_sizes.extend([m] * (c // m))
        else:  # degenerate clustering; report raw multiplicities
            block_sizes.append((m, c))
    return {"dim": n, "center_dim": center,
            "block_sizes": tuple(block_sizes)}


def _cyc_from_float(z: complex) -> Cyc:
    return Cyc.gauss(Fraction(float(z.real)).limit_denominator(10**6),
                     Fraction(float(z.imag)).limit_denominator(10**6))
