"""Peter-Weyl basis of O(SU_q(2)) up to a spin cutoff.

Within each torus bigrade the monomials, ordered by degree, Gram-Schmidt
(against <x, y> = h(x* y)) into an orthogonal ladder; the j-th rung is the
matrix coefficient of the spin-(n_min + j) representation for that grade.
Rungs are kept monic in their lowest new monomial, with the exact squared
norm stored alongside.

The spin-1/2 matrix is the defining fundamental matrix.  The spin-1 matrix
is rebuilt from the coproduct interlocking: diagonal entries are fixed by
the counit, adjacent off-diagonal pairs by expanding Delta of the diagonal
entries, corners by expanding Delta of the adjacent entries; two remaining
gauge scales are pinned to the printed conventions and everything else is
derived and re-verified.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .haar import HaarState
from .pbw import ALPHA, ALPHA_STAR, GAMMA, GAMMA_STAR, SUq2

__all__ = ["PeterWeylBasis", "fundamental_matrix", "spin_one_matrix",
           "canonical_scales", "canonical_matrix", "verify_corep_matrix"]


def _half(x) -> Fraction:
    f = Fraction(x)
    if (2 * f).denominator != 1:
        raise ValueError(f"{x} is not a half-integer")
    return f


def grade_monomials(g1: int, g2: int, max_degree: int):
    """Monomials of torus grade (g1, g2), ascending degree."""
    if (g1 + g2) % 2:
        return []
    e = (g1 + g2) // 2
    cb = (g1 - g2) // 2  # c - b
    out = []
    b0 = max(0, -cb)
    b = b0
    while abs(e) + b + (b + cb) <= max_degree:
        out.append((e, b, b + cb))
        b += 1
    return out


class PeterWeylBasis:
    """Orthogonal d-basis up to spin N (half-integer), with exact norms.

    Entries are indexed d[(n, k, l)] with n the spin, k, l in {-n, ..., n}
    in integer steps; the grade convention puts d^{1/2}_{-1/2,-1/2} = alpha,
    so the grade of (n, k, l) is (-2k, -2l).
    """

    def __init__(self, ctx: SUq2, N, haar: HaarState | None = None):
        self.ctx = ctx
        self.N = _half(N)
        need = int(2 * self.N)
        self.haar = haar or HaarState(ctx, max_power=2 * need + 2)
        self.d: dict = {}
        self.norm2: dict = {}
        self._build()

    def _build(self):
        ctx = self.ctx
        two_n = int(2 * self.N)
        for tk in range(-two_n, two_n + 1):      # tk = 2k
            for tl in range(-two_n, two_n + 1):  # tl = 2l
                if (tk + tl) % 2:
                    continue
                g1, g2 = -tk, -tl
                monos = grade_monomials(g1, g2, two_n)
                ladder = []
                nmin = Fraction(max(abs(tk), abs(tl)), 2)
                for j, mono in enumerate(monos):
                    v = {mono: Fraction(1)}
                    for w, w2 in ladder:
                        c = self.haar.inner(w, v)
                        if c != 0:
                            v = ctx.sub(v, ctx.scale(c / w2, w))
                    n = nmin + j
                    if n > self.N:
                        break
                    # monic in the newly entering lowest-degree monomial
                    lead = v[mono]
                    v = ctx.scale(1 / lead, v)
                    v2 = self.haar.inner(v, v)
                    if v2 == 0:
                        raise ArithmeticError(
                            "Gram matrix degenerate: Haar not positive here")
                    ladder.append((v, v2))
                    k = Fraction(tk, 2)
                    l = Fraction(tl, 2)
                    self.d[(n, k, l)] = v
                    self.norm2[(n, k, l)] = v2

    def spins(self):
        out = []
        n = Fraction(0)
        while n <= self.N:
            out.append(n)
            n += Fraction(1, 2)
        return out

    def entry(self, n, k, l) -> dict:
        return self.d[(_half(n), _half(k), _half(l))]

    def entry_norm2(self, n, k, l) -> Fraction:
        return self.norm2[(_half(n), _half(k), _half(l))]

    def expand(self, x: dict) -> dict:
        """Exact expansion of x over the d-basis: {(n,k,l): coefficient}.

        Raises if x has components beyond the built spin cutoff.
        """
        ctx = self.ctx
        out = {}
        rest = dict(x)
        by_grade: dict = {}
        for m, c in x.items():
            by_grade.setdefault(ctx.grade(m), {})[m] = c
        for (g1, g2), part in by_grade.items():
            tk, tl = -g1, -g2
            k = Fraction(tk, 2)
            l = Fraction(tl, 2)
            n = Fraction(max(abs(tk), abs(tl)), 2)
            while part:
                key = (n, k, l)
                if key not in self.d:
                    raise ArithmeticError(
                        f"component at spin {n} exceeds the cutoff {self.N}")
                c = self.haar.inner(self.d[key], part) / self.norm2[key]
                if c != 0:
                    out[key] = c
                    part = ctx.sub(part, ctx.scale(c, self.d[key]))
                n += 1
        return out

    def check_orthogonality(self) -> bool:
        """Exact pairwise orthogonality of all built entries."""
        keys = sorted(self.d, key=lambda t: (t[0], t[1], t[2]))
        for i, a in enumerate(keys):
            for b in keys[i + 1:]:
                if self.haar.inner(self.d[a], self.d[b]) != 0:
                    return False
        return True


def fundamental_matrix(ctx: SUq2):
    """D^{1/2} exactly as printed: [[alpha, -q gamma*], [gamma, alpha*]]."""
    one = Fraction(1)
    return [[{ALPHA: one}, {GAMMA_STAR: -ctx.q}],
            [{GAMMA: one}, {ALPHA_STAR: one}]]


def spin_one_matrix(ctx: SUq2, basis: PeterWeylBasis | None = None):
    """The 3x3 spin-1 corepresentation matrix, rows/columns k, l = -1, 0, 1.

    Built from the Gram-Schmidt ladder plus the coproduct interlocking; the
    two gauge scales not fixed by the interlocking follow the printed-matrix
    convention (d_{0,-1} monic, d_{0,1} = q * monic).
    """
    basis = basis or PeterWeylBasis(ctx, 1)
    raw = {(k, l): basis.entry(1, Fraction(k), Fraction(l))
           for k in (-1, 0, 1) for l in (-1, 0, 1)}
    c = {}
    for k in (-1, 0, 1):  # diagonals: counit 1
        eps = ctx.counit(raw[(k, k)])
        if eps == 0:
            raise ArithmeticError("diagonal entry has vanishing counit")
        c[(k, k)] = 1 / eps
    # gauge: printed conventions for the two entries in row 0
    c[(0, -1)] = Fraction(1)
    c[(0, 1)] = ctx.q
    # interlock the remaining four from Delta(d_00) and Delta(d_{0,-1}),
    # Delta(d_{0,1})
    d00 = ctx.scale(c[(0, 0)], raw[(0, 0)])
    rem = ctx.delta(d00)
    for (m1, m2), v in _tensor_of(ctx, d00, d00).items():
        rem[(m1, m2)] = rem.get((m1, m2), Fraction(0)) - v
    rem = {k2: v for k2, v in rem.items() if v != 0}
    c[(-1, 0)] = _match_scale(ctx, rem, raw[(0, -1)], c[(0, -1)],
                              raw[(-1, 0)])
    c[(1, 0)] = _match_scale(ctx, rem, raw[(0, 1)], c[(0, 1)], raw[(1, 0)])
    # corners from Delta(d_{0,-1}) = d_{0,-1} (x) d_{-1,-1} + d_{00} (x)
    # d_{0,-1} + d_{0,1} (x) d_{1,-1}
    d0m = ctx.scale(c[(0, -1)], raw[(0, -1)])
    rem = ctx.delta(d0m)
    for t, v in _tensor_of(ctx, d0m,
                           ctx.scale(c[(-1, -1)], raw[(-1, -1)])).items():
        rem[t] = rem.get(t, Fraction(0)) - v
    for t, v in _tensor_of(ctx, d00, d0m).items():
        rem[t] = rem.get(t, Fraction(0)) - v
    rem = {k2: v for k2, v in rem.items() if v != 0}
    c[(1, -1)] = _match_scale(ctx, rem, raw[(0, 1)], c[(0, 1)], raw[(1, -1)])
    d0p = ctx.scale(c[(0, 1)], raw[(0, 1)])
    rem = ctx.delta(d0p)
    for t, v in _tensor_of(ctx, d0p,
                           ctx.scale(c[(1, 1)], raw[(1, 1)])).items():
        rem[t] = rem.get(t, Fraction(0)) - v
    for t, v in _tensor_of(ctx, d00, d0p).items():
        rem[t] = rem.get(t, Fraction(0)) - v
    rem = {k2: v for k2, v in rem.items() if v != 0}
    c[(-1, 1)] = _match_scale(ctx, rem, raw[(0, -1)], c[(0, -1)],
                              raw[(-1, 1)])

    mat = [[ctx.scale(c[(k, l)], raw[(k, l)]) for l in (-1, 0, 1)]
           for k in (-1, 0, 1)]
    _verify_corep(ctx, mat)
    return mat


def _tensor_of(ctx: SUq2, x: dict, y: dict) -> dict:
    out = {}
    for m1, a in x.items():
        for m2, b in y.items():
            out[(m1, m2)] = out.get((m1, m2), Fraction(0)) + a * b
    return {k: v for k, v in out.items() if v != 0}


def canonical_scales(basis: PeterWeylBasis, n) -> dict:
    """Rescalings c_{kl} making the Gram-Schmidt ladder at spin n a genuine
    corepresentation matrix d_{kl} = c_{kl} * raw_{kl}.

    Diagonals are counit-normalized, the superdiagonal is the gauge (kept
    monic), and every other entry is pinned by expanding the coproduct of an
    already-scaled neighbour; the corepresentation property is then exact by
    construction and can be re-verified with `verify_corep_matrix`.
    """
    ctx = basis.ctx
    n = _half(n)
    ks = [Fraction(j, 2) for j in range(-int(2 * n), int(2 * n) + 1, 2)]
    raw = {(k, l): basis.entry(n, k, l) for k in ks for l in ks}
    c = {}
    for k in ks:
        eps = ctx.counit(raw[(k, k)])
        if eps == 0:
            raise ArithmeticError("vanishing counit on a diagonal entry")
        c[(k, k)] = 1 / eps
    for k in ks[:-1]:
        c[(k, k + 1)] = Fraction(1)
    # subdiagonal from Delta(d_kk) = ... + d_{k,k+1} (x) d_{k+1,k} + ...
    for k in ks[:-1]:
        dkk = ctx.scale(c[(k, k)], raw[(k, k)])
        rem = dict(ctx.delta(dkk))
        val = _pair_coefficient(ctx, rem, raw[(k, k + 1)], raw[(k + 1, k)])
        c[(k + 1, k)] = val / c[(k, k + 1)]
    # outward induction on |k - l| >= 2 using Delta(d_{k,l'}) with l' one
    # step from l toward k: the m = l term reads d_{kl} (x) d_{l,l'}
    two_n = int(2 * n)
    for dist in range(2, two_n + 1):
        for k in ks:
            for sgn in (1, -1):
                l = k + sgn * dist
                if l not in ks:
                    continue
                lp = l - sgn  # one step back toward k
                dklp = ctx.scale(c[(k, lp)], raw[(k, lp)])
                rem = dict(ctx.delta(dklp))
                val = _pair_coefficient(ctx, rem, raw[(k, l)], raw[(l, lp)])
                c[(k, l)] = val / c[(l, lp)]
    return c


def _pair_coefficient(ctx: SUq2, tensor: dict, left_raw: dict,
                      right_raw: dict):
    """Coefficient of left_raw (x) right_raw inside a coproduct expansion,
    read off at the lowest-degree monomial pair of the two raw vectors.

    Distinct middle indices m contribute at distinct grade pairs, so the key
    (lowest(left), lowest(right)) isolates the wanted term."""
    lm = min(left_raw, key=ctx.degree)
    rm = min(right_raw, key=ctx.degree)
    num = tensor.get((lm, rm), Fraction(0))
    return num / (left_raw[lm] * right_raw[rm])


def verify_corep_matrix(ctx: SUq2, mat) -> bool:
    try:
        _verify_corep(ctx, mat)
    except ArithmeticError:
        return False
    return True


def canonical_matrix(basis: PeterWeylBasis, n):
    """The canonically scaled spin-n matrix, rows/cols ascending in k, l."""
    ctx = basis.ctx
    n = _half(n)
    scales = canonical_scales(basis, n)
    ks = [Fraction(j, 2) for j in range(-int(2 * n), int(2 * n) + 1, 2)]
    return [[ctx.scale(scales[(k, l)], basis.entry(n, k, l)) for l in ks]
            for k in ks]


def _match_scale(ctx: SUq2, rem: dict, left_raw: dict, left_scale,
                 right_raw: dict):
    """Given rem containing (left_scale * left_raw) (x) (c * right_raw) as
    its component along that grade pair, solve for c."""
    lm = min(left_raw, key=ctx.degree)
    rm = min(right_raw, key=ctx.degree)
    # the coefficient of lm (x) rm in rem, divided by the known factors;
    # other grade pairs cannot contribute to this key
    num = rem.get((lm, rm), Fraction(0))
    den = left_scale * left_raw[lm] * right_raw[rm]
    return num / den


def _verify_corep(ctx: SUq2, mat):
    """Delta(d_kl) = sum_m d_km (x) d_ml and eps(d_kl) = delta_kl."""
    size = len(mat)
    for i in range(size):
        for j in range(size):
            lhs = ctx.delta(mat[i][j])
            rhs: dict = {}
            for m in range(size):
                for t, v in _tensor_of(ctx, mat[i][m], mat[m][j]).items():
                    rhs[t] = rhs.get(t, Fraction(0)) + v
            rhs = {k: v for k, v in rhs.items() if v != 0}
            if lhs != rhs:
                raise ArithmeticError(
                    f"corepresentation property fails at entry ({i},{j})")
            eps = ctx.counit(mat[i][j])
            if eps != (1 if i == j else 0):
                raise ArithmeticError(
                    f"counit normalization fails at entry ({i},{j})")
