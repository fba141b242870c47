"""The Podles sphere inside O(SU_q(2)) and its truncated equivariant triple.

Generators.  Writing u = sqrt(c) with c = 1/t - t, the elements

    A~ = gamma* gamma + u (gamma* alpha + q^{-1} gamma alpha*)
    B~ = u alpha^2 + alpha gamma - q u gamma^2

satisfy the four sphere relations exactly; that is re-verified on every
construction.  A frequently transcribed variant built around the auxiliary
radical rho (see `rho_variant_generators`) fails the q-commutation relation
for q != 1 and is kept only so the discrepancy stays pinned by a test.

Spinor space.  The literal rows of Peter-Weyl coefficients are not
invariant under multiplication for t < 1; the invariant objects are the two
cyclic modules generated by spin-1/2 profile vectors.  The profile lines
are the two rank-one directions of the spin-3/2 leakage at spin 1/2 and
are transported upward through the generator action, giving an orthonormal
basis e^n_{mu,l} (n = 1/2, 3/2, ..., mu = +-1/2, |l| <= n) on which the
corepresentation acts in l, the Dirac operator flips mu with eigenvalue
c1 n + c2, and the generators act by left multiplication with exact
d-basis expansions underneath.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .._scalars import Quad, as_fraction
from .pbw import ALPHA, ALPHA_STAR, GAMMA, GAMMA_STAR, SUq2
from .peterweyl import PeterWeylBasis

__all__ = ["PodlesData", "podles_generators", "rho_variant_generators",
           "PodlesRelationError", "relation_residuals_symbolic",
           "TruncatedPodlesTriple", "truncated_podles_triple"]


@dataclass
class PodlesData:
    ctx: SUq2
    q: Fraction
    t: Fraction
    c: Fraction
    u: Quad                  # u^2 = c
    rho2: Fraction           # the auxiliary radical of the rho-variant
    A: dict
    B: dict

    def x0(self) -> dict:
        """t (1 - (1+q^2) A~), the spherical generator; pure spin 1."""
        ctx, q, t = self.ctx, self.q, self.t
        out = ctx.scale(t, ctx.one())
        return ctx.add(out, ctx.scale(-t * (1 + q * q), self.A))


class PodlesRelationError(ArithmeticError):
    pass


def relation_residuals_symbolic(ctx: SUq2, A: dict, B: dict, c) -> dict:
    """Exact residuals of the four sphere relations for candidate (A, B)."""
    q = ctx.q
    one = ctx.one()
    out = {"A* = A": ctx.sub(ctx.star(A), A)}
    out["A B = q^-2 B A"] = ctx.sub(ctx.mul(A, B),
                                    ctx.scale(1 / (q * q), ctx.mul(B, A)))
    target = ctx.add(A, ctx.scale(Fraction(-1), ctx.mul(A, A)),
                     ctx.scale(c, one))
    out["B* B = A - A^2 + c"] = ctx.sub(ctx.mul(ctx.star(B), B), target)
    target = ctx.add(ctx.scale(q * q, A), ctx.scale(-q ** 4, ctx.mul(A, A)),
                     ctx.scale(c, one))
    out["B B* = q^2 A - q^4 A^2 + c"] = ctx.sub(ctx.mul(B, ctx.star(B)),
                                                target)
    return out


def _params(q, t):
    q = as_fraction(q)
    t = as_fraction(t)
    if not (0 < q < 1 and 0 < t < 1):
        raise ValueError("q and t must lie in (0, 1)")
    c = 1 / t - t
    rho2 = q * q * t * t / ((q * q + 1) ** 2 * (1 - t))
    return q, t, c, rho2


def podles_generators(q, t) -> PodlesData:
    """Exact sphere generators at rational (q, t); relations re-verified."""
    q, t, c, rho2 = _params(q, t)
    ctx = SUq2(q)
    u = Quad.sqrt(c)
    A = ctx.add(ctx.normal_form(["g*", "g"]),
                ctx.scale(u, ctx.normal_form(["g*", "a"])),
                ctx.scale(u / q, ctx.normal_form(["g", "a*"])))
    B = ctx.add(ctx.scale(u, ctx.normal_form(["a", "a"])),
                ctx.normal_form(["a", "g"]),
                ctx.scale(-q * u, ctx.normal_form(["g", "g"])))
    for name, res in relation_residuals_symbolic(ctx, A, B, c).items():
        if res:
            raise PodlesRelationError(
                f"generators violate {name}: residual {res}")
    return PodlesData(ctx=ctx, q=q, t=t, c=c, u=u, rho2=rho2, A=A, B=B)


def rho_variant_generators(q, t):
    """The rho-built transcription of the generators.

    Returns (ctx, A, B, c, residuals).  The q-commutation residual is
    nonzero for every q != 1, which is exactly what the regression test
    pins down; use `podles_generators` for working data.
    """
    q, t, c, rho2 = _params(q, t)
    ctx = SUq2(q)
    rho = Quad.sqrt(rho2)
    one = ctx.one()
    s = 1 / (1 + q * q)
    A = ctx.scale(s, ctx.add(
        one,
        ctx.scale(q / t, ctx.normal_form(["g*", "a"])),
        ctx.scale(rho * (-1 / t), ctx.add(
            one, ctx.scale(-(1 + q * q), ctx.normal_form(["g*", "g"])))),
        ctx.scale(Fraction(1) / t, ctx.normal_form(["g", "a*"])),
    ))
    B = ctx.scale(s / t, ctx.add(
        ctx.scale(q, ctx.normal_form(["a", "a"])),
        ctx.scale(rho * (1 + q * q), ctx.normal_form(["a", "g"])),
        ctx.scale(-q * q, ctx.normal_form(["g", "g"])),
    ))
    return ctx, A, B, c, relation_residuals_symbolic(ctx, A, B, c)


# -- truncated spinor triple --

@dataclass
class TruncatedPodlesTriple:
    data: PodlesData
    N: Fraction
    c1: Fraction
    c2: Fraction
    spins: list                      # [1/2, 3/2, ..., N]
    labels: list                     # (n, mu, l) per basis index
    profiles: dict                   # (n, mu) -> profile over s
    A_mat: np.ndarray
    B_mat: np.ndarray
    D_mat: np.ndarray
    closure_residual: float
    basis: PeterWeylBasis

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, n, mu, l) -> int:
        return self.labels.index((Fraction(n), Fraction(mu), Fraction(l)))

    def interior_projection(self) -> np.ndarray:
        P = np.zeros((self.dim, self.dim))
        for i, (n, mu, l) in enumerate(self.labels):
            if n <= self.N - 1:
                P[i, i] = 1.0
        return P

    def dirac_spectrum(self) -> dict:
        """Exact eigenvalue -> multiplicity table from the labels."""
        out: dict = {}
        for n in self.spins:
            lam = self.c1 * n + self.c2
            for key in (lam, -lam):
                out[key] = out.get(key, 0) + int(2 * n + 1)
        return out

    def relation_residuals(self, interior: bool = True) -> dict:
        """Operator norms of the four sphere relations, compressions applied
        to the interior block by default."""
        q = float(self.data.q)
        c = float(self.data.c)
        A, B = self.A_mat, self.B_mat
        Bs = B.conj().T
        I = np.eye(self.dim)
        P = self.interior_projection() if interior else I
        rels = {
            "A self-adjoint": (A - A.conj().T) @ P,
            "A B = q^-2 B A": (A @ B - q ** -2 * B @ A) @ P,
            "B* B = A - A^2 + c": (Bs @ B - (A - A @ A + c * I)) @ P,
            "B B* = q^2 A - q^4 A^2 + c":
                (B @ Bs - (q ** 2 * A - q ** 4 * A @ A + c * I)) @ P,
        }
        return {k: float(np.linalg.norm(v, 2)) for k, v in rels.items()}

    def commutator_norms(self) -> dict:
        D = self.D_mat
        return {
            "[D, A]": float(np.linalg.norm(D @ self.A_mat - self.A_mat @ D, 2)),
            "[D, B]": float(np.linalg.norm(D @ self.B_mat - self.B_mat @ D, 2)),
        }

    def block_structure_ok(self, tol: float = 1e-9) -> bool:
        """Generators connect n only to n-1, n, n+1; A~ preserves the column
        index, B~ lowers it by one."""
        for M, dl in ((self.A_mat, 0), (self.B_mat, -1)):
            for i, (n1, m1, l1) in enumerate(self.labels):
                for j, (n2, m2, l2) in enumerate(self.labels):
                    if abs(M[i, j]) > tol and (abs(n1 - n2) > 1
                                               or l1 != l2 + dl):
                        return False
        return True


def _spin_range(n: Fraction):
    return [Fraction(k, 2) for k in range(-int(2 * n), int(2 * n) + 1, 2)]


def _canonical_frame(basis: PeterWeylBasis):
    """Canonical corepresentation rescalings and norms for every built spin."""
    from .peterweyl import canonical_scales
    spins = sorted({k[0] for k in basis.d})
    scales = {n: canonical_scales(basis, n) for n in spins}
    norm2 = {}
    for (n, k, l), v in basis.norm2.items():
        c = scales[n][(k, l)]
        norm2[(n, k, l)] = c * c * v
    return scales, norm2


def _transfer_matrix(pd: PodlesData, basis: PeterWeylBasis, scales,
                     n: Fraction, l: Fraction, gen: dict, dl: Fraction,
                     n_target: Fraction) -> np.ndarray:
    """Spin-n_target block of gen acting on the (n, l) slot, in canonical
    d-basis coordinates [target s', source s].

    In canonical coordinates the corepresentation matrix is the same on
    every multiplicity row, so these blocks are the l-channels of the
    generator action on profile space and are l-independent up to overall
    normal-form bookkeeping.
    """
    ctx = pd.ctx
    srange = _spin_range(n)
    tgt = _spin_range(n_target)
    M = np.zeros((len(tgt), len(srange)), dtype=complex)
    for col, s in enumerate(srange):
        x = ctx.scale(scales[n][(s, l)], basis.entry(n, s, l))
        exp = basis.expand(ctx.mul(gen, x))
        for (nn, kk, ll), coef in exp.items():
            if nn == n_target and ll == l + dl:
                M[tgt.index(kk), col] = float(coef / scales[nn][(kk, ll)])
    return M


def _module_profiles(pd: PodlesData, basis: PeterWeylBasis, scales,
                     N: Fraction):
    """Profile lines of the two spinor bundles, one per spin n <= N.

    The bundles are the submodules generated by the two rows of the
    fundamental matrix; in canonical coordinates their per-spin profiles
    are single lines, transported upward by the generator action.  The
    transport is over-determined (three generators, 2n+1 columns); the
    rank-one consistency of all channels is asserted at every step.
    """
    n0 = Fraction(1, 2)
    mus = (Fraction(1, 2), Fraction(-1, 2))
    gens = ((pd.A, Fraction(0)), (pd.B, Fraction(-1)),
            (pd.ctx.star(pd.B), Fraction(1)))

    # seeds: the spin-1/2 slots of the two bundles are the eigenlines of the
    # generator action on the two-dimensional spin-1/2 multiplicity space
    G0 = _transfer_matrix(pd, basis, scales, n0, Fraction(-1, 2), pd.A,
                          Fraction(0), n0)
    evals, evecs = np.linalg.eig(G0)
    if abs(evals[0] - evals[1]) < 1e-10:
        raise ArithmeticError("spin-1/2 block of the sphere action is "
                              "degenerate; cannot split the spinor bundles")
    order = np.argsort(evals.real)
    profiles = {}
    for mu, idx in zip(mus, order):
        w = evecs[:, idx]
        j = int(np.argmax(np.abs(w)))
        profiles[(n0, mu)] = w * (abs(w[j]) / w[j])

    n = n0
    while n < N:
        l = Fraction(-n)  # any column works; profiles are l-independent
        for mu in mus:
            cands = []
            for gen, dl in gens:
                if abs(l + dl) > n + 1:
                    continue
                G = _transfer_matrix(pd, basis, scales, n, l, gen, dl, n + 1)
                v = G @ profiles[(n, mu)]
                if np.linalg.norm(v) > 1e-10:
                    cands.append(v)
            if not cands:
                raise ArithmeticError(
                    f"module transport degenerate at spin {n}, mu {mu}")
            stacked = np.stack([v / np.linalg.norm(v) for v in cands])
            sv = np.linalg.svd(stacked, compute_uv=False)
            if len(sv) > 1 and sv[1] > 1e-8 * sv[0]:
                raise ArithmeticError(
                    f"spinor leakage not rank one at spin {n}, mu {mu}: "
                    f"singular values {sv}")
            w = cands[0] / np.linalg.norm(cands[0])
            j = int(np.argmax(np.abs(w)))
            profiles[(n + 1, mu)] = w * (abs(w[j]) / w[j])
        # consistency of the same-level action with the transported lines
        # (only checkable while products stay inside the built span)
        if n + 2 <= basis.N:
            for mu in mus:
                wn1 = profiles[(n + 1, mu)]
                ls = Fraction(-(n + 1)) + 1
                Gs = _transfer_matrix(pd, basis, scales, n + 1, ls, pd.A,
                                      Fraction(0), n + 1)
                v = Gs @ wn1
                off = v - np.vdot(wn1, v) / np.vdot(wn1, wn1) * wn1
                if np.linalg.norm(off) > 1e-8 * max(1.0, np.linalg.norm(v)):
                    raise ArithmeticError(
                        f"bundle line not preserved at spin {n + 1}, mu {mu}")
        n += 1
    return profiles


def truncated_podles_triple(q, t, c1, c2, N) -> TruncatedPodlesTriple:
    """Assemble the truncated spinor triple at spin cutoff N.

    The spinor basis is e^n_{mu,l} = (sum_s w^mu_n[s] d^n_{s,l}) normalized,
    with d the canonically scaled Peter-Weyl entries and w the bundle
    profiles; generator matrices come from exact d-basis expansions.
    """
    pd = podles_generators(q, t)
    N = Fraction(N)
    if (2 * N) % 2 != 1 or N < Fraction(1, 2):
        raise ValueError("N must be a half-odd integer (1/2, 3/2, ...)")
    c1 = as_fraction(c1)
    c2 = as_fraction(c2)
    if c1 == 0:
        raise ValueError("c1 must be nonzero")
    basis = PeterWeylBasis(pd.ctx, N + 1)
    scales, cnorm2 = _canonical_frame(basis)
    profiles = _module_profiles(pd, basis, scales, N + 1)

    spins = [Fraction(1, 2) + k for k in range(int(N - Fraction(1, 2)) + 1)]
    mus = (Fraction(1, 2), Fraction(-1, 2))
    labels = [(n, mu, l) for n in spins for mu in mus for l in _spin_range(n)]
    index = {lab: i for i, lab in enumerate(labels)}
    dim = len(labels)
    ctx = pd.ctx

    def col_gram(n, l):
        return np.array([float(cnorm2[(n, s, l)]) for s in _spin_range(n)])

    # normalizations; the two profile lines per spin must be orthogonal in
    # every column Gram simultaneously (adjoint-stable submodules)
    norm = {}
    closure = 0.0
    for n in spins:
        for l in _spin_range(n):
            g = col_gram(n, l)
            wp = profiles[(n, mus[0])]
            wm = profiles[(n, mus[1])]
            cross = abs(np.sum(np.conj(wp) * wm * g))
            cross /= math.sqrt(float(np.sum(np.abs(wp) ** 2 * g))
                               * float(np.sum(np.abs(wm) ** 2 * g)))
            closure = max(closure, cross)
            for mu in mus:
                w = profiles[(n, mu)]
                norm[(n, mu, l)] = math.sqrt(float(
                    np.sum(np.abs(w) ** 2 * g)))

    mats = {}
    for name, gen, dl in (("A", pd.A, Fraction(0)), ("B", pd.B, Fraction(-1))):
        M = np.zeros((dim, dim), dtype=complex)
        for col, (n, mu, l) in enumerate(labels):
            w = profiles[(n, mu)]
            srange = _spin_range(n)
            # canonical d-coefficients of gen * (sum_s w[s] d_{s,l})
            comps: dict = {}
            for si, s in enumerate(srange):
                if abs(w[si]) < 1e-15:
                    continue
                x = ctx.scale(scales[n][(s, l)], basis.entry(n, s, l))
                for key, coef in basis.expand(ctx.mul(gen, x)).items():
                    nn, kk, ll = key
                    comps[key] = comps.get(key, 0j) + complex(w[si]) * \
                        float(coef / scales[nn][(kk, ll)])
            by_level: dict = {}
            for (nn, kk, ll), val in comps.items():
                if nn > N:
                    continue  # truncated top level
                if ll != l + dl or abs(ll) > nn:
                    closure = max(closure, abs(val))
                    continue
                by_level.setdefault(nn, {})[kk] = val
            for nn, vecs in by_level.items():
                tr = _spin_range(nn)
                g = col_gram(nn, l + dl)
                full = np.array([vecs.get(k, 0j) for k in tr])
                proj = np.zeros_like(full)
                for nu in mus:
                    wn = profiles[(nn, nu)]
                    wn2 = float(np.sum(np.abs(wn) ** 2 * g))
                    amp = complex(np.sum(np.conj(wn) * full * g))
                    M[index[(nn, nu, l + dl)], col] += \
                        amp / math.sqrt(wn2) / norm[(n, mu, l)]
                    proj += (amp / wn2) * wn
                rem = full - proj
                closure = max(closure, float(
                    math.sqrt(abs(np.sum(np.abs(rem) ** 2 * g))))
                    / norm[(n, mu, l)])
        mats[name] = M

    D = np.zeros((dim, dim))
    for i, (n, mu, l) in enumerate(labels):
        D[index[(n, -mu, l)], i] = float(c1 * n + c2)

    return TruncatedPodlesTriple(
        data=pd, N=N, c1=c1, c2=c2, spins=spins, labels=labels,
        profiles=profiles, A_mat=mats["A"], B_mat=mats["B"], D_mat=D,
        closure_residual=closure, basis=basis)
