"""Fusion rings of free orthogonal type, dimension functions, admissibility
of orthogonal F-matrices, and monoidal-equivalence descriptors.

All the quantum groups handled here share one fusion ring: irreducible
classes r_0, r_1, r_2, ... with

    r_j (x) r_k = r_{|j-k|} (+) r_{|j-k|+2} (+) ... (+) r_{j+k}

and trivial conjugation.  What distinguishes them is the dimension
function, parameterized by m = dim F (classical) or by q (quantum).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ._scalars import Quad, as_fraction

__all__ = [
    "Family", "IrrepLabel", "FusionRing", "OrthogonalMatrixSpec",
    "EquivalenceDescriptor", "Subcategory", "PartnerRejected", "fuse",
    "dim_classical", "dim_classical_closed_form", "dim_quantum",
    "check_orthogonal_matrix", "validate_partner", "restrict_equivalence",
    "even_subcategory", "subcategory_indices", "f_q_matrix",
    "canonical_f_matrix", "identity_descriptor", "suq2_ring", "aof_ring",
    "dimension_table", "EVEN_INDICES",
]

FLOAT_TOL = 1e-12


class Family:
    SUQ2 = "SUq2"
    AOF = "AoF"


@dataclass(frozen=True, order=True)
class IrrepLabel:
    """Label r_k of an irreducible class; for SUq2 the spin is k/2."""
    family: str
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("irreducible labels are indexed by k >= 0")

    @property
    def spin(self) -> Fraction:
        return Fraction(self.index, 2)

    def __str__(self):
        return f"r_{self.index}"


@dataclass(frozen=True)
class FusionRing:
    """Free-orthogonal fusion ring with classical-dimension parameter m.

    m = 2 gives the SU_q(2)-type dimensions k+1; m >= 3 the Chebyshev-type
    recursion d_{k+1} = m d_k - d_{k-1}.
    """
    family: str
    m: int
    q: Optional[Fraction] = None  # deformation parameter, when meaningful

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("classical dimension parameter m must be >= 2")

    def label(self, k: int) -> IrrepLabel:
        return IrrepLabel(self.family, k)

    @property
    def trivial(self) -> IrrepLabel:
        return self.label(0)

    def conjugate(self, x: IrrepLabel) -> IrrepLabel:
        return x  # all classes are self-conjugate


def suq2_ring(q) -> FusionRing:
    return FusionRing(Family.SUQ2, 2, as_fraction(q))


def aof_ring(m: int, q=None) -> FusionRing:
    return FusionRing(Family.AOF, m, as_fraction(q) if q is not None else None)


def fuse(ring: FusionRing, a: IrrepLabel, b: IrrepLabel) -> list[IrrepLabel]:
    """Decomposition of r_a (x) r_b; every multiplicity is 0 or 1."""
    if a.family != ring.family or b.family != ring.family:
        raise ValueError(
            f"labels {a.family}/{b.family} do not belong to ring {ring.family}")
    j, k = a.index, b.index
    return [ring.label(i) for i in range(abs(j - k), j + k + 1, 2)]


def dim_classical(ring: FusionRing, x: IrrepLabel) -> int:
    """Classical dimension of r_k: k+1 for m = 2, Chebyshev recursion else."""
    k = x.index
    if ring.m == 2:
        return k + 1
    d_prev, d = 1, ring.m
    if k == 0:
        return 1
    for _ in range(k - 1):
        d_prev, d = d, ring.m * d - d_prev
    return d


def dim_classical_closed_form(m: int, k: int) -> int:
    """(x^{k+1} - y^{k+1}) / (x - y) with x + y = m, x y = 1, evaluated
    exactly in Q(sqrt(m^2-4)).  Independent route used to cross-check the
    recursion."""
    disc = Fraction(m * m - 4)
    if disc == 0:  # m == 2
        return k + 1
    s = Quad.sqrt(disc)
    x = (Quad(m) + s) / 2
    y = (Quad(m) - s) / 2
    num = _quad_pow(x, k + 1) - _quad_pow(y, k + 1)
    val = num / s
    f = val.rational_value()
    if f.denominator != 1:
        raise ArithmeticError("closed form did not evaluate to an integer")
    return int(f)


def _quad_pow(x: Quad, n: int) -> Quad:
    out = Quad(1)
    for _ in range(n):
        out = out * x
    return out


def dim_quantum(ring: FusionRing, x: IrrepLabel, q) -> Fraction:
    """Quantum dimension [k+1]_q = (q^{k+1} - q^{-(k+1)})/(q - q^{-1})."""
    q = as_fraction(q)
    if q == 0:
        raise ValueError("q must be nonzero")
    k = x.index
    if q in (1, -1):
        return Fraction((k + 1) * (int(q) ** k))
    num = q ** (k + 1) - q ** (-(k + 1))
    den = q - 1 / q
    return num / den


@dataclass(frozen=True)
class OrthogonalMatrixSpec:
    """A matrix F with F Fbar = c I, plus canonical-form data when present.

    `entries` is an n x n tuple-of-tuples of complex numbers; `lams` holds
    the lambda parameters read off the canonical antidiagonal shape.  When
    the squared lambdas are known exactly they are kept in `lam_squares`,
    which switches the partner validation to exact arithmetic.
    """
    n: int
    entries: tuple
    c: complex
    shape: Optional[str] = None        # "type1" (c=+1) | "type2" (c=-1)
    lams: tuple = ()
    lam_squares: Optional[tuple] = None
    k: int = 0                         # number of lambda pairs

    def as_array(self):
        import numpy as np
        return np.array([[complex(v) for v in row] for row in self.entries])

    def with_exact_lams(self, lam_squares) -> "OrthogonalMatrixSpec":
        sq = tuple(as_fraction(v) for v in lam_squares)
        if len(sq) != len(self.lams):
            raise ValueError("wrong number of exact lambda squares")
        for s, l in zip(sq, self.lams):
            if abs(float(s) - l * l) > 1e-9:
                raise ValueError("exact lambda squares disagree with entries")
        return OrthogonalMatrixSpec(self.n, self.entries, self.c, self.shape,
                                    self.lams, sq, self.k)


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    c: Optional[complex]
    shape: Optional[str]
    reason: str = ""
    spec: Optional[OrthogonalMatrixSpec] = None


def check_orthogonal_matrix(entries) -> AdmissibilityReport:
    """Check F Fbar = c I with real c, and classify the canonical shape."""
    import numpy as np
    F = np.array([[complex(v) for v in row] for row in entries])
    if F.ndim != 2 or F.shape[0] != F.shape[1]:
        return AdmissibilityReport(False, None, None, "not square")
    n = F.shape[0]
    if abs(np.linalg.det(F)) < FLOAT_TOL:
        return AdmissibilityReport(False, None, None, "singular F")
    M = F @ F.conj()
    c = M.trace() / n
    if abs(c.imag) > FLOAT_TOL:
        return AdmissibilityReport(False, None, None, "F Fbar has non-real scale")
    c = c.real
    if not np.allclose(M, c * np.eye(n), atol=FLOAT_TOL * max(1.0, abs(c))):
        return AdmissibilityReport(False, None, None, "F Fbar is not scalar")
    shape, lams, k = _canonical_shape(F, c)
    spec = OrthogonalMatrixSpec(
        n=n,
        entries=tuple(tuple(row) for row in F.tolist()),
        c=c, shape=shape, lams=tuple(lams), k=k)
    return AdmissibilityReport(True, c, shape, spec=spec)


def _canonical_shape(F, c):
    """Recognize the two fundamental-domain shapes, literally."""
    import numpy as np
    n = F.shape[0]
    if abs(c + 1) < 1e-9 and n % 2 == 0:
        k = n // 2
        D = F[:k, k:]
        Dn = F[k:, :k]
        rest = (np.allclose(F[:k, :k], 0, atol=FLOAT_TOL)
                and np.allclose(F[k:, k:], 0, atol=FLOAT_TOL))
        if rest and _is_pos_diag(D) and np.allclose(Dn, -np.linalg.inv(D), atol=1e-9):
            return "type2", [D[i, i].real for i in range(k)], k
    if abs(c - 1) < 1e-9:
        for k in range(n // 2, -1, -1):
            if _matches_type1(F, k):
                lams = [F[i, k + i].real for i in range(k)]
                return "type1", lams, k
    return None, [], 0


def _matches_type1(F, k):
    import numpy as np
    n = F.shape[0]
    D = F[:k, k:2 * k]
    Dn = F[k:2 * k, :k]
    blocks_ok = (
        np.allclose(F[:k, :k], 0, atol=FLOAT_TOL)
        and np.allclose(F[:2 * k, 2 * k:], 0, atol=FLOAT_TOL)
        and np.allclose(F[2 * k:, :2 * k], 0, atol=FLOAT_TOL)
        and np.allclose(F[k:2 * k, k:2 * k], 0, atol=FLOAT_TOL)
        and np.allclose(F[2 * k:, 2 * k:], np.eye(n - 2 * k), atol=FLOAT_TOL))
    if not blocks_ok:
        return False
    if k == 0:
        return True
    return _is_pos_diag(D) and np.allclose(Dn, np.linalg.inv(D), atol=1e-9)


def _is_pos_diag(D):
    import numpy as np
    return (np.allclose(D, np.diag(np.diag(D)), atol=FLOAT_TOL)
            and all(D[i, i].real > 0 and abs(D[i, i].imag) < FLOAT_TOL
                    for i in range(D.shape[0])))


def f_q_matrix(q) -> OrthogonalMatrixSpec:
    """The 2x2 matrix F_q = [[0, |q|^{1/2}], [-sgn(q) |q|^{-1/2}, 0]]."""
    q = as_fraction(q)
    if q == 0 or not -1 <= q <= 1:
        raise ValueError("q must lie in [-1,1] \\ {0}")
    s = math.sqrt(abs(q))
    rep = check_orthogonal_matrix(
        [[0, s], [-(1 / s) if q > 0 else (1 / s), 0]])
    assert rep.admissible
    return rep.spec.with_exact_lams([abs(q)])


def canonical_f_matrix(lams: Sequence[float], n: int, c_sign: int) -> OrthogonalMatrixSpec:
    """Build the canonical F of either fundamental-domain shape."""
    import numpy as np
    k = len(lams)
    F = np.zeros((n, n))
    if c_sign < 0:
        if n != 2 * k:
            raise ValueError("type2 shape needs n = 2k")
        for i, lam in enumerate(lams):
            F[i, k + i] = lam
            F[k + i, i] = -1 / lam
    else:
        if 2 * k > n:
            raise ValueError("type1 shape needs 2k <= n")
        for i, lam in enumerate(lams):
            F[i, k + i] = lam
            F[k + i, i] = 1 / lam
        for i in range(2 * k, n):
            F[i, i] = 1
    rep = check_orthogonal_matrix(F.tolist())
    assert rep.admissible
    return rep.spec


EVEN_INDICES = frozenset({-2})  # sentinel: "all even indices"


@dataclass(frozen=True)
class Subcategory:
    """A fusion- and conjugation-closed label subset of a ring.

    `indices` is either an explicit finite index set or the EVEN_INDICES
    sentinel standing for every even label.
    """
    ring: FusionRing
    indices: frozenset
    check_bound: int = 20

    def __post_init__(self):
        if self.indices != EVEN_INDICES and 0 not in self.indices:
            raise ValueError("a subcategory must contain the trivial class r_0")
        bad = _closure_violation(self.ring, self.indices, self.check_bound)
        if bad is not None:
            raise ValueError(f"label set not fusion-closed: {bad}")

    def contains(self, x: IrrepLabel) -> bool:
        if self.indices == EVEN_INDICES:
            return x.index % 2 == 0
        return x.index in self.indices


def _closure_violation(ring, indices, bound):
    if indices == EVEN_INDICES:
        # parity is additive under the fusion rule, so closure is automatic;
        # still brute-force it up to the bound as a guard
        idx = list(range(0, bound + 1, 2))
        member = lambda i: i % 2 == 0
    else:
        idx = sorted(i for i in indices if i <= bound)
        member = lambda i: i in indices
    for j in idx:
        for k in idx:
            for out in range(abs(j - k), min(j + k, bound) + 1, 2):
                if not member(out):
                    return f"r_{j} (x) r_{k} contains r_{out}"
    return None


def even_subcategory(ring: FusionRing) -> Subcategory:
    """The subcategory on labels {r_0, r_2, r_4, ...}."""
    return Subcategory(ring, EVEN_INDICES)


def subcategory_indices(s: Subcategory, bound: int) -> list[int]:
    if s.indices == EVEN_INDICES:
        return list(range(0, bound + 1, 2))
    return sorted(i for i in s.indices if i <= bound)


@dataclass(frozen=True)
class EquivalenceDescriptor:
    """A monoidal equivalence SU_q(2)-side -> A_o(F)-side.

    The label bijection is index-preserving: phi(r_k) = r_k.  Dimensions on
    the two sides differ through the rings' m parameters, which is the whole
    point of the non-dimension-preserving examples.
    """
    source: FusionRing
    target: FusionRing
    f_spec: OrthogonalMatrixSpec
    q: Fraction
    dimension_preserving: bool
    residual: float = 0.0
    source_indices: Optional[frozenset] = None  # None: all labels
    qiso_names: tuple = ("SU_q(2)", "A_o(F)")

    def phi(self, x: IrrepLabel) -> IrrepLabel:
        if not self.in_domain(x):
            raise ValueError(f"{x} outside the descriptor's domain")
        return IrrepLabel(self.target.family, x.index)

    def phi_inverse(self, y: IrrepLabel) -> IrrepLabel:
        return IrrepLabel(self.source.family, y.index)

    def in_domain(self, x: IrrepLabel) -> bool:
        if x.family != self.source.family:
            return False
        if self.source_indices is None:
            return True
        if self.source_indices == EVEN_INDICES:
            return x.index % 2 == 0
        return x.index in self.source_indices

    def inverse(self) -> "EquivalenceDescriptor":
        return EquivalenceDescriptor(
            source=self.target, target=self.source, f_spec=self.f_spec,
            q=self.q, dimension_preserving=self.dimension_preserving,
            residual=self.residual, source_indices=self.source_indices,
            qiso_names=(self.qiso_names[1], self.qiso_names[0]))


class PartnerRejected(ValueError):
    def __init__(self, residual, message):
        super().__init__(message)
        self.residual = residual


def validate_partner(q, f_spec: OrthogonalMatrixSpec) -> EquivalenceDescriptor:
    """Accept F as a monoidal-equivalence partner of SU_q(2).

    For canonical-form F the lambda constraint is checked (exactly when the
    lambdas and q are exact rationals); the dimension-preserving flag is set
    iff n = 2.
    """
    q = as_fraction(q)
    if q == 0 or not (-1 <= q <= 1):
        raise ValueError("q must lie in [-1,1] \\ {0}")
    if f_spec.shape is None:
        raise PartnerRejected(float("nan"), "F is not in canonical form")
    target_abs = abs(q + 1 / q)
    if q > 0 and f_spec.shape != "type2":
        raise PartnerRejected(
            float("nan"), "q > 0 requires the c = -1 canonical shape")
    if q < 0 and f_spec.shape != "type1":
        raise PartnerRejected(
            float("nan"), "q < 0 requires the c = +1 canonical shape")

    if f_spec.lam_squares is not None:
        lam_sq = list(f_spec.lam_squares)
        total = sum(l + 1 / l for l in lam_sq) + (f_spec.n - 2 * f_spec.k if
                                                  f_spec.shape == "type1" else 0)
        residual = abs(float(total - target_abs))
        exact_ok = total == target_abs
    else:
        total = sum(l ** 2 + 1 / l ** 2 for l in f_spec.lams)
        if f_spec.shape == "type1":
            total += f_spec.n - 2 * f_spec.k
        residual = abs(total - float(target_abs))
        exact_ok = residual <= FLOAT_TOL
    if not exact_ok:
        raise PartnerRejected(
            residual,
            f"lambda constraint violated: sum = {float(total)}, "
            f"target = {float(target_abs)}, residual = {residual}")

    src = suq2_ring(q)
    tgt = aof_ring(f_spec.n, q) if f_spec.n != 2 else aof_ring(2, q)
    return EquivalenceDescriptor(
        source=src, target=tgt, f_spec=f_spec, q=q,
        dimension_preserving=(f_spec.n == 2), residual=residual)


def identity_descriptor(q) -> EquivalenceDescriptor:
    """The equivalence of SU_q(2) with itself, via F_q."""
    return validate_partner(q, f_q_matrix(q))


def restrict_equivalence(e: EquivalenceDescriptor,
                         s: Subcategory) -> EquivalenceDescriptor:
    """Restrict a descriptor to a fusion-closed label subset."""
    if s.ring.family != e.source.family:
        raise ValueError("subcategory does not live in the descriptor's source")
    names = e.qiso_names
    if s.indices == EVEN_INDICES:
        names = ("SO_q(3)", "I(F)")
    return EquivalenceDescriptor(
        source=e.source, target=e.target, f_spec=e.f_spec, q=e.q,
        dimension_preserving=e.dimension_preserving, residual=e.residual,
        source_indices=s.indices, qiso_names=names)


def dimension_table(ring: FusionRing, max_k: int, q=None):
    """Rows (label, classical dim, quantum dim) for k = 0..max_k."""
    q = as_fraction(q) if q is not None else ring.q
    rows = []
    for k in range(max_k + 1):
        lab = ring.label(k)
        qd = dim_quantum(ring, lab, q) if q is not None else None
        rows.append((lab, dim_classical(ring, lab), qd))
    return rows
