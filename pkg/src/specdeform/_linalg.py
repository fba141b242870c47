"""Exact linear algebra over field-like scalars (Fraction, Cyc, Quad).

Vectors and matrix rows are sparse dicts {column: scalar}.  Scalars must
support +, -, *, /, equality with 0, and bool() as a nonzero test.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["rref", "kernel_basis", "solve", "rank", "invert_dense"]


def _clean(row: dict) -> dict:
    return {j: v for j, v in row.items() if v != 0}


def rref(rows, ncols=None):
    """Row-reduce sparse rows in place-free style.

    Returns (pivots, reduced_rows) where pivots is a list of column indices
    and reduced_rows[i] has a 1 in pivots[i] and zeros in other pivot columns.
    """
    reduced = []
    pivots = []
    for row in rows:
        row = _clean(dict(row))
        for p, r in zip(pivots, reduced):
            if p in row:
                c = row[p]
                for j, v in r.items():
                    row[j] = row.get(j, 0 * v) - c * v
                row = _clean(row)
        if not row:
            continue
        p = min(row)
        c = row[p]
        row = {j: v / c for j, v in row.items()}
        # back-substitute into earlier rows
        for i, r in enumerate(reduced):
            if p in r:
                cr = r[p]
                newr = dict(r)
                for j, v in row.items():
                    newr[j] = newr.get(j, 0 * v) - cr * v
                reduced[i] = _clean(newr)
        pivots.append(p)
        reduced.append(row)
    order = sorted(range(len(pivots)), key=lambda i: pivots[i])
    return [pivots[i] for i in order], [reduced[i] for i in order]


def rank(rows, ncols=None) -> int:
    pivots, _ = rref(rows)
    return len(pivots)


def kernel_basis(rows, ncols, one=None):
    """Basis of {x : M x = 0} for the matrix with the given sparse rows."""
    pivots, reduced = rref(rows)
    if one is None:
        one = Fraction(1)
        for row in reduced:
            for v in row.values():
                one = v / v
                break
            break
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    basis = []
    for f in free:
        vec = {f: one}
        for p, r in zip(pivots, reduced):
            if f in r:
                vec[p] = -r[f]
        basis.append(vec)
    return basis


def solve(rows, rhs, ncols):
    """One solution x of M x = b, or None if inconsistent.

    `rows` are sparse rows of M, `rhs` the dense-ish list/dict of b entries.
    """
    if not isinstance(rhs, dict):
        rhs = {i: v for i, v in enumerate(rhs) if v != 0}
    aug = []
    AUG = ncols  # column index used for the rhs
    for i, row in enumerate(rows):
        r = dict(row)
        if i in rhs:
            r[AUG] = rhs[i]
        aug.append(r)
    pivots, reduced = rref(aug)
    # reduced row {p: 1, ..., AUG: c} encodes x_p + sum(free terms) = c
    x = {}
    for p, r in zip(pivots, reduced):
        if p == AUG:
            return None  # pivot in augmented column: inconsistent
        c = r.get(AUG)
        if c is not None and c != 0:
            x[p] = c
    return x


def invert_dense(mat, zero=Fraction(0), one=Fraction(1)):
    """Inverse of a dense square matrix given as list of lists; None if singular."""
    n = len(mat)
    a = [list(row) for row in mat]
    inv = [[one if i == j else zero for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        c = a[col][col]
        a[col] = [v / c for v in a[col]]
        inv[col] = [v / c for v in inv[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
                inv[r] = [v - f * w for v, w in zip(inv[r], inv[col])]
    return inv
