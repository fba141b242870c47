"""The Haar state of SU_q(2) on the span of bounded-degree monomials,
computed from the invariance equations.

The bi-invariant functional kills every monomial carrying a nonzero torus
weight (left translation by the diagonal circle scales a monomial by
z^{e-b+c}, right translation by z^{e+b-c}, and h is invariant under both),
so the unknowns reduce to x_k = h(gamma^k gamma*^k).  Those are pinned by
the invariance equations applied to the weight-zero monomials themselves;
`verify_invariance` then re-checks the defining identity on the full span
of monomials up to a requested degree.
"""

from __future__ import annotations

from fractions import Fraction

from .._linalg import solve
from .pbw import SUq2

__all__ = ["HaarState"]


class HaarState:
    def __init__(self, ctx: SUq2, max_power: int = 8):
        self.ctx = ctx
        self.table = {}
        self._extend(max_power)

    def _extend(self, max_power: int):
        """Solve the invariance system for x_k, k <= max_power."""
        ctx = self.ctx
        K = max_power
        rows, rhs = [], []

        def add_row(row, val):
            row = {j: c for j, c in row.items() if c != 0}
            rows.append(row)
            rhs.append(val)

        for k in range(K + 1):
            T = ctx.delta_mono((0, k, k))
            # (h (x) id): group the first-leg weight-zero contributions
            by_second: dict = {}
            by_first: dict = {}
            for (m1, m2), c in T.items():
                e1, b1, c1 = m1
                if e1 == 0 and b1 == c1:
                    by_second.setdefault(m2, {})[b1] = \
                        by_second.get(m2, {}).get(b1, Fraction(0)) + c
                e2, b2, c2 = m2
                if e2 == 0 and b2 == c2:
                    by_first.setdefault(m1, {})[b2] = \
                        by_first.get(m1, {}).get(b2, Fraction(0)) + c
            for m2, row in by_second.items():
                row = dict(row)
                if m2 == (0, 0, 0):
                    row[k] = row.get(k, Fraction(0)) - 1
                add_row(row, Fraction(0))
            for m1, row in by_first.items():
                row = dict(row)
                if m1 == (0, 0, 0):
                    row[k] = row.get(k, Fraction(0)) - 1
                add_row(row, Fraction(0))
        add_row({0: Fraction(1)}, Fraction(1))

        sol = solve(rows, rhs, K + 1)
        if sol is None:
            raise ArithmeticError(
                "Haar invariance system is inconsistent (engine bug)")
        table = {k: sol.get(k, Fraction(0)) for k in range(K + 1)}
        # uniqueness guard: the solve must pin every unknown
        for k, old in self.table.items():
            if table.get(k) != old:
                raise ArithmeticError("Haar table changed under extension")
        self.table = table

    def value(self, mono) -> Fraction:
        e, b, c = mono
        if e != 0 or b != c:
            return Fraction(0)
        if b not in self.table:
            self._extend(max(b, 2 * (max(self.table) + 1)))
        return self.table[b]

    def eval(self, x: dict):
        out = Fraction(0)
        for m, coef in x.items():
            v = self.value(m)
            if v:
                out = out + coef * v
        return out

    def inner(self, x: dict, y: dict):
        """<x, y> = h(x* y)."""
        return self.eval(self.ctx.mul(self.ctx.star(x), y))

    def verify_invariance(self, max_degree: int = 5) -> bool:
        """Check (h (x) id) Delta(m) = h(m) 1 = (id (x) h) Delta(m) on all
        monomials of degree <= max_degree, exactly."""
        ctx = self.ctx
        for mono in _monomials_up_to(max_degree):
            T = ctx.delta_mono(mono)
            left: dict = {}
            right: dict = {}
            for (m1, m2), c in T.items():
                v1 = self.value(m1)
                if v1:
                    left[m2] = left.get(m2, Fraction(0)) + c * v1
                v2 = self.value(m2)
                if v2:
                    right[m1] = right.get(m1, Fraction(0)) + c * v2
            target = {(0, 0, 0): self.value(mono)} if self.value(mono) else {}
            left = {m: c for m, c in left.items() if c != 0}
            right = {m: c for m, c in right.items() if c != 0}
            if left != target or right != target:
                return False
        return True


def _monomials_up_to(d: int):
    for e in range(-d, d + 1):
        for b in range(d + 1):
            for c in range(d + 1):
                if abs(e) + b + c <= d:
                    yield (e, b, c)
