"""Exact PBW arithmetic in the coordinate algebra of SU_q(2) at a fixed
rational q.

A monomial is a triple (e, b, c): alpha^e gamma^b gamma*^c for e >= 0 and
alpha*^{-e} gamma^b gamma*^c for e < 0.  The defining relations are the
unitarity relations of the fundamental matrix [[alpha, -q gamma*],
[gamma, alpha*]]:

    alpha gamma  = q gamma alpha        alpha gamma* = q gamma* alpha
    gamma gamma* = gamma* gamma
    alpha* alpha = 1 - gamma* gamma     alpha alpha* = 1 - q^2 gamma gamma*

Coefficients are Fractions, or Quad values when a radical such as the
Podles rho is in play.  Elements are plain dicts {monomial: coefficient}.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .._scalars import Quad, as_fraction

__all__ = ["SUq2", "ALPHA", "ALPHA_STAR", "GAMMA", "GAMMA_STAR"]

ALPHA = (1, 0, 0)
ALPHA_STAR = (-1, 0, 0)
GAMMA = (0, 1, 0)
GAMMA_STAR = (0, 0, 1)

_GEN_BY_NAME = {"a": ALPHA, "a*": ALPHA_STAR, "g": GAMMA, "g*": GAMMA_STAR,
                "alpha": ALPHA, "alpha*": ALPHA_STAR, "gamma": GAMMA,
                "gamma*": GAMMA_STAR}


def _is_zero(v) -> bool:
    return v == 0


class SUq2:
    """Arithmetic context for O(SU_q(2)) at a fixed rational q."""

    def __init__(self, q):
        q = as_fraction(q)
        if q == 0 or not -1 <= q <= 1:
            raise ValueError("q must lie in [-1,1] \\ {0}")
        self.q = q
        self._alpha_contract_cache = {}
        self._delta_cache = {(0, 0, 0): {((0, 0, 0), (0, 0, 0)): Fraction(1)}}

    # -- element helpers --

    @staticmethod
    def element(*pairs) -> dict:
        out = {}
        for mono, coef in pairs:
            if not _is_zero(coef):
                out[mono] = out.get(mono, 0) + coef
        return {m: c for m, c in out.items() if not _is_zero(c)}

    @staticmethod
    def one() -> dict:
        return {(0, 0, 0): Fraction(1)}

    @staticmethod
    def add(*xs) -> dict:
        out = {}
        for x in xs:
            for m, c in x.items():
                out[m] = out.get(m, 0) + c
        return {m: c for m, c in out.items() if not _is_zero(c)}

    @staticmethod
    def scale(c, x: dict) -> dict:
        if _is_zero(c):
            return {}
        return {m: c * v for m, v in x.items()}

    def sub(self, x: dict, y: dict) -> dict:
        return self.add(x, self.scale(Fraction(-1), y))

    # -- multiplication --

    def qpow(self, n: int) -> Fraction:
        return self.q ** n

    def _alpha_contract(self, e1: int, e2: int) -> dict:
        """alpha-part product: word alpha^{e1} . alpha^{e2} in normal form,
        where negative exponents mean alpha*."""
        key = (e1, e2)
        cached = self._alpha_contract_cache.get(key)
        if cached is not None:
            return cached
        if e1 == 0 or e2 == 0 or (e1 > 0) == (e2 > 0):
            out = {(e1 + e2, 0, 0): Fraction(1)}
        elif e1 > 0 > e2:
            # peel the middle pair: alpha alpha* = 1 - q^2 gamma gamma*
            out = self._mul_elements(
                self._mul_elements({(e1 - 1, 0, 0): Fraction(1)},
                                   {(0, 0, 0): Fraction(1),
                                    (0, 1, 1): -self.q ** 2}),
                {(e2 + 1, 0, 0): Fraction(1)})
        else:  # e1 < 0 < e2: peel alpha* alpha = 1 - gamma* gamma
            out = self._mul_elements(
                self._mul_elements({(e1 + 1, 0, 0): Fraction(1)},
                                   {(0, 0, 0): Fraction(1),
                                    (0, 1, 1): Fraction(-1)}),
                {(e2 - 1, 0, 0): Fraction(1)})
        self._alpha_contract_cache[key] = out
        return out

    def mono_mul(self, m1, m2) -> dict:
        """Product of two normal-form monomials as a normal-form element."""
        e1, b1, c1 = m1
        e2, b2, c2 = m2
        # move the alpha-part of m2 through gamma^{b1} gamma*^{c1}:
        # each alpha costs q^{-1} per gamma, each alpha* costs q
        shift = b1 + c1
        factor = self.qpow(-e2 * shift)
        alpha_part = self._alpha_contract(e1, e2)
        out = {}
        for (e, b, c), v in alpha_part.items():
            # the gamma-part of the contraction sits to the right of the
            # alpha block and commutes with the other gammas
            mono = (e, b + b1 + b2, c + c1 + c2)
            out[mono] = out.get(mono, 0) + factor * v
        return {m: c for m, c in out.items() if not _is_zero(c)}

    def _mul_elements(self, x: dict, y: dict) -> dict:
        out = {}
        for m1, c1 in x.items():
            for m2, c2 in y.items():
                cc = c1 * c2
                for m, v in self.mono_mul(m1, m2).items():
                    out[m] = out.get(m, 0) + cc * v
        return {m: c for m, c in out.items() if not _is_zero(c)}

    def mul(self, *xs) -> dict:
        out = self.one()
        for x in xs:
            out = self._mul_elements(out, x)
        return out

    def star(self, x: dict) -> dict:
        out = {}
        for (e, b, c), v in x.items():
            coef = self.qpow(e * (b + c)) * _conj(v)
            mono = (-e, c, b)
            out[mono] = out.get(mono, 0) + coef
        return {m: c for m, c in out.items() if not _is_zero(c)}

    def normal_form(self, word) -> dict:
        """Normal form of a word in the generators.

        The word is an iterable of generator names ('a', 'a*', 'g', 'g*')
        or monomial triples.
        """
        out = self.one()
        for w in word:
            mono = _GEN_BY_NAME[w] if isinstance(w, str) else tuple(w)
            out = self._mul_elements(out, {mono: Fraction(1)})
        return out

    # -- gradings --

    @staticmethod
    def degree(mono) -> int:
        e, b, c = mono
        return abs(e) + b + c

    @staticmethod
    def grade(mono):
        """(left, right) torus weights; alpha is (1, 1), gamma (-1, 1)."""
        e, b, c = mono
        return (e - b + c, e + b - c)

    def element_degree(self, x: dict) -> int:
        return max((self.degree(m) for m in x), default=0)

    # -- coproduct --

    def _delta_gen(self, gen):
        q = self.q
        one = Fraction(1)
        if gen == ALPHA:
            return {(ALPHA, ALPHA): one, (GAMMA_STAR, GAMMA): -q}
        if gen == ALPHA_STAR:
            return {(ALPHA_STAR, ALPHA_STAR): one, (GAMMA, GAMMA_STAR): -q}
        if gen == GAMMA:
            return {(GAMMA, ALPHA): one, (ALPHA_STAR, GAMMA): one}
        if gen == GAMMA_STAR:
            return {(GAMMA_STAR, ALPHA_STAR): one, (ALPHA, GAMMA_STAR): one}
        raise ValueError(gen)

    def _tensor_mul(self, t1: dict, t2: dict) -> dict:
        out = {}
        for (a1, a2), c1 in t1.items():
            for (b1, b2), c2 in t2.items():
                cc = c1 * c2
                left = self.mono_mul(a1, b1)
                right = self.mono_mul(a2, b2)
                for m1, v1 in left.items():
                    for m2, v2 in right.items():
                        key = (m1, m2)
                        out[key] = out.get(key, 0) + cc * v1 * v2
        return {k: v for k, v in out.items() if not _is_zero(v)}

    def delta_mono(self, mono) -> dict:
        cached = self._delta_cache.get(mono)
        if cached is not None:
            return cached
        e, b, c = mono
        if c > 0:
            prev = self.delta_mono((e, b, c - 1))
            out = self._tensor_mul(prev, self._delta_gen(GAMMA_STAR))
        elif b > 0:
            prev = self.delta_mono((e, b - 1, 0))
            out = self._tensor_mul(prev, self._delta_gen(GAMMA))
        elif e > 0:
            prev = self.delta_mono((e - 1, 0, 0))
            out = self._tensor_mul(prev, self._delta_gen(ALPHA))
        else:  # e < 0
            prev = self.delta_mono((e + 1, 0, 0))
            out = self._tensor_mul(prev, self._delta_gen(ALPHA_STAR))
        self._delta_cache[mono] = out
        return out

    def delta(self, x: dict) -> dict:
        out = {}
        for m, c in x.items():
            for key, v in self.delta_mono(m).items():
                out[key] = out.get(key, 0) + c * v
        return {k: v for k, v in out.items() if not _is_zero(v)}

    def counit(self, x: dict):
        """eps: alpha -> 1, gamma -> 0."""
        out = Fraction(0)
        for (e, b, c), v in x.items():
            if b == 0 and c == 0:
                out = out + v
        return out


def _conj(v):
    # all coefficients used here are real (Fraction or real Quad)
    return v
