"""Group ring Q[Lambda]: characters of modules over a diagonalizable group.

A module M = sum of weight spaces M_lam has character ch(M) = sum dim(M_lam) e^lam.
Coefficients are exact rationals since the genus formula divides by the
stabilizer orders before the result turns out integral.
"""

from __future__ import annotations

from fractions import Fraction

from .abelian import FinAbGroup, GroupElement, Subgroup


class CharacterSum:
    """Sparse element of Q[Lambda]; zero coefficients are never stored."""

    __slots__ = ("group", "_coeffs")

    def __init__(self, group: FinAbGroup, coeffs=None):
        self.group = group
        clean = {}
        for lam, c in (coeffs or {}).items():
            if lam.group != group:
                raise ValueError("coefficient key from a different group")
            c = Fraction(c)
            if c:
                clean[lam] = clean.get(lam, 0) + c
        self._coeffs = {k: v for k, v in clean.items() if v}

    @classmethod
    def basis(cls, lam: GroupElement) -> CharacterSum:
        """The element e^lam."""
        return cls(lam.group, {lam: 1})

    @classmethod
    def one(cls, group: FinAbGroup) -> CharacterSum:
        return cls(group, {group.zero(): 1})

    def items(self):
        return sorted(self._coeffs.items())

    def coeff(self, lam: GroupElement) -> Fraction:
        return self._coeffs.get(lam, Fraction(0))

    def dim(self) -> Fraction:
        """Sum of coefficients: specializes a character to a dimension."""
        return sum(self._coeffs.values(), Fraction(0))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._coeffs.values())

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self._coeffs.values())

    def _same(self, other):
        if other.group != self.group:
            raise ValueError("characters over different groups")

    def __add__(self, other):
        if not isinstance(other, CharacterSum):
            return NotImplemented
        self._same(other)
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out.get(k, 0) + v
        return CharacterSum(self.group, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, CharacterSum):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> CharacterSum:
        c = Fraction(c)
        return CharacterSum(self.group, {k: c * v for k, v in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, CharacterSum):
            return NotImplemented
        self._same(other)
        out = {}
        for a, x in self._coeffs.items():
            for b, y in other._coeffs.items():
                k = a + b
                out[k] = out.get(k, 0) + x * y
        return CharacterSum(self.group, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, CharacterSum):
            return NotImplemented
        return self.group == other.group and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.group, frozenset(self._coeffs.items())))

    def __bool__(self):
        return bool(self._coeffs)

    def __str__(self):
        if not self._coeffs:
            return "0"
        terms = []
        for lam, c in self.items():
            term = f"e^{lam}" if c == 1 else f"{c}*e^{lam}"
            terms.append(term)
        return " + ".join(terms)

    def __repr__(self):
        return f"CharacterSum({self})"


def ch_regular(group: FinAbGroup) -> CharacterSum:
    """Character of the regular representation O(G): every weight once."""
    return CharacterSum(group, {lam: 1 for lam in group.elements()})


def ch_coset_algebra(K: Subgroup) -> CharacterSum:
    """Character of O(G/H), where K is the group of characters trivial on H."""
    return CharacterSum(K.parent, {lam: 1 for lam in K.elements})


def gamma(nu: GroupElement, n: int) -> CharacterSum:
    """sum_{l=1}^{n-1} l * e^{-l nu}, the correction term at a branch point."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = {}
    for ell in range(1, n):
        k = -(ell * nu)
        out[k] = out.get(k, 0) + ell
    return CharacterSum(nu.group, out)
