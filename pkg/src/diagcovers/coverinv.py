"""Ramification data of a G-normal curve X over a curve Y, and its invariants.

G is a finite diagonalizable group scheme with character group Lambda.  Over
each branch point y of Y the stabilizer H(y) is cyclic of order n(y), and the
orbit has an equation of weight nu(y).  We store H(y) through the subgroup
K(y) of characters that are trivial on it, so that n(y) = [Lambda : K(y)].

Branch points carry no coordinates: every invariant below depends only on
the multiset of (degree, K, nu).  Validation checks necessary conditions
for such a cover to exist; it never certifies that one does.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from sympy import factorint, isprime

from .abelian import (
    FinAbGroup,
    GroupElement,
    QuotientNotCyclic,
    Subgroup,
    m_of,
    quotient_cyclic_check,
    subgroup_generate,
)
from .charring import CharacterSum, ch_coset_algebra, ch_regular, gamma


class InadmissibleCover(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("; ".join(str(v) for v in report.violations))


@dataclass(frozen=True)
class BranchPoint:
    degree: int
    nu: GroupElement
    fixed_chars: Subgroup
    n: int

    @classmethod
    def make(cls, nu: GroupElement, fixed_chars: Subgroup, degree: int = 1) -> BranchPoint:
        """Build a branch point, computing n from the subgroup."""
        return cls(degree, nu, fixed_chars, fixed_chars.index)


@dataclass(frozen=True)
class CoverData:
    characteristic: int
    group: FinAbGroup
    base_genus: int
    branch: tuple[BranchPoint, ...] = ()

    def __post_init__(self):
        if not isprime(self.characteristic):
            raise ValueError(f"characteristic {self.characteristic} is not prime")
        if self.base_genus < 0:
            raise ValueError("base genus must be >= 0")
        object.__setattr__(self, "branch", tuple(self.branch))
        for y in self.branch:
            if y.nu.group != self.group or y.fixed_chars.parent != self.group:
                raise ValueError("branch point over a different character group")


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    warning: bool = False

    def __str__(self):
        return f"{self.code}: {self.message}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}

    def __str__(self):
        if self.ok:
            return "admissible"
        return "\n".join(str(v) for v in self.violations)


@dataclass(frozen=True)
class FormalBranchClass:
    """Rational combination of branch points, a class in Cl(Y) tensor Q."""

    coefficients: tuple[Fraction, ...]
    degrees: tuple[int, ...]

    def degree(self) -> Fraction:
        return sum((c * d for c, d in zip(self.coefficients, self.degrees)), Fraction(0))

    def is_zero(self) -> bool:
        return not any(self.coefficients)


def _hurwitz_rhs(c: CoverData) -> Fraction:
    """2 p_a(X) - 2."""
    total = Fraction(2 * c.base_genus - 2)
    for y in c.branch:
        total += (1 - Fraction(1, y.n)) * y.degree
    return c.group.order * total


def _deg(c: CoverData, lam: GroupElement) -> Fraction:
    return -sum(
        (Fraction(m_of(lam, y.nu, y.fixed_chars), y.n) * y.degree for y in c.branch),
        Fraction(0),
    )


def validate(c: CoverData) -> ValidationReport:
    """Check necessary conditions for the data to come from a G-normal curve.

    E1: nu does not generate a cyclic Lambda/K.  E2: stated n differs from
    [Lambda:K].  E3: some deg A_lam is not an integer.  E4 (warning): the
    Hurwitz right-hand side is odd or p_a(X) < 0, or Y has genus 0 and some
    A_lam with lam != 0 has degree 0, hence is trivial and X is not integral.
    E5: degree <= 0 or n <= 1.
    """
    return ValidationReport(list(_violations(c)))


@lru_cache(maxsize=1024)
def _violations(c: CoverData) -> tuple[Violation, ...]:
    report = ValidationReport()
    add = report.violations.append
    structural = True
    for i, y in enumerate(c.branch):
        try:
            quotient_cyclic_check(y.fixed_chars, y.nu)
        except QuotientNotCyclic as exc:
            add(Violation("E1", f"branch point {i}: {exc}"))
            structural = False
    for i, y in enumerate(c.branch):
        if y.n != y.fixed_chars.index:
            add(Violation("E2", f"branch point {i}: n = {y.n} but [Lambda:K] = {y.fixed_chars.index}"))
            structural = False
    if structural:
        trivial = []
        for lam in c.group.elements():
            d = _deg(c, lam)
            if d.denominator != 1:
                add(Violation("E3", f"deg A_{lam} = {d}"))
            elif d == 0 and not lam.is_zero():
                trivial.append(lam)
        rhs = _hurwitz_rhs(c)
        if rhs.denominator != 1 or rhs.numerator % 2:
            add(Violation("E4", f"2 p_a(X) - 2 = {rhs} is not an even integer", warning=True))
        elif rhs < -2:
            add(Violation("E4", f"p_a(X) = {rhs / 2 + 1} < 0; total space is likely not integral", warning=True))
        if c.base_genus == 0 and trivial:
            add(Violation(
                "E4",
                f"deg A_{trivial[0]} = 0 over a rational base, so X is not integral",
                warning=True,
            ))
    for i, y in enumerate(c.branch):
        if y.degree <= 0:
            add(Violation("E5", f"branch point {i}: degree {y.degree} <= 0"))
        if y.n <= 1:
            add(Violation("E5", f"branch point {i}: n = {y.n} <= 1 is a free point"))
    return tuple(report.violations)


def _require(c: CoverData, codes: str):
    report = validate(c)
    bad = [v for v in report.violations if v.code in codes.split()]
    if bad:
        raise InadmissibleCover(ValidationReport(bad))


def deg_eigensheaf(c: CoverData, lam: GroupElement) -> Fraction:
    _require(c, "E1 E2 E5")
    return _deg(c, lam)


def hurwitz_genus(c: CoverData) -> int:
    _require(c, "E1 E2 E3 E5")
    rhs = _hurwitz_rhs(c)
    if rhs.denominator != 1 or rhs.numerator % 2 or rhs < -2:
        _require(c, "E4")
    return int(rhs / 2) + 1


def equivariant_genus(c: CoverData) -> CharacterSum:
    """The character of H^0(X, omega_X)."""
    _require(c, "E1 E2 E3 E5")
    G = c.group
    ch = CharacterSum.one(G) + ch_regular(G).scale(c.base_genus - 1)
    for y in c.branch:
        term = gamma(y.nu, y.n) * ch_coset_algebra(y.fixed_chars)
        ch = ch + term.scale(Fraction(y.degree, y.n))
    if not (ch.is_integral() and ch.is_effective()):
        raise InadmissibleCover(
            ValidationReport([Violation("E4", f"character {ch} is not a genuine module character")])
        )
    return ch


def canonical_divisor(c: CoverData) -> list[tuple[BranchPoint, int]]:
    """Multiplicity |H(y)| - 1 of each nonfree orbit in div(s_{X/Y})."""
    _require(c, "E1 E2 E3 E4 E5")
    return [(y, y.n - 1) for y in c.branch]


def _p_power_exponent(c: CoverData) -> int:
    orders = [n for n in c.group.orders if n > 1]
    p = c.characteristic
    if len(orders) != 1 or set(factorint(orders[0])) != {p}:
        raise ValueError(f"tangent degree needs Lambda cyclic of order a power of p={p}, got {c.group}")
    return factorint(orders[0])[p]


def tangent_degree(c: CoverData) -> int:
    _p_power_exponent(c)
    _require(c, "E1 E2 E3 E4 E5")
    return sum(c.group.order // y.n * y.degree for y in c.branch)


def fixed_locus_degree(c: CoverData) -> int:
    """Degree of X^G: branch points whose stabilizer is all of G."""
    _p_power_exponent(c)
    _require(c, "E1 E2 E3 E4 E5")
    return sum(y.degree for y in c.branch if y.n == c.group.order)


def rational_class(c: CoverData, lam: GroupElement) -> FormalBranchClass:
    _require(c, "E1 E2 E5")
    return FormalBranchClass(
        tuple(-Fraction(m_of(lam, y.nu, y.fixed_chars), y.n) for y in c.branch),
        tuple(y.degree for y in c.branch),
    )


def uniform_cover_over_P1(n: int, p: int, branch_degrees) -> CoverData:
    """mu_n-cover of P^1 with every branch point fully ramified of weight 1.

    The branch divisor must be divisible by n in Pic(P^1) = Z.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    degrees = [int(d) for d in branch_degrees]
    if any(d < 1 for d in degrees):
        raise ValueError("branch degrees must be >= 1")
    if sum(degrees) % n:
        raise ValueError(f"branch divisor of degree {sum(degrees)} is not divisible by {n}")
    G = FinAbGroup((n,))
    K = subgroup_generate(G, [])
    return CoverData(p, G, 0, tuple(BranchPoint(d, G(1), K, n) for d in degrees))


def euler_defect(c: CoverData) -> Fraction:
    """(1 - p_a(X)) - |G| (1 - p_a(Y)), which equals the sum of all deg A_lam."""
    return 1 - (_hurwitz_rhs(c) / 2 + 1) - c.group.order * (1 - c.base_genus)


def is_p_power_cyclic(c: CoverData) -> bool:
    try:
        _p_power_exponent(c)
    except ValueError:
        return False
    return True

