"""Finite abelian groups given as products of cyclic groups.

A group is described by the orders of its cyclic factors, so that
``FinAbGroup((4, 3))`` is Z/4 + Z/3.  Elements are residue vectors kept in
reduced form (``0 <= r_i < n_i``), which makes equality structural.

Subgroups are stored as fully enumerated element sets.  This is only
reasonable for small groups, and construction refuses groups with more than
``MAX_ORDER`` elements.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import reduce

MAX_ORDER = 4096


class QuotientNotCyclic(ValueError):
    """Raised when a weight does not generate a cyclic quotient."""


@dataclass(frozen=True)
class FinAbGroup:
    orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        if any(n <= 0 for n in orders):
            raise ValueError(f"cyclic factor orders must be >= 1, got {orders}")
        if math.prod(orders) > MAX_ORDER:
            raise ValueError(f"group of order {math.prod(orders)} exceeds {MAX_ORDER}")
        object.__setattr__(self, "orders", orders)

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    def __len__(self):
        return self.order

    def __call__(self, *residues) -> GroupElement:
        if len(residues) == 1 and not isinstance(residues[0], int):
            residues = tuple(residues[0])
        return GroupElement(self, residues)

    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * len(self.orders))

    def elements(self) -> tuple[GroupElement, ...]:
        """All elements, in lexicographic order of residue vectors."""
        cached = self.__dict__.get("_elements")
        if cached is None:
            cached = tuple(
                GroupElement._new(self, r)
                for r in itertools.product(*(range(n) for n in self.orders))
            )
            object.__setattr__(self, "_elements", cached)
        return cached

    def is_cyclic(self) -> bool:
        return reduce(math.lcm, self.orders, 1) == self.order

    def __str__(self):
        if not self.orders:
            return "0"
        return " + ".join(f"Z/{n}" for n in self.orders)


@dataclass(frozen=True, order=True)
class GroupElement:
    group: FinAbGroup = field(compare=False)
    residues: tuple[int, ...]

    def __post_init__(self):
        if len(self.residues) != len(self.group.orders):
            raise ValueError(
                f"expected {len(self.group.orders)} residues, got {len(self.residues)}"
            )
        reduced = tuple(int(r) % n for r, n in zip(self.residues, self.group.orders))
        object.__setattr__(self, "residues", reduced)

    @classmethod
    def _new(cls, group, residues):
        # residues are reduced here but not length-checked
        x = object.__new__(cls)
        object.__setattr__(x, "group", group)
        object.__setattr__(x, "residues", tuple(r % n for r, n in zip(residues, group.orders)))
        return x

    # ordering compares residues only; equality must also see the group
    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.residues == other.residues and (
            self.group is other.group or self.group == other.group
        )

    def __hash__(self):
        return hash((self.group.orders, self.residues))

    def _check(self, other):
        if not isinstance(other, GroupElement):
            return False
        if other.group is not self.group and other.group != self.group:
            raise ValueError("elements of different groups")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        return GroupElement._new(self.group, [a + b for a, b in zip(self.residues, other.residues)])

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return GroupElement._new(self.group, [a - b for a, b in zip(self.residues, other.residues)])

    def __neg__(self):
        return GroupElement._new(self.group, [-a for a in self.residues])

    def __rmul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return GroupElement._new(self.group, [k * a for a in self.residues])

    def is_zero(self) -> bool:
        return not any(self.residues)

    def order(self) -> int:
        return elem_order(self)

    def __str__(self):
        if len(self.residues) == 1:
            return str(self.residues[0])
        return "(" + ",".join(map(str, self.residues)) + ")"

    def __repr__(self):
        return f"GroupElement({self})"


@dataclass(frozen=True)
class Subgroup:
    parent: FinAbGroup
    elements: frozenset
    generators: tuple = field(default=(), compare=False)

    def __post_init__(self):
        expected = _span(self.parent, self.generators)
        if frozenset(self.elements) != expected:
            raise ValueError("subgroup elements do not match the span of its generators")
        object.__setattr__(self, "elements", expected)

    def __contains__(self, x):
        return x in self.elements

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements))

    @property
    def index(self) -> int:
        cached = self.__dict__.get("_index")
        if cached is None:
            cached = self.parent.order // len(self.elements)
            object.__setattr__(self, "_index", cached)
        return cached

    def residue_set(self) -> frozenset:
        """Residue vectors of the elements, for fast membership tests."""
        cached = self.__dict__.get("_residues")
        if cached is None:
            cached = frozenset(x.residues for x in self.elements)
            object.__setattr__(self, "_residues", cached)
        return cached

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def __str__(self):
        return "{" + ", ".join(str(x) for x in self) + "}"


def group_make(orders) -> FinAbGroup:
    return FinAbGroup(tuple(orders))


def elem_order(x: GroupElement) -> int:
    """Smallest n >= 1 with n*x = 0, the lcm of the component orders."""
    return reduce(
        math.lcm,
        (n // math.gcd(r, n) for r, n in zip(x.residues, x.group.orders)),
        1,
    )


def _span(group: FinAbGroup, gens) -> frozenset:
    # span(S + g) is the union of the translates S + k*g, k = 0, 1, ...
    span = {group.zero()}
    for g in gens:
        if g.group != group:
            raise ValueError("generator from a different group")
        if g in span:
            continue
        new = set(span)
        step = g
        while step not in span:
            new.update(x + step for x in span)
            step = step + g
        span = new
    return frozenset(span)


def subgroup_generate(group: FinAbGroup, gens) -> Subgroup:
    gens = tuple(gens)
    return Subgroup(group, _span(group, gens), gens)


def quotient_cyclic_check(K: Subgroup, nu: GroupElement) -> int:
    """Return [Lambda:K] if nu + K generates Lambda/K (which is then cyclic).

    Raises QuotientNotCyclic otherwise.
    """
    n = K.index
    x = nu
    m = 1
    while x not in K:
        x = x + nu
        m += 1
    if m != n:
        raise QuotientNotCyclic(
            f"{nu} has order {m} modulo the subgroup, but the quotient has order {n}"
        )
    return n


def m_of(lam: GroupElement, nu: GroupElement, K: Subgroup) -> int:
    """The unique m in [0, n-1] with lam - m*nu in K, where n = [Lambda:K]."""
    orders = K.parent.orders
    parent = K.parent
    if (lam.group is not parent and lam.group != parent) or (nu.group is not parent and nu.group != parent):
        raise ValueError("elements of different groups")
    members = K.residue_set()
    n = K.index
    found = []
    # every m is tried, so corrupted data with two solutions is caught
    if len(orders) == 1:
        (q,), (x,), (step,) = orders, lam.residues, nu.residues
        for m in range(n):
            if (x,) in members:
                found.append(m)
            x = (x - step) % q
    else:
        x = lam.residues
        for m in range(n):
            if x in members:
                found.append(m)
            x = tuple((a - b) % q for a, b, q in zip(x, nu.residues, orders))
    if len(found) != 1:
        raise RuntimeError(f"expected exactly one m for {lam}, found {found}")
    return found[0]


def cosets(K: Subgroup) -> list[frozenset]:
    seen = set()
    out = []
    for x in K.parent.elements():
        if x in seen:
            continue
        c = frozenset(x + k for k in K.elements)
        seen |= c
        out.append(c)
    return out
