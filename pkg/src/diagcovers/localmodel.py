"""Explicit graded local algebras of G-normal curves in characteristic p.

The local ring B of the base curve at a branch point is modelled by the
truncation F_p[t]/(t^N).  Over it we build algebras

    B[T_1, ..., T_k] / (T_j^{a_j} - c_j * T^{e_j})

with a triangular rule set: the rewrite for T_j only introduces variables
of smaller index, so reducing from the last variable down to the first gives
normal forms on the monomial basis {T^e : 0 <= e_j < a_j}.  Every variable
is homogeneous for a grading by a finite abelian group.

Two families are provided: the local models of mu_{p^r}-normal curves,

    B[T1, T2] / (T1^{p^{r-s}} - u, T2^{p^s} - t T1^nu),

and Kummer covers B[T]/(T^n - g).  Setting t = 0 gives the fibre algebra,
a finite dimensional graded F_p-algebra, which is the same construction over
the residue field F_p[t]/(t).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_diff, gf_from_int_poly, gf_gcd

from .abelian import (
    FinAbGroup,
    GroupElement,
    QuotientNotCyclic,
    Subgroup,
    quotient_cyclic_check,
    subgroup_generate,
)


class ConsistencyError(RuntimeError):
    """A structural identity that the construction guarantees has failed."""


class DecompositionError(ValueError):
    """The fibre algebra does not split as a torsor part plus a nilpotent ideal."""


@dataclass(frozen=True)
class TruncatedLocalRing:
    """F_p[t]/(t^trunc); elements are coefficient tuples of length trunc."""

    p: int
    trunc: int = 8

    def __post_init__(self):
        if not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.trunc < 1:
            raise ValueError("truncation order must be >= 1")

    def element(self, coeffs) -> tuple:
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        c = [int(a) % self.p for a in coeffs][: self.trunc]
        return tuple(c + [0] * (self.trunc - len(c)))

    @property
    def zero(self) -> tuple:
        return (0,) * self.trunc

    @property
    def one(self) -> tuple:
        return self.element([1])

    @property
    def t(self) -> tuple:
        """The uniformizer (zero when trunc = 1)."""
        return self.element([0, 1])

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scale(self, a, k: int):
        p = self.p
        return tuple(k * x % p for x in a)

    def mul(self, a, b):
        N, p = self.trunc, self.p
        if N == 1:
            return (a[0] * b[0] % p,)
        out = [0] * N
        for i, x in enumerate(a):
            if x:
                for j in range(N - i):
                    if b[j]:
                        out[i + j] += x * b[j]
        return tuple(v % p for v in out)

    def is_zero(self, a) -> bool:
        return not any(a)

    def is_unit(self, a) -> bool:
        return a[0] % self.p != 0

    def inverse(self, a):
        """Inverse of a unit u0(1 + w) as u0^{-1} sum (-w)^k, which is finite."""
        if not self.is_unit(a):
            raise ZeroDivisionError("not a unit of the local ring")
        inv0 = pow(a[0], -1, self.p)
        w = self.scale(a, inv0)
        w = (0,) + w[1:]
        minus_w = self.neg(w)
        term, total = self.one, self.one
        for _ in range(self.trunc):
            term = self.mul(term, minus_w)
            total = self.add(total, term)
        return self.scale(total, inv0)

    def valuation(self, a):
        """t-adic valuation, or None for zero."""
        for i, x in enumerate(a):
            if x:
                return i
        return None

    def divide_by_t(self, a):
        if a[0]:
            raise ValueError("element is not divisible by t")
        return a[1:] + (0,)

    def residue(self, a) -> int:
        return a[0]

    def residue_ring(self) -> TruncatedLocalRing:
        return TruncatedLocalRing(self.p, 1)

    def format(self, a) -> str:
        terms = []
        for i, x in enumerate(a):
            if not x:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                terms.append(str(x))
            else:
                terms.append(mono if x == 1 else f"{x}*{mono}")
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class Relation:
    """T_k^power = coeff * T^shift, with shift supported on earlier variables."""

    power: int
    coeff: tuple
    shift: tuple


class GradedAlgebra:
    """Graded algebra over a truncated local ring with triangular relations."""

    def __init__(self, base: TruncatedLocalRing, grading: FinAbGroup, names, weights, relations):
        self.base = base
        self.grading = grading
        self.names = tuple(names)
        self.weights = tuple(w if isinstance(w, GroupElement) else grading(w) for w in weights)
        self.relations = tuple(relations)
        k = len(self.names)
        if not (len(self.weights) == len(self.relations) == k):
            raise ValueError("names, weights and relations must have equal length")
        for j, rel in enumerate(self.relations):
            if rel.power < 1:
                raise ValueError("relation powers must be >= 1")
            if len(rel.shift) != k or any(rel.shift[i] for i in range(j, k)):
                raise ValueError(f"relation for {self.names[j]} is not triangular")
            # T_j^a = 0 is homogeneous whatever the weights
            if not base.is_zero(rel.coeff) and rel.power * self.weights[j] != self._weight_of(rel.shift):
                raise ValueError(f"relation for {self.names[j]} is not homogeneous")
        self.basis = list(itertools.product(*(range(rel.power) for rel in self.relations)))
        self._index = {m: i for i, m in enumerate(self.basis)}
        self._basis_weights = {m: self._weight_of(m) for m in self.basis}
        self._products = {}
        self._powers = {}
        self._one = base.one

    def _coeff_power(self, j: int, q: int):
        key = (j, q)
        if key not in self._powers:
            c = self.relations[j].coeff
            self._powers[key] = c if q == 1 else self.base.mul(c, self._coeff_power(j, q - 1))
        return self._powers[key]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def _weight_of(self, exps) -> GroupElement:
        res = [0] * len(self.grading.orders)
        for e, wt in zip(exps, self.weights):
            if e:
                for i, r in enumerate(wt.residues):
                    res[i] += e * r
        return GroupElement._new(self.grading, res)

    def weight(self, mono) -> GroupElement:
        w = self._basis_weights.get(mono)
        return self._weight_of(mono) if w is None else w

    def index(self, mono) -> int:
        return self._index[mono]

    def mono_mul(self, m1, m2):
        """Normal form of T^m1 * T^m2 as (coefficient, monomial)."""
        key = (m1, m2)
        hit = self._products.get(key)
        if hit is not None:
            return hit
        base = self.base
        exps = [a + b for a, b in zip(m1, m2)]
        coeff = self._one
        for j in range(len(exps) - 1, -1, -1):
            rel = self.relations[j]
            q, exps[j] = divmod(exps[j], rel.power)
            if q:
                coeff = base.mul(coeff, self._coeff_power(j, q))
                for i, e in enumerate(rel.shift):
                    exps[i] += q * e
        out = (coeff, tuple(exps))
        self._products[key] = out
        return out

    def element(self, terms) -> AlgebraElement:
        return AlgebraElement(self, terms)

    def monomial(self, mono, coeff=None) -> AlgebraElement:
        coeff = self.base.one if coeff is None else self.base.element(coeff)
        # a monomial outside the basis gets reduced
        c, m = self.mono_mul(tuple(mono), (0,) * len(self.names))
        return AlgebraElement(self, {m: self.base.mul(c, coeff)})

    def variable(self, k: int) -> AlgebraElement:
        mono = [0] * len(self.names)
        mono[k] = 1
        return self.monomial(tuple(mono))

    def one(self) -> AlgebraElement:
        return self.monomial((0,) * len(self.names))

    def scalar(self, c) -> AlgebraElement:
        return self.monomial((0,) * len(self.names), c)

    def components(self) -> dict:
        """Weight -> basis monomials of that weight."""
        out = {lam: [] for lam in self.grading.elements()}
        for m in self.basis:
            out[self.weight(m)].append(m)
        return out

    def format_monomial(self, mono) -> str:
        parts = []
        for name, e in zip(self.names, mono):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


class AlgebraElement:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: GradedAlgebra, terms):
        self.algebra = algebra
        base = algebra.base
        self.terms = {m: c for m, c in terms.items() if not base.is_zero(c)}

    def _same(self, other):
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            raise ValueError("elements of different algebras")

    def __add__(self, other):
        self._same(other)
        base = self.algebra.base
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = base.add(out.get(m, base.zero), c)
        return AlgebraElement(self.algebra, out)

    def __neg__(self):
        base = self.algebra.base
        return AlgebraElement(self.algebra, {m: base.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        A = self.algebra
        base = A.base
        if isinstance(other, int):
            return AlgebraElement(A, {m: base.scale(c, other) for m, c in self.terms.items()})
        self._same(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c, m = A.mono_mul(m1, m2)
                c = base.mul(base.mul(c, c1), c2)
                out[m] = base.add(out.get(m, base.zero), c)
        return AlgebraElement(A, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def weights(self) -> set:
        return {self.algebra.weight(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), self.algebra.base.zero)

    def map_coefficients(self, f) -> dict:
        return {m: f(c) for m, c in self.terms.items()}

    def __str__(self):
        if not self.terms:
            return "0"
        A = self.algebra
        parts = []
        for m in sorted(self.terms):
            c = A.base.format(self.terms[m])
            mono = A.format_monomial(m)
            if mono == "1":
                parts.append(c)
            elif c == "1":
                parts.append(mono)
            elif " + " in c:
                parts.append(f"({c})*{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    __repr__ = __str__


class LocalModelAlgebra(GradedAlgebra):
    """B[T1, T2] / (T1^{p^{r-s}} - u, T2^{p^s} - t T1^nu), graded by Z/p^r."""

    def __init__(self, p, r, s, nu, u, trunc=8):
        base = TruncatedLocalRing(p, trunc)
        self.p, self.r, self.s, self.nu = p, r, s, nu
        self.u = base.element(u)
        q = p**r
        super().__init__(
            base,
            FinAbGroup((q,)),
            ("T1", "T2"),
            (p**s % q, nu % q),
            (
                Relation(p ** (r - s), self.u, (0, 0)),
                Relation(p**s, base.t, (nu, 0)),
            ),
        )


class KummerAlgebra(GradedAlgebra):
    """B[T] / (T^n - g), graded by Z/n with T of weight 1."""

    def __init__(self, base: TruncatedLocalRing, n: int, g):
        self.n = n
        self.g = base.element(g)
        super().__init__(base, FinAbGroup((n,)), ("T",), (1,), (Relation(n, self.g, (0,)),))


class FibreAlgebra(GradedAlgebra):
    """A graded algebra over the prime field, with exact linear algebra."""

    def __init__(self, p, grading, names, weights, relations):
        super().__init__(TruncatedLocalRing(p, 1), grading, names, weights, relations)
        self.p = p

    @classmethod
    def from_relations(cls, p, grading, weights, powers, constants, names=None):
        """F_p[T_1..T_k] / (T_j^{powers_j} - constants_j)."""
        k = len(powers)
        names = names or tuple(f"T{j + 1}" for j in range(k))
        rels = tuple(Relation(a, (c % p,), (0,) * k) for a, c in zip(powers, constants))
        return cls(p, grading, names, weights, rels)

    @property
    def dim(self) -> int:
        return self.rank

    def vector(self, x: AlgebraElement) -> dict:
        return {self.index(m): c[0] for m, c in x.terms.items()}

    def span_rank(self, elements) -> int:
        return _rank_mod_p((self.vector(x) for x in elements), self.p)

    def ideal_dim(self, x: AlgebraElement) -> int:
        """dim_{F_p} of the principal ideal x * A."""
        rows = []
        for m in self.basis:
            row = {}
            for mx, cx in x.terms.items():
                c, prod = self.mono_mul(mx, m)
                if c[0]:
                    k = self._index[prod]
                    row[k] = row.get(k, 0) + c[0] * cx[0]
            rows.append(row)
        return _rank_mod_p(rows, self.p)

    def is_unit(self, x: AlgebraElement) -> bool:
        """Whether multiplication by x is invertible."""
        return self.ideal_dim(x) == self.dim


def _rank_mod_p(rows, p: int) -> int:
    """Rank over F_p of sparse rows {column: value}."""
    pivots = {}
    rank = 0
    for row in rows:
        row = {k: v % p for k, v in row.items() if v % p}
        while row:
            col = min(row)
            prow = pivots.get(col)
            if prow is None:
                inv = pow(row[col], -1, p)
                pivots[col] = {k: v * inv % p for k, v in row.items()}
                rank += 1
                break
            c = row[col]
            for k, v in prow.items():
                nv = (row.get(k, 0) - c * v) % p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return rank


def build_local_model(p: int, r: int, s: int, nu: int, u=1, trunc: int = 8) -> LocalModelAlgebra:
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if not 1 <= s <= r:
        raise ValueError(f"need 1 <= s <= r, got s={s}, r={r}")
    if not 0 < nu < p**r or nu % p == 0:
        raise ValueError(f"nu={nu} must lie in (0, {p**r}) and be prime to {p}")
    if trunc < 2:
        raise ValueError("truncation order must be >= 2 to see the uniformizer")
    base = TruncatedLocalRing(p, trunc)
    if not base.is_unit(base.element(u)):
        raise ValueError(f"u={u} is not a unit of the local ring")
    return LocalModelAlgebra(p, r, s, nu, u, trunc)


def build_kummer(base: TruncatedLocalRing, n: int, g) -> KummerAlgebra:
    if n < 1:
        raise ValueError("n must be >= 1")
    g = base.element(g)
    if base.is_zero(g):
        raise ValueError("g must be a nonzerodivisor, got 0")
    return KummerAlgebra(base, n, g)


def fibre(A: GradedAlgebra) -> FibreAlgebra:
    """A / tA, obtained by reducing every relation coefficient mod t."""
    if isinstance(A, FibreAlgebra):
        return A
    cached = getattr(A, "_fibre", None)
    if cached is None:
        rels = tuple(Relation(rel.power, (rel.coeff[0],), rel.shift) for rel in A.relations)
        cached = A._fibre = FibreAlgebra(A.base.p, A.grading, A.names, A.weights, rels)
    return cached


@dataclass
class FibreDecomposition:
    K: Subgroup
    generator_weight: GroupElement
    generator_coset: frozenset
    ideal_basis: list
    nilpotency: int

    @property
    def index(self) -> int:
        return self.K.index


def _graded_components(Abar: FibreAlgebra) -> dict:
    comps = Abar.components()
    for lam, monos in comps.items():
        if len(monos) != 1:
            raise DecompositionError(f"weight component {lam} has dimension {len(monos)}, expected 1")
    return {lam: monos[0] for lam, monos in comps.items()}


def fibre_decompose(Abar: FibreAlgebra) -> FibreDecomposition:
    """Split Abar = Abar^H + I, with I the largest graded ideal.

    Every weight component is a line, so a homogeneous b_lam is a unit iff
    b_lam * b_{-lam}, which lies in the line Abar_0 = F_p, is nonzero.
    """
    comp = _graded_components(Abar)
    G = Abar.grading

    def prod(lam, mu):
        c, _ = Abar.mono_mul(comp[lam], comp[mu])
        return c[0]

    units = [lam for lam in G.elements() if prod(lam, -lam)]
    K = subgroup_generate(G, units)
    if K.elements != frozenset(units):
        raise DecompositionError("weights of unit components do not form a subgroup")
    ideal_weights = [lam for lam in G.elements() if lam not in K]
    ideal_basis = [comp[lam] for lam in ideal_weights]
    if not ideal_weights:
        return FibreDecomposition(K, G.zero(), K.elements, [], 1)

    # b_nu generates I iff b_nu * b_mu vanishes exactly when nu + mu lies in K;
    # that also shows I = b_nu * Abar is an ideal.  Products with the top
    # monomials come first since they are the ones most likely to vanish.
    reverse = sorted(G.elements(), key=lambda lam: comp[lam], reverse=True)
    generators = []
    seen = set()
    for nu in ideal_weights:
        if nu in seen:
            continue
        coset = frozenset(nu + k for k in K.elements)
        seen |= coset
        if all(bool(prod(nu, mu)) == (nu + mu not in K) for mu in reverse):
            try:
                quotient_cyclic_check(K, nu)
            except QuotientNotCyclic:
                raise DecompositionError(f"generator weight {nu} does not generate Lambda/K") from None
            generators.append((nu, coset))
    if len(generators) != 1:
        raise DecompositionError(f"expected one generating weight coset, found {len(generators)}")
    nu, coset = generators[0]

    # I = f * Abar, hence I^k = f^k * Abar
    f = Abar.monomial(comp[nu])
    power, k = f, 1
    while not power.is_zero():
        if k > Abar.dim:
            raise DecompositionError("the graded ideal is not nilpotent")
        power = power * f
        k += 1
    return FibreDecomposition(K, nu, coset, ideal_basis, k)


@dataclass
class IdealReport:
    f: AlgebraElement
    exponent: int
    f_power: AlgebraElement
    cofactor: AlgebraElement
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def largest_graded_ideal(A: GradedAlgebra, strict: bool = True, decomposition=None) -> IdealReport:
    """Check that f, the image of the last variable, generates the largest graded ideal.

    Three checks: f is homogeneous; A is the direct sum of the A^H f^m for
    0 <= m < n as free base modules; f^n = t * (unit), so that f^n A = t A.
    """
    base = A.base
    k = len(A.names) - 1
    n = A.relations[k].power
    f = A.variable(k)
    checks = {"homogeneous": f.is_homogeneous() and not f.is_zero()}

    try:
        K = (decomposition or fibre_decompose(fibre(A))).K
        invariant = [m for m in A.basis if A.weight(m) in K]
        seen = []
        for m in invariant:
            x = A.monomial(m)
            for j in range(n):
                if len(x.terms) != 1:
                    break
                (mono, c), = x.terms.items()
                if c != base.one:
                    break
                seen.append(mono)
                x = x * f
        checks["decomposition"] = sorted(seen) == sorted(A.basis) and len(invariant) * n == A.rank
    except DecompositionError:
        checks["decomposition"] = False

    f_power = f**n
    cofactor = A.element({})
    divisible = all(c[0] == 0 for c in f_power.terms.values())
    if divisible:
        cofactor = A.element(f_power.map_coefficients(base.divide_by_t))
        Abar = fibre(A)
        bar = Abar.element({m: (c[0],) for m, c in cofactor.terms.items()})
        checks["principal_power"] = Abar.is_unit(bar)
    else:
        checks["principal_power"] = False

    report = IdealReport(f, n, f_power, cofactor, checks)
    if strict and not report.ok:
        failed = [name for name, good in checks.items() if not good]
        raise ConsistencyError(f"largest graded ideal checks failed: {', '.join(failed)}")
    return report


@dataclass
class XiReport:
    zero_ideal_dim: int
    tangent_weight: GroupElement
    agrees: bool


def derivation_xi(A: GradedAlgebra) -> XiReport:
    """The derivation x -> weight(x) x from the Lie algebra of mu_{p^r}.

    It equals nu * T2 d/dT2 on the monomial basis; its zero ideal is (T2),
    and we return dim_{F_p} of Abar / (T2) with the weight -nu of the tangent line.
    """
    p = A.base.p
    (N,) = A.grading.orders
    if N % p:
        raise ValueError(f"grading Z/{N} does not reduce mod p={p}")
    k = len(A.names) - 1
    nu = A.weights[k]
    agrees = all(
        A.weight(m).residues[0] % p == nu.residues[0] * m[k] % p for m in A.basis
    )
    Abar = fibre(A)
    dim = Abar.dim - Abar.ideal_dim(Abar.variable(k))
    return XiReport(dim, -nu, agrees)


def is_mu_n_normal(p: int, n: int, g) -> bool:
    """Whether B[T]/(T^n - g) over B = F_p[t] is mu_n-normal.

    That holds iff the zero scheme of g is reduced, i.e. g is squarefree:
    gcd(g, g') is a nonzero constant.  g is a coefficient list, lowest first.
    """
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("n must be >= 1")
    coeffs = gf_from_int_poly([int(c) for c in reversed(list(g))], p)
    if not coeffs:
        raise ValueError("g must be nonzero")
    deriv = gf_diff(coeffs, p, ZZ)
    if not deriv:
        # g' = 0: g is constant, or a p-th power over the perfect field F_p
        return len(coeffs) == 1
    return len(gf_gcd(coeffs, deriv, p, ZZ)) == 1
