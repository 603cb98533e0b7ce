import itertools
import random

import pytest
import sympy

from diagcovers.abelian import FinAbGroup, subgroup_generate
from diagcovers.localmodel import (
    DecompositionError,
    FibreAlgebra,
    TruncatedLocalRing,
    build_kummer,
    build_local_model,
    derivation_xi,
    fibre,
    fibre_decompose,
    is_mu_n_normal,
    largest_graded_ideal,
)
from oracles import brute_force_squarefree


def test_truncated_ring_arithmetic():
    B = TruncatedLocalRing(3, 4)
    assert B.element([1, 2, 3, 4, 5]) == (1, 2, 0, 1)
    assert B.mul(B.t, B.element([0, 0, 0, 1])) == B.zero
    assert B.valuation(B.element([0, 0, 2])) == 2
    assert B.valuation(B.zero) is None
    assert B.divide_by_t(B.element([0, 1, 2])) == B.element([1, 2])
    with pytest.raises(ValueError):
        B.divide_by_t(B.one)
    with pytest.raises(ValueError):
        TruncatedLocalRing(6)


def test_truncated_ring_inverse_exhaustive():
    B = TruncatedLocalRing(3, 4)
    for coeffs in itertools.product(range(3), repeat=4):
        a = B.element(coeffs)
        if B.is_unit(a):
            assert B.mul(a, B.inverse(a)) == B.one
        else:
            with pytest.raises(ZeroDivisionError):
                B.inverse(a)


def test_build_local_model_examples():
    A = build_local_model(3, 1, 1, 1)
    assert [A.format_monomial(m) for m in A.basis] == ["1", "T2", "T2^2"]
    assert str(A.variable(1) ** 3) == "t"
    A = build_local_model(2, 2, 1, 1)
    assert A.rank == 4
    assert sorted(A.weight(m).residues[0] for m in A.basis) == [0, 1, 2, 3]
    weights = {A.format_monomial(m): A.weight(m).residues[0] for m in A.basis}
    assert weights == {"1": 0, "T2": 1, "T1": 2, "T1*T2": 3}
    A = build_local_model(3, 2, 1, 2, u=[1, 1])
    assert A.rank == 9
    assert A.weights[0].residues == (3,) and A.weights[1].residues == (2,)


@pytest.mark.parametrize(
    "args",
    [(4, 1, 1, 1), (2, 1, 2, 1), (2, 2, 1, 2), (3, 2, 1, 3), (3, 1, 1, 3), (3, 1, 1, 1, 3), (2, 1, 1, 1, 1, 1)],
)
def test_build_local_model_rejects(args):
    p, r, s, nu, *rest = args
    kw = {}
    if rest:
        kw["u"] = rest[0]
    if len(rest) > 1:
        kw["trunc"] = rest[1]
    with pytest.raises(ValueError):
        build_local_model(p, r, s, nu, **kw)


def test_non_unit_u_rejected():
    with pytest.raises(ValueError):
        build_local_model(3, 2, 1, 1, u=[0, 1])


def _monomial_triples(A, rng, limit):
    triples = list(itertools.product(A.basis, repeat=3))
    if A.rank <= 16:
        return triples
    return rng.sample(triples, limit)


@pytest.mark.parametrize(
    "p,r,s,nu,u",
    [
        (2, 1, 1, 1, 1), (2, 2, 1, 3, [1, 1]), (2, 3, 2, 5, [1, 1, 1]), (2, 4, 2, 7, [1, 0, 1]),
        (3, 1, 1, 2, 1), (3, 2, 1, 4, [2, 1]), (3, 2, 2, 5, 1),
        (5, 2, 1, 3, [1, 1, 1]), (3, 3, 2, 7, [1, 2]),
    ],
)
def test_associativity_and_grading(p, r, s, nu, u):
    A = build_local_model(p, r, s, nu, u)
    rng = random.Random(p * 1000 + r * 100 + s * 10 + nu)
    assert A.rank == p**r
    for a, b, c in _monomial_triples(A, rng, 1500):
        x, y, z = A.monomial(a), A.monomial(b), A.monomial(c)
        assert (x * y) * z == x * (y * z)
        xy = x * y
        assert xy.weights() <= {A.weight(a) + A.weight(b)}


def _sympy_normal_form(A, m1, m2):
    t, T1, T2 = sympy.symbols("t T1 T2")
    p, N = A.base.p, A.base.trunc
    u = sum(c * t**i for i, c in enumerate(A.u))
    gens = [t**N, T1 ** A.relations[0].power - u, T2 ** A.relations[1].power - t * T1**A.nu]
    expr = T1 ** (m1[0] + m2[0]) * T2 ** (m1[1] + m2[1])
    _, rem = sympy.reduced(expr, gens, T2, T1, t, modulus=p, order="lex")
    return sympy.Poly(rem, T2, T1, t, modulus=p)


def _as_poly(A, x):
    t, T1, T2 = sympy.symbols("t T1 T2")
    expr = sum(
        (c * t**i * T1 ** m[0] * T2 ** m[1] for m, coeffs in x.terms.items() for i, c in enumerate(coeffs)),
        sympy.Integer(0),
    )
    return sympy.Poly(expr, T2, T1, t, modulus=A.base.p)


@pytest.mark.parametrize("p,r,s,nu,u", [(2, 2, 1, 3, [1, 1]), (3, 2, 1, 5, [2, 1, 1]), (5, 2, 1, 7, [1, 3])])
def test_multiplication_matches_groebner_reduction(p, r, s, nu, u):
    A = build_local_model(p, r, s, nu, u, trunc=4)
    rng = random.Random(nu)
    pairs = list(itertools.product(A.basis, repeat=2))
    for m1, m2 in rng.sample(pairs, min(len(pairs), 40)):
        ours = A.monomial(m1) * A.monomial(m2)
        assert _as_poly(A, ours) == _sympy_normal_form(A, m1, m2)


def test_build_kummer_examples():
    B = TruncatedLocalRing(2)
    A = build_kummer(B, 2, [0, 1])
    assert [A.format_monomial(m) for m in A.basis] == ["1", "T"]
    assert str(A.variable(0) ** 2) == "t"
    A1 = build_kummer(B, 1, [1, 1])
    assert A1.rank == 1
    A4 = build_kummer(TruncatedLocalRing(3), 4, [0, 1, 1])
    assert A4.rank == 4
    assert str(A4.variable(0) ** 4) == "t + t^2"
    with pytest.raises(ValueError):
        build_kummer(B, 2, [0])


def test_fibre_examples():
    Abar = fibre(build_local_model(3, 1, 1, 1))
    T2 = Abar.variable(1)
    assert Abar.dim == 3 and (T2**3).is_zero() and not (T2**2).is_zero()
    Kbar = fibre(build_kummer(TruncatedLocalRing(5), 2, [1, 1]))
    T = Kbar.variable(0)
    assert T * T == Kbar.one()
    Abar = fibre(build_local_model(2, 2, 1, 1))
    T1, T2 = Abar.variable(0), Abar.variable(1)
    assert T1 * T1 == Abar.one() and (T2 * T2).is_zero()
    comps = Abar.components()
    assert all(len(v) == 1 for v in comps.values())


def test_is_unit_examples():
    for p in (2, 3, 5):
        Z = FinAbGroup((p,))
        torsor = FibreAlgebra.from_relations(p, Z, (1,), (p,), (1,))
        nilp = FibreAlgebra.from_relations(p, Z, (1,), (p,), (0,))
        assert torsor.is_unit(torsor.variable(0))
        assert not nilp.is_unit(nilp.variable(0))
        assert nilp.is_unit(nilp.one() + nilp.variable(0))
        assert nilp.is_unit(nilp.one() * (p + 1) + nilp.variable(0) * (p - 1))


@pytest.mark.parametrize("p,r,s,nu,u", [(2, 2, 1, 1, 1), (3, 2, 1, 2, [1, 1]), (2, 3, 1, 3, 1), (5, 1, 1, 2, 1)])
def test_is_unit_graded_criterion(p, r, s, nu, u):
    Abar = fibre(build_local_model(p, r, s, nu, u))
    K = fibre_decompose(Abar).K
    for m in Abar.basis:
        assert Abar.is_unit(Abar.monomial(m)) == (Abar.weight(m) in K)
    # a sum with a unit constant term and nilpotent rest is a unit
    ideal = [Abar.monomial(m) for m in Abar.basis if Abar.weight(m) not in K]
    x = Abar.one()
    for y in ideal:
        x = x + y
    assert Abar.is_unit(x)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_nilpotent_times_torsor_fibre(p):
    G = FinAbGroup((p * p,))
    Abar = FibreAlgebra.from_relations(p, G, (1, p), (p, p), (0, 1))
    dec = fibre_decompose(Abar)
    assert dec.K == subgroup_generate(G, [G(p)])
    assert dec.index == p
    assert G(1) in dec.generator_coset
    assert dec.nilpotency == p
    assert sorted(dec.ideal_basis) == sorted(m for m in Abar.basis if m[0] > 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
def test_torsor_fibre(n):
    G = FinAbGroup((n,))
    dec = fibre_decompose(FibreAlgebra.from_relations(5, G, (1,), (n,), (1,)))
    assert len(dec.K) == n and dec.ideal_basis == []


@pytest.mark.parametrize("p,n,g", [(3, 3, [1, 1]), (5, 4, [2, 0, 1]), (2, 4, [1, 1, 1]), (7, 3, [3])])
def test_kummer_with_unit_g_is_a_torsor(p, n, g):
    A = build_kummer(TruncatedLocalRing(p), n, g)
    dec = fibre_decompose(fibre(A))
    assert dec.K.elements == set(A.grading.elements())


def test_decomposition_needs_one_dimensional_components():
    # T^4 = 0 graded by Z/2: the weight components are two dimensional
    Abar = FibreAlgebra.from_relations(3, FinAbGroup((2,)), (1,), (4,), (0,))
    with pytest.raises(DecompositionError):
        fibre_decompose(Abar)


def test_fully_ramified_fibre():
    Abar = FibreAlgebra.from_relations(3, FinAbGroup((4,)), (1,), (4,), (0,))
    dec = fibre_decompose(Abar)
    assert dec.K.is_trivial() and dec.nilpotency == 4
    assert dec.generator_coset == {Abar.grading(1)}


@pytest.mark.parametrize("p,r,s,nu,u", [(2, 2, 1, 1, 1), (3, 2, 1, 5, [1, 1]), (2, 3, 2, 3, [1, 1, 1]), (5, 2, 1, 12, 1)])
def test_fibre_decomposition_properties(p, r, s, nu, u):
    A = build_local_model(p, r, s, nu, u)
    Abar = fibre(A)
    dec = fibre_decompose(Abar)
    invariant = [m for m in Abar.basis if Abar.weight(m) in dec.K]
    assert len(invariant) + len(dec.ideal_basis) == Abar.dim
    assert dec.index == p**s
    assert dec.nilpotency == p**s
    ideal_dim = len(dec.ideal_basis)
    for lam in dec.generator_coset:
        (m,) = Abar.components()[lam]
        assert Abar.ideal_dim(Abar.monomial(m)) == ideal_dim
    assert A.grading(nu) in dec.generator_coset


def test_largest_graded_ideal_examples():
    rep = largest_graded_ideal(build_local_model(3, 1, 1, 1))
    assert str(rep.f) == "T2" and str(rep.f_power) == "t" and rep.ok
    rep = largest_graded_ideal(build_local_model(2, 2, 1, 1))
    assert str(rep.f_power) == "t*T1" and rep.ok
    assert str(rep.cofactor) == "T1"
    rep = largest_graded_ideal(build_kummer(TruncatedLocalRing(2), 2, [0, 1]))
    assert str(rep.f) == "T" and str(rep.f_power) == "t" and rep.ok


def test_largest_graded_ideal_detects_bad_generator():
    # g = t^2 is not a uniformizer times a unit
    A = build_kummer(TruncatedLocalRing(3), 3, [0, 0, 1])
    rep = largest_graded_ideal(A, strict=False)
    assert not rep.checks["principal_power"]
    from diagcovers.localmodel import ConsistencyError
    with pytest.raises(ConsistencyError):
        largest_graded_ideal(A)


@pytest.mark.parametrize("p,r,s,expected", [(3, 1, 1, 1), (2, 2, 1, 2), (3, 2, 2, 1), (2, 3, 1, 4), (5, 2, 1, 5)])
def test_derivation_xi_examples(p, r, s, expected):
    A = build_local_model(p, r, s, 1)
    rep = derivation_xi(A)
    assert rep.zero_ideal_dim == expected == p ** (r - s)
    assert rep.agrees
    assert rep.tangent_weight == A.grading(-1)


def test_is_mu_n_normal_examples():
    assert is_mu_n_normal(2, 2, [0, 1])
    assert not is_mu_n_normal(2, 2, [0, 0, 1])
    for p in (2, 3, 5, 7):
        assert not is_mu_n_normal(p, p, [0] * p + [1])
    assert is_mu_n_normal(3, 3, [1, 1, 0, 1]) == brute_force_squarefree(3, [1, 1, 0, 1])
    assert is_mu_n_normal(5, 2, [4])
    with pytest.raises(ValueError):
        is_mu_n_normal(3, 2, [0, 0])


def test_is_mu_n_normal_random_oracle():
    rng = random.Random(3)
    for _ in range(300):
        p = rng.choice((5, 7))
        g = [rng.randrange(p) for _ in range(rng.randint(1, 7))]
        if not any(g):
            continue
        assert is_mu_n_normal(p, 2, g) == brute_force_squarefree(p, g)
