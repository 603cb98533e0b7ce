import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diagcovers.abelian import (
    FinAbGroup,
    QuotientNotCyclic,
    cosets,
    elem_order,
    group_make,
    m_of,
    quotient_cyclic_check,
    subgroup_generate,
)


def test_group_make_examples():
    assert group_make([2]).order == 2
    assert group_make([4, 3]).order == 12
    assert group_make([9]).elements()[-1].residues == (8,)


def test_group_make_rejects_bad_orders():
    with pytest.raises(ValueError):
        group_make([0])
    with pytest.raises(ValueError):
        group_make([-3, 2])
    with pytest.raises(ValueError):
        group_make([4097])


def test_elements_are_reduced_and_structural():
    G = FinAbGroup((4, 3))
    assert G(5, 7) == G(1, 1)
    assert G(5, 7).residues == (1, 1)
    assert G(-1, -1) == G(3, 2)
    assert G(1, 1) != FinAbGroup((4, 6))(1, 1)
    assert len(set(G.elements())) == 12
    with pytest.raises(ValueError):
        G(1)


def test_elem_order_examples():
    G = FinAbGroup((4,))
    assert elem_order(G(0)) == 1
    assert elem_order(G(2)) == 2
    assert elem_order(FinAbGroup((4, 3))(1, 1)) == 12


def test_elem_order_matches_brute_force():
    G = FinAbGroup((6, 4))
    for x in G.elements():
        k = 1
        while not (k * x).is_zero():
            k += 1
        assert elem_order(x) == k


def test_subgroup_generate_examples():
    Z4 = FinAbGroup((4,))
    assert subgroup_generate(Z4, []).elements == {Z4(0)}
    assert subgroup_generate(Z4, [Z4(2)]).elements == {Z4(0), Z4(2)}
    Z9 = FinAbGroup((9,))
    assert subgroup_generate(Z9, [Z9(3)]).elements == {Z9(0), Z9(3), Z9(6)}


def _closure(G, gens):
    # independent oracle: all integer combinations with bounded coefficients
    out = set()
    for coeffs in itertools.product(range(math.lcm(*G.orders)), repeat=len(gens)):
        x = G.zero()
        for c, g in zip(coeffs, gens):
            x = x + c * g
        out.add(x)
    return out


def test_subgroup_generate_matches_combinations():
    G = FinAbGroup((4, 6))
    elems = G.elements()
    for a, b in itertools.combinations(elems[::5], 2):
        H = subgroup_generate(G, [a, b])
        assert H.elements == _closure(G, [a, b])
        assert G.order % len(H) == 0


def test_subgroup_membership_and_order():
    Z9 = FinAbGroup((9,))
    H = subgroup_generate(Z9, [Z9(6)])
    assert Z9(3) in H and Z9(1) not in H
    assert [x.residues[0] for x in H] == [0, 3, 6]
    assert H.index == 3
    assert str(H) == "{0, 3, 6}"


def test_quotient_cyclic_check_examples():
    Z4 = FinAbGroup((4,))
    K = subgroup_generate(Z4, [Z4(2)])
    assert quotient_cyclic_check(K, Z4(1)) == 2
    with pytest.raises(QuotientNotCyclic):
        quotient_cyclic_check(K, Z4(2))
    Z9 = FinAbGroup((9,))
    assert quotient_cyclic_check(subgroup_generate(Z9, []), Z9(1)) == 9


def test_quotient_cyclic_check_noncyclic_quotient():
    G = FinAbGroup((2, 2))
    with pytest.raises(QuotientNotCyclic):
        quotient_cyclic_check(subgroup_generate(G, []), G(1, 1))


def test_m_of_examples():
    Z4 = FinAbGroup((4,))
    K = subgroup_generate(Z4, [Z4(2)])
    assert [m_of(Z4(l), Z4(1), K) for l in range(4)] == [0, 1, 0, 1]
    Z9 = FinAbGroup((9,))
    K = subgroup_generate(Z9, [Z9(3)])
    assert all(m_of(Z9(l), Z9(1), K) == l % 3 for l in range(9))


def test_m_of_rejects_bad_weight():
    Z4 = FinAbGroup((4,))
    K = subgroup_generate(Z4, [Z4(2)])
    with pytest.raises(RuntimeError):
        m_of(Z4(1), Z4(2), K)


def test_cosets_partition():
    G = FinAbGroup((6,))
    K = subgroup_generate(G, [G(2)])
    cs = cosets(K)
    assert len(cs) == 2
    assert set().union(*cs) == set(G.elements())


orders = st.lists(st.integers(1, 8), min_size=1, max_size=3).filter(lambda o: math.prod(o) <= 64)


@settings(max_examples=60, deadline=None)
@given(orders, st.data())
def test_m_of_properties(orders, data):
    G = FinAbGroup(tuple(orders))
    elems = G.elements()
    gens = data.draw(st.lists(st.sampled_from(elems), max_size=2))
    K = subgroup_generate(G, gens)
    nu = data.draw(st.sampled_from(elems))
    try:
        n = quotient_cyclic_check(K, nu)
    except QuotientNotCyclic:
        return
    counts = [0] * n
    for lam in elems:
        m = m_of(lam, nu, K)
        counts[m] += 1
        assert m_of(lam + nu, nu, K) == (m + 1) % n
        assert (m == 0) == (lam in K)
    assert counts == [G.order // n] * n


@settings(max_examples=60, deadline=None)
@given(orders, st.data())
def test_group_law(orders, data):
    G = FinAbGroup(tuple(orders))
    a, b, c = (data.draw(st.sampled_from(G.elements())) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a - a == G.zero()
    assert elem_order(a) * a == G.zero()
    assert G.order % elem_order(a) == 0
