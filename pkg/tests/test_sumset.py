import itertools

import pytest
from hypothesis import given, strategies as st

from smalldoubling.group import GroupContext, inverse, multiply, power
from smalldoubling.sumset import (
    LANDMARKS,
    Subset,
    center_members,
    doubling_report,
    is_cna,
    is_pairwise_commuting,
    product_set,
    square_size,
)

from conftest import elements
from oracles import heisenberg_box, matrix_product_set

H = GroupContext(2)
x, y, z = H.generator(0), H.generator(1), H.basic_commutator(0, 1)
e = H.identity()


def S(*elems):
    return Subset.of(elems)


def test_product_set_examples():
    assert product_set(S(e)) == {e}
    assert product_set(S(x, y)) == {power(x, 2), x * y, y * x, power(y, 2)}
    assert square_size(S(y, y * z, x)) == 7
    assert square_size(S(y, y * z, x, x * z)) == 10


def test_report_examples():
    b = H.element((1, 2), (0,))
    for k in range(1, 7):
        report = doubling_report(S(*(b * power(z, m) for m in range(k))))
        assert report.square_size == 2 * k - 1
        assert report.is_generated_abelian
    r = doubling_report(S(x, y))
    assert (r.k, r.square_size, r.is_cna, r.is_generated_abelian) == (2, 4, True, False)
    assert r.alpha_beta_class["4k-4"] == 0
    r = doubling_report(S(y, y * z, x, x * z))
    assert r.square_size == 10
    assert r.alpha_beta_class == {"2k-1": 1, "3k-3": 1, "3k-2": 0, "3k-1": -1, "4k-4": -1}
    assert set(r.to_dict()) == {"k", "square_size", "alpha_beta_class", "is_generated_abelian", "is_cna"}
    assert tuple(r.alpha_beta_class) == LANDMARKS


def test_predicates():
    assert is_pairwise_commuting(S(x))
    assert not is_pairwise_commuting(S(x, y))
    assert is_pairwise_commuting(S(y, y * z))
    assert is_cna(S(x))
    assert is_cna(S(x, y))
    assert not is_cna(S(x, y, z))
    assert center_members(S(x, y, z)) == (z,)
    assert center_members(S(x, y)) == ()
    ab = S(y, y * z, power(y, 2))
    assert center_members(ab) == ab.elements


def test_subset_validation():
    with pytest.raises(ValueError):
        Subset(H, ())
    with pytest.raises(ValueError):
        Subset(H, (x, y))  # not ascending
    with pytest.raises(ValueError):
        Subset(H, (y, y))
    with pytest.raises(ValueError):
        Subset(H, (GroupContext(3).generator(0),))
    with pytest.raises(ValueError):
        Subset.of([])
    s = S(x, y, z)
    assert len(s) == 3 and z in s and s.without(z) == S(x, y)
    assert str(S(x)) == "{gens:1,0;comms:0}"


def subsets(max_k=5):
    return st.lists(elements(2, gen_bound=3, comm_bound=6), min_size=1, max_size=max_k, unique=True)


@given(subsets())
def test_product_set_matches_matrix_oracle(elems):
    assert square_size(elems) == len(matrix_product_set(elems))


@given(subsets(6))
def test_size_bounds(elems):
    k = len(elems)
    n = square_size(elems)
    assert 2 * k - 1 <= n <= k * k
    if is_pairwise_commuting(elems):
        assert n <= k * (k + 1) // 2
    if is_cna(elems):
        assert n >= 4 * k - 4


@given(subsets(), elements(2))
def test_conjugation_invariance(elems, g):
    conj = [multiply(multiply(inverse(g), s), g) for s in elems]
    a, b = doubling_report(elems), doubling_report(conj)
    assert a == b


def test_center_members_brute_force():
    box = heisenberg_box(1, 0)
    for trio in itertools.combinations(box, 3):
        expected = tuple(s for s in trio if all(s * t == t * s for t in trio))
        assert center_members(trio) == expected
