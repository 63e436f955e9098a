import itertools
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import in_ideal

from skel.core import (
    ArityError,
    IdealFormatError,
    MonomialIdeal,
    NonMinimalGeneratorsWarning,
    box,
    contains,
    default_cap,
    dimension_oracle,
    format_ideal,
    format_monomial,
    grlex_key,
    ideal_sum,
    is_subideal,
    lcm_lattice_degrees,
    minimalize,
    monomials_of_degree,
    parse_ideal,
    radical,
    truncate_at_degree,
)


@st.composite
def ideals(draw, max_n=4, max_gens=5, max_exp=3):
    n = draw(st.integers(1, max_n))
    vec = st.tuples(*[st.integers(0, max_exp)] * n)
    gens = draw(st.lists(vec, min_size=0, max_size=max_gens))
    return minimalize(n, gens)


def test_minimalize_drops_multiples_and_sorts():
    I = minimalize(2, [(1, 1), (2, 1), (0, 2), (1, 1), (1, 0)])
    assert I.generators == ((1, 0), (0, 2))


def test_grlex_puts_x1_first_within_degree():
    assert sorted([(0, 1), (1, 0), (1, 1), (0, 0)], key=grlex_key) == [(0, 0), (1, 0), (0, 1), (1, 1)]


def test_zero_and_unit():
    assert MonomialIdeal.zero(3).is_zero
    assert MonomialIdeal.unit(3).is_unit
    assert minimalize(2, [(0, 0), (1, 2)]).is_unit
    assert not contains(MonomialIdeal.zero(2), (5, 5))


def test_format_monomial():
    assert format_monomial((2, 0, 1)) == "x1^2*x3"
    assert format_monomial((0, 0)) == "1"
    assert str(minimalize(3, [(1, 1, 0), (0, 1, 1)])) == "(x1*x2, x2*x3)"


def test_monomials_of_degree_count():
    # stars and bars: C(n + k - 1, k)
    from math import comb

    for n in range(1, 5):
        for k in range(5):
            ms = list(monomials_of_degree(n, k))
            assert len(ms) == len(set(ms)) == comb(n + k - 1, k)
            assert all(sum(m) == k for m in ms)


def test_truncation_examples():
    I = minimalize(2, [(1, 0), (0, 2)])
    T = truncate_at_degree(I, 2)
    assert T.generators == ((2, 0), (1, 1), (0, 2))
    assert truncate_at_degree(I, 0) == I


@given(ideals(), st.integers(0, 5))
@settings(max_examples=60, deadline=None)
def test_truncation_is_degree_cut(I, j):
    T = truncate_at_degree(I, j)
    upper = tuple(4 + j for _ in range(I.arity))
    for b in box(upper):
        assert contains(T, b) == (contains(I, b) and sum(b) >= j)


@given(ideals(), ideals())
@settings(max_examples=60, deadline=None)
def test_membership_sum_and_containment(I, J):
    if I.arity != J.arity:
        return
    K = ideal_sum(I, J)
    for b in box(tuple(3 for _ in range(I.arity))):
        assert contains(K, b) == (in_ideal(I.generators, b) or in_ideal(J.generators, b))
    assert is_subideal(I, K) and is_subideal(J, K)


def test_radical():
    assert radical(minimalize(2, [(2, 0), (1, 3)])).generators == ((1, 0),)


def test_dimension_oracle_examples():
    assert dimension_oracle(MonomialIdeal.zero(3)) == 3
    assert dimension_oracle(MonomialIdeal.unit(3)) == -1
    assert dimension_oracle(minimalize(3, [(1, 1, 0), (0, 1, 1)])) == 2
    assert dimension_oracle(minimalize(3, [(1, 1, 0), (1, 0, 1), (0, 1, 1)])) == 1
    assert dimension_oracle(minimalize(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])) == 0


def test_lcm_lattice():
    I = minimalize(3, [(1, 1, 0), (0, 1, 1), (1, 0, 1)])
    L = lcm_lattice_degrees([I])
    assert L == {(1, 1, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)}


@given(ideals(max_gens=4))
@settings(max_examples=40, deadline=None)
def test_lcm_lattice_is_join_closure(I):
    L = lcm_lattice_degrees([I])
    gens = I.generators
    expected = set()
    for r in range(1, len(gens) + 1):
        for T in itertools.combinations(gens, r):
            expected.add(tuple(max(c) for c in zip(*T)))
    assert L == expected


def test_default_cap_at_least_one():
    assert default_cap(minimalize(3, [(2, 0, 0)])) == (2, 1, 1)
    assert default_cap(MonomialIdeal.zero(2)) == (1, 1)


def test_parse_round_trip_and_comments():
    text = "# a comment\nring 3\ngen 1 1 0  # trailing\n\ngen 0 1 1\n"
    I = parse_ideal(text)
    assert I.generators == ((1, 1, 0), (0, 1, 1))
    assert parse_ideal(format_ideal(I)) == I


def test_parse_zero_ideal():
    assert parse_ideal("ring 2\n").is_zero


def test_parse_warns_on_non_minimal():
    with pytest.warns(NonMinimalGeneratorsWarning):
        I = parse_ideal("ring 2\ngen 1 0\ngen 2 1\n")
    assert I.generators == ((1, 0),)


def test_parse_minimal_input_is_silent():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        parse_ideal("ring 2\ngen 1 0\ngen 0 1\n")


@pytest.mark.parametrize(
    "text, exc",
    [
        ("gen 1 0\n", IdealFormatError),
        ("ring 2\ngen 1\n", ArityError),
        ("ring 2\ngen 1 -1\n", IdealFormatError),
        ("ring 2\ngen a b\n", IdealFormatError),
        ("ring x\n", IdealFormatError),
        ("ring 2\nring 2\n", IdealFormatError),
        ("ring 2\nfoo 1 2\n", IdealFormatError),
        ("", IdealFormatError),
    ],
)
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_ideal(text)


def test_error_carries_line_number():
    with pytest.raises(IdealFormatError) as info:
        parse_ideal("ring 2\ngen 1 0\ngen x 1\n")
    assert info.value.line == 3


def test_arity_mismatch_in_minimalize():
    with pytest.raises(ArityError):
        minimalize(2, [(1, 0, 0)])
