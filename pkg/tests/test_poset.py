import random
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import poset_points

from skel.core import MonomialIdeal, PreconditionError, contains, minimalize
from skel.poset import (
    ContainmentError,
    EmptyPosetWarning,
    Interval,
    InvalidDecompositionError,
    InvalidPartitionError,
    Partition,
    StanleyDecomposition,
    build_poset,
    decomposition_to_partition,
    dimension_from_poset,
    interval_spaces,
    is_valid_interval,
    is_valid_interval_exhaustive,
    partition_to_decomposition,
    rho,
    validate_decomposition,
    validate_partition,
    yset,
    zset,
)
from skel.stanley import random_partition, sigma

E2 = minimalize(3, [(1, 1, 0), (0, 1, 1)])


@st.composite
def small_ideals(draw, max_n=3, max_exp=2):
    n = draw(st.integers(1, max_n))
    vec = st.tuples(*[st.integers(0, max_exp)] * n).filter(any)
    return minimalize(n, draw(st.lists(vec, min_size=0, max_size=4)))


def test_rho_and_sets():
    g = (2, 1, 3)
    b = (2, 0, 3)
    assert rho(b, g) == 2
    assert zset(b, g) == {0, 2}
    assert yset(b, g) == {1}


def test_poset_of_e2():
    p = build_poset(E2)
    assert p.g == (1, 1, 1)
    assert set(p.points) == {(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 1)}
    assert dimension_from_poset(p) == 2


def test_poset_matches_brute_force():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(1, 4)
        gens = [tuple(rng.randint(0, 2) for _ in range(n)) for _ in range(rng.randint(1, 4))]
        I = minimalize(n, gens)
        if I.is_unit:
            continue
        J = minimalize(n, [tuple(min(e, 1) for e in a) for a in I.generators])
        p = build_poset(I, J)
        assert list(p.points) == sorted(poset_points(I.generators, J.generators, p.g), key=lambda b: (sum(b), [-x for x in b]))


def test_cap_must_dominate():
    with pytest.raises(PreconditionError):
        build_poset(minimalize(2, [(2, 0)]), None, (1, 1))


def test_containment_checked():
    I = minimalize(2, [(1, 0)])
    J = minimalize(2, [(0, 1)])
    with pytest.raises(ContainmentError):
        build_poset(I, J)


def test_empty_poset_warns():
    p = build_poset(MonomialIdeal.unit(2))
    with pytest.warns(EmptyPosetWarning):
        assert dimension_from_poset(p) == -1


@given(small_ideals())
@settings(max_examples=80, deadline=None)
def test_interval_shortcut_matches_exhaustive(I):
    if I.is_unit:
        return
    p = build_poset(I)
    pts = p.points
    for c in pts:
        for d in pts:
            assert is_valid_interval(p, c, d) == is_valid_interval_exhaustive(p, c, d)


def test_validate_partition_messages():
    p = build_poset(E2)
    good = Partition([Interval((0, 0, 0), (0, 1, 0)), Interval((1, 0, 0), (1, 0, 1)), Interval((0, 0, 1), (0, 0, 1))])
    assert validate_partition(p, good)
    missing = Partition([Interval((0, 0, 0), (0, 1, 0))])
    chk = validate_partition(p, missing)
    assert not chk and "not covered" in chk.message
    overlap = Partition(list(good) + [Interval((0, 0, 1), (0, 0, 1))])
    assert "covered by" in validate_partition(p, overlap).message
    bad = Partition([Interval((0, 0, 0), (1, 1, 0))])
    assert "not an interval" in validate_partition(p, bad).message
    with pytest.raises(InvalidPartitionError):
        partition_to_decomposition(p, missing)


def test_interval_spaces_counts_extra_roots():
    # [x1, x1^2] over g = (2, 1): Z_d = {1}, one root x1, not x1 and x1^2
    assert interval_spaces(Interval((1, 0), (2, 0)), (2, 1)) == [((1, 0), frozenset({0}))]
    # [1, x2] with g = (2, 1): d = x2 has Z = {2}; x1-exponent stays 0
    assert interval_spaces(Interval((0, 0), (0, 1)), (2, 1)) == [((0, 0), frozenset({1}))]
    # [1, x1] with g = (2, 1): Z_d is empty, so each point is its own root
    assert interval_spaces(Interval((0, 0), (1, 0)), (2, 1)) == [((0, 0), frozenset()), ((1, 0), frozenset())]


def _brute_cover(p, dec, top):
    # every monomial in the box of module lies in exactly one space
    import itertools

    for b in itertools.product(*(range(t + 1) for t in top)):
        wanted = contains(p.outer, b) and not contains(p.inner, b)
        hits = sum(1 for c, Z in dec.spaces
                   if all((x <= y) if k in Z else x == y for k, (x, y) in enumerate(zip(c, b))))
        if hits != (1 if wanted else 0):
            return False
    return True


@given(small_ideals(), st.integers(0, 10**6))
@settings(max_examples=80, deadline=None)
def test_random_partition_gives_valid_decomposition(I, seed):
    if I.is_unit:
        return
    p = build_poset(I)
    part = random_partition(p, random.Random(seed))
    assert validate_partition(p, part)
    dec = partition_to_decomposition(p, part)
    assert validate_decomposition(p, dec)
    assert _brute_cover(p, dec, tuple(e + 2 for e in p.g))
    # sdepth of the decomposition is the min rho; h-regularity is sigma
    assert dec.sdepth == part.rho(p.g)
    assert dec.hreg == sigma(p, part)[0]


@given(small_ideals(), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_decomposition_to_partition_refines(I, seed):
    if I.is_unit:
        return
    p = build_poset(I)
    part = random_partition(p, random.Random(seed))
    dec = partition_to_decomposition(p, part)
    back = decomposition_to_partition(p, dec)
    assert validate_partition(p, back)
    assert back.rho(p.g) == part.rho(p.g)
    assert sigma(p, back)[0] == sigma(p, part)[0]
    # the induced decomposition is unchanged by the round trip
    assert partition_to_decomposition(p, back) == dec
    # saturated intervals (d = c off Z_d) come back unchanged
    if all(iv.low[k] == iv.high[k] for iv in part for k in yset(iv.high, p.g)):
        assert back == part.sorted()


def test_bad_decomposition_rejected():
    p = build_poset(E2)
    dec = StanleyDecomposition([((0, 0, 0), frozenset({0, 1, 2}))])
    assert not validate_decomposition(p, dec)
    with pytest.raises(InvalidDecompositionError):
        decomposition_to_partition(p, dec)


def test_json_round_trips():
    p = build_poset(E2)
    part = random_partition(p, random.Random(1))
    assert Partition.from_json(part.to_json(p.g)) == part
    dec = partition_to_decomposition(p, part)
    js = dec.to_json()
    assert all(min(s["Z"], default=1) >= 1 for s in js["spaces"])
    assert StanleyDecomposition.from_json(js) == dec


def test_quiet_on_nonempty():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        dimension_from_poset(build_poset(E2))
