import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import brute_hreg, brute_sdepth, count_partitions

from skel.core import MonomialIdeal, minimalize
from skel.homology import depth
from skel.poset import build_poset, partition_to_decomposition, validate_partition
from skel.stanley import (
    EmptyPosetError,
    SearchBudget,
    SearchStats,
    _Clock,
    _CoverSearch,
    check_hreg_conjecture,
    check_sdepth_skeleton_monotonicity,
    check_stanley_conjecture,
    generator_rooted_partition,
    hreg,
    partition_with_min_rho,
    random_partition,
    rho,
    sdepth,
    sigma,
    sigma_interval,
)

E2 = minimalize(3, [(1, 1, 0), (0, 1, 1)])


@st.composite
def tiny_modules(draw):
    """(inner, outer) pairs whose posets are small enough to enumerate."""
    n = draw(st.integers(1, 3))
    vec = st.tuples(*[st.integers(0, 2)] * n).filter(any)
    I = minimalize(n, draw(st.lists(vec, min_size=1, max_size=3)))
    if draw(st.booleans()):
        return MonomialIdeal.zero(n), I
    return I, None


def _small(p, limit=11):
    return p.points and len(p.points) <= limit


def test_sigma_interval():
    g = (1, 1, 1)
    assert sigma_interval((1, 0, 0), (1, 0, 1), g) == 1
    # d = (1, 1, 0): Y = {3}, d_3 - c_3 = 0
    assert sigma_interval((1, 1, 0), (1, 1, 0), g) == 2
    assert sigma_interval((0, 0), (1, 0), (2, 1)) == 1


def test_e2_values():
    assert sdepth(E2).value == 1
    assert sdepth(E2).optimal
    r = hreg(MonomialIdeal.zero(3), E2)
    assert r.value == 2 and r.optimal


@given(tiny_modules())
@settings(max_examples=120, deadline=None)
def test_search_matches_enumeration(mod):
    inner, outer = mod
    p = build_poset(inner, outer)
    if not _small(p):
        return
    s, h = sdepth(inner, outer), hreg(inner, outer)
    assert s.optimal and h.optimal
    assert s.value == brute_sdepth(p.points, p.g)
    assert h.value == brute_hreg(p.points, p.g)
    for res, val in ((s, s.witness.rho(p.g)), (h, sigma(p, h.witness)[0])):
        assert validate_partition(p, res.witness)
        assert val == res.value


def test_enumerator_counts_small_case():
    # the poset {1, x1, x2} has partitions {1},{x1},{x2} / [1,x1],{x2} / [1,x2],{x1}
    assert count_partitions([(0, 0), (1, 0), (0, 1)]) == 3


@given(tiny_modules())
@settings(max_examples=80, deadline=None)
def test_branching_rules_agree(mod):
    inner, outer = mod
    p = build_poset(inner, outer)
    if not p.points or len(p.points) > 40:
        return
    for t in range(max(p.rhos) + 1):
        found = []
        for rule in ("mrv", "least"):
            cs = _CoverSearch(p, lambda c, d, t=t: rho(d, p.g) >= t, _Clock(SearchBudget()), SearchStats(), rule)
            part = cs.run() if cs.feasible_everywhere() else None
            found.append(part is not None)
            if part is not None:
                assert validate_partition(p, part) and part.rho(p.g) >= t
        assert found[0] == found[1]


@given(tiny_modules(), st.integers(0, 1), st.integers(0, 1))
@settings(max_examples=60, deadline=None)
def test_values_do_not_depend_on_cap(mod, u, v):
    inner, outer = mod
    p = build_poset(inner, outer)
    if not p.points or len(p.points) > 30:
        return
    bigger = tuple(e + (u if k % 2 else v) for k, e in enumerate(p.g))
    assert sdepth(inner, outer, bigger).value == sdepth(inner, outer).value
    assert hreg(inner, outer, bigger).value == hreg(inner, outer).value


@given(tiny_modules(), st.integers(0, 10**6))
@settings(max_examples=80, deadline=None)
def test_sigma_is_hreg_of_induced_decomposition(mod, seed):
    inner, outer = mod
    p = build_poset(inner, outer)
    if not p.points:
        return
    part = random_partition(p, random.Random(seed))
    assert partition_to_decomposition(p, part).hreg == sigma(p, part)[0]


def test_point_budget_gives_uncertified_trivial_witness():
    I = minimalize(3, [(3, 3, 3)])
    r = sdepth(I, budget=SearchBudget(max_poset_points=10))
    assert not r.optimal and r.value == 0 and "point budget" in r.note
    h = hreg(MonomialIdeal.zero(3), E2, budget=SearchBudget(max_poset_points=1))
    assert not h.optimal


def test_node_budget_is_reproducible():
    I = minimalize(4, [(2, 1, 0, 0), (0, 1, 2, 0), (0, 0, 1, 2), (1, 0, 0, 1)])
    b = SearchBudget(max_nodes=5)
    g = build_poset(MonomialIdeal.zero(4), I).g
    a1, a2 = hreg(MonomialIdeal.zero(4), I, budget=b), hreg(MonomialIdeal.zero(4), I, budget=b)
    assert not a1.optimal
    assert a1.to_json(g) == a2.to_json(g)


def test_empty_poset_rejected():
    with pytest.raises(EmptyPosetError):
        sdepth(MonomialIdeal.unit(2))


def test_wall_time_only_on_request():
    r = sdepth(E2)
    p = build_poset(E2)
    assert "wall_ms" not in r.to_json(p.g)["stats"]
    assert "wall_ms" in r.to_json(p.g, timing=True)["stats"]


def test_threshold_search():
    p = build_poset(E2)
    assert partition_with_min_rho(p, 1).rho(p.g) >= 1
    assert partition_with_min_rho(p, 2) is None


def test_generator_rooted_examples():
    r = generator_rooted_partition(E2)
    assert r.status == "found"
    assert {iv.low for iv in r.witness} == set(E2.generators)
    # (x1x2, x3x4): 7 poset points cannot be two intervals of size 1, 2 or 4
    q = generator_rooted_partition(minimalize(4, [(1, 1, 0, 0), (0, 0, 1, 1)]))
    assert q.status == "none" and q.witness is None
    assert generator_rooted_partition(minimalize(2, [(2, 0), (1, 1), (0, 2)]), (2, 2)).status == "found"
    assert generator_rooted_partition(E2, budget=SearchBudget(max_poset_points=1)).status == "unknown"


def test_stanley_check_on_e2():
    out = check_stanley_conjecture(E2)
    assert out["status"] == "pass"
    assert out["depth"] == 1 and out["sdepth"] == 1


def test_stanley_check_falls_back_to_threshold():
    I = minimalize(3, [(1, 1, 0), (0, 1, 1)])
    out = check_stanley_conjecture(I, budget=SearchBudget(max_poset_points=1))
    assert out["status"] == "pass"
    assert out["sdepth_search"]["note"] == "threshold search at depth"


def test_hreg_check_on_e2():
    out = check_hreg_conjecture(E2)
    assert out["status"] == "pass"
    assert out["hreg"] == 2 and out["reg"] == 2
    assert out["linear_truncation_degree"] == 2
    rows = out["truncation_chain"]
    assert [r["j"] for r in rows] == [0, 1, 2, 3, 4]
    assert all(r["hreg_le"] and r["completed_partition_valid"] for r in rows)


def test_sdepth_monotone_on_e2():
    out = check_sdepth_skeleton_monotonicity(E2)
    assert out["status"] == "pass"
    assert [r["sdepth"] for r in out["skeletons"]] == [1, 1, 0]
    assert all(r["completed_valid"] for r in out["skeletons"])


@given(tiny_modules())
@settings(max_examples=40, deadline=None)
def test_stanley_inequality_on_tiny_quotients(mod):
    inner, outer = mod
    if outer is not None or inner.is_unit:
        return
    assert sdepth(inner).value >= depth(inner)
