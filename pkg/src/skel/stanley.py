"""Exact interval-partition search on characteristic posets.

Stanley depth is the best achievable ``min rho(top)`` over partitions of
the poset, h-regularity the best achievable ``max sigma``.  Both reduce to
a sequence of exact-cover feasibility problems with a threshold on the
allowed intervals.  Each is solved by backtracking over bitmasks, branching
on the uncovered point with fewest usable intervals and splitting off
independent components; failed subproblems are memoized.
"""

from __future__ import annotations

import random
import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from .core import MonomialIdeal, PreconditionError, default_cap, truncate_at_degree
from .homology import (
    RATIONALS,
    FieldConfig,
    depth,
    regularity,
    regularity_via_truncations,
)
from .poset import (
    CharacteristicPoset,
    Interval,
    Partition,
    build_poset,
    dimension_from_poset,
    rho,
    validate_partition,
    yset,
)
from .skeleton import skeleton_chain


class EmptyPosetError(PreconditionError):
    pass


@dataclass(frozen=True)
class SearchBudget:
    max_poset_points: int = 200
    time_limit_ms: int = 0  # 0 = unlimited
    max_nodes: int = 0  # 0 = unlimited; unlike the clock, reproducible


@dataclass
class SearchStats:
    nodes: int = 0
    prunes: int = 0
    memo_hits: int = 0
    wall_ms: float = 0.0

    def to_json(self, timing: bool = False) -> dict:
        out = {"nodes": self.nodes, "prunes": self.prunes, "memo_hits": self.memo_hits}
        if timing:
            out["wall_ms"] = round(self.wall_ms, 3)
        return out


class BudgetExceeded(Exception):
    pass


class _Clock:
    def __init__(self, budget: SearchBudget):
        self.start = time.monotonic()
        self.deadline = self.start + budget.time_limit_ms / 1000 if budget.time_limit_ms else None
        self.max_nodes = budget.max_nodes

    def check(self, nodes: int):
        if self.max_nodes and nodes > self.max_nodes:
            raise BudgetExceeded
        if self.deadline is not None and nodes & 255 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded

    def elapsed_ms(self) -> float:
        return (time.monotonic() - self.start) * 1000


def sigma_interval(low: Sequence[int], high: Sequence[int], g: Sequence[int]) -> int:
    """Largest |c| over the Stanley roots of [low, high]: move freely along Y_high."""
    return sum(low) + sum(high[k] - low[k] for k in yset(high, g))


def sigma(p: CharacteristicPoset, part: Partition) -> tuple:
    chk = validate_partition(p, part)
    if not chk:
        raise ValueError(chk.message)
    vals = [sigma_interval(iv.low, iv.high, p.g) for iv in part]
    return max(vals), vals


class _CoverSearch:
    """Exact cover of the poset by intervals accepted by ``allowed(c, d)``.

    ``branching="mrv"`` branches on the uncovered point with the fewest
    usable intervals; ``"least"`` branches on the least uncovered point in
    graded-lex order, which must be the low end of its interval.  Both are
    complete; failed cover states are memoized.
    """

    def __init__(self, p: CharacteristicPoset, allowed: Callable, clock: _Clock, stats: SearchStats,
                 branching: str = "mrv"):
        if branching not in ("mrv", "least"):
            raise ValueError(f"unknown branching rule {branching!r}")
        self.p = p
        self.clock = clock
        self.stats = stats
        self.branching = branching
        pts = p.points
        m = len(pts)
        self.full = (1 << m) - 1
        up = [0] * m
        down = [0] * m
        for i, a in enumerate(pts):
            for k, b in enumerate(pts):
                if all(x <= y for x, y in zip(a, b)):
                    up[i] |= 1 << k
                    down[k] |= 1 << i
        # Per low end: tops in decreasing rho, then increasing degree.
        self.cands = []
        for i, c in enumerate(pts):
            opts = []
            for k in _bits(up[i]):
                d = pts[k]
                if allowed(c, d):
                    opts.append((-p.rhos[k], sum(d), k, up[i] & down[k]))
            opts.sort()
            self.cands.append([(i, k, mask) for _, _, k, mask in opts])
        self.containing = [[] for _ in range(m)]
        for opts in self.cands:
            for iv in opts:
                for q in _bits(iv[2]):
                    self.containing[q].append(iv)
        self.failed: set = set()

    def feasible_everywhere(self) -> bool:
        return all(self.containing)

    def run(self):
        if self.branching == "least":
            found = self._dfs_least(0)
        else:
            found = self._solve(self.full)
        if found is None:
            return None
        pts = self.p.points
        return Partition(Interval(pts[c], pts[d]) for c, d in found).sorted()

    def _tick(self):
        self.stats.nodes += 1
        self.clock.check(self.stats.nodes)

    def _solve(self, free: int):
        """Cover exactly the points in ``free``; None if impossible."""
        if not free:
            return []
        if free in self.failed:
            self.stats.memo_hits += 1
            return None
        self._tick()
        best = None
        reach = {}  # point bit -> union of the usable intervals through it
        rest = free
        while rest:
            bit = rest & -rest
            usable = [iv for iv in self.containing[bit.bit_length() - 1] if iv[2] & free == iv[2]]
            if not usable:
                self.failed.add(free)
                return None
            if best is None or len(usable) < len(best):
                best = usable
            r = 0
            for iv in usable:
                r |= iv[2]
            reach[bit] = r
            rest ^= bit
        comps = _components(free, reach)
        if len(comps) > 1:
            self.stats.prunes += len(comps) - 1
            out = []
            for comp in sorted(comps, key=lambda m: (m.bit_count(), m)):
                part = self._solve(comp)
                if part is None:
                    self.failed.add(free)
                    return None
                out.extend(part)
            return out
        for c, k, mask in best:
            part = self._solve(free & ~mask)
            if part is not None:
                part.append((c, k))
                return part
        self.failed.add(free)
        return None

    def _dfs_least(self, covered: int):
        if covered == self.full:
            return []
        if covered in self.failed:
            self.stats.memo_hits += 1
            return None
        self._tick()
        free = self.full & ~covered
        low = (free & -free).bit_length() - 1
        for c, k, mask in self.cands[low]:
            if mask & covered:
                continue
            new = covered | mask
            if not self._coverable(new):
                self.stats.prunes += 1
                continue
            rest = self._dfs_least(new)
            if rest is not None:
                rest.append((c, k))
                return rest
        self.failed.add(covered)
        return None

    def _coverable(self, covered: int) -> bool:
        # Every uncovered point must lie in some interval that is still usable.
        free = self.full & ~covered
        rest = free
        while rest:
            bit = rest & -rest
            if not any(not iv[2] & covered for iv in self.containing[bit.bit_length() - 1]):
                return False
            rest ^= bit
        return True


def _components(free: int, reach: dict) -> list:
    """Split ``free`` into classes of points linked by a shared usable interval."""
    comps = []
    rest = free
    while rest:
        comp = frontier = rest & -rest
        while frontier:
            grown = 0
            while frontier:
                bit = frontier & -frontier
                grown |= reach[bit]
                frontier ^= bit
            frontier = grown & ~comp
            comp |= grown
        comps.append(comp)
        rest &= ~comp
    return comps


def _bits(mask: int):
    while mask:
        bit = mask & -mask
        yield bit.bit_length() - 1
        mask ^= bit


def singleton_partition(p: CharacteristicPoset) -> Partition:
    return Partition(Interval(b, b) for b in p.points)


def complete_partition(p: CharacteristicPoset, part: Partition) -> Partition:
    """Extend a partition of a subposet by singletons on the remaining points."""
    covered = {c for iv in part for c in iv.points()}
    extra = [Interval(b, b) for b in p.points if b not in covered]
    return Partition(list(part) + extra).sorted()


@dataclass
class SearchResult:
    value: int
    witness: Partition
    optimal: bool
    stats: SearchStats = field(default_factory=SearchStats)
    note: str = ""

    def to_json(self, g, timing: bool = False) -> dict:
        return {
            "value": self.value,
            "optimal": self.optimal,
            "witness": self.witness.to_json(g),
            "stats": self.stats.to_json(timing),
            **({"note": self.note} if self.note else {}),
        }


SdepthResult = SearchResult
HregResult = SearchResult


def _poset_for_search(inner, outer, g):
    p = build_poset(inner, outer, g)
    if not p.points:
        raise EmptyPosetError("the module is zero: empty characteristic poset")
    return p


def sdepth(
    inner: MonomialIdeal,
    outer: MonomialIdeal | None = None,
    g: Sequence[int] | None = None,
    budget: SearchBudget = SearchBudget(),
    poset: CharacteristicPoset | None = None,
) -> SearchResult:
    """Stanley depth of outer/inner: the largest t with a partition whose tops all have rho >= t."""
    p = poset or _poset_for_search(inner, outer, g)
    if not p.points:
        raise EmptyPosetError("the module is zero: empty characteristic poset")
    stats = SearchStats()
    clock = _Clock(budget)
    trivial = singleton_partition(p)
    if len(p) > budget.max_poset_points:
        return SearchResult(trivial.rho(p.g), trivial, False, stats, "poset exceeds point budget")
    top = dimension_from_poset(p)
    try:
        for t in range(top, -1, -1):
            s = _CoverSearch(p, lambda c, d, t=t: rho(d, p.g) >= t, clock, stats)
            if not s.feasible_everywhere():
                stats.prunes += 1
                continue
            part = s.run()
            if part is not None:
                stats.wall_ms = clock.elapsed_ms()
                return SearchResult(t, part, True, stats)
    except BudgetExceeded:
        stats.wall_ms = clock.elapsed_ms()
        return SearchResult(trivial.rho(p.g), trivial, False, stats, "time limit exceeded")
    raise AssertionError("the singleton partition is always feasible")


def hreg_lower_bound(p: CharacteristicPoset) -> int:
    """Minimal points are low ends of their intervals, and sigma >= |low|."""
    minimal = [b for b in p.points if not any(c != b and all(x <= y for x, y in zip(c, b)) for c in p.points)]
    return max(sum(b) for b in minimal)


def hreg(
    inner: MonomialIdeal,
    outer: MonomialIdeal | None = None,
    g: Sequence[int] | None = None,
    budget: SearchBudget = SearchBudget(),
    poset: CharacteristicPoset | None = None,
) -> SearchResult:
    """h-regularity of outer/inner: the least achievable max sigma over partitions."""
    p = poset or _poset_for_search(inner, outer, g)
    if not p.points:
        raise EmptyPosetError("the module is zero: empty characteristic poset")
    stats = SearchStats()
    clock = _Clock(budget)
    trivial = singleton_partition(p)
    upper = max(sum(b) for b in p.points)
    if len(p) > budget.max_poset_points:
        return SearchResult(upper, trivial, False, stats, "poset exceeds point budget")
    lower = hreg_lower_bound(p)
    best, best_val = trivial, upper
    try:
        # Tighten from above: each witness caps the next threshold, so only
        # the final (infeasible) level needs an exhaustive proof.
        s_max = upper - 1
        while s_max >= lower:
            cs = _CoverSearch(p, lambda c, d, s_max=s_max: sigma_interval(c, d, p.g) <= s_max, clock, stats)
            part = cs.run() if cs.feasible_everywhere() else None
            if part is None:
                break
            best, best_val = part, sigma(p, part)[0]
            s_max = best_val - 1
    except BudgetExceeded:
        stats.wall_ms = clock.elapsed_ms()
        return SearchResult(best_val, best, False, stats, "time limit exceeded")
    stats.wall_ms = clock.elapsed_ms()
    return SearchResult(best_val, best, True, stats)


@dataclass
class RootedResult:
    status: str  # "found", "none" (certified for this cap) or "unknown"
    witness: Partition | None
    stats: SearchStats = field(default_factory=SearchStats)

    def to_json(self, g, timing: bool = False) -> dict:
        return {
            "status": self.status,
            "witness": self.witness.to_json(g) if self.witness is not None else None,
            "stats": self.stats.to_json(timing),
        }


def generator_rooted_partition(
    I: MonomialIdeal, g: Sequence[int] | None = None, budget: SearchBudget = SearchBudget()
) -> RootedResult:
    """Partition of the poset of I whose low ends are exactly the minimal generators."""
    if I.is_zero:
        raise EmptyPosetError("the zero ideal has an empty poset")
    p = build_poset(MonomialIdeal.zero(I.arity), I, g)
    stats = SearchStats()
    if len(p) > budget.max_poset_points:
        return RootedResult("unknown", None, stats)
    gens = set(I.generators)
    clock = _Clock(budget)
    try:
        part = _CoverSearch(p, lambda c, d: c in gens, clock, stats).run()
    except BudgetExceeded:
        return RootedResult("unknown", None, stats)
    stats.wall_ms = clock.elapsed_ms()
    return RootedResult("found" if part is not None else "none", part, stats)


def random_partition(p: CharacteristicPoset, rng: random.Random) -> Partition:
    """A uniformly-ish random valid partition built by greedy random tops."""
    remaining = set(p.points)
    out = []
    for c in p.points:
        if c not in remaining:
            continue
        tops = [d for d in p.points if all(x <= y for x, y in zip(c, d))]
        rng.shuffle(tops)
        for d in tops:
            pts = Interval(c, d).points()
            if all(e in remaining for e in pts):
                out.append(Interval(c, d))
                remaining.difference_update(pts)
                break
    return Partition(out).sorted()


# -- conjecture and monotonicity checkers -------------------------------------------


def check_stanley_conjecture(
    I: MonomialIdeal, g=None, field: FieldConfig = RATIONALS, budget: SearchBudget = SearchBudget()
) -> dict:
    """Compare depth S/I with sdepth S/I; a violation is reported, never raised."""
    if I.is_unit:
        raise PreconditionError("S/S is the zero module")
    p = build_poset(I, None, g)
    t = depth(I, None, field)
    res = sdepth(I, None, g, budget, poset=p)
    if res.value < t and not res.optimal:
        # The full search gave up; asking only for rho >= depth is much cheaper.
        w = partition_with_min_rho(p, t, budget)
        if w is not None:
            res = SearchResult(w.rho(p.g), w, False, res.stats, "threshold search at depth")
    if res.value >= t:
        status = "pass"
    elif res.optimal:
        status = "fail"
    else:
        status = "inconclusive"
    return {"status": status, "depth": t, "sdepth": res.value, "sdepth_search": res.to_json(p.g)}


def partition_with_min_rho(p: CharacteristicPoset, t: int, budget: SearchBudget = SearchBudget()):
    """Some partition whose tops all have rho >= t, ignoring the point budget.

    Returns None when none exists or the node/time budget runs out.
    """
    if not p.points:
        raise EmptyPosetError("the module is zero: empty characteristic poset")
    s = _CoverSearch(p, lambda c, d: rho(d, p.g) >= t, _Clock(budget), SearchStats())
    if not s.feasible_everywhere():
        return None
    try:
        return s.run()
    except BudgetExceeded:
        return None


def check_hreg_conjecture(
    I: MonomialIdeal,
    g=None,
    field: FieldConfig = RATIONALS,
    budget: SearchBudget = SearchBudget(),
    chain: bool = True,
    beyond: int = 2,
) -> dict:
    """hreg(I) <= reg(I), plus (if ``chain``) the truncations I_{>=j} for j <= reg(I) + beyond.

    Along the chain hreg(I) <= hreg(I_{>=j}) is checked with the completed
    partition as witness, and the first j with I_{>=j} j-linear must equal reg(I).
    """
    if I.is_zero or I.is_unit:
        raise PreconditionError("needs a nonzero proper ideal")
    zero = MonomialIdeal.zero(I.arity)
    reg_I = regularity(I, field)
    truncs = []
    j_lin = None
    if chain:
        j_lin = regularity_via_truncations(I, field)
        truncs = [truncate_at_degree(I, j) for j in range(max(j_lin, reg_I) + beyond + 1)]
    cap = g if g is not None else default_cap(I)
    base = hreg(zero, I, cap, budget)
    out = {"status": None, "hreg": base.value, "reg": reg_I, "hreg_search": base.to_json(cap)}
    verdict = "pass"
    if not base.optimal:
        verdict = "inconclusive"
    elif base.value > reg_I:
        verdict = "fail"
    if chain:
        rows = []
        for j, T in enumerate(truncs):
            # hreg does not depend on the cap, so each truncation gets its own.
            gj = g if g is not None else default_cap(I, T)
            p_T = build_poset(zero, T, gj)
            r = hreg(zero, T, gj, budget, poset=p_T)
            lb = hreg_lower_bound(p_T)
            ok = None
            if base.optimal and base.value <= lb:
                ok = True
            elif base.optimal and r.optimal:
                ok = base.value <= r.value
            p_I = build_poset(zero, I, gj)
            completed = complete_partition(p_I, r.witness)
            valid = bool(validate_partition(p_I, completed)) and sigma(p_I, completed)[0] == r.value
            if ok is False or not valid:
                verdict = "fail"
            elif ok is None and verdict == "pass":
                verdict = "inconclusive"
            rows.append({"j": j, "hreg": r.value, "certified": r.optimal, "lower_bound": lb, "hreg_le": ok,
                         "completed_partition_valid": valid})
        reg_lin = regularity(truncs[j_lin], field)
        if j_lin != reg_I or reg_lin != reg_I:
            verdict = "fail"
        out.update(linear_truncation_degree=j_lin, reg_of_linear_truncation=reg_lin, truncation_chain=rows)
    out["status"] = verdict
    return out


def check_sdepth_skeleton_monotonicity(
    I: MonomialIdeal, g=None, budget: SearchBudget = SearchBudget()
) -> dict:
    """sdepth S/I >= sdepth S/I_j for every skeleton, with the completed witness partitions."""
    chain = skeleton_chain(I, g)
    p_I = build_poset(I, None, chain.g)
    top = sdepth(I, None, chain.g, budget, poset=p_I)
    rows = []
    status = "pass" if top.optimal else "inconclusive"
    for j in range(chain.d, -1, -1):
        p_j = build_poset(chain[j], None, chain.g)
        r = sdepth(chain[j], None, chain.g, budget, poset=p_j)
        completed = complete_partition(p_I, r.witness)
        valid = bool(validate_partition(p_I, completed))
        rho_ok = completed.rho(chain.g) == r.value
        holds = top.value >= r.value
        if not r.optimal and status == "pass":
            status = "inconclusive"
        if not (valid and rho_ok and (holds or not top.optimal)):
            status = "fail"
        rows.append({
            "j": j,
            "sdepth": r.value,
            "certified": r.optimal,
            "completed_partition": completed.to_json(chain.g),
            "completed_valid": valid,
            "completed_rho": completed.rho(chain.g),
        })
    return {"status": status, "sdepth": top.value, "certified": top.optimal, "skeletons": rows}

