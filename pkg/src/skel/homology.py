"""Multigraded Betti numbers of J/I from Koszul homology, and what follows.

``beta_{i,a}(J/I) = dim_K H_i(x_1..x_n; J/I)_a``.  The degree-a strand of
the Koszul complex has one basis element per variable subset W with
``a - e_W >= 0`` and ``x^(a - e_W)`` in J but not in I, so every strand
is a small exact-integer matrix problem.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .core import (
    ArityError,
    MonomialIdeal,
    PreconditionError,
    contains,
    grlex_key,
    is_subideal,
    join_all,
    lcm_lattice_degrees,
    truncate_at_degree,
)
from .linalg import is_prime, rank_mod_p, rank_rational
from .poset import build_poset, dimension_from_poset
from .skeleton import skeleton_chain


class ZeroModuleError(ValueError):
    pass


@dataclass(frozen=True)
class FieldConfig:
    kind: str = "Q"  # "Q" or "Fp"
    p: int = 0

    def __post_init__(self):
        if self.kind == "Q":
            if self.p:
                raise ValueError("the rational field takes no modulus")
        elif self.kind == "Fp":
            if not (is_prime(self.p) and self.p < 2**31):
                raise ValueError(f"{self.p} is not a prime below 2^31")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> FieldConfig:
        t = text.strip().lower()
        if t == "q":
            return cls()
        if t.startswith("fp:"):
            try:
                return cls("Fp", int(t[3:]))
            except ValueError:
                raise ValueError(f"bad field {text!r}") from None
        raise ValueError(f"bad field {text!r}; use q or fp:P")

    @property
    def label(self) -> str:
        return "Q" if self.kind == "Q" else f"Fp:{self.p}"

    def rank(self, rows: list) -> int:
        return rank_rational(rows) if self.kind == "Q" else rank_mod_p(rows, self.p)


RATIONALS = FieldConfig()


def _resolve(inner: MonomialIdeal, outer: MonomialIdeal | None) -> MonomialIdeal:
    if outer is None:
        return MonomialIdeal.unit(inner.arity)
    if outer.arity != inner.arity:
        raise ArityError("inner and outer ideals have different arity")
    return outer


def _strand_basis(inner, outer, a, i):
    n = len(a)
    out = []
    for W in itertools.combinations(range(n), i):
        b = list(a)
        ok = True
        for k in W:
            b[k] -= 1
            if b[k] < 0:
                ok = False
                break
        if ok and contains(outer, b) and not contains(inner, b):
            out.append(W)
    return out


def _differential(source, target):
    """Matrix of d: e_W -> sum_k (-1)^pos(k) e_{W - k}, rows indexed by source."""
    col = {W: c for c, W in enumerate(target)}
    rows = []
    for W in source:
        row = [0] * len(target)
        for pos, k in enumerate(W):
            c = col.get(W[:pos] + W[pos + 1:])
            if c is not None:
                row[c] = -1 if pos % 2 else 1
        rows.append(row)
    return rows


def _strand_ranks(inner, outer, a, field):
    """Betti numbers beta_{i,a} for i = 0..n of one strand."""
    n = len(a)
    bases = [_strand_basis(inner, outer, a, i) for i in range(n + 1)]
    ranks = [0] * (n + 2)
    for i in range(1, n + 1):
        if bases[i] and bases[i - 1]:
            ranks[i] = field.rank(_differential(bases[i], bases[i - 1]))
    return [len(bases[i]) - ranks[i] - ranks[i + 1] for i in range(n + 1)]


def koszul_strand_rank(
    inner: MonomialIdeal, outer: MonomialIdeal | None, a: Sequence[int], i: int, field: FieldConfig = RATIONALS
) -> int:
    outer = _resolve(inner, outer)
    a = tuple(a)
    n = inner.arity
    if len(a) != n:
        raise ArityError(f"degree {a} does not match arity {n}")
    if not 0 <= i <= n:
        return 0
    bases = {k: _strand_basis(inner, outer, a, k) for k in (i - 1, i, i + 1) if 0 <= k <= n}
    r_in = field.rank(_differential(bases[i], bases[i - 1])) if i >= 1 and bases[i] and bases[i - 1] else 0
    r_out = field.rank(_differential(bases[i + 1], bases[i])) if i + 1 <= n and bases[i + 1] and bases[i] else 0
    return len(bases[i]) - r_in - r_out


@dataclass(frozen=True)
class BettiTable:
    n: int
    field: FieldConfig
    entries: dict  # (i, a) -> rank, nonzero only
    module: str

    @property
    def is_zero_module(self) -> bool:
        return not self.entries

    @property
    def pdim(self) -> int:
        if not self.entries:
            raise ZeroModuleError(f"{self.module} is the zero module")
        return max(i for i, _ in self.entries)

    @property
    def depth(self) -> int:
        return self.n - self.pdim

    @property
    def reg(self) -> int:
        if not self.entries:
            raise ZeroModuleError(f"{self.module} is the zero module")
        return max(sum(a) - i for i, a in self.entries)

    def betti(self, i: int, a: Sequence[int] | None = None) -> int:
        if a is not None:
            return self.entries.get((i, tuple(a)), 0)
        return sum(r for (k, _), r in self.entries.items() if k == i)

    def to_json(self) -> dict:
        rows = sorted(self.entries.items(), key=lambda kv: (kv[0][0], grlex_key(kv[0][1])))
        out = {
            "n": self.n,
            "field": self.field.label,
            "betti": [{"i": i, "a": list(a), "rank": r} for (i, a), r in rows],
        }
        if self.entries:
            out.update(pdim=self.pdim, depth=self.depth, reg=self.reg)
        else:
            out.update(pdim=None, depth=None, reg=None)
        return out


def _strand_job(args):
    inner, outer, a, field = args
    return _strand_ranks(inner, outer, a, field)


def _betti_entries(inner, outer, field, jobs):
    if jobs <= 1:
        return _betti_entries_cached(inner, outer, field)
    degrees = sorted(lcm_lattice_degrees([inner, outer]), key=grlex_key)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_strand_job, [(inner, outer, a, field) for a in degrees], chunksize=8))
    return _collect(degrees, results)


@lru_cache(maxsize=4096)
def _betti_entries_cached(inner, outer, field):
    degrees = sorted(lcm_lattice_degrees([inner, outer]), key=grlex_key)
    return _collect(degrees, [_strand_ranks(inner, outer, a, field) for a in degrees])


def _collect(degrees, results):
    entries = {}
    for a, ranks in zip(degrees, results):
        for i, r in enumerate(ranks):
            if r:
                entries[(i, a)] = r
    return entries


def betti_table(
    inner: MonomialIdeal, outer: MonomialIdeal | None = None, field: FieldConfig = RATIONALS, jobs: int = 1
) -> BettiTable:
    """Full multigraded Betti table of outer/inner (outer=None is S)."""
    outer = _resolve(inner, outer)
    if not is_subideal(inner, outer):
        raise PreconditionError("inner ideal is not contained in the outer ideal")
    entries = _betti_entries(inner, outer, field, jobs)
    return BettiTable(inner.arity, field, dict(entries), f"{outer}/{inner}")


def betti_table_full_box(inner, outer=None, field=RATIONALS) -> dict:
    """Same scan over every degree below the join of all generators.

    Only used to confirm that the lcm lattice carries every Betti degree.
    """
    outer = _resolve(inner, outer)
    top = join_all(inner.generators + outer.generators, inner.arity)
    entries = {}
    for a in itertools.product(*(range(t + 1) for t in top)):
        for i, r in enumerate(_strand_ranks(inner, outer, a, field)):
            if r:
                entries[(i, a)] = r
    return entries


def depth(inner: MonomialIdeal, outer: MonomialIdeal | None = None, field: FieldConfig = RATIONALS, jobs: int = 1) -> int:
    """depth = n - pdim (Auslander-Buchsbaum)."""
    return betti_table(inner, outer, field, jobs).depth


def krull_dimension(inner: MonomialIdeal, outer: MonomialIdeal | None = None) -> int:
    return dimension_from_poset(build_poset(inner, _resolve(inner, outer)))


def is_cohen_macaulay(inner: MonomialIdeal, outer: MonomialIdeal | None = None, field: FieldConfig = RATIONALS) -> bool:
    t = betti_table(inner, outer, field)
    if t.is_zero_module:
        raise ZeroModuleError("the zero module has no depth")
    return t.depth == krull_dimension(inner, outer)


def skeleton_depth_profile(I: MonomialIdeal, g: Sequence[int] | None = None, field: FieldConfig = RATIONALS) -> list:
    """[(j, depth S/I_j, S/I_j Cohen-Macaulay)] for j = d down to 0."""
    chain = skeleton_chain(I, g)
    out = []
    for j in range(chain.d, -1, -1):
        t = depth(chain[j], None, field)
        out.append((j, t, t == j))
    return out


def depth_via_skeletons(I: MonomialIdeal, g: Sequence[int] | None = None, field: FieldConfig = RATIONALS) -> int:
    """Largest j whose skeleton quotient S/I_j is Cohen-Macaulay."""
    if I.is_unit:
        raise PreconditionError("S/S is the zero module")
    return max(j for j, _, cm in skeleton_depth_profile(I, g, field) if cm)


def _nonzero_proper(I: MonomialIdeal) -> None:
    if I.is_zero or I.is_unit:
        raise PreconditionError("regularity needs a nonzero proper ideal")


def regularity(I: MonomialIdeal, field: FieldConfig = RATIONALS) -> int:
    """Castelnuovo-Mumford regularity of I as a module (reg S/I + 1)."""
    _nonzero_proper(I)
    return betti_table(MonomialIdeal.zero(I.arity), I, field).reg


def has_linear_resolution(I: MonomialIdeal, field: FieldConfig = RATIONALS) -> bool:
    _nonzero_proper(I)
    degs = {sum(a) for a in I.generators}
    return len(degs) == 1 and regularity(I, field) == degs.pop()


def regularity_via_truncations(I: MonomialIdeal, field: FieldConfig = RATIONALS) -> int:
    """Least j such that I_{>=j} is generated in degree j with a linear resolution."""
    _nonzero_proper(I)
    # Below the top generator degree the truncation keeps that generator.
    j = max(sum(a) for a in I.generators)
    while True:
        T = truncate_at_degree(I, j)
        if all(sum(a) == j for a in T.generators) and has_linear_resolution(T, field):
            return j
        j += 1


def taylor_k_coefficient(inner: MonomialIdeal, outer: MonomialIdeal | None, a: Sequence[int]) -> int:
    """Coefficient of x^a in the K-polynomial of outer/inner by inclusion-exclusion.

    K(S/I) = sum over generator subsets T of (-1)^|T| x^lcm(T); the
    K-polynomial of J/I is K(S/I) - K(S/J).
    """
    outer = _resolve(inner, outer)
    a = tuple(a)
    return _taylor(inner, a) - _taylor(outer, a)


def _taylor(I: MonomialIdeal, a) -> int:
    # Only generators dividing x^a can take part in a subset with lcm a.
    gens = [u for u in I.generators if all(x <= y for x, y in zip(u, a))]
    total = 0
    n = I.arity
    for r in range(len(gens) + 1):
        for T in itertools.combinations(gens, r):
            if join_all(T, n) == a:
                total += -1 if r % 2 else 1
    return total


def euler_characteristic(table: BettiTable, a: Sequence[int]) -> int:
    a = tuple(a)
    return sum((-1) ** i * r for (i, b), r in table.entries.items() if b == a)
