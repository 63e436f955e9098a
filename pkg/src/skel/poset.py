"""Characteristic posets and the partition / Stanley decomposition dictionary.

For monomial ideals ``I ⊆ J`` and a cap vector ``g`` dominating every
generator, the characteristic poset is the set of ``b <= g`` with ``x^b``
in ``J`` but not in ``I``.  Intervals of this poset correspond to families
of Stanley spaces of ``J/I``.
"""

from __future__ import annotations

import itertools
import warnings
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

from .core import (
    ArityError,
    ExponentVector,
    MonomialIdeal,
    PreconditionError,
    box,
    contains,
    default_cap,
    grlex_key,
    is_subideal,
    join_all,
    leq,
)


class ContainmentError(PreconditionError):
    pass


class EmptyPosetWarning(UserWarning):
    pass


class InvalidPartitionError(ValueError):
    pass


class InvalidDecompositionError(ValueError):
    pass


def zset(b: Sequence[int], g: Sequence[int]) -> frozenset:
    """Coordinates (0-based) where b reaches the cap."""
    if len(b) != len(g):
        raise ArityError(f"{tuple(b)} and cap {tuple(g)} differ in length")
    return frozenset(k for k, (x, y) in enumerate(zip(b, g)) if x == y)


def yset(b: Sequence[int], g: Sequence[int]) -> frozenset:
    return frozenset(range(len(g))) - zset(b, g)


def rho(b: Sequence[int], g: Sequence[int]) -> int:
    return len(zset(b, g))


@dataclass(frozen=True)
class CharacteristicPoset:
    g: ExponentVector
    inner: MonomialIdeal
    outer: MonomialIdeal
    points: tuple

    @property
    def n(self) -> int:
        return len(self.g)

    @cached_property
    def index(self) -> dict:
        return {b: i for i, b in enumerate(self.points)}

    @cached_property
    def rhos(self) -> tuple:
        return tuple(rho(b, self.g) for b in self.points)

    def __contains__(self, b) -> bool:
        return tuple(b) in self.index

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def build_poset(
    inner: MonomialIdeal, outer: MonomialIdeal | None = None, g: Sequence[int] | None = None
) -> CharacteristicPoset:
    """Enumerate the characteristic poset of outer/inner capped at g.

    ``outer=None`` means the whole ring S.  The default cap is the join of
    all generators, with every coordinate at least 1.
    """
    n = inner.arity
    if outer is None:
        outer = MonomialIdeal.unit(n)
    if outer.arity != n:
        raise ArityError("inner and outer ideals have different arity")
    if g is None:
        g = default_cap(inner, outer)
    g = tuple(g)
    if len(g) != n:
        raise ArityError(f"cap {g} has length {len(g)}, ring has {n} variables")
    for a in itertools.chain(inner.generators, outer.generators):
        if not leq(a, g):
            raise PreconditionError(f"cap {g} does not dominate generator {a}")
    if not is_subideal(inner, outer):
        bad = next(a for a in inner.generators if not contains(outer, a))
        raise ContainmentError(f"inner generator {bad} is not in the outer ideal")
    pts = tuple(b for b in box(g) if contains(outer, b) and not contains(inner, b))
    return CharacteristicPoset(g, inner, outer, pts)


def dimension_from_poset(p: CharacteristicPoset) -> int:
    """Krull dimension of outer/inner as the largest rho over the poset."""
    if not p.points:
        warnings.warn("empty characteristic poset: module is zero", EmptyPosetWarning, stacklevel=2)
        return -1
    return max(p.rhos)


def interval_points(low: Sequence[int], high: Sequence[int]) -> list:
    """Lattice points between low and high, graded-lex order."""
    pts = list(itertools.product(*(range(a, b + 1) for a, b in zip(low, high))))
    pts.sort(key=grlex_key)
    return pts


def is_valid_interval(p: CharacteristicPoset, low: Sequence[int], high: Sequence[int]) -> bool:
    # Both ideals are monomial, so membership of the two endpoints already
    # forces every lattice point between them into the poset.
    low, high = tuple(low), tuple(high)
    if len(low) != p.n or len(high) != p.n:
        raise ArityError("interval endpoints do not match the poset arity")
    return leq(low, high) and low in p.index and high in p.index


def is_valid_interval_exhaustive(p: CharacteristicPoset, low, high) -> bool:
    return leq(low, high) and all(c in p.index for c in interval_points(low, high))


@dataclass(frozen=True)
class Interval:
    low: ExponentVector
    high: ExponentVector

    def points(self) -> list:
        return interval_points(self.low, self.high)

    def __contains__(self, c) -> bool:
        return leq(self.low, c) and leq(c, self.high)


@dataclass(frozen=True)
class Partition:
    intervals: tuple

    def __init__(self, intervals: Iterable[Interval]):
        object.__setattr__(self, "intervals", tuple(intervals))

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def sorted(self) -> Partition:
        return Partition(sorted(self.intervals, key=lambda iv: (grlex_key(iv.low), grlex_key(iv.high))))

    def rho(self, g: Sequence[int]) -> int:
        return min(rho(iv.high, g) for iv in self.intervals)

    def to_json(self, g: Sequence[int]) -> dict:
        return {
            "g": list(g),
            "intervals": [{"low": list(iv.low), "high": list(iv.high)} for iv in self.intervals],
        }

    @classmethod
    def from_json(cls, obj: dict) -> Partition:
        return cls(Interval(tuple(iv["low"]), tuple(iv["high"])) for iv in obj["intervals"])


@dataclass(frozen=True)
class StanleyDecomposition:
    """Spaces ``(c, Z)``: the monomials ``x^c * u`` with ``u`` in ``K[Z]``.

    ``Z`` holds 0-based variable indices; JSON uses 1-based ones.
    """

    spaces: tuple

    def __init__(self, spaces: Iterable):
        object.__setattr__(
            self,
            "spaces",
            tuple(sorted(((tuple(c), frozenset(Z)) for c, Z in spaces), key=lambda s: (grlex_key(s[0]), sorted(s[1])))),
        )

    def __len__(self) -> int:
        return len(self.spaces)

    @property
    def sdepth(self) -> int:
        return min(len(Z) for _, Z in self.spaces)

    @property
    def hreg(self) -> int:
        return max(sum(c) for c, _ in self.spaces)

    def to_json(self) -> dict:
        return {"spaces": [{"c": list(c), "Z": sorted(k + 1 for k in Z)} for c, Z in self.spaces]}

    @classmethod
    def from_json(cls, obj: dict) -> StanleyDecomposition:
        return cls((tuple(s["c"]), frozenset(k - 1 for k in s["Z"])) for s in obj["spaces"])


def space_contains(c: Sequence[int], Z: frozenset, b: Sequence[int]) -> bool:
    return all(x <= y if k in Z else x == y for k, (x, y) in enumerate(zip(c, b)))


@dataclass(frozen=True)
class Check:
    ok: bool
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate_partition(p: CharacteristicPoset, part: Partition) -> Check:
    seen: dict = {}
    for iv in part:
        if not is_valid_interval(p, iv.low, iv.high):
            return Check(False, f"[{iv.low}, {iv.high}] is not an interval of the poset")
        for c in iv.points():
            if c in seen:
                return Check(False, f"point {c} covered by [{seen[c].low}, {seen[c].high}] and [{iv.low}, {iv.high}]")
            seen[c] = iv
    for b in p.points:
        if b not in seen:
            return Check(False, f"point {b} not covered")
    return Check(True)


def interval_spaces(iv: Interval, g: Sequence[int]) -> list:
    """Stanley spaces belonging to one interval [c, d].

    The roots are the points of [c, d] agreeing with c on Z_d; each carries
    the variables Z_d.
    """
    Z = zset(iv.high, g)
    ranges = [range(iv.low[k], iv.low[k] + 1) if k in Z else range(iv.low[k], iv.high[k] + 1) for k in range(len(g))]
    return [(c, Z) for c in itertools.product(*ranges)]


def partition_to_decomposition(p: CharacteristicPoset, part: Partition) -> StanleyDecomposition:
    chk = validate_partition(p, part)
    if not chk:
        raise InvalidPartitionError(chk.message)
    return StanleyDecomposition(s for iv in part for s in interval_spaces(iv, p.g))


def decomposition_box(p: CharacteristicPoset, dec: StanleyDecomposition) -> ExponentVector:
    """A bounding box strictly beyond the cap and every space root."""
    top = join_all((c for c, _ in dec.spaces), p.n)
    return tuple(max(x, y) + 1 for x, y in zip(top, p.g))


def validate_decomposition(
    p: CharacteristicPoset, dec: StanleyDecomposition, upper: Sequence[int] | None = None
) -> Check:
    """Disjointness and exact cover of outer \\ inner, checked on a finite box."""
    if upper is None:
        upper = decomposition_box(p, dec)
    for b in box(upper):
        hits = [s for s in dec.spaces if space_contains(s[0], s[1], b)]
        wanted = contains(p.outer, b) and not contains(p.inner, b)
        if wanted and not hits:
            return Check(False, f"monomial {b} not covered")
        if not wanted and hits:
            return Check(False, f"monomial {b} outside the module lies in space {hits[0][0]}")
        if len(hits) > 1:
            return Check(False, f"monomial {b} lies in {len(hits)} spaces")
    return Check(True)


def decomposition_to_partition(p: CharacteristicPoset, dec: StanleyDecomposition) -> Partition:
    chk = validate_decomposition(p, dec)
    if not chk:
        raise InvalidDecompositionError(chk.message)
    g = p.g
    out = []
    for c, Z in dec.spaces:
        if leq(c, g):
            d = tuple(g[k] if k in Z else c[k] for k in range(len(g)))
            out.append(Interval(c, d))
    return Partition(out).sorted()
