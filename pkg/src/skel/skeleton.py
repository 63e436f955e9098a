"""Skeleton ideals of a monomial ideal and their cyclic layer decomposition."""

from __future__ import annotations

import itertools
import warnings
from collections.abc import Sequence
from dataclasses import dataclass

from .core import (
    ExponentVector,
    MonomialIdeal,
    PreconditionError,
    add_generators,
    box,
    contains,
    default_cap,
    grlex_key,
    join,
    meet,
    minimalize,
)
from .poset import build_poset, dimension_from_poset, yset, zset


class EmptyLayerWarning(UserWarning):
    pass


def _cap(I: MonomialIdeal, g: Sequence[int] | None) -> ExponentVector:
    if g is None:
        return default_cap(I)
    g = tuple(g)
    # A zero cap coordinate is counted by rho at every point, which would
    # put the unit ideal into the low skeletons.
    if any(e < 1 for e in g):
        raise PreconditionError(f"skeleton cap {g} must be positive in every coordinate")
    return g


def skeleton_ideal(I: MonomialIdeal, g: Sequence[int] | None, j: int) -> MonomialIdeal:
    """I together with every x^b, b <= g, whose rho exceeds j.

    Restricting to b <= g loses nothing: b ∧ g divides x^b and has rho at
    least rho(b).
    """
    g = _cap(I, g)
    p = build_poset(I, None, g)
    d = dimension_from_poset(p)
    if not 0 <= j <= d:
        raise PreconditionError(f"skeleton index {j} outside [0, {d}]")
    return add_generators(I, (b for b, r in zip(p.points, p.rhos) if r > j))


@dataclass(frozen=True)
class SkeletonChain:
    g: ExponentVector
    d: int
    ideals: tuple  # ideals[j] is the j-th skeleton ideal, j = 0..d

    def __getitem__(self, j: int) -> MonomialIdeal:
        return self.ideals[j]

    def to_json(self, layers: dict | None = None) -> dict:
        out = {
            "d": self.d,
            "skeletons": [
                {"j": j, "gens": [list(a) for a in self.ideals[j].generators], "dim": j}
                for j in range(self.d, -1, -1)
            ],
        }
        if layers is not None:
            out["layers"] = [
                {"j": j, "summands": [s.to_json() for s in layers[j]]} for j in sorted(layers, reverse=True)
            ]
        return out


def skeleton_chain(I: MonomialIdeal, g: Sequence[int] | None = None) -> SkeletonChain:
    if I.is_unit:
        raise PreconditionError("the unit ideal has no skeletons")
    g = _cap(I, g)
    p = build_poset(I, None, g)
    d = dimension_from_poset(p)
    ideals = []
    for j in range(d + 1):
        ideals.append(add_generators(I, (b for b, r in zip(p.points, p.rhos) if r > j)))
    return SkeletonChain(g, d, tuple(ideals))


@dataclass(frozen=True)
class LayerSummand:
    b_min: ExponentVector
    Z: frozenset
    ann: MonomialIdeal
    pure_powers: bool

    @property
    def Y(self) -> frozenset:
        return frozenset(range(len(self.b_min))) - self.Z

    def to_json(self) -> dict:
        return {
            "b": list(self.b_min),
            "Z": sorted(k + 1 for k in self.Z),
            "M": [list(a) for a in self.ann.generators],
        }


def layer_decomposition(I: MonomialIdeal, g: Sequence[int] | None, j: int) -> list:
    """Cyclic summands x^b K-span ≅ S/M S of the layer I_{j-1}/I_j, 1 <= j <= d.

    The rho = j points of the j-th skeleton poset are grouped by Z_b; each
    class is closed under meet and its least element generates one summand.
    """
    g = _cap(I, g)
    d = dimension_from_poset(build_poset(I, None, g))
    if not 1 <= j <= d:
        raise PreconditionError(f"layer index {j} outside [1, {d}]")
    Ij = skeleton_ideal(I, g, j)
    p = build_poset(Ij, None, g)
    classes: dict = {}
    for b, r in zip(p.points, p.rhos):
        if r == j:
            classes.setdefault(zset(b, g), []).append(b)
    if not classes:
        warnings.warn(f"layer {j} is empty", EmptyLayerWarning, stacklevel=2)
        return []
    n = I.arity
    out = []
    for Z, members in classes.items():
        b_min = members[0]
        for b in members[1:]:
            b_min = meet(b_min, b)
        if b_min not in p.index or zset(b_min, g) != Z:
            raise AssertionError(f"class Z={sorted(Z)} is not closed under meet")
        ann = minimalize(n, (tuple(max(0, x - y) for x, y in zip(a, b_min)) for a in Ij.generators))
        Y = yset(b_min, g)
        pure = all(
            contains(ann, tuple(g[k] - b_min[k] if m == k else 0 for m in range(n))) for k in Y
        ) and all(all(a[k] == 0 for k in Z) for a in ann.generators)
        out.append(LayerSummand(b_min, Z, ann, pure))
    out.sort(key=lambda s: grlex_key(s.b_min))
    return out


def summand_support(s: LayerSummand, Ij: MonomialIdeal, g: Sequence[int]) -> set:
    """Multidegrees b <= g of the cyclic module generated by x^{b_min} modulo I_j."""
    upper_box = [range(lo, hi + 1) for lo, hi in zip(s.b_min, g)]
    return {b for b in itertools.product(*upper_box) if not contains(Ij, b)}


@dataclass(frozen=True)
class LayerReport:
    ok: bool
    messages: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


def verify_layer_direct_sum(I: MonomialIdeal, g: Sequence[int] | None, j: int, summands: list) -> LayerReport:
    g = _cap(I, g)
    Ij = skeleton_ideal(I, g, j)
    Ijm1 = skeleton_ideal(I, g, j - 1)
    problems = []
    for s, t in itertools.combinations(summands, 2):
        if not contains(Ij, join(s.b_min, t.b_min)):
            problems.append(f"join of {s.b_min} and {t.b_min} survives modulo I_{j}")
    supports = [summand_support(s, Ij, g) for s in summands]
    seen: dict = {}
    for s, sup in zip(summands, supports):
        for b in sup:
            if b in seen:
                problems.append(f"multidegree {b} shared by summands rooted at {seen[b]} and {s.b_min}")
            seen.setdefault(b, s.b_min)
    layer = {b for b in box(g) if contains(Ijm1, b) and not contains(Ij, b)}
    if set(seen) != layer:
        missing = sorted(layer - set(seen), key=grlex_key)
        extra = sorted(set(seen) - layer, key=grlex_key)
        problems.append(f"summands do not span the layer: missing {missing[:3]}, extra {extra[:3]}")
    for s in summands:
        if not s.pure_powers:
            problems.append(f"annihilator of summand {s.b_min} is not zero-dimensional on its Y variables")
    return LayerReport(not problems, tuple(problems))


def simplicial_skeleton_ideal(n: int, facets: Sequence[Sequence[int]], j: int) -> MonomialIdeal:
    """Stanley-Reisner ideal of the complex of faces of size <= j (0-based vertices)."""
    faces = set()
    for F in facets:
        F = sorted(F)
        for k in range(min(j, len(F)) + 1):
            faces.update(itertools.combinations(F, k))
    nonfaces = []
    for mask in range(1 << n):
        W = tuple(k for k in range(n) if mask >> k & 1)
        if W not in faces:
            nonfaces.append(tuple(1 if k in W else 0 for k in range(n)))
    return minimalize(n, nonfaces)


def nested_chain_consistent(chain: SkeletonChain) -> bool:
    """Skeletons of I_{d-1} reproduce I_j for j <= d-1."""
    if chain.d < 1:
        return True
    sub = skeleton_chain(chain.ideals[chain.d - 1], chain.g)
    return sub.d == chain.d - 1 and all(sub.ideals[j] == chain.ideals[j] for j in range(chain.d))
