"""Exponent vectors and monomial ideals.

An exponent vector is a plain tuple of nonnegative ints; ``x^a`` is the
monomial with exponent vector ``a``.  A :class:`MonomialIdeal` stores its
unique minimal generating set, sorted in graded-lex order, so equal ideals
compare, hash and serialize identically.
"""

from __future__ import annotations

import itertools
import re
import warnings
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

ExponentVector = tuple  # tuple[int, ...]

MAX_ORACLE_ARITY = 20


class ArityError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


class IdealFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NonMinimalGeneratorsWarning(UserWarning):
    pass


# -- exponent vectors ---------------------------------------------------------


def vector(entries: Iterable[int], n: int | None = None) -> ExponentVector:
    v = tuple(int(e) for e in entries)
    if n is not None and len(v) != n:
        raise ArityError(f"vector {v} has length {len(v)}, expected {n}")
    if any(e < 0 for e in v):
        raise ValueError(f"negative exponent in {v}")
    return v


def leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def meet(a: Sequence[int], b: Sequence[int]) -> ExponentVector:
    return tuple(map(min, a, b))


def join(a: Sequence[int], b: Sequence[int]) -> ExponentVector:
    return tuple(map(max, a, b))


def join_all(vectors: Iterable[Sequence[int]], n: int) -> ExponentVector:
    out = (0,) * n
    for v in vectors:
        out = join(out, v)
    return out


def degree(a: Sequence[int]) -> int:
    return sum(a)


def unit_vector(n: int, j: int) -> ExponentVector:
    return tuple(1 if k == j else 0 for k in range(n))


def support(a: Sequence[int]) -> ExponentVector:
    return tuple(1 if e else 0 for e in a)


def grlex_key(a: Sequence[int]):
    """Sort key: total degree first, then x1 > x2 > ... within a degree."""
    return (sum(a), tuple(-e for e in a))


def box(upper: Sequence[int]) -> list[ExponentVector]:
    """All lattice points 0 <= b <= upper, in graded-lex order."""
    pts = list(itertools.product(*(range(u + 1) for u in upper)))
    pts.sort(key=grlex_key)
    return pts


def monomials_of_degree(n: int, k: int):
    """Exponent vectors of total degree k in n variables (stars and bars)."""
    for bars in itertools.combinations(range(k + n - 1), n - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(k + n - 2 - prev)
        yield tuple(out)


def format_monomial(a: Sequence[int]) -> str:
    parts = []
    for k, e in enumerate(a, start=1):
        if e == 1:
            parts.append(f"x{k}")
        elif e > 1:
            parts.append(f"x{k}^{e}")
    return "*".join(parts) if parts else "1"


# -- monomial ideals ----------------------------------------------------------


@dataclass(frozen=True)
class MonomialIdeal:
    arity: int
    generators: tuple

    @classmethod
    def zero(cls, n: int) -> MonomialIdeal:
        return cls(n, ())

    @classmethod
    def unit(cls, n: int) -> MonomialIdeal:
        return cls(n, ((0,) * n,))

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_unit(self) -> bool:
        return self.generators == ((0,) * self.arity,)

    def __contains__(self, b) -> bool:
        return contains(self, b)

    def __len__(self) -> int:
        return len(self.generators)

    def __str__(self) -> str:
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(format_monomial(a) for a in self.generators) + ")"


def _check_arity(n: int, v: Sequence[int]) -> None:
    if len(v) != n:
        raise ArityError(f"vector {tuple(v)} has length {len(v)}, ring has {n} variables")


def minimalize(arity: int, gens: Iterable[Sequence[int]]) -> MonomialIdeal:
    if arity < 1:
        raise ArityError("ring must have at least one variable")
    cands = []
    for v in gens:
        _check_arity(arity, v)
        cands.append(vector(v))
    # A divisor has degree <= its multiples, so a degree-sorted sweep suffices.
    cands = sorted(set(cands), key=grlex_key)
    kept: list = []
    for v in cands:
        if not any(leq(u, v) for u in kept):
            kept.append(v)
    return MonomialIdeal(arity, tuple(kept))


def contains(I: MonomialIdeal, b: Sequence[int]) -> bool:
    _check_arity(I.arity, b)
    return any(leq(a, b) for a in I.generators)


def _same_arity(*ideals: MonomialIdeal) -> int:
    ns = {I.arity for I in ideals}
    if len(ns) != 1:
        raise ArityError(f"ideals live in rings of different arity: {sorted(ns)}")
    return ns.pop()


def add_generators(I: MonomialIdeal, gens: Iterable[Sequence[int]]) -> MonomialIdeal:
    return minimalize(I.arity, itertools.chain(I.generators, gens))


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_arity(I, J)
    return add_generators(I, J.generators)


def is_subideal(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """True iff I is contained in J."""
    _same_arity(I, J)
    return all(contains(J, a) for a in I.generators)


def truncate_at_degree(I: MonomialIdeal, j: int) -> MonomialIdeal:
    """The ideal generated by all elements of I of degree at least j."""
    if j < 0:
        raise ValueError("truncation degree must be nonnegative")
    n = I.arity
    gens = []
    for u in I.generators:
        for m in monomials_of_degree(n, max(0, j - sum(u))):
            gens.append(tuple(x + y for x, y in zip(u, m)))
    return minimalize(n, gens)


def radical(I: MonomialIdeal) -> MonomialIdeal:
    return minimalize(I.arity, (support(a) for a in I.generators))


def dimension_oracle(I: MonomialIdeal) -> int:
    """Krull dimension of S/I by brute force over variable subsets.

    dim S/I is the largest |W| such that no generator of the radical is
    supported inside W.  Exponential in the arity; intended for n <= 20.
    """
    n = I.arity
    if n > MAX_ORACLE_ARITY:
        raise ValueError(f"dimension oracle limited to {MAX_ORACLE_ARITY} variables")
    masks = [sum(1 << k for k, e in enumerate(a) if e) for a in radical(I).generators]
    best = -1
    for W in range(1 << n):
        size = W.bit_count()
        if size > best and not any(m & ~W == 0 for m in masks):
            best = size
    return best


def lcm_lattice_degrees(ideals: Sequence[MonomialIdeal]) -> set:
    """All joins of nonempty subsets of the union of the generator sets."""
    if not ideals:
        return set()
    _same_arity(*ideals)
    gens = {a for I in ideals for a in I.generators}
    lattice = set(gens)
    frontier = set(gens)
    while frontier:
        new = set()
        for a in frontier:
            for b in gens:
                c = join(a, b)
                if c not in lattice:
                    new.add(c)
        lattice |= new
        frontier = new
    return lattice


def default_cap(*ideals: MonomialIdeal) -> ExponentVector:
    """Join of all generators, raised to at least 1 in every coordinate."""
    n = _same_arity(*ideals)
    g = join_all((a for I in ideals for a in I.generators), n)
    return tuple(max(1, e) for e in g)


# -- text format ----------------------------------------------------------------

_WS = re.compile(r"\s+")


def parse_ideal(text: str) -> MonomialIdeal:
    """Parse the ``ring n`` / ``gen e1 ... en`` text format."""
    n = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = _WS.split(line)
        if head == "ring":
            if n is not None:
                raise IdealFormatError("duplicate ring line", lineno)
            if len(rest) != 1:
                raise IdealFormatError("expected 'ring n'", lineno)
            try:
                n = int(rest[0])
            except ValueError:
                raise IdealFormatError(f"bad arity {rest[0]!r}", lineno) from None
            if n < 1:
                raise IdealFormatError("arity must be positive", lineno)
        elif head == "gen":
            if n is None:
                raise IdealFormatError("'gen' before 'ring'", lineno)
            try:
                exps = [int(t) for t in rest]
            except ValueError:
                raise IdealFormatError("exponents must be integers", lineno) from None
            if len(exps) != n:
                raise ArityError(f"line {lineno}: generator has {len(exps)} exponents, ring has {n}")
            if any(e < 0 for e in exps):
                raise IdealFormatError("negative exponent", lineno)
            gens.append(tuple(exps))
        else:
            raise IdealFormatError(f"unknown directive {head!r}", lineno)
    if n is None:
        raise IdealFormatError("missing 'ring n' line")
    I = minimalize(n, gens)
    if len(I.generators) != len(gens):
        warnings.warn(
            f"{len(gens) - len(I.generators)} non-minimal or duplicate generator(s) removed",
            NonMinimalGeneratorsWarning,
            stacklevel=2,
        )
    return I


def format_ideal(I: MonomialIdeal) -> str:
    lines = [f"ring {I.arity}"]
    lines += ["gen " + " ".join(map(str, a)) for a in I.generators]
    return "\n".join(lines) + "\n"
