"""Exact matrix rank over Q (fraction-free Bareiss) and over prime fields."""

from __future__ import annotations


def rank_rational(rows: list) -> int:
    """Rank of an integer matrix over Q by fraction-free elimination.

    Every intermediate entry stays integral: each step divides by the
    previous pivot, which the Bareiss identity guarantees is exact.
    """
    A = [list(r) for r in rows if any(r)]
    if not A:
        return 0
    m, ncols = len(A), len(A[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, m) if A[r][col]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][col]
        for r in range(rank + 1, m):
            a = A[r][col]
            row_r, row_p = A[r], A[rank]
            for c in range(col + 1, ncols):
                row_r[c] = (p * row_r[c] - a * row_p[c]) // prev
            row_r[col] = 0
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def rank_mod_p(rows: list, p: int) -> int:
    A = [[x % p for x in r] for r in rows]
    A = [r for r in A if any(r)]
    if not A:
        return 0
    m, ncols = len(A), len(A[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, m) if A[r][col]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][col], -1, p)
        row_p = [(x * inv) % p for x in A[rank]]
        A[rank] = row_p
        for r in range(rank + 1, m):
            f = A[r][col]
            if f:
                A[r] = [(x - f * y) % p for x, y in zip(A[r], row_p)]
        rank += 1
        if rank == m:
            break
    return rank


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True
