"""Smith normal form over the integers.

Reduces an integer matrix A to D = S A T with S, T unimodular and D
diagonal with nonnegative entries in divisibility order d1 | d2 | ...
Exact Python integers throughout; intended for the small matrices that
index maps produce, not for bulk numerical work.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Matrix = list[list[int]]


@dataclass(frozen=True)
class SmithDecomposition:
    """D = S @ A @ T with unimodular S (m x m) and T (n x n)."""

    D: tuple[tuple[int, ...], ...]
    S: tuple[tuple[int, ...], ...]
    T: tuple[tuple[int, ...], ...]

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i][i] for i in range(min(len(self.D), len(self.D[0]))))

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d != 0)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Full Smith decomposition of an integer matrix (m x n, both >= 1)."""
    D: Matrix = [[int(x) for x in row] for row in A]
    m = len(D)
    if m == 0 or len(D[0]) == 0:
        raise ValueError("matrix must have at least one row and one column")
    n = len(D[0])
    if any(len(row) != n for row in D):
        raise ValueError("ragged matrix")
    S = _identity(m)
    T = _identity(n)

    def swap_rows(i, j):
        if i != j:
            D[i], D[j] = D[j], D[i]
            S[i], S[j] = S[j], S[i]

    def swap_cols(i, j):
        if i != j:
            for row in D:
                row[i], row[j] = row[j], row[i]
            for row in T:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        D[dst] = [a + c * b for a, b in zip(D[dst], D[src])]
        S[dst] = [a + c * b for a, b in zip(S[dst], S[src])]

    def add_col(src, dst, c):
        for row in D:
            row[dst] += c * row[src]
        for row in T:
            row[dst] += c * row[src]

    def negate_row(i):
        D[i] = [-x for x in D[i]]
        S[i] = [-x for x in S[i]]

    def diagonalize():
        for t in range(min(m, n)):
            while True:
                best = None
                for i in range(t, m):
                    for j in range(t, n):
                        if D[i][j] != 0 and (
                            best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])
                        ):
                            best = (i, j)
                if best is None:
                    return
                swap_rows(t, best[0])
                swap_cols(t, best[1])
                if D[t][t] < 0:
                    negate_row(t)
                p = D[t][t]
                clean = True
                for i in range(t + 1, m):
                    q = D[i][t] // p
                    if q:
                        add_row(t, i, -q)
                    if D[i][t]:
                        clean = False
                for j in range(t + 1, n):
                    q = D[t][j] // p
                    if q:
                        add_col(t, j, -q)
                    if D[t][j]:
                        clean = False
                if clean:
                    break

    diagonalize()
    # enforce d_i | d_{i+1}: pull the successor into column i and redo
    while True:
        bad = None
        for i in range(min(m, n) - 1):
            a, b = D[i][i], D[i + 1][i + 1]
            if a != 0 and b % a != 0:
                bad = i
                break
        if bad is None:
            break
        add_col(bad + 1, bad, 1)
        diagonalize()

    return SmithDecomposition(
        D=tuple(tuple(row) for row in D),
        S=tuple(tuple(row) for row in S),
        T=tuple(tuple(row) for row in T),
    )


def rank(A: Sequence[Sequence[int]]) -> int:
    return smith_normal_form(A).rank


def kernel_basis(A: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Integer basis of {x : A x = 0}: the trailing columns of T."""
    dec = smith_normal_form(A)
    n = len(dec.T)
    cols = range(dec.rank, n)
    return tuple(tuple(dec.T[i][j] for i in range(n)) for j in cols)


def cokernel_invariants(A: Sequence[Sequence[int]]) -> tuple[int, tuple[int, ...]]:
    """Structure of Z^m / im(A) as (free rank, invariant torsion factors)."""
    dec = smith_normal_form(A)
    m = len(dec.D)
    torsion = tuple(d for d in dec.invariant_factors if d >= 2)
    return m - dec.rank, torsion
