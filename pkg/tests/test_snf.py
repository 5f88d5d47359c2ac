"""Smith reduction checked against brute-force enumeration.

The oracle computes determinantal divisors directly: d_k = gcd of all
k x k minors, each minor expanded over permutations.  The k-th invariant
factor is then d_k / d_{k-1}, independent of any elimination strategy.
"""

import itertools
import math
import random

import pytest

from qsurf.snf import cokernel_invariants, kernel_basis, rank, smith_normal_form


def det_bruteforce(rows):
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(
            1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b]
        )
        prod = 1
        for i in range(n):
            prod *= rows[i][perm[i]]
        total += (-1) ** inversions * prod
    return total


def invariant_factors_oracle(A):
    m, n = len(A), len(A[0])
    factors = []
    d_prev = 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                sub = [[A[i][j] for j in cols] for i in rows]
                g = math.gcd(g, det_bruteforce(sub))
        if g == 0:
            break
        factors.append(g // d_prev)
        d_prev = g
    return tuple(factors)


def matmul(A, B):
    return [
        [sum(A[i][t] * B[t][j] for t in range(len(B))) for j in range(len(B[0]))]
        for i in range(len(A))
    ]


def random_matrix(rng, m, n):
    return [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]


class TestSmithNormalForm:
    def test_textbook_example(self):
        dec = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
        assert dec.invariant_factors == invariant_factors_oracle(
            [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
        )

    def test_zero_matrix(self):
        dec = smith_normal_form([[0, 0], [0, 0]])
        assert dec.invariant_factors == ()
        assert dec.rank == 0

    def test_one_by_one(self):
        assert smith_normal_form([[-6]]).invariant_factors == (6,)

    def test_index_row(self):
        assert smith_normal_form([[2, 2, 0]]).invariant_factors == (2,)

    def test_decomposition_identity_random(self):
        rng = random.Random(101)
        for _ in range(100):
            m, n = rng.randint(1, 4), rng.randint(1, 4)
            A = random_matrix(rng, m, n)
            dec = smith_normal_form(A)
            S = [list(r) for r in dec.S]
            T = [list(r) for r in dec.T]
            assert matmul(matmul(S, A), T) == [list(r) for r in dec.D]
            assert det_bruteforce(S) in (1, -1)
            assert det_bruteforce(T) in (1, -1)

    def test_invariant_factors_match_oracle_random(self):
        rng = random.Random(202)
        for _ in range(100):
            m, n = rng.randint(1, 4), rng.randint(1, 4)
            A = random_matrix(rng, m, n)
            assert smith_normal_form(A).invariant_factors == invariant_factors_oracle(A)

    def test_divisibility_chain(self):
        rng = random.Random(303)
        for _ in range(50):
            A = random_matrix(rng, 4, 4)
            f = smith_normal_form(A).invariant_factors
            for a, b in zip(f, f[1:]):
                assert b % a == 0

    def test_ragged_rejected(self):
        with pytest.raises(ValueError):
            smith_normal_form([[1, 2], [3]])


class TestKernelCokernel:
    def test_kernel_vectors_annihilate(self):
        rng = random.Random(404)
        for _ in range(100):
            m, n = rng.randint(1, 4), rng.randint(1, 4)
            A = random_matrix(rng, m, n)
            basis = kernel_basis(A)
            assert len(basis) == n - rank(A)
            for v in basis:
                assert all(
                    sum(A[i][j] * v[j] for j in range(n)) == 0 for i in range(m)
                )

    def test_index_map_cokernel(self):
        free, torsion = cokernel_invariants([[2, 2, 0]])
        assert (free, torsion) == (0, (2,))

    def test_zero_map_cokernel(self):
        free, torsion = cokernel_invariants([[0, 0]])
        assert (free, torsion) == (1, ())

    def test_unimodular_cokernel_trivial(self):
        free, torsion = cokernel_invariants([[1, 0], [7, 1]])
        assert (free, torsion) == (0, ())

    def test_torsion_matches_oracle(self):
        rng = random.Random(505)
        for _ in range(60):
            A = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
            _, torsion = cokernel_invariants(A)
            assert torsion == tuple(
                d for d in invariant_factors_oracle(A) if d >= 2
            )
