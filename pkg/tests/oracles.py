"""Independent reference computations used by the tests."""

import itertools
import math

import sympy


def elementary_divisors(matrix):
    """Smith diagonal via gcds of k x k minors (determinantal divisors)."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for R in itertools.combinations(range(rows), k):
            for C in itertools.combinations(range(cols), k):
                g = math.gcd(g, int(sympy.Matrix([[matrix[i][j] for j in C] for i in R]).det()))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def mapping_torus_homology(A):
    """(rank, torsion) of Z + coker(A - I) for a 3x3 integer matrix A."""
    M = [[A[i][j] - (1 if i == j else 0) for j in range(3)] for i in range(3)]
    d = elementary_divisors(M)
    return 1 + 3 - len(d), tuple(x for x in d if x > 1)


def hall_counts(rank, max_index):
    """Subgroups of each exact index in the free group of the given rank."""
    fact = [math.factorial(n) for n in range(max_index + 1)]
    a = []
    for n in range(1, max_index + 1):
        a.append(n * fact[n] ** (rank - 1) - sum(fact[n - k] ** (rank - 1) * a[k - 1] for k in range(1, n)))
    return a
