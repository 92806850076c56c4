"""Independent reference computations used only by the tests."""
from itertools import combinations
from math import gcd

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors


def sympy_invariants(a):
    """Nonzero invariant factors via sympy."""
    m = Matrix([[int(x) for x in row] for row in a])
    if m.rows == 0 or m.cols == 0:
        return []
    return sorted(abs(int(x)) for x in invariant_factors(m, domain=ZZ) if x != 0)


def determinantal_invariants(a):
    """Invariant factors from gcds of all k x k minors (small matrices only)."""
    rows = [[int(x) for x in row] for row in a]
    m = len(rows)
    n = len(rows[0]) if rows else 0
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for ri in combinations(range(m), k):
            for ci in combinations(range(n), k):
                g = gcd(g, int(Matrix([[rows[i][j] for j in ci] for i in ri]).det()))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def sympy_det(a):
    rows = [[int(x) for x in row] for row in a]
    return int(Matrix(rows).det()) if rows else 1


def sympy_rank(a):
    rows = [[int(x) for x in row] for row in a]
    return Matrix(rows).rank() if rows and rows[0] else 0


def hyperelliptic(g):
    """Degree-2 cover branched at 2g + 2 points."""
    from prympair.covers import BranchedCover, Permutation

    t = Permutation((1, 0))
    return BranchedCover.from_perms(2, [t] * (2 * g + 2))
