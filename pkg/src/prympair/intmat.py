"""Exact integer matrix routines.

Matrices are 2-D numpy arrays of dtype ``object`` holding Python ints, so
entries never overflow and empty shapes such as ``(0, 5)`` stay meaningful.
Vectors are rows throughout: a matrix ``A`` acts by ``x -> x @ A``.
"""
from __future__ import annotations

from math import gcd

import numpy as np


def as_matrix(rows, ncols: int | None = None) -> np.ndarray:
    """Coerce ``rows`` into an object matrix of Python ints."""
    if isinstance(rows, np.ndarray) and rows.dtype == object and rows.ndim == 2:
        return rows
    rows = [[int(x) for x in row] for row in rows]
    if not rows:
        return np.zeros((0, ncols or 0), dtype=object)
    a = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != a.shape[1]:
            raise ValueError("ragged matrix")
        a[i, :] = row
    return a


def zeros(m: int, n: int) -> np.ndarray:
    return np.zeros((m, n), dtype=object) * 0


def identity(n: int) -> np.ndarray:
    a = zeros(n, n)
    for i in range(n):
        a[i, i] = 1
    return a


def to_lists(a: np.ndarray) -> list[list[int]]:
    return [[int(x) for x in row] for row in a]


def is_zero(a: np.ndarray) -> bool:
    return not any(x != 0 for x in a.flat)


def echelon(a, transform: bool = True, inverse: bool = False):
    """Hermite normal form by unimodular row operations.

    Returns ``(h, u, uinv, pivots)`` with ``u @ a == h``.  ``h`` is in row
    echelon form with positive pivots and reduced entries above each pivot;
    its first ``len(pivots)`` rows are nonzero.  ``u`` (resp. ``uinv``) is
    None unless ``transform`` (resp. ``inverse``) is requested.
    """
    h = as_matrix(a).copy()
    m, n = h.shape
    u = identity(m) if transform else None
    uinv = identity(m) if inverse else None

    def addrow(i, j, c):
        # row_i += c * row_j
        h[i, :] += c * h[j, :]
        if u is not None:
            u[i, :] += c * u[j, :]
        if uinv is not None:
            uinv[:, j] -= c * uinv[:, i]

    def swap(i, j):
        h[[i, j], :] = h[[j, i], :]
        if u is not None:
            u[[i, j], :] = u[[j, i], :]
        if uinv is not None:
            uinv[:, [i, j]] = uinv[:, [j, i]]

    def negate(i):
        h[i, :] = -h[i, :]
        if u is not None:
            u[i, :] = -u[i, :]
        if uinv is not None:
            uinv[:, i] = -uinv[:, i]

    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        found = False
        while True:
            nz = [i for i in range(row, m) if h[i, col] != 0]
            if not nz:
                break
            found = True
            p = min(nz, key=lambda i: (abs(h[i, col]), i))
            if p != row:
                swap(row, p)
            piv = h[row, col]
            done = True
            for i in range(row + 1, m):
                if h[i, col] != 0:
                    q = h[i, col] // piv
                    addrow(i, row, -q)
                    if h[i, col] != 0:
                        done = False
            if done:
                break
        if not found:
            continue
        if h[row, col] < 0:
            negate(row)
        piv = h[row, col]
        for i in range(row):
            q = h[i, col] // piv
            if q:
                addrow(i, row, -q)
        pivots.append(col)
        row += 1
    return h, u, uinv, pivots


def rank(a) -> int:
    return len(echelon(a, transform=False)[3])


def hnf(a) -> np.ndarray:
    """Nonzero rows of the Hermite normal form: a canonical lattice basis."""
    h, _, _, piv = echelon(a, transform=False)
    return h[: len(piv)]


def left_kernel(a) -> np.ndarray:
    """Basis (rows) of the saturated lattice ``{x : x @ a == 0}``."""
    a = as_matrix(a)
    _, u, _, piv = echelon(a)
    return hnf(u[len(piv):]) if len(piv) < a.shape[0] else zeros(0, a.shape[0])


def saturation(b, n: int | None = None) -> np.ndarray:
    """Basis of ``(rowspace(b) tensor Q) intersected with Z^n``, in Hermite form."""
    b = as_matrix(b, n)
    n = b.shape[1]
    if b.shape[0] == 0 or is_zero(b):
        return zeros(0, n)
    perp = left_kernel(b.T)
    if perp.shape[0] == 0:
        return identity(n)
    return left_kernel(perp.T)


def det(a) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    m = [[int(x) for x in row] for row in as_matrix(a)]
    n = len(m)
    if n == 0:
        return 1
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_invariants(a) -> list[int]:
    """Nonzero invariant factors ``d1 | d2 | ...`` of ``a``."""
    h = hnf(a)
    # Alternate row and column Hermite reductions until the matrix is diagonal.
    while True:
        if h.shape[0] == 0:
            return []
        t = hnf(h.T)
        h = hnf(t.T)
        r = h.shape[0]
        if all(h[i, j] == 0 for i in range(r) for j in range(h.shape[1]) if i != j):
            break
    diag = [abs(int(h[i, i])) for i in range(h.shape[0])]
    # Normalize into a divisibility chain.
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            g = gcd(diag[i], diag[j])
            l = diag[i] * diag[j] // g
            diag[i], diag[j] = g, l
    return sorted(diag)


def full_rank_index(a) -> int:
    """Product of the invariant factors of a full-row-rank matrix.

    Equals the index of ``rowspace(a)`` in its saturation, and also the
    order of ``{y in Q^r : y @ a integral} / Z^r``.
    """
    a = as_matrix(a)
    if a.shape[0] == 0:
        return 1
    h, _, _, piv = echelon(a.T, transform=False)
    if len(piv) < a.shape[0]:
        raise ValueError("matrix does not have full row rank")
    out = 1
    for i, _ in enumerate(piv):
        out *= h[i, piv[i]]
    return abs(int(out))


def solve_left(b, x) -> np.ndarray:
    """Integer ``y`` with ``y @ b == x`` for a basis ``b`` (independent rows).

    ``x`` may hold several row vectors.  Raises ValueError when some row of
    ``x`` is not in the integer row lattice of ``b``.
    """
    b = as_matrix(b)
    x = as_matrix(x, b.shape[1])
    r = b.shape[0]
    if r == 0:
        if not is_zero(x):
            raise ValueError("vector outside the lattice")
        return zeros(x.shape[0], 0)
    h, u, _, piv = echelon(b)
    if len(piv) != r:
        raise ValueError("basis rows are dependent")
    z = zeros(x.shape[0], r)
    for row in range(x.shape[0]):
        rest = x[row, :].copy()
        for k, c in enumerate(piv):
            q, rem = divmod(rest[c], h[k, c])
            if rem:
                raise ValueError("vector outside the lattice")
            z[row, k] = q
            if q:
                rest -= q * h[k, :]
        if not is_zero(rest[None, :]):
            raise ValueError("vector outside the lattice")
    return z @ u


def matmul(*ms) -> np.ndarray:
    out = ms[0]
    for m in ms[1:]:
        if out.shape[1] == 0 or m.shape[0] == 0:
            out = zeros(out.shape[0], m.shape[1])
        else:
            out = out @ m
    return out
