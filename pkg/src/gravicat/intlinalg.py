"""Exact linear algebra over the integers and rationals.

Matrices are plain lists of rows. Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Matrix = list[list[int]]


def bareiss_det(m: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free Bareiss elimination.

    The empty matrix has determinant 1.
    """
    n = len(m)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def rational_det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return det


def rational_inverse(m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse; raises ZeroDivisionError when singular."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        a[k], a[p] = a[p], a[k]
        piv = a[k][k]
        a[k] = [x / piv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [row[n:] for row in a]


def matmul(a, b):
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def congruent(gram, basis_columns):
    """Gram matrix of the vectors ``basis_columns`` (list of vectors)."""
    gv = [[sum(g * x for g, x in zip(row, v)) for row in gram] for v in basis_columns]
    return [[sum(a * b for a, b in zip(u, gw)) for gw in gv] for u in basis_columns]


def scale_to_integers(vec: Sequence[Fraction]) -> list[int]:
    """Smallest positive multiple of ``vec`` with coprime integer entries."""
    den = 1
    for x in vec:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g > 1 else ints


def integer_kernel(rows: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """A Z-basis of {x in Z^n : A x = 0} for the integer matrix A given by rows.

    Column-style Hermite reduction: unimodular column operations are applied
    to A and recorded in U; the columns of U that end up zero in every row of
    A form a basis of the kernel lattice.
    """
    u = [[int(i == j) for j in range(n)] for i in range(n)]  # u[col] = column vector
    done = 0
    for row in rows:
        if done == n:
            break
        vals = [sum(r * c for r, c in zip(row, u[j])) for j in range(n)]
        while True:
            nz = [j for j in range(done, n) if vals[j] != 0]
            if len(nz) <= 1:
                break
            p = min(nz, key=lambda j: abs(vals[j]))
            for j in nz:
                if j == p:
                    continue
                q = vals[j] // vals[p]
                vals[j] -= q * vals[p]
                u[j] = [a - q * b for a, b in zip(u[j], u[p])]
        nz = [j for j in range(done, n) if vals[j] != 0]
        if nz:
            p = nz[0]
            u[done], u[p] = u[p], u[done]
            vals[done], vals[p] = vals[p], vals[done]
            done += 1
    return [col for col in u[done:]]


def rational_column_kernel(rows: Sequence[Sequence[Fraction]], n: int) -> list[list[Fraction]]:
    """A rational basis of the null space of A (rows), by reduced row echelon form."""
    a = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -a[i][f]
        basis.append(v)
    return basis


def saturate(columns: Sequence[Sequence[Fraction]], n: int) -> list[list[int]]:
    """Z-basis of Z^n intersected with the rational span of ``columns``."""
    if not columns:
        return []
    # span(columns) = kernel of the annihilator; integer points of that kernel
    annihilator = rational_column_kernel(columns, n)
    int_rows = [scale_to_integers(v) for v in annihilator]
    return integer_kernel(int_rows, n)
