"""Exact integer/rational linear algebra for small Gram matrices.

Everything here is exact: inertia of a symmetric integer matrix by
congruence elimination, rank over the rationals, integer kernels saturated
inside Z^n, and Smith normal form with unimodular transforms.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

Matrix = List[List[int]]


def inertia(gram: Sequence[Sequence[int]]) -> Tuple[int, int, int]:
    """(n_plus, n_minus, n_zero) of a symmetric matrix, exactly.

    Congruence elimination with symmetric pivoting; integer-only. Scaling a
    row and column by the (possibly negative) pivot is a congruence by a
    diagonal matrix, so pivot signs are preserved.
    """
    n = len(gram)
    a = [[int(x) for x in row] for row in gram]
    for i in range(n):
        if len(a[i]) != n:
            raise ValueError("matrix is not square")
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    pos = neg = 0
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if a[i][i] != 0), None)
        if piv is None:
            off = next(
                ((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0),
                None,
            )
            if off is None:
                break  # remaining block is zero
            i, j = off
            # congruence: row_i += row_j then col_i += col_j gives
            # a[i][i] = 2 a[i][j] != 0
            for c in range(n):
                a[i][c] += a[j][c]
            for r in range(n):
                a[r][i] += a[r][j]
            piv = i
        if piv != k:
            a[piv], a[k] = a[k], a[piv]
            for r in range(n):
                a[r][piv], a[r][k] = a[r][k], a[r][piv]
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = a[i][k]
            if f:
                for c in range(n):
                    a[i][c] = d * a[i][c] - f * a[k][c]
                for r in range(n):
                    a[r][i] = d * a[r][i] - f * a[r][k]
                g = 0
                for c in range(n):
                    g = gcd(g, a[i][c])
                # row i and column i now share the factor d (their common
                # entry picked up d^2); divide it out to tame growth
                if g > 1:
                    gg = g
                    if a[i][i] % (gg * gg) != 0:
                        gg = 1
                    if gg > 1:
                        for c in range(n):
                            a[i][c] //= gg
                        for r in range(n):
                            if r != i:
                                a[r][i] //= gg
                        a[i][i] //= gg
        k += 1
    return pos, neg, n - pos - neg


def inertia_reference(gram: Sequence[Sequence[int]]) -> Tuple[int, int, int]:
    """Fraction-based congruence inertia, used to cross-check ``inertia``."""
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    pos = neg = 0
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if a[i][i] != 0), None)
        if piv is None:
            off = next(
                ((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0),
                None,
            )
            if off is None:
                break
            i, j = off
            for c in range(n):
                a[i][c] += a[j][c]
            for r in range(n):
                a[r][i] += a[r][j]
            piv = i
        if piv != k:
            a[piv], a[k] = a[k], a[piv]
            for r in range(n):
                a[r][piv], a[r][k] = a[r][k], a[r][piv]
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = a[i][k] / d
            if f:
                for c in range(n):
                    a[i][c] -= f * a[k][c]
                for r in range(n):
                    a[r][i] -= f * a[r][k]
        k += 1
    return pos, neg, n - pos - neg


def rank(matrix: Sequence[Sequence[int]]) -> int:
    rows = [[Fraction(x) for x in row] for row in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    n = len(matrix)
    if n == 0:
        return 1
    a = [[int(x) for x in row] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(matrix: Sequence[Sequence[int]]):
    """(D, U, V) with U A V = D diagonal, U and V unimodular."""
    a = [[int(x) for x in row] for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in range(m):
            a[r][i] -= q * a[r][j]
        for r in range(n):
            v[r][i] -= q * v[r][j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in range(m):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(n):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    t = 0
    while t < min(m, n):
        # find a nonzero pivot of least absolute value in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = False
        for i in range(t + 1, m):
            if a[i][t] % a[t][t] != 0:
                dirty = True
            row_op(i, t, a[i][t] // a[t][t])
        for j in range(t + 1, n):
            if a[t][j] % a[t][t] != 0:
                dirty = True
            col_op(j, t, a[t][j] // a[t][t])
        if dirty or any(a[i][t] for i in range(t + 1, m)) or any(
            a[t][j] for j in range(t + 1, n)
        ):
            continue  # re-pick a smaller pivot
        # divisibility condition d_t | all later entries
        viol = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t] != 0:
                    viol = (i, j)
                    break
            if viol:
                break
        if viol:
            i, _ = viol
            row_op(t, i, -1)  # add row i into row t, then redo the pivot
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def kernel_basis(matrix: Sequence[Sequence[int]]) -> List[List[int]]:
    """A basis of the saturated integer kernel {x in Z^n : A x = 0}."""
    d, _, v = smith_normal_form(matrix)
    m = len(d)
    n = len(d[0]) if m else 0
    r = sum(1 for i in range(min(m, n)) if d[i][i] != 0)
    # A (V e_j) = U^-1 D e_j = 0 exactly for j >= r
    return [[v[row][j] for row in range(n)] for j in range(r, n)]


def complement_basis(matrix: Sequence[Sequence[int]]) -> List[List[int]]:
    """Columns of V completing the kernel to a basis of Z^n."""
    d, _, v = smith_normal_form(matrix)
    m = len(d)
    n = len(d[0]) if m else 0
    r = sum(1 for i in range(min(m, n)) if d[i][i] != 0)
    return [[v[row][j] for row in range(n)] for j in range(r)]


def gram_of_span(gram: Sequence[Sequence[int]]):
    """Gram matrix of the lattice spanned by the rows inside Z^n / radical.

    The bilinear form descends to Z^n modulo the saturated kernel of the
    Gram matrix; the returned matrix is the induced form on a basis of that
    quotient, so its determinant is the discriminant of the spanned lattice.
    """
    comp = complement_basis(gram)
    n = len(gram)

    def pair(x, y):
        return sum(x[i] * gram[i][j] * y[j] for i in range(n) for j in range(n))

    return [[pair(x, y) for y in comp] for x in comp]


def primitive_kernel_vector(gram: Sequence[Sequence[int]]) -> List[int]:
    """The primitive integer kernel generator of a corank-1 Gram matrix."""
    basis = kernel_basis(gram)
    if len(basis) != 1:
        raise ValueError(f"kernel has rank {len(basis)}, expected 1")
    vec = basis[0]
    g = 0
    for x in vec:
        g = gcd(g, x)
    vec = [x // g for x in vec]
    negatives = sum(1 for x in vec if x < 0)
    if negatives * 2 > len([x for x in vec if x]):
        vec = [-x for x in vec]
    return vec
