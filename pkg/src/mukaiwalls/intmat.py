"""Exact integer matrix algebra on nested lists of Python ints.

Matrices are lists of rows.  Nothing here ever touches floating point, and
all routines work with unbounded integers.
"""

from fractions import Fraction
from math import gcd


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(col) for col in zip(*A)]


def matmul(A, B):
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, x):
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def dot(x, y):
    return sum(a * b for a, b in zip(x, y))


def vec_gcd(x):
    g = 0
    for a in x:
        g = gcd(g, a)
    return g


def xgcd(a, b):
    """Return (g, x, y) with x*a + y*b == g == gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def det(A):
    """Determinant by fraction-free Bareiss elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank(A):
    if not A:
        return 0
    return len(hnf(A))


def _echelon(A, track):
    """Row-echelon (Hermite) form with optional unimodular transform.

    Returns (H, U, pivots) where U @ A == H, the first len(pivots) rows of H
    are the nonzero rows, pivots are positive and entries above each pivot
    are reduced into [0, pivot).
    """
    H = [list(row) for row in A]
    m = len(H)
    n = len(H[0]) if m else 0
    U = identity(m) if track else None
    pivots = []
    p = 0
    for j in range(n):
        if p == m:
            break
        while True:
            best = None
            for i in range(p, m):
                a = H[i][j]
                if a and (best is None or abs(a) < abs(H[best][j])):
                    best = i
            if best is None:
                break
            if best != p:
                H[p], H[best] = H[best], H[p]
                if track:
                    U[p], U[best] = U[best], U[p]
            rp = H[p]
            piv = rp[j]
            clean = True
            for i in range(p + 1, m):
                ri = H[i]
                if ri[j]:
                    q = ri[j] // piv
                    for k in range(j, n):
                        ri[k] -= q * rp[k]
                    if track:
                        ui, up = U[i], U[p]
                        for k in range(m):
                            ui[k] -= q * up[k]
                    if ri[j]:
                        clean = False
            if clean:
                break
        if best is None:
            continue
        if H[p][j] < 0:
            H[p] = [-a for a in H[p]]
            if track:
                U[p] = [-a for a in U[p]]
        rp = H[p]
        piv = rp[j]
        for i in range(p):
            q = H[i][j] // piv
            if q:
                ri = H[i]
                for k in range(j, n):
                    ri[k] -= q * rp[k]
                if track:
                    ui, up = U[i], U[p]
                    for k in range(m):
                        ui[k] -= q * up[k]
        pivots.append(j)
        p += 1
    return H, U, pivots


def hnf(A):
    """Nonzero rows of the Hermite normal form of the row span of A."""
    if not A:
        return []
    H, _, piv = _echelon(A, track=False)
    return H[: len(piv)]


def hnf_with_transform(A):
    H, U, piv = _echelon(A, track=True)
    return H, U, piv


def kernel(A, ncols=None):
    """Basis (rows, Hermite-reduced) of the integer right kernel {x : A x = 0}.

    The kernel of an integer matrix is automatically saturated in Z^n.
    """
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    if not A:
        return identity(n)
    At = transpose(A)
    H, U, piv = _echelon(At, track=True)
    basis = U[len(piv):]
    return hnf(basis) if basis else []


def smith(M):
    """Smith normal form: return (U, D, V) with U @ M @ V == D.

    U and V are unimodular, D is diagonal with nonnegative entries
    d1 | d2 | ... (zeros trailing).
    """
    m = len(M)
    n = len(M[0]) if m else 0
    D = [list(row) for row in M]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, k):
        D[i], D[k] = D[k], D[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in D:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):
        # row[dst] -= q * row[src]
        rd, rs = D[dst], D[src]
        for k in range(n):
            rd[k] -= q * rs[k]
        ud, us = U[dst], U[src]
        for k in range(m):
            ud[k] -= q * us[k]

    def add_col(dst, src, q):
        for row in D:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    a = D[i][j]
                    if a and (best is None or abs(a) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return U, D, V
            i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            piv = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, D[i][t] // piv)
                    if D[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, D[t][j] // piv)
                    if D[t][j]:
                        clean = False
            if not clean:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, -1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
    return U, D, V


def invariant_factors(M):
    _, D, _ = smith(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def inverse_q(A):
    """Inverse over Q as a matrix of Fractions; raises ZeroDivisionError if singular."""
    n = len(A)
    M = [[Fraction(a) for a in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [a * inv for a in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                ri, rc = M[i], M[c]
                M[i] = [a - f * b for a, b in zip(ri, rc)]
    return [row[n:] for row in M]


def is_integral(A):
    return all(Fraction(a).denominator == 1 for row in A for a in row)


def to_int(A):
    return [[int(a) for a in row] for row in A]


def coords_in(basis, y):
    """Integer coordinates of y in a Hermite-reduced row basis, or None.

    Relies on the echelon shape of ``basis``: each row has a leading pivot
    further right than the previous one.
    """
    y = list(y)
    out = []
    for row in basis:
        j = next(k for k, a in enumerate(row) if a)
        q, rem = divmod(y[j], row[j])
        if rem:
            return None
        out.append(q)
        if q:
            y = [a - q * b for a, b in zip(y, row)]
    if any(y):
        return None
    return out
