# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""int64 versions of the loops in _pykernels.  Callers guarantee no overflow."""

from libc.math cimport sqrtl

ctypedef long long i64


cdef inline i64 _isqrt(i64 n):
    cdef i64 y = <i64> sqrtl(<long double> n)
    while y * y > n:
        y -= 1
    while (y + 1) * (y + 1) <= n:
        y += 1
    return y


cdef inline i64 _mod(i64 a, i64 m):
    cdef i64 r = a % m
    return r + m if r < 0 else r


cdef inline bint _square_hit(i64 num, i64 V, i64 res, i64 h22, i64 *out):
    cdef i64 sq, y
    if num % V:
        return False
    sq = num // V
    y = _isqrt(sq)
    if y * y != sq:
        return False
    if _mod(y - res, h22) == 0:
        out[0] = y
        return True
    if _mod(-y - res, h22) == 0:
        out[0] = -y
        return True
    return False


def wall_scan(i64 V, i64 U, i64 h11, i64 h21, i64 h22, bint divisorial=True):
    cdef i64 nU = -U
    cdef i64 y, tau, res, alpha, mm, B, hit
    if divisorial:
        y = _isqrt(2 * nU)
        if y * y == 2 * nU and y % h22 == 0:
            return 1, 0, y
        for tau in range(1, 3):
            if tau % h11:
                continue
            res = (tau // h11) * h21 % h22
            if _square_hit(nU * tau * tau, V, res, h22, &hit):
                return 2, tau, hit
    tau = h11
    while tau <= V // 2:
        res = (tau // h11) * h21 % h22
        if _square_hit(nU * (2 * V + tau * tau), V, res, h22, &hit):
            return 3, tau, hit
        tau += h11
    alpha = h11
    while alpha < V:
        res = (alpha // h11) * h21 % h22
        mm = alpha if alpha < V - alpha else V - alpha
        B = _isqrt(nU * mm * mm // V)
        if res <= h22 - res:
            if res <= B:
                return 4, alpha, res
            if h22 - res <= B:
                return 4, alpha, res - h22
        else:
            if h22 - res <= B:
                return 4, alpha, res - h22
            if res <= B:
                return 4, alpha, res
        alpha += h11
    return 0, 0, 0


cdef inline i64 _gcd(i64 a, i64 b):
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


def star_box_scan(gram, D, i64 two_c, i64 r, i64 bound):
    cdef int rho = len(gram)
    cdef i64 G[8][8]
    cdef i64 GD[8]
    cdef i64 L[8]
    cdef int i, j, k
    cdef i64 g, d, DL, row
    if rho > 8:
        raise ValueError("rank > 8")
    for i in range(rho):
        for j in range(rho):
            G[i][j] = gram[i][j]
    for i in range(rho):
        GD[i] = 0
        for j in range(rho):
            GD[i] += G[i][j] * <i64> D[j]
        L[i] = -bound
    while True:
        g = 0
        for i in range(rho):
            g = _gcd(g, L[i])
        if g == 1:
            d = 0
            DL = 0
            for i in range(rho):
                row = 0
                for j in range(rho):
                    row += G[i][j] * L[j]
                d = _gcd(d, row)
                DL += GD[i] * L[i]
            if d and _mod(two_c * (DL // d), r):
                return tuple(L[i] for i in range(rho))
        k = rho - 1
        while k >= 0 and L[k] == bound:
            L[k] = -bound
            k -= 1
        if k < 0:
            return None
        L[k] += 1
