"""Pure-Python hot loops.  ``_ckernels.pyx`` mirrors these line for line."""

from math import gcd, isqrt

NONE, ORTHOGONAL_SPHERICAL, ISOTROPIC, SPHERICAL, DECOMPOSITION = range(5)


def wall_scan(V, U, h11, h21, h22, divisorial=True):
    """First witness of the rank-2 wall criteria, in priority order.

    A class s of the rank-2 lattice is encoded by tau = (s, v) and
    sigma = (s, u) where u spans v-perp, V = v^2 > 0 and U = u^2 < 0; then
    s^2 = tau^2/V + sigma^2/U.  The pairs (tau, sigma) that come from
    integral s are exactly tau = t*h11, sigma = t*h21 (mod h22).

    Returns (code, tau, sigma) with code one of NONE, ORTHOGONAL_SPHERICAL,
    ISOTROPIC, SPHERICAL, DECOMPOSITION.  With ``divisorial`` false only the
    two flopping criteria are searched.
    """
    nU = -U
    if divisorial:
        hit = _divisorial_scan(nU, V, h11, h21, h22)
        if hit is not None:
            return hit

    # spherical with 0 < (s, v) <= v^2/2: sigma^2 V = |U| (2V + tau^2)
    for tau in range(h11, V // 2 + 1, h11):
        res = (tau // h11) * h21 % h22
        num = nU * (2 * V + tau * tau)
        if num % V:
            continue
        sq = num // V
        y = isqrt(sq)
        if y * y != sq:
            continue
        if (y - res) % h22 == 0:
            return SPHERICAL, tau, y
        if (-y - res) % h22 == 0:
            return SPHERICAL, tau, -y

    # v = a1 + a2 with a_i^2 >= 0, (a_i, v) > 0: alpha = (a1, v) in [1, V-1]
    # and sigma^2 V <= |U| min(alpha, V - alpha)^2
    for alpha in range(h11, V, h11):
        res = (alpha // h11) * h21 % h22
        mm = min(alpha, V - alpha)
        B = isqrt(nU * mm * mm // V)
        if res <= h22 - res:
            if res <= B:
                return DECOMPOSITION, alpha, res
            if h22 - res <= B:
                return DECOMPOSITION, alpha, res - h22
        else:
            if h22 - res <= B:
                return DECOMPOSITION, alpha, res - h22
            if res <= B:
                return DECOMPOSITION, alpha, res
    return NONE, 0, 0


def _divisorial_scan(nU, V, h11, h21, h22):
    # orthogonal spherical: tau = 0, sigma^2 = 2|U|
    y = isqrt(2 * nU)
    if y * y == 2 * nU and y % h22 == 0:
        return ORTHOGONAL_SPHERICAL, 0, y

    # isotropic with (w, v) in {1, 2}: sigma^2 V = |U| tau^2
    for tau in (1, 2):
        if tau % h11:
            continue
        res = (tau // h11) * h21 % h22
        num = nU * tau * tau
        if num % V:
            continue
        sq = num // V
        y = isqrt(sq)
        if y * y != sq:
            continue
        if (y - res) % h22 == 0:
            return ISOTROPIC, tau, y
        if (-y - res) % h22 == 0:
            return ISOTROPIC, tau, -y
    return None


def star_box_scan(gram, D, two_c, r, bound):
    """First primitive L in [-bound, bound]^rho with r not dividing 2c (D.L)/div(L).

    Returns the failing L as a tuple, or None.
    """
    rho = len(gram)
    GD = [sum(gram[i][j] * D[j] for j in range(rho)) for i in range(rho)]
    L = [-bound] * rho
    while True:
        g = 0
        for a in L:
            g = gcd(g, a)
        if g == 1:
            d = 0
            for i in range(rho):
                d = gcd(d, sum(gram[i][j] * L[j] for j in range(rho)))
            DL = sum(GD[i] * L[i] for i in range(rho))
            if d and (two_c * (DL // d)) % r:
                return tuple(L)
        k = rho - 1
        while k >= 0 and L[k] == bound:
            L[k] = -bound
            k -= 1
        if k < 0:
            return None
        L[k] += 1
