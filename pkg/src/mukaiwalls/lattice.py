"""Integral lattices given by Gram matrices.

Vectors are integer tuples of coordinates in the lattice basis.  Isometries
act on column vectors, so ``g`` is an isometry of ``L`` when
``g.T @ L.gram @ g == L.gram``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
import logging

from . import intmat as im

log = logging.getLogger(__name__)


class LatticeError(ValueError):
    pass


class DegenerateLatticeError(LatticeError):
    pass


class DimensionError(LatticeError):
    pass


def _freeze(M):
    return tuple(tuple(int(a) for a in row) for row in M)


@dataclass(frozen=True)
class GramLattice:
    gram: tuple
    even: bool = True

    def __post_init__(self):
        g = _freeze(self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if n == 0 or any(len(row) != n for row in g):
            raise DimensionError("Gram matrix must be square and non-empty")
        for i in range(n):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise LatticeError(f"Gram matrix not symmetric at ({i}, {j})")
        if self.even and any(g[i][i] % 2 for i in range(n)):
            raise LatticeError("odd diagonal entry in an even lattice")

    @property
    def rank(self):
        return len(self.gram)

    @property
    def det(self):
        return im.det(self.gram)

    def require_nondegenerate(self):
        if self.det == 0:
            raise DegenerateLatticeError("degenerate Gram matrix")

    def check(self, x):
        if len(x) != self.rank:
            raise DimensionError(f"vector of length {len(x)} in a rank {self.rank} lattice")
        return tuple(int(a) for a in x)

    def to_json(self):
        return {"gram": [list(r) for r in self.gram]}

    @classmethod
    def from_json(cls, doc):
        if set(doc) - {"gram"}:
            raise LatticeError(f"unknown keys {sorted(set(doc) - {'gram'})}")
        return cls(doc["gram"])


@dataclass(frozen=True)
class Sublattice:
    """Rows of ``basis`` are coordinates of generators in the parent lattice."""

    basis: tuple
    saturated_input: bool = field(default=True, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "basis", _freeze(self.basis))

    @property
    def rank(self):
        return len(self.basis)

    def gram(self, L):
        B = self.basis
        return tuple(tuple(pairing(L, b, c) for c in B) for b in B)

    def coords(self, y):
        """Coordinates of y in this basis (basis must be Hermite-reduced)."""
        return im.coords_in(self.basis, y)


@dataclass(frozen=True)
class DiscriminantGroup:
    """L^dual / L with its discriminant form.

    ``generators`` are dual vectors (Fractions, in lattice coordinates) of
    orders ``cyclic_orders``.  ``q_values`` are reduced into [0, 2) and
    ``b_values`` into [0, 1).
    """

    cyclic_orders: tuple
    q_values: tuple
    b_values: tuple
    generators: tuple = field(compare=False, default=())

    @property
    def order(self):
        n = 1
        for d in self.cyclic_orders:
            n *= d
        return n

    @property
    def length(self):
        return len(self.cyclic_orders)

    def is_cyclic(self):
        return len(self.cyclic_orders) <= 1


def pairing(L, x, y):
    x, y = L.check(x), L.check(y)
    return sum(xi * gij * yj for xi, row in zip(x, L.gram) for gij, yj in zip(row, y))


def norm(L, x):
    return pairing(L, x, x)


def gram_times(L, w):
    return im.matvec(L.gram, L.check(w))


def divisibility(L, w):
    """Positive generator of the ideal (w, L) in Z."""
    w = L.check(w)
    if not any(w):
        raise LatticeError("divisibility of the zero vector")
    return im.vec_gcd(gram_times(L, w))


def is_primitive(w):
    return im.vec_gcd(w) == 1


def primitive_part(w):
    g = im.vec_gcd(w)
    if g == 0:
        raise LatticeError("zero vector has no primitive part")
    return tuple(a // g for a in w)


def smith_normal_form(M):
    """Return (U, D, V) with U M V = D, U and V unimodular, D in Smith form."""
    U, D, V = im.smith([list(r) for r in M])
    return _freeze(U), _freeze(D), _freeze(V)


def saturate(L, S):
    """Primitive closure of a sublattice: Q-span of S intersected with L."""
    rows = [L.check(b) for b in S.basis]
    if im.rank(rows) != len(rows):
        raise LatticeError("sublattice basis is not linearly independent")
    K = im.kernel(rows, ncols=L.rank)
    sat = im.kernel(K, ncols=L.rank) if K else im.identity(L.rank)
    return Sublattice(sat)


def is_saturated(L, S):
    sat = saturate(L, S)
    return im.hnf([list(b) for b in S.basis]) == [list(b) for b in sat.basis]


def orthogonal_complement(L, S):
    """Basis of {x in L : (x, s) = 0 for all s in S}, Hermite-reduced."""
    rows = [L.check(b) for b in S.basis]
    saturated = True
    if rows and not is_saturated(L, S):
        saturated = False
        log.debug("orthogonal_complement: saturating input sublattice first")
        rows = [list(b) for b in saturate(L, S).basis]
    if not rows:
        return Sublattice(im.identity(L.rank), saturated_input=saturated)
    A = im.matmul(rows, [list(r) for r in L.gram])
    return Sublattice(im.kernel(A, ncols=L.rank), saturated_input=saturated)


def restrict(L, S):
    """The sublattice S as a lattice in its own right."""
    return GramLattice(S.gram(L), even=L.even)


def discriminant_group(L):
    """Discriminant group via Smith form of the Gram matrix.

    With U G V = D, the dual vector V[:, i] / d_i generates the i-th cyclic
    factor.  q is taken as x.G.x for that dual vector, reduced mod 2Z; b as
    x.G.y reduced mod Z.
    """
    L.require_nondegenerate()
    U, D, V = im.smith([list(r) for r in L.gram])
    n = L.rank
    gens, orders = [], []
    for i in range(n):
        d = D[i][i]
        if d > 1:
            gens.append(tuple(Fraction(V[k][i], d) for k in range(n)))
            orders.append(d)
    G = L.gram

    def bil(x, y):
        return sum(x[i] * G[i][j] * y[j] for i in range(n) for j in range(n))

    q = tuple(bil(x, x) % 2 for x in gens)
    b = tuple(tuple(bil(x, y) % 1 for y in gens) for x in gens)
    return DiscriminantGroup(tuple(orders), q, b, tuple(gens))


def _ldl(Q):
    """Square-completion data for a positive definite rational form.

    Returns (qd, qo) with Q(x) = sum_i qd[i] * (x_i + sum_{j>i} qo[i][j] x_j)^2.
    """
    n = len(Q)
    A = [[Fraction(a) for a in row] for row in Q]
    qd = [Fraction(0)] * n
    qo = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        if A[i][i] <= 0:
            raise LatticeError("form is not definite")
        qd[i] = A[i][i]
        for j in range(i + 1, n):
            qo[i][j] = A[i][j] / A[i][i]
        for j in range(i + 1, n):
            for k in range(j, n):
                A[j][k] -= qo[i][j] * A[i][k]
                A[k][j] = A[j][k]
    return qd, qo


def is_negative_definite(L):
    n = L.rank
    for k in range(1, n + 1):
        minor = im.det([list(r[:k]) for r in L.gram[:k]])
        if (minor > 0) != (k % 2 == 0) or minor == 0:
            return False
    return True


def short_vectors(L, target):
    """All v with v.v == target in a negative definite lattice, up to sign.

    Exact Fincke-Pohst enumeration on -gram; each returned vector has its
    first nonzero coordinate positive.
    """
    if target >= 0:
        raise LatticeError("target must be negative")
    if not is_negative_definite(L):
        raise LatticeError("lattice is not negative definite")
    n = L.rank
    Q = [[-a for a in row] for row in L.gram]
    N = -target
    qd, qo = _ldl(Q)
    out = []
    x = [0] * n

    def rec(i, remaining):
        c = -sum(qo[i][j] * x[j] for j in range(i + 1, n))
        B = isqrt(int(remaining / qd[i])) + 1
        fc = c.numerator // c.denominator
        for xi in range(fc - B, fc + B + 2):
            t = qd[i] * (xi - c) ** 2
            if t > remaining:
                continue
            x[i] = xi
            if i == 0:
                if remaining - t == 0:
                    out.append(tuple(x))
            else:
                rec(i - 1, remaining - t)
        x[i] = 0

    rec(n - 1, Fraction(N))
    res = sorted({v for v in out if next(a for a in v if a) > 0})
    return res


def signature(L):
    """(n_plus, n_minus, n_zero) by rational congruence diagonalisation."""
    n = L.rank
    A = [[Fraction(a) for a in row] for row in L.gram]
    diag = []
    k = 0
    size = n
    while k < size:
        if A[k][k] == 0:
            j = next((j for j in range(k + 1, size) if A[j][j] != 0), None)
            if j is not None:
                A[k], A[j] = A[j], A[k]
                for row in A:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, size) if A[k][j] != 0), None)
                if j is None:
                    diag.append(Fraction(0))
                    k += 1
                    continue
                A[k] = [a + b for a, b in zip(A[k], A[j])]
                for row in A:
                    row[k] += row[j]
        p = A[k][k]
        diag.append(p)
        for i in range(k + 1, size):
            f = A[i][k] / p
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[k])]
                for row in A:
                    row[i] -= f * row[k]
        k += 1
    return (sum(1 for d in diag if d > 0), sum(1 for d in diag if d < 0),
            sum(1 for d in diag if d == 0))


@dataclass(frozen=True)
class IntegralIsometry:
    matrix: tuple

    def __post_init__(self):
        object.__setattr__(self, "matrix", _freeze(self.matrix))

    def check(self, L):
        g = [list(r) for r in self.matrix]
        if len(g) != L.rank:
            raise DimensionError("isometry size does not match lattice rank")
        G = [list(r) for r in L.gram]
        if im.matmul(im.matmul(im.transpose(g), G), g) != G:
            raise LatticeError("matrix does not preserve the Gram matrix")
        return self

    def __call__(self, x):
        return tuple(im.matvec(self.matrix, x))

    def __matmul__(self, other):
        return IntegralIsometry(im.matmul(self.matrix, other.matrix))

    def power(self, k):
        n = len(self.matrix)
        out = im.identity(n)
        for _ in range(k):
            out = im.matmul(out, self.matrix)
        return IntegralIsometry(out)

    def is_identity(self):
        return self.matrix == _freeze(im.identity(len(self.matrix)))


def isometry_order(g, bound=60):
    """Smallest k <= bound with g^k = id; LatticeError if none exists."""
    n = len(g.matrix)
    ident = _freeze(im.identity(n))
    cur = g.matrix
    for k in range(1, bound + 1):
        if cur == ident:
            return k
        cur = _freeze(im.matmul(cur, g.matrix))
    raise LatticeError(f"isometry order exceeds {bound} (infinite order?)")


def invariant_coinvariant(L, g, order):
    """Invariant lattice, coinvariant lattice and exponent of L / (inv + coinv)."""
    L.require_nondegenerate()
    g.check(L)
    if not g.power(order).is_identity():
        raise LatticeError(f"isometry does not have order dividing {order}")
    n = L.rank
    A = [[g.matrix[i][j] - int(i == j) for j in range(n)] for i in range(n)]
    inv = Sublattice(im.kernel(A, ncols=n))
    coinv = orthogonal_complement(L, inv)
    stacked = [list(b) for b in inv.basis] + [list(b) for b in coinv.basis]
    if im.rank(stacked) != n:
        raise LatticeError("invariant and coinvariant lattices do not span")
    factors = im.invariant_factors(stacked)
    exponent = max(factors)
    if order % exponent:
        raise LatticeError("quotient exponent does not divide the order")
    return inv, coinv, exponent


def hyperbolic_from_isotropic(L, e):
    """A copy of U(m^2) containing the isotropic class e, m = div(e).

    Picks f' with (e, f') = m, writes f'^2 = 2k and returns span{e, f}
    with f = -k e + m f'.
    """
    e = L.check(e)
    if not any(e):
        raise LatticeError("zero vector")
    if norm(L, e) != 0:
        raise LatticeError("vector is not isotropic")
    if not is_primitive(e):
        raise LatticeError("vector is not primitive")
    Ge = gram_times(L, e)
    m = im.vec_gcd(Ge)
    # Bezout coefficients for m = sum c_i (Ge)_i, i.e. f' = c
    coeffs = [0] * L.rank
    g = 0
    for i, a in enumerate(Ge):
        if a == 0:
            continue
        g2, x, y = im.xgcd(g, a)
        coeffs = [c * x for c in coeffs]
        coeffs[i] += y
        g = g2
    fprime = tuple(coeffs)
    assert pairing(L, e, fprime) == m
    k = norm(L, fprime) // 2
    f = tuple(-k * a + m * b for a, b in zip(e, fprime))
    S = Sublattice((e, f))
    assert S.gram(L) == ((0, m * m), (m * m, 0))
    return S


def finite_order_rank2_is_involution(L, g, bound=60):
    """Whether a finite-order isometry of a signature (1,1) lattice squares to id."""
    if L.rank != 2 or L.det >= 0:
        raise LatticeError("lattice must have rank 2 and signature (1, 1)")
    g.check(L)
    isometry_order(g, bound)
    return g.power(2).is_identity()
