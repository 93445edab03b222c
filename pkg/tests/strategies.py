"""Hypothesis strategies shared by the property tests."""

from math import lcm

from hypothesis import strategies as st

from mukaiwalls import intmat as im
from mukaiwalls.lattice import GramLattice, IntegralIsometry
from mukaiwalls.mukai import NSData


@st.composite
def ns_data(draw, max_rank=2):
    rho = draw(st.integers(1, max_rank))
    if rho == 1:
        return NSData.rank_one(2 * draw(st.integers(-3, 10)))
    a, b, c = (draw(st.integers(-5, 5)) for _ in range(3))
    return NSData(GramLattice([[2 * a, b], [b, 2 * c]]))


@st.composite
def mukai_setup(draw, nvec=1):
    ns = draw(ns_data())
    vecs = []
    for _ in range(nvec):
        r = draw(st.integers(-30, 30))
        theta = tuple(draw(st.integers(-10, 10)) for _ in range(ns.rank))
        s = draw(st.integers(-30, 30))
        vecs.append(ns.vec(r, theta, s))
    return ns, tuple(vecs)


def _block_diag(blocks):
    n = sum(len(b) for b in blocks)
    M = [[0] * n for _ in range(n)]
    k = 0
    for b in blocks:
        for i in range(len(b)):
            for j in range(len(b)):
                M[k + i][k + j] = b[i][j]
        k += len(b)
    return M


@st.composite
def unimodular_pair(draw, n):
    """(P, P^-1) as a random product of elementary matrices."""
    P, Pinv = im.identity(n), im.identity(n)
    if n < 2:
        return P, Pinv
    for _ in range(draw(st.integers(0, 5))):
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if i == j:
            continue
        k = draw(st.integers(-2, 2))
        E = im.identity(n)
        E[j][i] = k
        Einv = im.identity(n)
        Einv[j][i] = -k
        P = im.matmul(P, E)
        Pinv = im.matmul(Einv, Pinv)
    return P, Pinv


def _conjugate_gram(G, P):
    return im.matmul(im.matmul(im.transpose(P), G), P)


@st.composite
def lattice_with_isotropic(draw):
    """(L, e, m): e primitive isotropic of divisibility m in a disguised U(m) + rest."""
    m = draw(st.integers(1, 6))
    blocks = [[[0, m], [m, 0]]]
    for _ in range(draw(st.integers(0, 2))):
        blocks.append([[2 * draw(st.sampled_from([-3, -2, -1, 1, 2, 3]))]])
    G = _block_diag(blocks)
    n = len(G)
    P, Pinv = draw(unimodular_pair(n))
    e = [Pinv[i][0] for i in range(n)]
    return GramLattice(_conjugate_gram(G, P)), tuple(e), m


_U = [[0, 1], [1, 0]]
_A2 = [[2, -1], [-1, 2]]
_ROT3 = [[0, -1], [1, -1]]  # columns: e1 -> e2, e2 -> -e1 - e2


def _neg(M):
    return [[-a for a in r] for r in M]


@st.composite
def isometry_block(draw):
    choice = draw(st.sampled_from(["U-swap", "U-neg", "U-id", "rank1-neg", "rank1-id",
                                   "A2-rot3", "A2-rot6", "sq-rot4"]))
    sign = draw(st.sampled_from([1, -1]))
    if choice.startswith("U"):
        g = {"U-swap": [[0, 1], [1, 0]], "U-neg": _neg(im.identity(2)), "U-id": im.identity(2)}[choice]
        scale = draw(st.integers(1, 3))
        return [[scale * a for a in r] for r in _U], g, 2 if choice != "U-id" else 1
    if choice.startswith("rank1"):
        G = [[2 * sign * draw(st.integers(1, 4))]]
        return G, [[-1]] if choice == "rank1-neg" else [[1]], 2 if choice == "rank1-neg" else 1
    if choice.startswith("A2"):
        G = [[sign * a for a in r] for r in _A2]
        return G, _ROT3 if choice == "A2-rot3" else _neg(_ROT3), 3 if choice == "A2-rot3" else 6
    a = sign * draw(st.integers(1, 3))
    return [[2 * a, 0], [0, 2 * a]], [[0, -1], [1, 0]], 4


@st.composite
def unimodular_block(draw):
    """Blocks of U^k with an isometry of order <= 2."""
    choice = draw(st.sampled_from(["swap", "neg", "id", "UU-swap", "UU-swap-neg"]))
    if choice in ("swap", "neg", "id"):
        g = {"swap": [[0, 1], [1, 0]], "neg": _neg(im.identity(2)), "id": im.identity(2)}[choice]
        return _U, g, 1 if choice == "id" else 2
    G = _block_diag([_U, _U])
    g = [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
    return G, g if choice == "UU-swap" else _neg(g), 2


@st.composite
def finite_order_isometries(draw, unimodular=None):
    """(L, g, order) with g of order dividing ``order`` on a disguised block lattice."""
    if unimodular is None:
        unimodular = draw(st.booleans())
    block = unimodular_block() if unimodular else isometry_block()
    parts = draw(st.lists(block, min_size=1, max_size=3))
    if draw(st.booleans()):
        parts = [p if p[2] in (1, 2) else (p[0], im.identity(len(p[0])), 1) for p in parts]
    G = _block_diag([p[0] for p in parts])
    g = _block_diag([p[1] for p in parts])
    order = 1
    for p in parts:
        order = lcm(order, p[2])
    n = len(G)
    P, Pinv = draw(unimodular_pair(n))
    G2 = _conjugate_gram(G, P)
    g2 = im.matmul(im.matmul(Pinv, g), P)
    return GramLattice(G2), IntegralIsometry(g2), order
