from math import gcd

from hypothesis import given, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from mukaiwalls import intmat as im

entries = st.integers(-40, 40)


def matrices(min_n=1, max_n=4, square=True):
    @st.composite
    def build(draw):
        n = draw(st.integers(min_n, max_n))
        m = n if square else draw(st.integers(min_n, max_n))
        return [draw(st.lists(entries, min_size=m, max_size=m)) for _ in range(n)]
    return build()


def _diag(D):
    return [D[i][i] for i in range(min(len(D), len(D[0])))]


@given(matrices())
def test_det_matches_sympy(A):
    assert im.det(A) == Matrix(A).det()


@given(matrices(square=False))
def test_rank_matches_sympy(A):
    assert im.rank(A) == Matrix(A).rank()


@given(matrices(square=False))
def test_smith_is_a_factorisation(A):
    U, D, V = im.smith(A)
    assert im.matmul(im.matmul(U, A), V) == D
    assert abs(im.det(U)) == 1 and abs(im.det(V)) == 1
    d = [x for x in _diag(D) if x]
    assert all(x > 0 for x in d)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    for i in range(len(D)):
        for j in range(len(D[0])):
            if i != j:
                assert D[i][j] == 0


@given(matrices(square=False))
def test_smith_diagonal_matches_sympy(A):
    _, D, _ = im.smith(A)
    ours = [x for x in _diag(D) if x]
    theirs = [abs(int(x)) for x in _diag(sympy_snf(Matrix(A), domain=ZZ).tolist()) if x]
    assert ours == sorted(theirs, key=lambda x: (x == 0, x))


@given(matrices(square=False))
def test_kernel_is_a_saturated_basis(A):
    n = len(A[0])
    K = im.kernel(A, ncols=n)
    assert len(K) == n - Matrix(A).rank()
    for k in K:
        assert im.matvec(A, k) == [0] * len(A)
    if K:
        # saturated: the maximal minors of K are coprime
        assert im.invariant_factors(K) == [1] * len(K)


@given(matrices(square=False))
def test_hnf_spans_the_same_lattice(A):
    H = im.hnf(A)
    assert len(H) == im.rank(A)
    for row in A:
        if any(row):
            assert im.coords_in(H, row) is not None
    for row in H:
        assert im.coords_in(H, row) is not None


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_xgcd(a, b):
    g, x, y = im.xgcd(a, b)
    assert g >= 0 and x * a + y * b == g
    assert g == gcd(a, b)


def test_smith_examples():
    assert _diag(im.smith([[2, 0], [0, 3]])[1]) == [1, 6]
    assert _diag(im.smith([[0, 1], [1, 0]])[1]) == [1, 1]
    assert _diag(im.smith([[-30, 0], [0, 2]])[1]) == [2, 30]


def test_inverse_q_roundtrip():
    A = [[2, 1], [1, -4]]
    inv = im.inverse_q(A)
    prod = im.matmul(A, inv)
    assert prod == [[1, 0], [0, 1]]
    assert not im.is_integral(inv)


def test_big_integers_stay_exact():
    big = 10**40 + 7
    assert im.det([[big, 1], [1, big]]) == big * big - 1
    assert _diag(im.smith([[big, 0], [0, 2 * big]])[1]) == [big, 2 * big]
