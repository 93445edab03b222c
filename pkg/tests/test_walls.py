from itertools import product
from math import gcd

from hypothesis import assume, given, strategies as st
import pytest

from mukaiwalls import intmat as im
from mukaiwalls.lattice import GramLattice, LatticeError, Sublattice, saturate
from mukaiwalls.mukai import MukaiError, NSData, alg_mukai_lattice, compute_e, mukai_pairing
from mukaiwalls.walls import (
    InvariantViolation,
    StarVerdict,
    Witness,
    WallClassification,
    WallKind,
    build_vertical,
    check_star,
    classify_enumerative,
    classify_vertical,
    classify_vertical_closed_form,
    decide_involution,
    e_in_hw,
    fm_reduce,
    reduction_to_vertical,
    split_theta,
)

NS4 = NSData.rank_one(4)


def V(r, c, s, ns=NS4):
    return ns.vec(r, c, s)


def _pair(G, x, y):
    return sum(x[i] * G[i][j] * y[j] for i in range(2) for j in range(2))


# -- the vertical wall --------------------------------------------------------

def test_vertical_wall_with_theta_zero_is_the_standard_plane():
    spec = build_vertical(NS4, V(3, 0, -5))
    assert spec.c == 0
    assert spec.hw_basis.basis == ((1, 0, 0), (0, 0, 1))
    assert spec.gram.gram == ((0, -1), (-1, 0))
    assert spec.v_coords == (3, -5)
    # in the basis {v, (0,0,1)} the Gram matrix is [[30, -3], [-3, 0]]
    L = alg_mukai_lattice(NS4)
    assert Sublattice(((3, 0, -5), (0, 0, 1))).gram(L) == ((30, -3), (-3, 0))


@pytest.mark.parametrize("n", [2, 3, 5, 9])
def test_vertical_wall_of_hilbert_scheme_vector(n):
    v = V(1, 0, 1 - n)
    spec = build_vertical(NS4, v)
    B = [list(spec.v_coords), [0, 1]]
    G = [list(r) for r in spec.gram.gram]
    assert im.matmul(im.matmul(B, G), im.transpose(B)) == [[2 * n - 2, -1], [-1, 0]]
    assert abs(im.det(B)) == 1


def test_vertical_wall_saturation_has_index_two():
    spec = build_vertical(NS4, V(4, 2, 1))
    assert spec.c == 2 and spec.D == (1,)
    assert spec.hw_basis.basis == ((2, 1, 0), (0, 0, 1))
    L = alg_mukai_lattice(NS4)
    unsat = Sublattice(((4, 2, 1), (0, 0, 1)))
    assert im.det(unsat.gram(L)) == 4 * spec.gram.det
    # every member (lambda, lambda*theta/r, mu) has r | c*lambda
    for lam, mu in product(range(-6, 7), range(-3, 4)):
        x = spec.ambient((lam, mu))
        assert (spec.c * x[0]) % 4 == 0


def test_vertical_wall_shifts_negative_rank():
    assert build_vertical(NS4, V(-3, 0, 5)).v.coords() == (3, 0, -5)


@pytest.mark.parametrize("v, fragment", [
    ((0, 1, 0), "r = 0"),
    ((2, 0, -4), "primitive"),
    ((1, 0, 1), "v^2 = -2"),
    ((1, 0, 0), "v^2 = 0"),
])
def test_vertical_wall_rejections(v, fragment):
    with pytest.raises(MukaiError, match=fragment.replace("^", r"\^")):
        build_vertical(NS4, V(*v))


def test_split_theta_sign_rule():
    ns = NSData([[2, 1], [1, -2]])
    assert split_theta(ns, (-4, 6)) == (-2, (2, -3))
    assert split_theta(ns, (0, -3)) == (-3, (0, 1))
    assert split_theta(ns, (0, 0)) == (0, ns.D)


# -- condition (*) --------------------------------------------------------------

def test_star_examples():
    assert check_star(NS4, V(3, 0, -5)).holds == StarVerdict.YES
    assert check_star(NS4, V(4, 2, 1)).holds == StarVerdict.YES
    rep = check_star(NS4, V(4, 1, -1))
    assert rep.holds == StarVerdict.NO and rep.failing_L == (1,)


def test_star_gcd_condition():
    rep = check_star(NS4, V(3, 0, -6 + 1))
    assert rep.gcd_rs == 1
    rep = check_star(NS4, V(3, 1, -3))
    assert rep.gcd_rs == 3 and rep.holds == StarVerdict.NO


def test_star_higher_rank_is_bounded():
    ns = NSData([[2, 1], [1, -2]])
    v = ns.vec(2, (1, 1), -3)
    rep = check_star(ns, v, bound=5)
    assert rep.holds in (StarVerdict.YES_UP_TO_BOUND, StarVerdict.NO)
    assert not rep.rank1_reduction_used
    if rep.holds == StarVerdict.YES_UP_TO_BOUND:
        assert rep.bound == 5


@given(st.sampled_from([2, 4, 6, 8]), st.integers(1, 8), st.integers(-8, 8), st.integers(-20, 20))
def test_star_rank_one_is_the_divisibility_test(d2, r, c, s):
    ns = NSData.rank_one(d2)
    v = ns.vec(r, c, s)
    assume(v.is_primitive())
    expected = (2 * c) % r == 0 and gcd(r, s) in (1, 2)
    assert (check_star(ns, v).holds == StarVerdict.YES) == expected


# -- enumerative classification --------------------------------------------------

def test_enumerative_examples():
    cls = classify_vertical(NS4, V(1, 0, -4))
    assert cls.kind == WallKind.DIVISORIAL
    assert cls.witness.ambient == ((0, 0, -1),) and cls.witness.pairing == 1
    cls = classify_vertical(NS4, V(2, 0, -5))
    assert cls.kind == WallKind.DIVISORIAL
    assert cls.witness.ambient == ((0, 0, -1),) and cls.witness.pairing == 2
    cls = classify_vertical(NS4, V(3, 0, -5))
    assert cls.kind == WallKind.FLOPPING
    assert cls.witness.kind == "spherical_small_pairing"
    (s,) = cls.witness.ambient
    assert s == (1, 0, 1)
    assert mukai_pairing(V(*s), V(3, 0, -5)) == 2


def test_enumerative_orthogonal_spherical():
    # H = <2> + <-2>, v = (1, 0): (0, 1) is a (-2)-class orthogonal to v
    cls = classify_enumerative([[2, 0], [0, -2]], (1, 0))
    assert cls.kind == WallKind.DIVISORIAL and cls.witness.kind == "orthogonal_spherical"


def test_enumerative_no_wall():
    # <2> + <-30> with v = (1, 0): no isotropic or spherical classes in range
    cls = classify_enumerative([[2, 0], [0, -30]], (1, 0))
    assert cls.kind == WallKind.FAKE_OR_NO_WALL and cls.witness is None


@pytest.mark.parametrize("H, v", [
    ([[2, 0], [0, 2]], (1, 0)),   # definite
    ([[0, 1], [1, 0]], (2, 2)),   # imprimitive
    ([[0, 1], [1, 0]], (1, 0)),   # v^2 = 0
    ([[2, 0, 0], [0, -2, 0], [0, 0, -2]], (1, 0, 0)),
])
def test_enumerative_preconditions(H, v):
    with pytest.raises(LatticeError):
        classify_enumerative(H, v)


def _brute_force(G, v, box):
    """Kinds of witnesses visible among classes with coordinates in [-box, box]^2."""
    V2 = _pair(G, v, v)
    found = set()
    for s in product(range(-box, box + 1), repeat=2):
        s2, sv = _pair(G, s, s), _pair(G, s, v)
        if s2 == -2 and sv == 0:
            found.add("divisorial")
        if s2 == 0 and sv in (1, 2):
            found.add("divisorial")
        if s2 == -2 and 0 < sv and 2 * sv <= V2:
            found.add("flopping")
        a2 = (v[0] - s[0], v[1] - s[1])
        if s2 >= 0 and _pair(G, a2, a2) >= 0 and sv > 0 and _pair(G, a2, v) > 0:
            found.add("flopping")
    return found


@st.composite
def hyperbolic_planes(draw):
    a = draw(st.integers(-4, 4)) * 2
    b = draw(st.integers(-6, 6))
    c = draw(st.integers(-4, 4)) * 2
    assume(a * c - b * b < 0)
    v = (draw(st.integers(-6, 6)), draw(st.integers(-6, 6)))
    G = [[a, b], [b, c]]
    assume(im.vec_gcd(v) == 1 and _pair(G, v, v) >= 2)
    return G, v


@given(hyperbolic_planes())
def test_enumeration_agrees_with_brute_force(data):
    G, v = data
    cls = classify_enumerative(G, v)
    seen = _brute_force(G, v, 12)
    if "divisorial" in seen:
        assert cls.kind == WallKind.DIVISORIAL
    elif "flopping" in seen:
        assert cls.kind in (WallKind.DIVISORIAL, WallKind.FLOPPING)
    if cls.kind == WallKind.FAKE_OR_NO_WALL:
        assert not seen


def test_forged_witness_is_rejected():
    G = ((0, -1), (-1, 0))
    with pytest.raises(InvariantViolation):
        WallClassification(WallKind.DIVISORIAL, Witness("isotropic_pairing", ((1, 0),), 1),
                           "enumeration", G, (3, -5))
    with pytest.raises(InvariantViolation):
        WallClassification(WallKind.FLOPPING, None, "enumeration", G, (3, -5))


# -- closed form ---------------------------------------------------------------

def test_closed_form_examples():
    cls = classify_vertical_closed_form(NS4, V(4, 2, 1))
    assert cls.kind == WallKind.DIVISORIAL and cls.case == "series 1"
    assert cls.witness.ambient == ((2, 1, 1),)
    assert classify_vertical_closed_form(NS4, V(3, 0, -5)).kind == WallKind.FLOPPING
    ns = NSData.rank_one(2)
    v = ns.vec(5, 5, 4)
    cls = classify_vertical_closed_form(ns, v)
    assert cls.kind == WallKind.DIVISORIAL and cls.case == "k-series m=1"
    assert classify_vertical(ns, v).kind == WallKind.DIVISORIAL


def test_closed_form_series_two():
    # D^2 = 2, a = 3, m = 1: v = (6, 3D, (2*3 - 2)/4) = (6, 3D, 1)
    ns = NSData.rank_one(2)
    v = ns.vec(6, 3, 1)
    cls = classify_vertical_closed_form(ns, v)
    assert cls.kind == WallKind.DIVISORIAL and cls.case == "series 2"
    assert classify_vertical(ns, v).kind == WallKind.DIVISORIAL


def test_closed_form_requires_star():
    with pytest.raises(MukaiError):
        classify_vertical_closed_form(NS4, V(4, 1, -1))


@given(st.sampled_from([2, 4, 6, 8]), st.integers(1, 8), st.integers(-8, 8), st.integers(-20, 20))
def test_closed_form_agrees_with_enumeration(d2, r, c, s):
    ns = NSData.rank_one(d2)
    v = ns.vec(r, c, s)
    assume(v.is_primitive() and v.square() >= 2)
    assume(check_star(ns, v).holds == StarVerdict.YES)
    closed = classify_vertical_closed_form(ns, v)
    enum = classify_vertical(ns, v)
    assert closed.kind == enum.kind
    assert enum.kind != WallKind.FAKE_OR_NO_WALL


# -- involutions ---------------------------------------------------------------

def test_involution_examples():
    d = decide_involution(NS4, V(3, 0, -5))
    assert d.involution and d.e.coords() == (3, 0, 5)
    assert d.disc_action.value == "minus_id"
    d = decide_involution(NS4, V(1, 0, -4))
    assert not d.involution and d.reasons == ("divisorial, r=1",)
    d = decide_involution(NS4, V(4, 2, 1))
    assert not d.involution and d.reasons == ("divisorial, series 1",)
    d = decide_involution(NS4, V(4, 1, -1))
    assert not d.involution and d.reasons[0].startswith("condition (*) fails")


# -- Fourier-Mukai reduction -------------------------------------------------------

def test_fm_reduce_series_one():
    spec = build_vertical(NS4, V(4, 2, 1))
    w = spec.h_coords(V(2, 1, 1))
    red = fm_reduce(spec.gram, spec.v_coords, w)
    assert red.r_prime == 2 and red.possibly_twisted
    assert red.new_gram.det == spec.gram.det
    assert classify_enumerative(red.new_gram, red.v_prime_coords).kind == WallKind.DIVISORIAL


@pytest.mark.parametrize("v, r_prime", [((2, 0, -5), 2), ((1, 0, -4), 1)])
def test_fm_reduce_already_vertical(v, r_prime):
    spec = build_vertical(NS4, V(*v))
    red = fm_reduce(spec, spec.v_coords, spec.h_coords(V(0, 0, -1)))
    assert red.r_prime == r_prime
    assert red.basis_change == ((1, 0), (0, 1))
    assert red.v_prime_coords == spec.v_coords


def test_fm_reduce_rejects_non_isotropic():
    spec = build_vertical(NS4, V(3, 0, -5))
    with pytest.raises(LatticeError):
        fm_reduce(spec.gram, spec.v_coords, (1, 1))
    with pytest.raises(LatticeError):
        fm_reduce(spec.gram, spec.v_coords, (2, 0))


def test_reduction_to_vertical_example():
    spec = build_vertical(NS4, V(3, 0, -5))
    _, e = e_in_hw(spec)
    w, wp, red = reduction_to_vertical(spec.gram, spec.v_coords, e)
    assert spec.ambient(w) == (6, 0, 0) and spec.ambient(wp) == (1, 0, 0)
    assert red.r_prime == 5
    assert classify_enumerative(red.new_gram, red.v_prime_coords).kind == WallKind.FLOPPING


@pytest.mark.parametrize("n", [2, 4, 7])
def test_reduction_to_vertical_hilbert_scheme(n):
    spec = build_vertical(NS4, V(1, 0, 1 - n))
    w, wp, red = reduction_to_vertical(spec.gram, spec.v_coords, e_in_hw(spec)[1])
    assert spec.ambient(w) == (2, 0, 0) and spec.ambient(wp) == (1, 0, 0)


@given(st.sampled_from([2, 4, 6]), st.integers(1, 6), st.integers(-6, 6), st.integers(-15, 15))
def test_fm_reduce_preserves_det_and_verdict(d2, r, c, s):
    ns = NSData.rank_one(d2)
    v = ns.vec(r, c, s)
    assume(v.is_primitive() and v.square() >= 2)
    try:
        compute_e(v)
    except MukaiError:
        assume(False)
    spec = build_vertical(ns, v)
    _, e = e_in_hw(spec)
    w, wp, red = reduction_to_vertical(spec.gram, spec.v_coords, e)
    assert _pair(spec.gram.gram, w, w) == 0
    assert red.new_gram.det == spec.gram.det
    assert (classify_enumerative(red.new_gram, red.v_prime_coords).kind
            == classify_enumerative(spec.gram, spec.v_coords).kind)


def test_saturation_contains_e_when_integral():
    spec = build_vertical(NS4, V(4, 2, 1))
    L = alg_mukai_lattice(NS4)
    e = compute_e(V(4, 2, 1)).coords()
    assert saturate(L, spec.hw_basis).coords(e) is not None
    assert GramLattice(spec.gram.gram).det < 0
