"""Vertical walls: H_W, condition (*), wall-type classification and FM reduction.

Two independent classifiers live here.  ``classify_enumerative`` decides the
wall type of any rank-2 hyperbolic lattice by finite enumeration (see
``_pykernels.wall_scan``); ``classify_vertical_closed_form`` applies the
arithmetic description available for Picard rank one.
"""

from dataclasses import dataclass
from enum import Enum
from math import gcd
import logging

from . import intmat as im
from . import kernels
from .lattice import GramLattice, LatticeError, Sublattice, is_primitive, saturate, signature
from .mukai import (
    DiscAction,
    Monodromy,
    MukaiError,
    alg_mukai_lattice,
    compute_e,
    markman_monodromy_test,
)

log = logging.getLogger(__name__)

DEFAULT_STAR_BOUND = 20


class InvariantViolation(AssertionError):
    """An internal consistency check failed (a bug, not bad input)."""


class WallKind(str, Enum):
    DIVISORIAL = "Divisorial"
    FLOPPING = "Flopping"
    FAKE_OR_NO_WALL = "FakeOrNoWall"


class StarVerdict(str, Enum):
    YES = "yes"
    NO = "no"
    YES_UP_TO_BOUND = "yes_up_to_bound"


# -- the vertical wall --------------------------------------------------------

@dataclass(frozen=True)
class VerticalWallSpec:
    ns: object
    v: object
    c: int
    D: tuple
    hw_basis: Sublattice
    gram: GramLattice
    v_coords: tuple

    def h_coords(self, x):
        """Coordinates in the H_W basis of an algebraic Mukai vector (or None)."""
        coords = x.coords() if hasattr(x, "coords") else tuple(x)
        c = self.hw_basis.coords(coords)
        return tuple(c) if c is not None else None

    def ambient(self, y):
        """Algebraic Mukai coordinates of a vector given in the H_W basis."""
        B = self.hw_basis.basis
        return tuple(sum(y[i] * B[i][k] for i in range(len(B))) for k in range(len(B[0])))

    def to_json(self):
        return {
            "c": self.c,
            "D": list(self.D),
            "hw_basis": [list(b) for b in self.hw_basis.basis],
            "gram": [list(r) for r in self.gram.gram],
            "v_coords": list(self.v_coords),
        }


def split_theta(ns, theta):
    """(c, D) with theta = c D, D primitive with first nonzero coordinate positive."""
    if not any(theta):
        return 0, ns.D
    g = im.vec_gcd(theta)
    D = tuple(t // g for t in theta)
    lead = next(a for a in D if a)
    if lead < 0:
        return -g, tuple(-a for a in D)
    return g, D


def _require_wall_vector(v, allow_shift=False):
    if v.r == 0:
        raise MukaiError("r = 0: apply twist or exp(...) first to reach a vector with r != 0")
    if v.r < 0:
        if not allow_shift:
            raise MukaiError("r < 0: apply shift first")
        log.info("r < 0: replacing %s by its shift", v)
        v = -v
    if not v.is_primitive():
        raise MukaiError(f"{v} is not primitive")
    v2 = v.square()
    if v2 == -2:
        raise MukaiError("v^2 = -2: the moduli space is a point, there are no walls")
    if v2 == 0:
        raise MukaiError("v^2 = 0: the moduli space is a K3 surface, not of higher dimension")
    if v2 < 2:
        raise MukaiError(f"v^2 = {v2} < 2")
    return v


def build_vertical(ns, v):
    """The vertical wall of v; a vector with r < 0 is replaced by its shift -v."""
    v = _require_wall_vector(v, allow_shift=True)
    c, D = split_theta(ns, v.theta)
    L = alg_mukai_lattice(ns)
    t = (0,) * (ns.rank + 1) + (1,)
    sat = saturate(L, Sublattice((v.coords(), t)))
    G = GramLattice(sat.gram(L))
    if signature(G) != (1, 1, 0):
        raise InvariantViolation(f"H_W has signature {signature(G)}, expected (1, 1, 0)")
    vc = sat.coords(v.coords())
    if vc is None or sat.coords(t) is None:
        raise InvariantViolation("H_W does not contain v and (0,0,1)")
    return VerticalWallSpec(ns, v, c, D, sat, G, tuple(vc))


# -- condition (*) ------------------------------------------------------------

@dataclass(frozen=True)
class StarReport:
    holds: StarVerdict
    rank1_reduction_used: bool
    gcd_rs: int
    failing_L: tuple = None
    bound: int = None
    r_divides_cD2: bool = None

    def __bool__(self):
        return self.holds != StarVerdict.NO

    def to_json(self):
        doc = {
            "holds": self.holds.value,
            "rank1_reduction_used": self.rank1_reduction_used,
            "gcd_rs": self.gcd_rs,
            "r_divides_cD2": self.r_divides_cD2,
        }
        if self.failing_L is not None:
            doc["failing_L"] = list(self.failing_L)
        if self.bound is not None:
            doc["bound"] = self.bound
        return doc


def check_star(ns, v, bound=DEFAULT_STAR_BOUND):
    if v.r <= 0:
        raise MukaiError("condition (*) needs r > 0")
    if not v.is_primitive():
        raise MukaiError(f"{v} is not primitive")
    r = v.r
    g = gcd(r, v.s)
    c, D = split_theta(ns, v.theta)
    cD2 = c * ns.pair(D, D)
    implied = cD2 % r == 0
    gcd_ok = g in (1, 2)
    if ns.rank == 1:
        # L = +-D up to sign; D.L / div(L) = +-1
        ok = (2 * c) % r == 0
        failing = None if ok else (1,)
        holds = StarVerdict.YES if ok and gcd_ok else StarVerdict.NO
        return StarReport(holds, True, g, failing, None, implied)
    failing = None
    if c:
        failing = kernels.star_box_scan(ns.gram.gram, D, 2 * c, r, bound)
    if failing is not None or not gcd_ok:
        return StarReport(StarVerdict.NO, False, g, failing, bound, implied)
    return StarReport(StarVerdict.YES_UP_TO_BOUND, False, g, None, bound, implied)


# -- wall classification ------------------------------------------------------

WITNESS_KINDS = ("orthogonal_spherical", "isotropic_pairing", "spherical_small_pairing",
                 "decomposition")
_CODE_TO_WITNESS = {
    kernels.ORTHOGONAL_SPHERICAL: "orthogonal_spherical",
    kernels.ISOTROPIC: "isotropic_pairing",
    kernels.SPHERICAL: "spherical_small_pairing",
    kernels.DECOMPOSITION: "decomposition",
}


@dataclass(frozen=True)
class Witness:
    kind: str
    vectors: tuple  # H coordinates
    pairing: int = None  # (w, v) for isotropic witnesses
    ambient: tuple = None  # algebraic Mukai coordinates, when known

    def to_json(self):
        doc = {"kind": self.kind, "vectors": [list(x) for x in self.vectors]}
        if self.pairing is not None:
            doc["pairing"] = self.pairing
        if self.ambient is not None:
            doc["ambient"] = [list(x) for x in self.ambient]
        return doc


def _pair2(G, x, y):
    return sum(x[i] * G[i][j] * y[j] for i in range(len(x)) for j in range(len(y)))


def _verify_witness(G, v, kind, w):
    """Raise InvariantViolation unless ``w`` certifies ``kind`` for v in (H, G)."""
    V = _pair2(G, v, v)
    if w is None:
        if kind != WallKind.FAKE_OR_NO_WALL:
            raise InvariantViolation(f"{kind.value} verdict without a witness")
        return
    vecs = w.vectors
    if w.kind == "orthogonal_spherical":
        (s,) = vecs
        ok = _pair2(G, s, s) == -2 and _pair2(G, s, v) == 0
        expected = WallKind.DIVISORIAL
    elif w.kind == "isotropic_pairing":
        (x,) = vecs
        k = _pair2(G, x, v)
        ok = _pair2(G, x, x) == 0 and k in (1, 2) and k == w.pairing
        expected = WallKind.DIVISORIAL
    elif w.kind == "spherical_small_pairing":
        (s,) = vecs
        k = _pair2(G, s, v)
        ok = _pair2(G, s, s) == -2 and 0 < k and 2 * k <= V
        expected = WallKind.FLOPPING
    elif w.kind == "decomposition":
        a1, a2 = vecs
        ok = (tuple(x + y for x, y in zip(a1, a2)) == tuple(v)
              and all(_pair2(G, a, a) >= 0 and _pair2(G, a, v) > 0 for a in (a1, a2)))
        expected = WallKind.FLOPPING
    else:
        raise InvariantViolation(f"unknown witness kind {w.kind!r}")
    if not ok:
        raise InvariantViolation(f"witness {w} fails its defining identities")
    if kind != expected:
        raise InvariantViolation(f"{w.kind} witness cannot certify {kind.value}")


@dataclass(frozen=True)
class WallClassification:
    kind: WallKind
    witness: Witness
    method: str
    gram: tuple
    v_coords: tuple
    case: str = None

    def __post_init__(self):
        object.__setattr__(self, "kind", WallKind(self.kind))
        if self.method not in ("closed_form", "enumeration"):
            raise InvariantViolation(f"unknown method {self.method!r}")
        _verify_witness(self.gram, self.v_coords, self.kind, self.witness)

    def to_json(self):
        return {
            "kind": self.kind.value,
            "method": self.method,
            "case": self.case,
            "witness": self.witness.to_json() if self.witness else None,
        }


def _scan_data(G, v):
    """Reduce (H, v) to the integers fed to the wall-scan kernel."""
    V = _pair2(G, v, v)
    a = im.matvec(G, v)
    g = im.vec_gcd(a)
    u = (a[1] // g, -a[0] // g)
    U = _pair2(G, u, u)
    b = im.matvec(G, u)
    M = [list(a), list(b)]
    H = im.hnf([[a[0], b[0]], [a[1], b[1]]])
    if len(H) != 2:
        raise InvariantViolation("v and its orthogonal complement do not span H over Q")
    h11, h21, h22 = H[0][0], H[0][1] % H[1][1], H[1][1]
    return V, U, M, (h11, h21, h22)


def _solve(M, tau, sigma):
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    x = (M[1][1] * tau - M[0][1] * sigma, -M[1][0] * tau + M[0][0] * sigma)
    if x[0] % det or x[1] % det:
        raise InvariantViolation("scan produced a non-integral class")
    return (x[0] // det, x[1] // det)


def _witness_from_scan(G, v, M, code, tau, sigma):
    s = _solve(M, tau, sigma)
    kind = _CODE_TO_WITNESS[code]
    if kind == "decomposition":
        a2 = tuple(x - y for x, y in zip(v, s))
        return Witness(kind, (s, a2))
    if kind == "isotropic_pairing":
        return Witness(kind, (s,), pairing=tau)
    return Witness(kind, (s,))


def _require_hyperbolic(H, v):
    if not isinstance(H, GramLattice):
        H = GramLattice(H)
    if H.rank != 2:
        raise LatticeError("enumerative classification needs a rank-2 lattice")
    if signature(H) != (1, 1, 0):
        raise LatticeError(f"H has signature {signature(H)}, expected (1, 1, 0)")
    v = H.check(v)
    if not is_primitive(v):
        raise LatticeError("v is not primitive in H")
    if _pair2(H.gram, v, v) < 2:
        raise LatticeError("need v^2 >= 2")
    return H, v


def classify_enumerative(H, v_coords, spec=None):
    """Exact wall type of the rank-2 hyperbolic lattice H relative to v."""
    H, v = _require_hyperbolic(H, v_coords)
    G = H.gram
    V, U, M, h = _scan_data(G, v)
    code, tau, sigma = kernels.wall_scan(V, U, *h)
    if code == kernels.NONE:
        return WallClassification(WallKind.FAKE_OR_NO_WALL, None, "enumeration", G, v)
    w = _witness_from_scan(G, v, M, code, tau, sigma)
    if spec is not None:
        w = Witness(w.kind, w.vectors, w.pairing, tuple(spec.ambient(x) for x in w.vectors))
    kind = WallKind.DIVISORIAL if code in (kernels.ORTHOGONAL_SPHERICAL, kernels.ISOTROPIC) \
        else WallKind.FLOPPING
    return WallClassification(kind, w, "enumeration", G, v)


def classify_vertical(ns, v):
    """Enumerative classification of the vertical wall of v."""
    spec = build_vertical(ns, v)
    return classify_enumerative(spec.gram, spec.v_coords, spec)


def _closed_form_case(r, c, s, D2):
    """(kind, case label, witness as (r, multiple of D, s) or None)."""
    if r in (1, 2):
        return WallKind.DIVISORIAL, f"r={r}", (0, 0, -1)
    if c % r == 0:
        k = c // r
        m = (D2 // 2) * k * k * r - s
        if m in (1, 2):
            return WallKind.DIVISORIAL, f"k-series m={m}", (1, k, D2 * k * k // 2)
    elif r % 2 == 0:
        a = r // 2
        if c % a == 0 and (c // a) % 2:
            m = c // a
            if D2 % 4 == 0 and a >= 2 and s == D2 * m * m * a // 4 - 1:
                return WallKind.DIVISORIAL, "series 1", (2, m, m * m * D2 // 4)
            if D2 % 4 == 2 and a >= 3 and a % 2 and 4 * s == D2 * m * m * a - 2:
                return WallKind.DIVISORIAL, "series 2", (4, 2 * m, D2 * m * m // 2)
    return WallKind.FLOPPING, "flopping", None


def classify_vertical_closed_form(ns, v):
    if ns.rank != 1:
        raise MukaiError("the closed form needs Picard rank one")
    star = check_star(ns, v)
    if star.holds != StarVerdict.YES:
        raise MukaiError(f"condition (*) fails for {v}")
    spec = build_vertical(ns, v)
    c, D = spec.c, spec.D
    D2 = ns.pair(D, D)
    kind, case, w = _closed_form_case(v.r, c, v.s, D2)
    G = spec.gram.gram
    vc = spec.v_coords
    if w is not None:
        amb = ns.vec(w[0], (w[1] * D[0],), w[2])
        x = spec.h_coords(amb)
        if x is None:
            raise InvariantViolation(f"closed-form witness {amb} is not in H_W")
        wit = Witness("isotropic_pairing", (x,), _pair2(G, x, vc), (amb.coords(),))
    else:
        wit = _flop_witness(spec)
    return WallClassification(kind, wit, "closed_form", G, vc, case)


def _flop_witness(spec):
    """v = (v + (0,0,1)) + (0,0,-1) when v^2 >= 2r, else the first flopping class found."""
    v = spec.v
    t = spec.ns.vec(0, (0,) * spec.ns.rank, -1)
    a1, a2 = v - t, t
    if v.square() >= 2 * v.r:
        x1, x2 = spec.h_coords(a1), spec.h_coords(a2)
        return Witness("decomposition", (x1, x2), None, (a1.coords(), a2.coords()))
    G = spec.gram.gram
    V, U, M, h = _scan_data(G, spec.v_coords)
    code, tau, sigma = kernels.wall_scan(V, U, *h, divisorial=False)
    if code == kernels.NONE:
        raise InvariantViolation(f"closed form says Flopping but {v} has no flopping class")
    w = _witness_from_scan(G, spec.v_coords, M, code, tau, sigma)
    return Witness(w.kind, w.vectors, w.pairing, tuple(spec.ambient(x) for x in w.vectors))


# -- involutions --------------------------------------------------------------

@dataclass(frozen=True)
class InvolutionDecision:
    involution: bool
    e: object
    disc_action: DiscAction
    reasons: tuple
    star: StarReport
    wall: WallClassification

    def to_json(self):
        return {
            "involution": self.involution,
            "e": self.e.to_json() if self.e is not None else None,
            "disc_action": self.disc_action.value if self.disc_action else None,
            "reasons": list(self.reasons),
        }


def decide_involution(ns, v):
    _require_wall_vector(v)
    star = check_star(ns, v)
    if ns.rank == 1 and star.holds == StarVerdict.YES:
        wall = classify_vertical_closed_form(ns, v)
    else:
        wall = classify_vertical(ns, v)
    reasons = []
    if star.holds == StarVerdict.NO:
        if star.failing_L is not None:
            reasons.append(f"condition (*) fails: r does not divide 2c(D.L)/div(L) "
                           f"for L={list(star.failing_L)}")
        if star.gcd_rs not in (1, 2):
            reasons.append(f"condition (*) fails: gcd(r,s)={star.gcd_rs}")
    if wall.kind == WallKind.DIVISORIAL:
        reasons.append(f"divisorial, {wall.case}" if wall.case else "divisorial")
    elif wall.kind == WallKind.FAKE_OR_NO_WALL:
        reasons.append("no wall")
    if reasons:
        return InvolutionDecision(False, None, None, tuple(reasons), star, wall)
    e = compute_e(v)
    mono = markman_monodromy_test(v, e)
    if mono != Monodromy.MINUS:
        raise InvariantViolation(f"(*) holds for {v} but R_e is {mono.value}")
    if star.holds == StarVerdict.YES_UP_TO_BOUND:
        reasons.append(f"condition (*) verified up to |L_i| <= {star.bound}")
    return InvolutionDecision(True, e, DiscAction.MINUS_ID, tuple(reasons), star, wall)


# -- Fourier-Mukai normal form ------------------------------------------------

@dataclass(frozen=True)
class FMReduction:
    r_prime: int
    new_gram: GramLattice
    v_prime_coords: tuple
    w_image: tuple
    basis_change: tuple  # rows: new basis vectors in old H coordinates

    @property
    def possibly_twisted(self):
        return self.r_prime == 2

    def to_json(self):
        return {
            "r_prime": self.r_prime,
            "new_gram": [list(r) for r in self.new_gram.gram],
            "v_prime_coords": list(self.v_prime_coords),
            "w_image": list(self.w_image),
            "basis_change": [list(r) for r in self.basis_change],
            "possibly_twisted": self.possibly_twisted,
        }


def fm_reduce(H, v_coords, w):
    """Change basis of H so that the isotropic class w becomes the (0,0,1)-analog.

    The new basis (f1, f2) has f2 = +-w with (v, f2) = -r' < 0, and f1 is a
    completion with (f1, f2) < 0 and 0 <= f1^2 < 2|(f1, f2)|.
    """
    if isinstance(H, VerticalWallSpec):
        H = H.gram
    H, v = _require_hyperbolic(H, v_coords)
    G = H.gram
    w = H.check(w)
    if not any(w) or not is_primitive(w):
        raise LatticeError("w must be primitive")
    if _pair2(G, w, w) != 0:
        raise LatticeError("w must be isotropic")
    k = _pair2(G, w, v)
    if k == 0:
        raise InvariantViolation("isotropic class orthogonal to v in a hyperbolic plane")
    sgn = 1 if k > 0 else -1
    f2 = (-sgn * w[0], -sgn * w[1])
    _, x, y = im.xgcd(f2[0], f2[1])
    f1 = (y, -x)  # det [f1; f2] = 1
    m = _pair2(G, f1, f2)
    if m > 0:
        f1 = (-f1[0], -f1[1])
        m = -m
    q = _pair2(G, f1, f1) // (-2 * m)
    f1 = (f1[0] + q * f2[0], f1[1] + q * f2[1])
    P = [list(f1), list(f2)]
    new = GramLattice(im.matmul(im.matmul(P, [list(r) for r in G]), im.transpose(P)))
    # v = a f1 + b f2  <=>  (a, b) = v P^{-1}
    det = P[0][0] * P[1][1] - P[0][1] * P[1][0]
    a = (v[0] * P[1][1] - v[1] * P[1][0]) * det
    b = (-v[0] * P[0][1] + v[1] * P[0][0]) * det
    vp = (a, b)
    if tuple(a * P[0][i] + b * P[1][i] for i in range(2)) != v:
        raise InvariantViolation("basis change is not unimodular")
    out = FMReduction(abs(k), new, vp, (0, -sgn), (tuple(f1), tuple(f2)))
    if _pair2(new.gram, vp, (0, 1)) != -out.r_prime:
        raise InvariantViolation("(v', f2) != -r'")
    if new.det != H.det:
        raise InvariantViolation("basis change altered the determinant")
    return out


def reduction_to_vertical(H, v_coords, e):
    """w = primitive part of v + e (isotropic) and the FM reduction along it."""
    if isinstance(H, VerticalWallSpec):
        H = H.gram
    H, v = _require_hyperbolic(H, v_coords)
    G = H.gram
    e = H.check(e)
    if _pair2(G, e, v) != 0:
        raise LatticeError("e is not orthogonal to v")
    if _pair2(G, e, e) != -_pair2(G, v, v):
        raise LatticeError("e^2 != -v^2")
    w = tuple(a + b for a, b in zip(v, e))
    if _pair2(G, w, w) != 0:
        raise InvariantViolation("v + e is not isotropic")
    g = im.vec_gcd(w)
    wp = tuple(a // g for a in w)
    return w, wp, fm_reduce(H, v, wp)


def wall_type_via_fm(spec, w):
    """Classification read off after moving w to the (0,0,1)-analog."""
    red = fm_reduce(spec.gram, spec.v_coords, w)
    return red, classify_enumerative(red.new_gram, red.v_prime_coords)


def isotropic_witness(cls):
    """The isotropic witness of a Divisorial classification, if it has one."""
    if cls.witness is not None and cls.witness.kind == "isotropic_pairing":
        return cls.witness.vectors[0]
    return None


def e_in_hw(spec):
    """compute_e(v) in H_W coordinates."""
    e = compute_e(spec.v)
    x = spec.h_coords(e)
    if x is None:
        raise InvariantViolation(f"e = {e} is not in H_W")
    return e, x


__all__ = [
    "DEFAULT_STAR_BOUND",
    "FMReduction",
    "InvariantViolation",
    "InvolutionDecision",
    "StarReport",
    "StarVerdict",
    "VerticalWallSpec",
    "WallClassification",
    "WallKind",
    "Witness",
    "build_vertical",
    "check_star",
    "classify_enumerative",
    "classify_vertical",
    "classify_vertical_closed_form",
    "decide_involution",
    "e_in_hw",
    "fm_reduce",
    "isotropic_witness",
    "reduction_to_vertical",
    "split_theta",
    "wall_type_via_fm",
]

