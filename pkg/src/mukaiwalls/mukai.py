"""Mukai vectors, the extended Neron-Severi lattice and the rank-24 Mukai lattice.

A Mukai vector (r, theta, s) pairs as
    (v, w) = theta_v . theta_w - r_v s_w - r_w s_v,
so that ((0, 0, 1), (r, theta, s)) = -r.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
import re

from . import intmat as im
from .lattice import (
    GramLattice,
    IntegralIsometry,
    Sublattice,
    discriminant_group,
    divisibility,
    orthogonal_complement,
    restrict,
)


class MukaiError(ValueError):
    pass


class NonIntegralError(MukaiError):
    def __init__(self, msg, denominator=None):
        super().__init__(msg)
        self.denominator = denominator


class Monodromy(str, Enum):
    NOT_MONODROMY = "not_monodromy"
    PLUS = "monodromy_plus"
    MINUS = "monodromy_minus"


class DiscAction(str, Enum):
    PLUS_ID = "plus_id"
    MINUS_ID = "minus_id"
    OTHER = "other"


_DEFAULT_NAMES = {1: ("H",), 2: ("H", "K")}


@dataclass(frozen=True)
class NSData:
    """Neron-Severi lattice of the surface with a distinguished primitive class D.

    ``k3_embedding`` optionally gives the rows of a primitive embedding of NS
    into H^2 = U^3 + E8(-1)^2 (22 coordinates).  For rank <= 3 a standard
    embedding into U^3 is built automatically.
    """

    gram: GramLattice
    D: tuple = None
    names: tuple = None
    k3_embedding: tuple = None

    def __post_init__(self):
        if not isinstance(self.gram, GramLattice):
            object.__setattr__(self, "gram", GramLattice(self.gram))
        rho = self.gram.rank
        D = self.D if self.D is not None else (1,) + (0,) * (rho - 1)
        D = self.gram.check(D)
        if im.vec_gcd(D) != 1:
            raise MukaiError("distinguished class D must be primitive")
        object.__setattr__(self, "D", D)
        names = self.names or _DEFAULT_NAMES.get(rho) or tuple(f"e{i + 1}" for i in range(rho))
        if len(names) != rho:
            raise MukaiError("need one name per NS basis vector")
        object.__setattr__(self, "names", tuple(names))
        if self.k3_embedding is not None:
            emb = tuple(tuple(int(a) for a in row) for row in self.k3_embedding)
            object.__setattr__(self, "k3_embedding", emb)
            _check_k3_embedding(self.gram, emb)

    @classmethod
    def rank_one(cls, d2):
        if d2 % 2:
            raise MukaiError("D^2 must be even")
        return cls(GramLattice([[d2]]))

    @property
    def rank(self):
        return self.gram.rank

    @property
    def D2(self):
        return self.pair(self.D, self.D)

    @property
    def D_div(self):
        return divisibility(self.gram, self.D)

    def pair(self, x, y):
        G = self.gram.gram
        return sum(a * G[i][j] * b for i, a in enumerate(x) for j, b in enumerate(y))

    def vec(self, r, theta, s):
        if isinstance(theta, int):
            theta = (theta,) if self.rank == 1 else None
        if theta is None or len(theta) != self.rank:
            raise MukaiError(f"theta must have {self.rank} coordinates")
        return MukaiVector(int(r), tuple(int(t) for t in theta), int(s), self)

    def from_coords(self, x):
        x = tuple(int(a) for a in x)
        if len(x) != self.rank + 2:
            raise MukaiError("wrong number of Mukai coordinates")
        return MukaiVector(x[0], x[1:-1], x[-1], self)

    def to_json(self):
        doc = {"gram": [list(r) for r in self.gram.gram], "D": list(self.D)}
        if self.names != _DEFAULT_NAMES.get(self.rank):
            doc["names"] = list(self.names)
        if self.k3_embedding is not None:
            doc["k3_embedding"] = [list(r) for r in self.k3_embedding]
        return doc

    @classmethod
    def from_json(cls, doc):
        extra = set(doc) - {"gram", "D", "names", "k3_embedding"}
        if extra:
            raise MukaiError(f"unknown NS keys: {sorted(extra)}")
        if "gram" not in doc:
            raise MukaiError("NS document needs a 'gram' entry")
        D = doc.get("D")
        names = doc.get("names")
        return cls(GramLattice(doc["gram"]), tuple(D) if D is not None else None,
                   tuple(names) if names else None, doc.get("k3_embedding"))


@dataclass(frozen=True)
class MukaiVector:
    r: int
    theta: tuple
    s: int
    ns: NSData

    def coords(self):
        return (self.r,) + tuple(self.theta) + (self.s,)

    def _same(self, other):
        if self.ns != other.ns:
            raise MukaiError("Mukai vectors over different NS lattices")

    def __add__(self, other):
        self._same(other)
        return self.ns.from_coords(a + b for a, b in zip(self.coords(), other.coords()))

    def __sub__(self, other):
        self._same(other)
        return self.ns.from_coords(a - b for a, b in zip(self.coords(), other.coords()))

    def __neg__(self):
        return self.ns.from_coords(-a for a in self.coords())

    def __rmul__(self, k):
        return self.ns.from_coords(k * a for a in self.coords())

    def square(self):
        return mukai_pairing(self, self)

    def is_primitive(self):
        return im.vec_gcd(self.coords()) == 1

    def primitive_part(self):
        g = im.vec_gcd(self.coords())
        if g == 0:
            raise MukaiError("zero vector")
        return self.ns.from_coords(a // g for a in self.coords())

    def to_json(self):
        return {"r": self.r, "theta": list(self.theta), "s": self.s}

    def __str__(self):
        th = ",".join(str(t) for t in self.theta)
        return f"({self.r},{th},{self.s})"


def vector_from_json(ns, doc):
    extra = set(doc) - {"r", "theta", "s"}
    if extra:
        raise MukaiError(f"unknown Mukai vector keys: {sorted(extra)}")
    return ns.vec(doc["r"], tuple(doc["theta"]), doc["s"])


def mukai_pairing(v, w):
    v._same(w)
    return v.ns.pair(v.theta, w.theta) - v.r * w.s - w.r * v.s


@lru_cache(maxsize=None)
def alg_mukai_lattice(ns):
    """Z + NS + Z with the Mukai pairing, coordinates (r, theta, s)."""
    rho = ns.rank
    n = rho + 2
    G = [[0] * n for _ in range(n)]
    G[0][n - 1] = G[n - 1][0] = -1
    for i in range(rho):
        for j in range(rho):
            G[1 + i][1 + j] = ns.gram.gram[i][j]
    return GramLattice(G)


# -- the rank 24 Mukai lattice U^4 + E8(-1)^2 -------------------------------

_E8 = (
    (2, -1, 0, 0, 0, 0, 0, 0),
    (-1, 2, -1, 0, 0, 0, 0, 0),
    (0, -1, 2, -1, 0, 0, 0, -1),
    (0, 0, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, 0),
    (0, 0, -1, 0, 0, 0, 0, 2),
)


@lru_cache(maxsize=None)
def full_mukai_lattice():
    """U (for H^0 + H^4) + U^3 + E8(-1)^2; coordinates 2..23 model H^2(S)."""
    G = [[0] * 24 for _ in range(24)]
    for k in range(4):
        G[2 * k][2 * k + 1] = G[2 * k + 1][2 * k] = 1
    for b in (8, 16):
        for i in range(8):
            for j in range(8):
                G[b + i][b + j] = -_E8[i][j]
    return GramLattice(G)


def _auto_k3_embedding(gram):
    """Embed an even lattice of rank <= 3 into U^3 as x_i = e_i + sum_j y_ij f_j."""
    rho = len(gram)
    if rho > 3:
        return None
    rows = []
    for i in range(rho):
        row = [0] * 22
        row[2 * i] = 1
        for j in range(rho):
            if j == i:
                row[2 * j + 1] += gram[i][i] // 2
            elif i < j:
                row[2 * j + 1] += gram[i][j]
        rows.append(tuple(row))
    return tuple(rows)


def _check_k3_embedding(gram, emb):
    K3 = [list(r[2:]) for r in full_mukai_lattice().gram[2:]]
    if len(emb) != gram.rank or any(len(r) != 22 for r in emb):
        raise MukaiError("k3_embedding must have one 22-entry row per NS basis vector")
    E = [list(r) for r in emb]
    if im.matmul(im.matmul(E, K3), im.transpose(E)) != [list(r) for r in gram.gram]:
        raise MukaiError("k3_embedding does not preserve the NS pairing")
    if im.invariant_factors(E)[-1] != 1:
        raise MukaiError("k3_embedding is not primitive")


@lru_cache(maxsize=None)
def full_embedding(ns):
    """Rows: images of the algebraic Mukai basis (r, theta_i, s) in the rank-24 lattice.

    (1, 0, 0) -> (1, 0) and (0, 0, 1) -> (0, -1) in the first U factor; NS goes
    into the H^2 coordinates via ``k3_embedding`` (or the automatic one).
    """
    emb = ns.k3_embedding
    if emb is None:
        emb = _auto_k3_embedding(ns.gram.gram)
        if emb is None:
            raise MukaiError("NS of rank > 3 needs an explicit k3_embedding")
        _check_k3_embedding(ns.gram, emb)
    rows = [(1, 0) + (0,) * 22]
    rows += [(0, 0) + tuple(r) for r in emb]
    rows.append((0, -1) + (0,) * 22)
    return tuple(rows)


def embed(v):
    E = full_embedding(v.ns)
    x = v.coords()
    return tuple(sum(x[i] * E[i][k] for i in range(len(x))) for k in range(24))


@lru_cache(maxsize=4096)
def _v_perp_cached(vfull):
    Lam = full_mukai_lattice()
    return orthogonal_complement(Lam, Sublattice((vfull,)))


def v_perp(v):
    """Basis of v-perp inside the rank-24 Mukai lattice (a model of H^2(M))."""
    return _v_perp_cached(embed(v))


def v_perp_lattice(v):
    return restrict(full_mukai_lattice(), v_perp(v))


# -- elementary vector operations --------------------------------------------

def decompose_v_plus_t(v):
    """v = w + t with w = v + (0,0,1), t = (0,0,-1), and the pairing report."""
    ns = v.ns
    t = ns.vec(0, (0,) * ns.rank, -1)
    w = v - t
    v2 = v.square()
    report = {
        "w2": w.square(),
        "t2": t.square(),
        "wv": mukai_pairing(w, v),
        "vt": mukai_pairing(v, t),
    }
    expected = {"w2": v2 - 2 * v.r, "t2": 0, "wv": v2 - v.r, "vt": v.r}
    if report != expected:
        raise AssertionError(f"decomposition identities violated: {report} != {expected}")
    return w, t, report


def compute_e(v):
    """e = (r, theta, theta^2/r - s): orthogonal to v with e^2 = -v^2."""
    if v.r == 0:
        raise MukaiError("e is undefined for r = 0")
    th2 = v.ns.pair(v.theta, v.theta)
    if th2 % v.r:
        raise NonIntegralError(f"e not integral: r={v.r} does not divide theta^2={th2}",
                               denominator=v.r // _gcd(v.r, th2))
    e = v.ns.vec(v.r, v.theta, th2 // v.r - v.s)
    if not any(e.coords()):
        raise MukaiError("e = 0")
    assert mukai_pairing(e, v) == 0 and e.square() == -v.square()
    return e


def _gcd(a, b):
    return im.vec_gcd((a, b))


def reflect(e, x):
    """x - 2(x, e)/e^2 e, raising NonIntegralError when the image is not integral."""
    e2 = e.square()
    if e2 == 0:
        raise MukaiError("cannot reflect in an isotropic vector")
    num = 2 * mukai_pairing(x, e)
    coeff = Fraction(num, e2)
    img = [Fraction(a) - coeff * b for a, b in zip(x.coords(), e.coords())]
    den = 1
    for a in img:
        den = den * a.denominator // _gcd(den, a.denominator)
    if den != 1:
        raise NonIntegralError(f"reflection image has denominator {den}", denominator=den)
    return x.ns.from_coords(int(a) for a in img)


# -- isometry words -----------------------------------------------------------

class Atom:
    def matrix(self, ns):
        """Matrix acting on column coordinates (r, theta, s)."""
        n = ns.rank + 2
        cols = [self.apply(ns.from_coords(im.identity(n)[k])).coords() for k in range(n)]
        return im.transpose([list(c) for c in cols])


@dataclass(frozen=True)
class Exp(Atom):
    L: tuple

    def apply(self, v):
        ns = v.ns
        L = self.L
        r, th, s = v.r, v.theta, v.s
        L2 = ns.pair(L, L)
        return ns.vec(r, tuple(t + r * l for t, l in zip(th, L)),
                      s + ns.pair(L, th) + r * L2 // 2)

    def render(self, ns):
        terms = []
        for a, name in zip(self.L, ns.names):
            if a:
                terms.append(f"{a}{name}" if not terms or a < 0 else f"+{a}{name}")
        return f"exp({''.join(terms) or '0'})"


@dataclass(frozen=True)
class Shift(Atom):
    def apply(self, v):
        return -v

    def render(self, ns):
        return "shift"


@dataclass(frozen=True)
class Twist(Atom):
    """Spherical twist by O: the reflection in (1, 0, 1)."""

    def apply(self, v):
        w = v.ns.vec(1, (0,) * v.ns.rank, 1)
        return v + mukai_pairing(v, w) * w

    def render(self, ns):
        return "twist"


@dataclass(frozen=True)
class Reflect(Atom):
    w: tuple  # Mukai coordinates

    def apply(self, v):
        return reflect(v.ns.from_coords(self.w), v)

    def render(self, ns):
        return "refl(" + ",".join(str(a) for a in self.w) + ")"

    def validate(self, ns):
        if ns.from_coords(self.w).square() == 0:
            raise MukaiError("refl atom needs a non-isotropic vector")

    def integral_on_lattice(self, ns):
        w = ns.from_coords(self.w)
        return (2 * divisibility(alg_mukai_lattice(ns), w.coords())) % w.square() == 0


@dataclass(frozen=True)
class IsometryWord:
    """Composition of atoms written like a composition of maps.

    ``steps[0]`` is applied last: the word ``exp(-1H);shift;twist;exp(-4H)``
    means exp(-H) o [-1] o T_O o exp(-4H).
    """

    steps: tuple
    ns: NSData

    def __post_init__(self):
        for a in self.steps:
            if isinstance(a, Reflect):
                a.validate(self.ns)
            elif isinstance(a, Exp) and len(a.L) != self.ns.rank:
                raise MukaiError("exp atom has wrong NS dimension")

    def trace(self, v):
        out = [v]
        for atom in reversed(self.steps):
            out.append(atom.apply(out[-1]))
        return out

    def __call__(self, v):
        return self.trace(v)[-1]

    def is_lattice_isometry(self):
        """False when some reflection atom is only integral on particular vectors."""
        return all(a.integral_on_lattice(self.ns) for a in self.steps if isinstance(a, Reflect))

    def matrix(self):
        """Integral matrix on column coordinates; NonIntegralError if there is none."""
        n = self.ns.rank + 2
        M = im.identity(n)
        for atom in self.steps:
            M = im.matmul(M, atom.matrix(self.ns))
        return M

    def inverse(self):
        inv = []
        for a in reversed(self.steps):
            if isinstance(a, Exp):
                inv.append(Exp(tuple(-x for x in a.L)))
            else:
                inv.append(a)
        return IsometryWord(tuple(inv), self.ns)

    def __matmul__(self, other):
        return IsometryWord(self.steps + other.steps, self.ns)

    def __str__(self):
        return ";".join(a.render(self.ns) for a in self.steps)


def apply_word(word, v):
    return word(v)


_TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*\*?\s*([A-Za-z_]\w*)\s*")


def _parse_linear(text, ns):
    text = text.strip()
    if re.fullmatch(r"[-+\d,\s]+", text):
        vals = tuple(int(a) for a in text.split(","))
        if len(vals) != ns.rank:
            raise MukaiError(f"exp() needs {ns.rank} coordinates")
        return vals
    coeffs = [0] * ns.rank
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise MukaiError(f"cannot parse linear form {text!r}")
        sign, num, name = m.groups()
        if pos > 0 and not sign:
            raise MukaiError(f"missing operator in {text!r}")
        if name not in ns.names:
            raise MukaiError(f"unknown NS class {name!r}; known: {', '.join(ns.names)}")
        k = int(num) if num else 1
        coeffs[ns.names.index(name)] += -k if sign == "-" else k
        pos = m.end()
    return tuple(coeffs)


def parse_word(text, ns):
    """Parse ``exp(a*H+b*K);shift;twist;refl(r,theta...,s)``."""
    steps = []
    for raw in text.split(";"):
        tok = raw.strip()
        if not tok:
            continue
        low = tok.lower()
        if low == "shift":
            steps.append(Shift())
        elif low == "twist":
            steps.append(Twist())
        elif low.startswith("exp(") and tok.endswith(")"):
            steps.append(Exp(_parse_linear(tok[4:-1], ns)))
        elif low.startswith("refl(") and tok.endswith(")"):
            try:
                w = tuple(int(a) for a in tok[5:-1].split(","))
            except ValueError:
                raise MukaiError(f"bad refl atom {tok!r}") from None
            if len(w) != ns.rank + 2:
                raise MukaiError(f"refl atom needs {ns.rank + 2} coordinates")
            steps.append(Reflect(w))
        else:
            raise MukaiError(f"unknown atom {tok!r}")
    return IsometryWord(tuple(steps), ns)


# -- monodromy and discriminant actions ---------------------------------------

def restrict_isometry(L, S, F):
    """Matrix of the full isometry F on the Hermite-reduced sublattice basis S."""
    cols = []
    for b in S.basis:
        img = im.matvec(F.matrix, b)
        c = S.coords(img)
        if c is None:
            raise MukaiError("isometry does not preserve the sublattice")
        cols.append(c)
    return IntegralIsometry(im.transpose(cols))


def reflection_on(L, S, e):
    """Integral matrix of R_e on the sublattice S (e in coordinates of L)."""
    e2 = sum(a * L.gram[i][j] * b for i, a in enumerate(e) for j, b in enumerate(e))
    Ge = im.matvec(L.gram, e)
    cols = []
    for b in S.basis:
        num = 2 * im.dot(b, Ge)
        if num % e2:
            raise NonIntegralError("reflection is not integral on the sublattice",
                                   denominator=abs(e2) // _gcd(e2, num))
        k = num // e2
        c = S.coords([x - k * y for x, y in zip(b, e)])
        if c is None:
            raise MukaiError("reflection image left the sublattice")
        cols.append(c)
    return IntegralIsometry(im.transpose(cols))


def _acts_as(Lsub, X, eps):
    for x in discriminant_group(Lsub).generators:
        gx = im.matvec(X.matrix, x)
        if any(Fraction(a - eps * b).denominator != 1 for a, b in zip(gx, x)):
            return False
    return True


def _action_on_disc(Lsub, X):
    """Classify an isometry X of a lattice by its action on the discriminant group."""
    plus = _acts_as(Lsub, X, 1)
    minus = _acts_as(Lsub, X, -1)
    if plus:
        return DiscAction.PLUS_ID
    if minus:
        return DiscAction.MINUS_ID
    return DiscAction.OTHER


def extend_to_full(g, v, eps):
    """Unique extension of an isometry of v-perp to the Mukai lattice with v -> eps v.

    ``g`` is given in the Hermite basis of ``v_perp(v)``.  Built over Q and
    checked for integrality.
    """
    if eps not in (1, -1):
        raise MukaiError("eps must be +1 or -1")
    Lam = full_mukai_lattice()
    S = v_perp(v)
    Lsub = restrict(Lam, S)
    g.check(Lsub)
    if not _acts_as(Lsub, g, eps):
        raise MukaiError(f"discriminant action is not {'+' if eps == 1 else '-'}id")
    vf = embed(v)
    C = im.transpose([list(b) for b in S.basis] + [list(vf)])
    n = len(S.basis)
    block = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for i in range(n):
        for j in range(n):
            block[i][j] = Fraction(g.matrix[i][j])
    block[n][n] = Fraction(eps)
    F = im.matmul(im.matmul(C, block), im.inverse_q(C))
    if not im.is_integral(F):
        raise NonIntegralError("extension is not integral")
    ext = IntegralIsometry(im.to_int(F))
    ext.check(Lam)
    return ext


def disc_action(g, v):
    """Action on A_{v-perp} = Z/(2n-2) of a full-lattice isometry preserving v-perp."""
    Lam = full_mukai_lattice()
    S = v_perp(v)
    X = restrict_isometry(Lam, S, g)
    return _action_on_disc(restrict(Lam, S), X)


def reflection_disc_action(v, e):
    """Action of R_e on the discriminant group of v-perp, or None if R_e is not integral."""
    Lam = full_mukai_lattice()
    S = v_perp(v)
    try:
        X = reflection_on(Lam, S, embed(e))
    except NonIntegralError:
        return None
    return _action_on_disc(restrict(Lam, S), X)


def markman_monodromy_test(v, e):
    """Whether R_e is a monodromy operator of H^2(M) = v-perp, and its sign on A_M.

    The e^2 = 2-2n test runs first: for n = 2 it coincides with e^2 = -2 and
    the discriminant group is Z/2, where Id = -Id.
    """
    v._same(e)
    v2 = v.square()
    if v2 < 2 or v2 % 2:
        raise MukaiError("v must have v^2 = 2n - 2 >= 2")
    if not v.is_primitive():
        raise MukaiError("v is not primitive")
    if mukai_pairing(v, e) != 0:
        raise MukaiError("e is not orthogonal to v")
    if not e.is_primitive():
        raise MukaiError("e is not primitive")
    e2 = e.square()
    if e2 >= 0:
        raise MukaiError("e^2 must be negative")
    n = v2 // 2 + 1
    if e2 == 2 - 2 * n:
        S = v_perp(v)
        Lam = full_mukai_lattice()
        ef = embed(e)
        Ge = im.matvec(Lam.gram, ef)
        div = im.vec_gcd([im.dot(b, Ge) for b in S.basis])
        if div % (n - 1) == 0:
            return Monodromy.MINUS
    if e2 == -2:
        return Monodromy.PLUS
    return Monodromy.NOT_MONODROMY


def divisibility_in_v_perp(v, x):
    """div(x) inside v-perp of the rank 24 lattice, x a Mukai vector in v-perp."""
    S = v_perp(v)
    Ge = im.matvec(full_mukai_lattice().gram, embed(x))
    return im.vec_gcd([im.dot(b, Ge) for b in S.basis])
