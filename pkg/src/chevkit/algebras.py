"""Composition algebras, Veronese maps and the E6 / E7 coordinate models.

Algebras are finite-dimensional over an exact field; elements are coefficient
tuples.  Octonion products are never reassociated: every formula below spells
out its parenthesization.
"""

from __future__ import annotations

import itertools
import random as _random

from . import linalg
from .errors import ChevkitError, FieldError
from .exactfield import RationalFunctionField

__all__ = [
    "CompAlg", "AlgElem", "ProjPoint", "base_algebra", "cayley_dickson", "quaternions",
    "split_octonions_cd", "zorn_octonions", "inseparable_quaternion", "embed_inseparable",
    "veronese", "veronese_affine", "veronese_relations", "e6_equations", "e6_residuals",
    "cubic_C", "symp_triple", "aut_A", "is_admissible", "admissible_from", "apply_matrix",
    "is_automorphism", "dpv_nu", "phi_sigma", "square_coordinates", "AlgebraError",
    "check_e6_images", "check_cubic_lines", "inseparable_setting", "check_group_law",
    "check_admissible_set",
]


class AlgebraError(ChevkitError):
    pass


class AlgElem:
    __slots__ = ("alg", "c")

    def __init__(self, alg, coeffs):
        self.alg = alg
        self.c = tuple(coeffs)

    def __add__(self, o):
        o = self.alg.coerce(o)
        return AlgElem(self.alg, (a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, o):
        o = self.alg.coerce(o)
        return AlgElem(self.alg, (a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, o):
        return self.alg.coerce(o) - self

    def __neg__(self):
        return AlgElem(self.alg, (-a for a in self.c))

    def __mul__(self, o):
        if isinstance(o, AlgElem):
            return AlgElem(self.alg, self.alg._mul(self.c, o.c))
        k = self.alg.F.convert(o)
        return AlgElem(self.alg, (a * k for a in self.c))

    def __rmul__(self, k):
        k = self.alg.F.convert(k)
        return AlgElem(self.alg, (k * a for a in self.c))

    def conj(self):
        return AlgElem(self.alg, self.alg._conj(self.c))

    def norm(self):
        return self.alg.scalar_part(self * self.conj())

    def trace(self):
        return self.alg.scalar_part(self + self.conj())

    def inverse(self):
        n = self.norm()
        if not n:
            raise AlgebraError("element of norm zero is not invertible")
        return self.conj() * n.inverse()

    def is_zero(self):
        return all(not a for a in self.c)

    def __eq__(self, o):
        return isinstance(o, AlgElem) and o.alg is self.alg and self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return "%s(%s)" % (self.alg.tag, ", ".join(map(str, self.c)))


class CompAlg:
    """A unital algebra with standard involution, given by product/conjugation on tuples."""

    def __init__(self, F, dim, tag, mul, conj, unit):
        self.F, self.dim, self.tag = F, dim, tag
        self._mul, self._conj = mul, conj
        self._unit = tuple(F.convert(u) for u in unit)
        self._unit_pos = next(i for i, u in enumerate(self._unit) if u)

    def elem(self, coeffs):
        coeffs = [self.F.convert(c) for c in coeffs]
        if len(coeffs) != self.dim:
            raise AlgebraError("need %d coefficients" % self.dim)
        return AlgElem(self, coeffs)

    def scalar(self, k):
        k = self.F.convert(k)
        return AlgElem(self, (k * u for u in self._unit))

    def coerce(self, x):
        if isinstance(x, AlgElem):
            if x.alg is not self:
                raise AlgebraError("elements of different algebras")
            return x
        return self.scalar(x)

    @property
    def one(self):
        return self.scalar(1)

    @property
    def zero(self):
        return self.scalar(0)

    def basis(self):
        z, o = self.F.zero, self.F.one
        return [AlgElem(self, (o if j == i else z for j in range(self.dim))) for i in range(self.dim)]

    def scalar_part(self, x):
        """The field element k with x = k.1 (an error if x is not scalar)."""
        k = x.c[self._unit_pos] / self._unit[self._unit_pos]
        if x != self.scalar(k):
            raise AlgebraError("not a scalar: %r" % (x,))
        return k

    def random(self, rng=None, **kw):
        rng = rng or _random
        return AlgElem(self, (self.F.random(rng, **kw) for _ in range(self.dim)))

    def __repr__(self):
        return "CompAlg(%s, dim=%d over %s)" % (self.tag, self.dim, self.F.name())


def base_algebra(F):
    """The field itself, with trivial involution."""
    return CompAlg(F, 1, "K", lambda a, b: (a[0] * b[0],), lambda a: a, (1,))


def cayley_dickson(A, primitive):
    """Double A: (a,b)(c,d) = (ac + mu d conj(b), conj(a) d + c b), conj(a,b) = (conj a, -b)."""
    if A.dim > 4:
        raise AlgebraError("Cayley-Dickson doubling beyond dimension 8")
    mu = A.F.convert(primitive)
    d = A.dim
    mulA, conjA = A._mul, A._conj

    def add(x, y):
        return tuple(p + q for p, q in zip(x, y))

    def mul(x, y):
        a, b, c, e = x[:d], x[d:], y[:d], y[d:]
        first = add(mulA(a, c), tuple(mu * t for t in mulA(e, conjA(b))))
        second = add(mulA(conjA(a), e), mulA(c, b))
        return first + second

    def conj(x):
        return tuple(conjA(x[:d])) + tuple(-t for t in x[d:])

    unit = tuple(A._unit) + (0,) * d
    return CompAlg(A.F, 2 * d, "CD(%s,%s)" % (A.tag, mu), mul, conj, unit)


def quaternions(F, a, b):
    """Quaternion algebra (a, b) by two doublings of the base field."""
    return cayley_dickson(cayley_dickson(base_algebra(F), a), b)


def split_octonions_cd(H):
    """The split octonions: H doubled with primitive 1."""
    return cayley_dickson(H, 1)


def zorn_octonions(F):
    """Split octonions as Zorn vector matrices (x0, [x1,x2,x3], [x4,x5,x6], x7).

    The lower-left column is v = (x1,x2,x3) and the upper-right column u = (x4,x5,x6);
    conj swaps x0 and x7 and negates u and v; the norm is x0 x7 - u.v."""

    def dot(p, q):
        return p[0] * q[0] + p[1] * q[1] + p[2] * q[2]

    def cross(p, q):
        return (p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0])

    def mul(x, y):
        a, v, u, b = x[0], x[1:4], x[4:7], x[7]
        a2, v2, u2, b2 = y[0], y[1:4], y[4:7], y[7]
        top = a * a2 + dot(u, v2)
        bot = b * b2 + dot(v, u2)
        cu, cv = cross(v, v2), cross(u, u2)
        nu = tuple(a * p + b2 * r - s for p, r, s in zip(u2, u, cu))
        nv = tuple(a2 * p + b * r + s for p, r, s in zip(v, v2, cv))
        return (top,) + nv + nu + (bot,)

    def conj(x):
        return (x[7],) + tuple(-t for t in x[1:7]) + (x[0],)

    return CompAlg(F, 8, "Zorn", mul, conj, (1, 0, 0, 0, 0, 0, 0, 1))


def square_coordinates(F, f):
    """Coordinates of f over F^2 in the monomial basis t^e, e in {0,1}^m, for F = F_2(t_1..t_m).

    Returns a tuple c of elements of F with f = sum c_e^2 t^e."""
    if not isinstance(F, RationalFunctionField) or F.characteristic != 2:
        raise FieldError("square coordinates need a rational function field over F_2")
    f = F.convert(f)
    num, den = f.rep
    P = (num * den).to_dict()
    m = len(F.names)
    parts = {}
    for mono, coef in P.items():
        if int(coef) % 2 == 0:
            continue
        eps = tuple(e % 2 for e in mono)
        half = tuple((e - p) // 2 for e, p in zip(mono, eps))
        parts.setdefault(eps, {})[half] = 1
    dinv = F._wrap(F._canon(F._one, den))
    out = []
    for eps in itertools.product((0, 1), repeat=m):
        d = parts.get(eps)
        s = F._wrap(F._canon(F.ctx.from_dict(d), F._one)) if d else F.zero
        out.append(s * dinv)
    return tuple(out)


def _check_inseparable(F, l1, l2):
    if F.characteristic != 2:
        raise AlgebraError("inseparable quaternions need characteristic 2")
    c1, c2, cf = (square_coordinates(F, x) for x in (F.one, l1, l2))
    if linalg.rank([list(c1), list(c2)]) < 2:
        raise AlgebraError("l1 is a square")
    if linalg.rank([list(c1), list(c2), list(cf)]) < 3:
        raise AlgebraError("l2 lies in K^2 + l1 K^2")


def inseparable_quaternion(F, l1, l2, check=True):
    """The purely inseparable degree-4 extension K(sqrt l1, sqrt l2) with trivial involution."""
    l1, l2 = F.convert(l1), F.convert(l2)
    if check:
        _check_inseparable(F, l1, l2)
    l12 = l1 * l2

    def mul(x, y):
        x0, x1, x2, x3 = x
        y0, y1, y2, y3 = y
        return (x0 * y0 + l1 * x1 * y1 + l2 * x2 * y2 + l12 * x3 * y3,
                x0 * y1 + x1 * y0 + l2 * x2 * y3 + l2 * x3 * y2,
                x0 * y2 + x2 * y0 + l1 * x1 * y3 + l1 * x3 * y1,
                x0 * y3 + x1 * y2 + x2 * y1 + x3 * y0)

    A = CompAlg(F, 4, "Hins", mul, lambda x: x, (1, 0, 0, 0))
    A.l1, A.l2 = l1, l2
    return A


def embed_inseparable(H, O, x):
    """The embedding of the inseparable quaternions into Zorn's split octonions."""
    l1, l2 = H.l1, H.l2
    x0, x1, x2, x3 = x.c
    return O.elem((x0, l1 * x1, l2 * x2, x3, x1, x2, l1 * l2 * x3, x0))


# ---------------------------------------------------------------------------
# projective points and Veronese maps

class ProjPoint:
    """A point of projective space, stored normalized (first nonzero coordinate 1)."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = list(coords)
        lead = next((c for c in coords if c), None)
        if lead is None:
            raise AlgebraError("the zero vector is not a projective point")
        inv = lead.inverse()
        self.coords = tuple(c * inv for c in coords)

    def __eq__(self, o):
        return isinstance(o, ProjPoint) and self.coords == o.coords

    def __hash__(self):
        return hash(self.coords)

    def __len__(self):
        return len(self.coords)

    def __repr__(self):
        return "(" + ",".join(map(str, self.coords)) + ")"


def _flatten(F, parts):
    out = []
    for p in parts:
        if isinstance(p, AlgElem):
            out.extend(p.c)
        else:
            out.append(F.convert(p))
    return out


def veronese(alg, x, y, z, projective=True):
    """(x xbar, y ybar, z zbar, y zbar, z xbar, x ybar) for an associative algebra."""
    F = alg.F
    parts = [x.norm(), y.norm(), z.norm(), y * z.conj(), z * x.conj(), x * y.conj()]
    v = _flatten(F, parts)
    return ProjPoint(v) if projective else v


def veronese_affine(alg, X, Y, projective=True):
    """(X Xbar, Y Ybar, 1, Y, Xbar, X Ybar)."""
    F = alg.F
    v = _flatten(F, [X.norm(), Y.norm(), F.one, Y, X.conj(), X * Y.conj()])
    return ProjPoint(v) if projective else v


def _split(alg, v):
    coords = v.coords if isinstance(v, ProjPoint) else tuple(v)
    d = alg.dim
    if len(coords) != 3 + 3 * d:
        raise AlgebraError("expected %d coordinates, got %d" % (3 + 3 * d, len(coords)))
    x = coords[:3]
    X = [AlgElem(alg, coords[3 + i * d:3 + (i + 1) * d]) for i in range(3)]
    return x, X


def e6_residuals(alg, v):
    """The left-minus-right sides of the six (scalar and algebra valued) quadric relations
    x2x3 = X1 X1bar, x3x1 = X2 X2bar, x1x2 = X3 X3bar,
    X2X3 = x1 X1bar, X3X1 = x2 X2bar, X1X2 = x3 X3bar."""
    (x1, x2, x3), (X1, X2, X3) = _split(alg, v)
    return [x2 * x3 - X1.norm(), x3 * x1 - X2.norm(), x1 * x2 - X3.norm(),
            X2 * X3 - X1.conj() * x1, X3 * X1 - X2.conj() * x2, X1 * X2 - X3.conj() * x3]


def e6_equations(alg, v):
    """Whether v satisfies all 3 + 3*dim scalar equations (27 for the octonions)."""
    for r in e6_residuals(alg, v):
        if isinstance(r, AlgElem):
            if not r.is_zero():
                return False
        elif r:
            return False
    return True


veronese_relations = e6_equations


def cubic_C(alg, v):
    """x1x2x3 - x1 n(X1) - x2 n(X2) - x3 n(X3) + (X1X2)X3 + X3bar(X2bar X1bar)."""
    (x1, x2, x3), (X1, X2, X3) = _split(alg, v)
    tr = (X1 * X2) * X3 + X3.conj() * (X2.conj() * X1.conj())
    return x1 * x2 * x3 - x1 * X1.norm() - x2 * X2.norm() - x3 * X3.norm() + alg.scalar_part(tr)


def symp_triple(alg, X, Y, Z):
    """(C(t1+t2+t3), n(1 + Z(YX))) for the points t1, t2, t3 of three symps."""
    F = alg.F
    o, z = F.one, F.zero
    zero = alg.zero
    t1 = _flatten(F, [z, o, X.norm(), X.conj(), zero, zero])
    t2 = _flatten(F, [Y.norm(), z, o, zero, Y.conj(), zero])
    t3 = _flatten(F, [o, Z.norm(), z, zero, zero, Z.conj()])
    s = [a + b + c for a, b, c in zip(t1, t2, t3)]
    w = alg.one + Z * (Y * X)
    return cubic_C(alg, s), w.norm()


# ---------------------------------------------------------------------------
# the automorphisms A(a,b,c,d) of the split octonions fixing inseparable quaternions

def aut_A(H, a, b, c, d):
    """The 8x8 matrix A(a,b,c,d) over K (characteristic 2) of the automorphisms fixing H."""
    F = H.F
    l1, l2 = H.l1, H.l2
    a, b, c, d = (F.convert(t) for t in (a, b, c, d))
    l12 = l1 * l2
    i1, i2 = l1.inverse(), l2.inverse()
    e = F.one + a
    return [
        [e, l1 * b, l2 * c, d, b, c, l12 * d, a],
        [b, e, l2 * d, i1 * c, i1 * a, d, l2 * c, b],
        [c, l1 * d, e, i2 * b, d, i2 * a, l1 * b, c],
        [l12 * d, l12 * c, l12 * b, e, l2 * c, l1 * b, l12 * a, l12 * d],
        [l1 * b, l1 * a, l12 * d, c, e, l1 * d, l12 * c, l1 * b],
        [l2 * c, l12 * d, l2 * a, b, l2 * d, e, l12 * b, l2 * c],
        [d, c, b, i1 * i2 * a, i1 * c, i2 * b, e, d],
        [a, l1 * b, l2 * c, d, b, c, l12 * d, e],
    ]


def is_admissible(H, a, b, c, d):
    """a + a^2 + l1 b^2 + l2 c^2 + l1 l2 d^2 = 0."""
    F = H.F
    a, b, c, d = (F.convert(t) for t in (a, b, c, d))
    return not (a + a * a + H.l1 * b * b + H.l2 * c * c + H.l1 * H.l2 * d * d)


def admissible_from(H, b, c, d):
    """The admissible element (1,b,c,d)^-1."""
    return H.elem((1, b, c, d)).inverse()


def apply_matrix(A, X):
    """The linear map X -> X A on coordinate rows."""
    return AlgElem(X.alg, linalg.vecmat(list(X.c), A))


def is_automorphism(A, O, fixed=()):
    """A preserves the product on all basis pairs and fixes the given elements."""
    B = O.basis()
    img = [apply_matrix(A, x) for x in B]
    for i, j in itertools.product(range(8), repeat=2):
        if apply_matrix(A, B[i] * B[j]) != img[i] * img[j]:
            return False
    return all(apply_matrix(A, x) == x for x in fixed)


# ---------------------------------------------------------------------------
# the dual polar affine octonion Veronese map into a 56-dimensional space

def dpv_nu(alg, l1, l2, l3, X1, X2, X3, projective=True):
    """The 56 coordinates (1, l, X, n(X_i)-l_j l_k, l_i Xbar_i - X_j X_k, last)."""
    F = alg.F
    l1, l2, l3 = (F.convert(t) for t in (l1, l2, l3))
    last = (l1 * X1.norm() + l2 * X2.norm() + l3 * X3.norm()
            - alg.scalar_part(X3.conj() * (X2.conj() * X1.conj()) + (X1 * X2) * X3)
            - l1 * l2 * l3)
    parts = [F.one, l1, l2, l3, X1, X2, X3,
             X1.norm() - l2 * l3, X2.norm() - l3 * l1, X3.norm() - l1 * l2,
             X1.conj() * l1 - X2 * X3, X2.conj() * l2 - X3 * X1, X3.conj() * l3 - X1 * X2,
             last]
    v = _flatten(F, parts)
    if len(v) != 4 + 6 * alg.dim + 4:
        raise AlgebraError("unexpected coordinate count")
    return ProjPoint(v) if projective else v


def phi_sigma(alg, v, sigma):
    """Apply sigma (a function on algebra elements) to the six algebra blocks of a 56-vector."""
    coords = list(v.coords if isinstance(v, ProjPoint) else v)
    d = alg.dim
    starts = [4, 4 + d, 4 + 2 * d, 7 + 3 * d, 7 + 4 * d, 7 + 5 * d]
    for s in starts:
        X = AlgElem(alg, coords[s:s + d])
        coords[s:s + d] = list(sigma(X).c)
    return ProjPoint(coords) if isinstance(v, ProjPoint) else coords


# ---------------------------------------------------------------------------
# sampled identity checks (shared by the command line and the tests)

def _rand_nonzero(F, rng):
    while True:
        x = F.random(rng)
        if x:
            return x


def check_e6_images(F, samples, rng):
    """Number of rho' images (Zorn octonions over F) passing the 27 equations."""
    O = zorn_octonions(F)
    return sum(e6_equations(O, veronese_affine(O, O.random(rng), O.random(rng))) for _ in range(samples))


def check_cubic_lines(F, samples, rng):
    """Number of samples with C(lambda p + mu p') = 0 for two rho' images p, p'."""
    O = zorn_octonions(F)
    ok = 0
    for _ in range(samples):
        p = veronese_affine(O, O.random(rng), O.random(rng), projective=False)
        r = veronese_affine(O, O.random(rng), O.random(rng), projective=False)
        lam, mu = F.random(rng), F.random(rng)
        ok += not cubic_C(O, [lam * a + mu * b for a, b in zip(p, r)])
    return ok


def inseparable_setting(degree_cap=80):
    """K = F_2(l1, l2) with the inseparable quaternions H and Zorn's octonions over K."""
    from .exactfield import GF, RationalFunctions
    K = RationalFunctions(GF(2), "l1,l2", degree_cap=degree_cap)
    l1, l2 = K.gens
    return K, inseparable_quaternion(K, l1, l2), zorn_octonions(K)


def check_group_law(samples, rng, setting=None):
    """Number of admissible pairs x, y with A(x) A(y) = A(x + y)."""
    K, H, _ = setting or inseparable_setting()
    ok = 0
    for _ in range(samples):
        x = admissible_from(H, *(K.random(rng, degree=1) for _ in range(3)))
        y = admissible_from(H, *(K.random(rng, degree=1) for _ in range(3)))
        ok += linalg.equal(linalg.mul(aut_A(H, *x.c), aut_A(H, *y.c)), aut_A(H, *(x + y).c))
    return ok


def check_admissible_set(samples, rng, setting=None):
    """(conforming admissible, non-conforming rejected): (1,b,c,d)^-1 must be admissible
    and a random tuple with a != 0 that is not of that form must not be."""
    K, H, _ = setting or inseparable_setting()
    good = bad = 0
    for _ in range(samples):
        x = admissible_from(H, *(K.random(rng, degree=1) for _ in range(3)))
        good += is_admissible(H, *x.c)
        t = [_rand_nonzero(K, rng)] + [K.random(rng, degree=1) for _ in range(3)]
        # conforming tuples are exactly those whose inverse has leading coordinate 1
        conforming = H.elem(t).norm() and H.elem(t).inverse().c[0] == K.one
        bad += conforming or not is_admissible(H, *t)
    return good, bad
