"""
The 8-dimensional orthogonal representation of the D4 subgroup.

Coordinates carry the weights e1, e2, e3, e4, -e4, -e3, -e2, -e1 and the
group acts on row vectors from the right, so the matrix of a product is the
ordinary matrix product.  Positive root elements are lower unitriangular and
are read off the fixed table below; negative simple root elements are the
transposes (the unique sl2 partner for the Chevalley basis) and every other
negative root element is obtained by s-conjugation.  D4 roots are labelled in
the D4 simple-root basis (alpha'_1 = e1-e2, alpha'_2 = e2-e3, alpha'_3 = e3-e4,
alpha'_4 = e3+e4); inside E7 node k' is E7 node D4_IN_E7[k'].
"""

from __future__ import annotations

import itertools

from . import linalg as la
from .chevalley import Chevalley, structure_constants
from .errors import FieldError, GroupError, RootError, UndecidedError
from .exactfield import quadratic_roots
from .rootsys import D4_IN_E7, build_root_system, d4_to_e7, e7_to_d4
from .weyl import longest

__all__ = [
    "ROOT_MATRICES", "D4Model", "form_preserved", "similitude_factor", "char_poly",
    "solve_sign_twist", "build_theta_E74", "theta_charpoly_expected",
    "classify_theta", "is_standard_basis",
]

# weights of the coordinates in the e-basis
WEIGHTS = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
           (0, 0, 0, -1), (0, 0, -1, 0), (0, -1, 0, 0), (-1, 0, 0, 0)]

# x_root(a) = I + a * sum(sign * E_{ij}); keys are D4 labels
ROOT_MATRICES = {
    (1, 0, 0, 0): [(2, 1, 1), (8, 7, -1)],    # e1-e2
    (1, 2, 1, 1): [(7, 1, 1), (8, 2, -1)],    # e1+e2
    (0, 1, 0, 0): [(3, 2, 1), (7, 6, -1)],    # e2-e3
    (0, 1, 1, 1): [(6, 2, 1), (7, 3, -1)],    # e2+e3
    (0, 0, 1, 0): [(4, 3, 1), (6, 5, -1)],    # e3-e4
    (0, 0, 0, 1): [(5, 3, 1), (6, 4, -1)],    # e3+e4
    (1, 1, 0, 0): [(3, 1, -1), (8, 6, 1)],    # e1-e3
    (1, 1, 1, 1): [(6, 1, -1), (8, 3, 1)],    # e1+e3
    (1, 1, 1, 0): [(4, 1, -1), (8, 5, 1)],    # e1-e4
    (1, 1, 0, 1): [(5, 1, 1), (8, 4, -1)],    # e1+e4
    (0, 1, 1, 0): [(4, 2, 1), (7, 5, -1)],    # e2-e4
    (0, 1, 0, 1): [(5, 2, -1), (7, 4, 1)],    # e2+e4
}

_E_OF_SIMPLE = [(1, -1, 0, 0), (0, 1, -1, 0), (0, 0, 1, -1), (0, 0, 1, 1)]


def e_vector(label):
    """The root in the e-basis."""
    v = [0, 0, 0, 0]
    for c, e in zip(label, _E_OF_SIMPLE):
        for k in range(4):
            v[k] += c * e[k]
    return tuple(v)


def _wt_pair(wt, label):
    """<weight, root^vee> for the orthonormal e-basis (all roots have length 2)."""
    return sum(a * b for a, b in zip(wt, e_vector(label)))


def table_bracket_constants():
    """N(a, b) for positive D4 pairs read from the matrix table: [X_a, X_b] = N X_{a+b}."""
    from fractions import Fraction
    X = {}
    for lab, ent in ROOT_MATRICES.items():
        M = [[0] * 8 for _ in range(8)]
        for i, j, s in ent:
            M[i - 1][j - 1] = s
        X[lab] = M

    def mm(A, B):
        return [[sum(A[i][k] * B[k][j] for k in range(8)) for j in range(8)] for i in range(8)]

    out = {}
    for a, b in itertools.permutations(ROOT_MATRICES, 2):
        s = tuple(x + y for x, y in zip(a, b))
        AB, BA = mm(X[a], X[b]), mm(X[b], X[a])
        C = [[AB[i][j] - BA[i][j] for j in range(8)] for i in range(8)]
        if s in X:
            i, j, _ = ROOT_MATRICES[s][0]
            n = Fraction(C[i - 1][j - 1], X[s][i - 1][j - 1])
            assert all(C[r][c] == n * X[s][r][c] for r in range(8) for c in range(8))
            out[(a, b)] = int(n)
        else:
            assert all(v == 0 for row in C for v in row), (a, b)
    return out


def solve_sign_twist(rs, embed=None):
    """Sign vector eps on positive roots making the D4 constants match the table.

    The untwisted constants (extraspecial normalization) are compared with the
    table on every positive D4 pair; eps is propagated upward from the simple
    D4 roots through the extraspecial pairs, trying all 16 choices on the
    simple roots, and every pair equation is then checked.  Among consistent
    solutions the one with fewest sign flips (then least labels) is returned,
    as {positive root index: -1}.  Returns None if no choice is consistent.
    """
    embed = embed or (lambda lab: lab)
    base = structure_constants(rs, None)
    table = table_bracket_constants()
    lab_idx = {lab: rs.idx(embed(lab)) for lab in ROOT_MATRICES}
    ratio = {}
    for (a, b), n in table.items():
        ia, ib = lab_idx[a], lab_idx[b]
        ratio[(ia, ib)] = n * base.N[ia][ib]
    labs = sorted(ROOT_MATRICES, key=lambda l: (sum(l), l))
    simple = [l for l in labs if sum(l) == 1]
    best = None
    for signs in itertools.product([1, -1], repeat=4):
        eps = {lab_idx[l]: s for l, s in zip(simple, signs)}
        for l in labs:
            i = lab_idx[l]
            if i in eps:
                continue
            for (ia, ib), r in ratio.items():
                if rs.add[ia][ib] == i and ia in eps and ib in eps:
                    eps[i] = r * eps[ia] * eps[ib]
                    break
        ok = all(eps[ia] * eps[ib] * eps[rs.add[ia][ib]] == r for (ia, ib), r in ratio.items())
        if ok:
            flips = sorted(rs.label(i) for i, e in eps.items() if e == -1)
            key = (len(flips), flips)
            if best is None or key < best[0]:
                best = (key, {i: -1 for i, e in eps.items() if e == -1})
    return None if best is None else best[1]


# --- the matrix model ------------------------------------------------------

def form_matrix(F):
    """Gram matrix of (X, Y) = sum X_i Y_{9-i}."""
    return [[F.one if i + j == 7 else F.zero for j in range(8)] for i in range(8)]


def similitude_factor(M):
    """lambda with M J M^T = lambda J, or None."""
    F = M[0][0].field
    J = form_matrix(F)
    P = la.mul(la.mul(M, J), la.transpose(M))
    lam = P[0][7]
    if la.equal(P, la.scale(J, lam)) and lam:
        return lam
    return None


def form_preserved(M):
    """True iff (XM, YM) = (X, Y) for all X, Y."""
    return similitude_factor(M) == M[0][0].field.one


def quad(v):
    """f(X) = X1 X8 + X2 X7 + X3 X6 + X4 X5."""
    return v[0] * v[7] + v[1] * v[6] + v[2] * v[5] + v[3] * v[4]


def bil(v, w):
    s = v[0].field.zero
    for i in range(8):
        s = s + v[i] * w[7 - i]
    return s


def is_standard_basis(rows):
    """f(v_i) = 0, (v_i, v_{9-i}) = 1 and all other pairings zero."""
    F = rows[0][0].field
    for i in range(8):
        if quad(rows[i]):
            return False
        for j in range(i + 1, 8):
            want = F.one if i + j == 7 else F.zero
            if bil(rows[i], rows[j]) != want:
                return False
    return True


def char_poly(M):
    """Coefficients (constant term first) of det(lambda I - M)."""
    return la.charpoly(M)


class D4Model:
    """Matrices of the D4 group (standalone D4, or the D4 subgroup of E7).

    system "D4" uses the D4 Chevalley group; "E7" interprets D4 labels as
    E7 roots on nodes 2..5 and maps E7 normal forms supported there.
    """

    def __init__(self, field, system="D4", twist="default"):
        self.F = field
        self.system = system
        if system == "D4":
            self.rs = build_root_system("D", 4)
            self._emb = lambda lab: lab
        elif system == "E7":
            self.rs = build_root_system("E", 7)
            self._emb = d4_to_e7
        else:
            raise RootError("system must be D4 or E7")
        self.G = Chevalley(self.rs, field, twist=twist)
        self.d4 = build_root_system("D", 4)
        self._X = {}
        for lab, ent in ROOT_MATRICES.items():
            X = la.zeros(field, 8)
            for i, j, s in ent:
                X[i - 1][j - 1] = field.convert(s)
            self._X[lab] = X
            neg = tuple(-c for c in lab)
            if sum(lab) == 1:
                self._X[neg] = la.transpose(X)
        for lab in sorted(ROOT_MATRICES, key=lambda l: (sum(l), l)):
            if sum(lab) > 1:
                self._X[tuple(-c for c in lab)] = self._negative_by_conjugation(lab)

    # -- labels --

    def label_of(self, root):
        """D4 label tuple of a root given as label, tuple or index of self.rs."""
        if isinstance(root, int):
            r = self.rs.roots[root]
            return r if self.system == "D4" else e7_to_d4(r)
        if isinstance(root, str):
            from .rootsys import parse_root
            r = parse_root(root, None)
            if len(r) == 7:
                return e7_to_d4(r)
            return r
        r = tuple(root)
        if len(r) == 7:
            return e7_to_d4(r)
        if r not in self._X:
            raise RootError("%s is not a D4 root" % (r,))
        return r

    def index_of(self, lab):
        return self.rs.idx(tuple(self._emb(tuple(lab))))

    # -- generators --

    def _negative_by_conjugation(self, lab):
        """X_{-beta} = sigma n_v X_{alpha_j} n_v^-1 with v(alpha_j) = beta, v a product of simple s."""
        d4 = self.d4
        b = d4.idx(tuple(-c for c in lab))
        g = b
        prefix = []
        while d4.height[g] != -1:
            for i in range(4):
                if d4.pair(g, d4.simple[i]) < 0:
                    prefix.append(i)
                    g = d4.sref[i][g]
                    break
        j = d4.simple.index(d4.neg(g))
        word = prefix + [j]
        # sign from the group's conjugation table (eta of the ambient system)
        consts = self.G.consts
        sigma = 1
        r = self.index_of(d4.roots[d4.simple[j]])
        for i in reversed(word):
            node = self.index_of(d4.roots[d4.simple[i]])
            ii = self.rs.simple.index(node)
            sigma *= consts.eta[ii][r]
            r = self.rs.sref[ii][r]
        assert r == self.index_of(d4.roots[b])
        N = la.identity(self.F, 8)
        for i in word:
            N = la.mul(N, self.s_matrix(i + 1))
        Xj = self._X[d4.roots[d4.simple[j]]]
        return la.scale(la.mul(la.mul(N, Xj), la.inverse(N)), self.F.convert(sigma))

    def X(self, root):
        return self._X[self.label_of(root)]

    def x(self, root, a):
        """Matrix of x_root(a); root is a D4 label (signed tuple), string or ambient index."""
        a = self.F.convert(a)
        X = self.X(root)
        return la.add(la.identity(self.F, 8), la.scale(X, a))

    def s_matrix(self, i):
        """s_i = x_i(1) x_-i(-1) x_i(1) for the D4 node i (1-based)."""
        lab = tuple(1 if k == i - 1 else 0 for k in range(4))
        neg = tuple(-c for c in lab)
        one = self.F.one
        return la.mul_many(self.F, self.x(lab, one), self.x(neg, -one), self.x(lab, one))

    def torus(self, t):
        """Matrix of the torus element with D4 simple-root characters t = (t1, t2, t3, t4).

        The orthogonal matrix needs sqrt(t3 t4); a field without it raises FieldError.
        """
        t1, t2, t3, t4 = [self.F.convert(x) for x in t]
        s = self.F.sqrt(t3 * t4)
        D = self.torus_similitude(t)
        return la.scale(D, s.inverse())

    def torus_similitude(self, t):
        """A diagonal similitude acting on root groups like the torus element t (factor t3 t4)."""
        t1, t2, t3, t4 = [self.F.convert(x) for x in t]
        return la.diag(self.F, [(t1 * t2).inverse(), t2.inverse(), self.F.one, t3, t4,
                                t3 * t4, t2 * t3 * t4, t1 * t2 * t3 * t4])

    def torus_coroot(self, root, d):
        """h_{root^vee}(d) = diag(d^-<wt, root^vee>)."""
        lab = self.label_of(root)
        d = self.F.convert(d)
        return la.diag(self.F, [d ** (-_wt_pair(w, lab)) for w in WEIGHTS])

    def n_matrix(self, word):
        M = la.identity(self.F, 8)
        for i in word:
            M = la.mul(M, self.s_matrix(i))
        return M

    def longest_word(self):
        """Lexicographically least reduced word of w_{D4} (node order 1', 2', 3', 4')."""
        d4 = self.d4
        w0 = longest(d4)
        target = w0.length
        from .weyl import weyl_from_word
        word = []
        cur = weyl_from_word(d4, [])
        while len(word) < target:
            for i in range(1, 5):
                nxt = cur * weyl_from_word(d4, [i])
                if nxt.length == len(word) + 1 and (nxt.inverse() * w0).length == target - len(word) - 1:
                    word.append(i)
                    cur = nxt
                    break
        return word

    # -- from normal forms --

    def d4_torus_chars(self, h):
        if self.system == "D4":
            return tuple(h)
        return tuple(h[D4_IN_E7[k] - 1] for k in range(1, 5))

    def of(self, g, similitude=False):
        """Matrix of a group element supported on the D4 subgroup (via its normal form)."""
        M = la.identity(self.F, 8)
        parts = []
        for b, t in g.G._factors(g.u1):
            parts.append(self.x(self.label_of(b), t))
        for i in g.w.reduced_word():
            node = self.rs.simple[i - 1]
            lab = self.label_of(node)
            parts.append(self.s_matrix(lab.index(1) + 1))
        ts = self.d4_torus_chars(g.h)
        parts.append(self.torus_similitude(ts) if similitude else self.torus(ts))
        for b, t in g.G._factors(g.u2):
            parts.append(self.x(self.label_of(b), t))
        for P in parts:
            M = la.mul(M, P)
        return M

    # -- the E7;4 element --

    def theta_E74(self, a, b, c, t1, t2, t3, t4, torus="coroot"):
        """Matrix of u h n_{w_D4} for the E7;4 chamber-fixing normal form."""
        F = self.F
        a, b, c, t1, t2, t3, t4 = [F.convert(x) for x in (a, b, c, t1, t2, t3, t4)]
        if not all((t1, t2, t3, t4)):
            raise GroupError("t_i must be nonzero")
        factors = [
            ((1, 0, 0, 0), t2 * t3 * t4 * a),
            ((1, 1, 0, 0), -t1 * t2 * t3 * t4 * b),
            ((1, 1, 0, 1), t1 * t2 * t3 * t4 * c),
            ((1, 1, 1, 1), -t1 * t2 ** 2 * t3 ** 2 * t4 * b),
            ((1, 2, 1, 1), t1 * t2 ** 2 * t3 ** 2 * t4 * a),
            ((0, 0, 1, 0), t2 * t3 * a),
            ((0, 1, 1, 0), -t1 * t2 * t3 * b),
            ((0, 1, 1, 1), t1 * t2 * t3 * c),
            ((0, 0, 0, 1), t2 * a),
            ((1, 1, 1, 0), -t1 * t2 * t3 ** 2 * t4 * c),
            ((0, 1, 0, 1), t1 * t2 * b),
            ((0, 1, 0, 0), t1 * c),
        ]
        M = la.identity(F, 8)
        for lab, v in factors:
            M = la.mul(M, self.x(lab, v))
        hs = [((1, 0, 0, 0), t1 * t2 ** 2 * t3 ** 3 * t4 ** 2),
              ((0, 1, 0, 0), t1 ** 2 * t2 ** 3 * t3 ** 4 * t4 ** 2),
              ((0, 0, 1, 0), t1 * t2 ** 2 * t3 ** 3 * t4),
              ((0, 0, 0, 1), t1 * t2 ** 2 * t3 ** 2 * t4)]
        for lab, v in hs:
            if torus == "coroot":
                M = la.mul(M, self.torus_coroot(lab, v))
            else:
                j = lab.index(1)
                lam = [F.one] * 4
                lam[j] = v
                M = la.mul(M, self.torus_similitude(self._coweight_chars(j, v)))
        return la.mul(M, self.n_matrix(self.longest_word()))

    def _coweight_chars(self, j, v):
        t = [self.F.one] * 4
        t[j] = v
        return t

    # -- unipotent coordinates --

    def positive_labels(self):
        return sorted(ROOT_MATRICES, key=lambda l: (sum(l), l))

    def unipotent_coords(self, M):
        """Coefficients of M = prod x_a(c_a) over positive roots in (height, label) order.

        Raises GroupError if M is not in the lower unitriangular subgroup.
        """
        F = self.F
        R = M
        out = []
        for lab in self.positive_labels():
            i, j, s = ROOT_MATRICES[lab][0]
            c = R[i - 1][j - 1] / F.convert(s)
            if c:
                out.append((lab, c))
                R = la.mul(self.x(lab, -c), R)
        if not la.equal(R, la.identity(F, 8)):
            raise GroupError("matrix is not a product of positive root elements")
        return out

    def product(self, factors):
        M = la.identity(self.F, 8)
        for lab, c in factors:
            M = la.mul(M, self.x(lab, c))
        return M

    def coords_in_order(self, M, order):
        """Coefficients b with M = prod_{k} x_{order[k]}(b_k), or None if impossible."""
        b = {lab: self.F.zero for lab in order}
        Id = la.identity(self.F, 8)
        for _ in range(12):
            P = self.product([(lab, b[lab]) for lab in order])
            R = la.mul(la.inverse(P), M)
            if la.equal(R, Id):
                return [b[lab] for lab in order]
            try:
                d = self.unipotent_coords(R)
            except GroupError:
                return None
            h = min(sum(lab) for lab, _ in d)
            for lab, c in d:
                if sum(lab) == h:
                    if lab not in b:
                        return None
                    b[lab] = b[lab] + c
        return None


def projectively_equal(A, B):
    """A = lambda B for a nonzero scalar lambda."""
    lam = None
    for ra, rb in zip(A, B):
        for a, b in zip(ra, rb):
            if b:
                if lam is None:
                    lam = a / b
                    if not lam:
                        return False
                if a != lam * b:
                    return False
            elif a:
                return False
    return lam is not None


def build_theta_E74(field, a, b, c, t1, t2, t3, t4, model=None):
    """8x8 matrix of theta = u h n_{w_D4} (torus factors read as coroot elements)."""
    model = model or D4Model(field, "D4")
    return model.theta_E74(a, b, c, t1, t2, t3, t4)


def theta_trace_param(a, b, c, t1, t2, t3, t4):
    """s with p(Y) = Y^2 - s Y + 1."""
    return t2 * a * a + t1 * t2 * b * b + t1 * c * c - t1 * t2 * a * b * c - 2


def theta_charpoly_expected(a, b, c, t1, t2, t3, t4):
    """(lambda - 1)^4 p(lambda)^2, constant term first."""
    F = a.field
    s = theta_trace_param(a, b, c, t1, t2, t3, t4)
    p = [F.one, -s, F.one]
    return la.poly_mul(la.poly_pow([-F.one, F.one], 4), la.poly_pow(p, 2))


# --- classification of theta = u h w_D4 --------------------------------------

class Classification:
    """Result of classify_theta.

    tag is "(1)", "(2)", "(3)", "(4)" or "no fixed chamber"; param the
    parameter of the canonical form; g the conjugator (rows form a standard
    basis up to the similitude factor `factor`); canonical the target matrix;
    verified means g theta g^-1 == canonical was checked literally.
    """

    def __init__(self, tag, branch, param=None, g=None, canonical=None, verified=False,
                 factor=None, note="", predicted=None):
        self.tag = tag
        self.branch = branch
        self.param = param
        self.g = g
        self.canonical = canonical
        self.verified = verified
        self.factor = factor
        self.note = note
        self.predicted = predicted

    def as_record(self):
        return {
            "class": self.tag, "branch": self.branch,
            "param": None if self.param is None else str(self.param),
            "predicted_param": None if self.predicted is None else str(self.predicted),
            "verified": self.verified,
            "similitude_factor": None if self.factor is None else str(self.factor),
            "conjugator": None if self.g is None else [[str(x) for x in r] for r in self.g],
            "note": self.note,
        }

    def __repr__(self):
        return "Classification(%s, branch=%s, param=%s, verified=%s)" % (
            self.tag, self.branch, self.param, self.verified)


PHI = (1, 2, 1, 1)
X3_SET = [(0, 1, 0, 0), (1, 1, 1, 0), (1, 1, 0, 1), (0, 1, 1, 1)]
REDUCTION_ORDER = [(1, 1, 1, 1), (0, 1, 0, 0), (1, 1, 1, 0), (1, 1, 0, 1), (0, 1, 1, 1), (1, 2, 1, 1)]


def canonical_matrix(model, tag, param):
    """Matrix of the canonical representative of class tag with the given parameter."""
    F = model.F
    one = F.one
    if tag == "(1)":
        return model.product([(X3_SET[0], param)] + [(r, one) for r in X3_SET[1:]])
    if tag == "(2)":
        return model.product([((1, 1, 1, 1), one), (X3_SET[0], param)] + [(r, one) for r in X3_SET[1:]])
    if tag == "(3)":
        return model.torus_coroot(PHI, param)
    if tag == "(4)":
        return la.mul(model.x(PHI, one), model.torus_coroot(PHI, -one))
    raise ValueError(tag)


def _left_eigenspace(M, lam):
    F = lam.field
    return la.left_kernel(la.sub(M, la.scale(la.identity(F, 8), lam)))


def _combos(F, k, limit=200000):
    if not F.is_finite() or F.order ** k > limit:
        raise UndecidedError("isotropic vector search needs a small finite field")
    els = F.elements()
    for coeffs in itertools.product(els, repeat=k):
        if any(coeffs):
            yield coeffs


def _lin(coeffs, basis):
    F = basis[0][0].field
    v = [F.zero] * 8
    for c, b in zip(coeffs, basis):
        if c:
            v = [x + c * y for x, y in zip(v, b)]
    return v


def _find_isotropic(basis, orth=()):
    """Nonzero isotropic vector of span(basis) orthogonal to every vector in orth."""
    F = basis[0][0].field
    if orth:
        # restrict to the subspace orthogonal to orth
        A = [[bil(b, o) for b in basis] for o in orth]
        sols = la.nullspace(A) if A else None
        basis = [_lin(s, basis) for s in sols]
        if not basis:
            return None
    for b in basis:
        if not quad(b):
            return b
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            u, w = basis[i], basis[j]
            # f(u + t w) = f(u) + t (u, w) + t^2 f(w)
            fu, fw, uw = quad(u), quad(w), bil(u, w)
            try:
                roots = quadratic_roots(uw / fw, fu / fw)
            except UndecidedError:
                roots = []
            for t in roots:
                return [x + t * y for x, y in zip(u, w)]
    for coeffs in _combos(F, len(basis)):
        v = _lin(coeffs, basis)
        if not quad(v):
            return v
    return None


def _dual_in(space, w_list, target_orth=()):
    """Vectors u_i in span(space) with (w_j, u_i) = delta_ij and orthogonal to target_orth."""
    F = space[0][0].field
    k = len(space)
    out = []
    cons = list(w_list) + list(target_orth)
    for i in range(len(w_list)):
        A = [[bil(c, s) for s in space] + [F.one if j == i else F.zero] for j, c in enumerate(cons)]
        R, piv = la.rref(A)
        if k in piv:
            raise UndecidedError("no dual vector in the given space")
        x = [F.zero] * k
        for r, p in enumerate(piv):
            x[p] = R[r][k]
        out.append(_lin(x, space))
    return out


def _make_singular(w_list, u_list):
    """Correct duals u_i (paired with w_i) to be isotropic and mutually orthogonal."""
    fixed = []
    for i, u in enumerate(u_list):
        for k, uk in enumerate(fixed):
            c = bil(u, uk)
            if c:
                u = [x - c * y for x, y in zip(u, w_list[k])]
        c = quad(u)
        if c:
            u = [x - c * y for x, y in zip(u, w_list[i])]
        fixed.append(u)
    return fixed


def _hyperbolic_pairs(space):
    """Hyperbolic pairs (w_i, u_i) spanning a nondegenerate split subspace."""
    pairs = []
    cur = list(space)
    while cur:
        w = _find_isotropic(cur)
        if w is None:
            raise UndecidedError("anisotropic part found")
        u = _dual_in(cur, [w])[0]
        u = _make_singular([w], [u])[0]
        pairs.append((w, u))
        A = [[bil(s, w) for s in cur], [bil(s, u) for s in cur]]
        cur = [_lin(x, cur) for x in la.nullspace(A)]
    return pairs


def _complete_from_flag(M, vs):
    """Standard basis extending a theta-stable singular flag v1 < <v1,v2> < ... < <v1..v4>."""
    F = M[0][0].field
    v1, v2, v3, v4 = vs
    # pi-perp, where pi = <v1, v2, v3>
    A = [[F.one if i == 7 - j else F.zero for j in range(8)] for i in range(8)]
    basis = [[F.one if i == j else F.zero for j in range(8)] for i in range(8)]
    perp = la.nullspace([[bil(v, b) for b in basis] for v in (v1, v2, v3)])
    perp = [_lin(x, basis) for x in perp]
    # v5: isotropic in pi-perp, (v5, v4) = 1, modulo pi
    cand = _dual_in(perp, [v4])[0]
    c = quad(cand)
    # adding multiples of v4 changes f by t + t^2 f(v4) = t; keep (v5, v4) = 1
    v5 = [x - c * y for x, y in zip(cand, v4)] if c else cand
    if quad(v5) or bil(v5, v4) != F.one:
        raise UndecidedError("could not place the second solid")
    rest = _dual_in(basis, [v3, v2, v1], [v4, v5])
    rest = _make_singular([v3, v2, v1], rest)
    return [v1, v2, v3, v4, v5] + rest


def _conj(g, M):
    return la.mul(la.mul(g, M), la.inverse(g))


def classify_theta(field, a, b, c, t1, t2, t3, t4, model=None):
    """Replay the case analysis conjugating theta = u h w_D4 into a canonical form."""
    F = field
    model = model or D4Model(F, "D4")
    a, b, c, t1, t2, t3, t4 = [F.convert(x) for x in (a, b, c, t1, t2, t3, t4)]
    if not all((t1, t2, t3, t4)):
        raise GroupError("t_i must be nonzero")
    M = model.theta_E74(a, b, c, t1, t2, t3, t4)
    s = theta_trace_param(a, b, c, t1, t2, t3, t4)
    roots = quadratic_roots(-s, F.one)
    if not roots:
        return Classification("no fixed chamber", "irreducible", note="p(Y) has no root")
    z = roots[0]
    one = F.one
    if z == one:
        return _classify_unipotent(model, M, a, b, c, t1, t2, t3, t4)
    if z == -one:
        if F.characteristic == 2:
            raise UndecidedError("z = -1 branch needs characteristic != 2")
        return _classify_minus_one(model, M, a, b, c, t1, t2, t3, t4)
    return _classify_split(model, M, z)


def _finish(model, M, g, tag, param, branch, note="", predicted=None):
    C = canonical_matrix(model, tag, param)
    ok = la.equal(_conj(g, M), C)
    return Classification(tag, branch, param, g, C, ok, similitude_factor(g), note, predicted)


def _classify_split(model, M, z):
    F = model.F
    K1 = _left_eigenspace(M, F.one)
    Kz = _left_eigenspace(M, z)
    Kzi = _left_eigenspace(M, z.inverse())
    if len(K1) != 4 or len(Kz) != 2 or len(Kzi) != 2:
        return Classification(None, "z!=+-1", note="unexpected eigenspace dimensions")
    (p1, q1), (p2, q2) = _hyperbolic_pairs(K1)
    b1, b2 = _dual_in(Kzi, Kz)
    # canonical h_phi(z): rows 1, 2 have eigenvalue z^-1, rows 7, 8 eigenvalue z
    g = [b1, b2, p1, p2, q2, q1, Kz[1], Kz[0]]
    return _finish(model, M, g, "(3)", z, "z!=+-1")


def _classify_minus_one(model, M, a, b, c, t1, t2, t3, t4):
    F = model.F
    one = F.one
    K1 = _left_eigenspace(M, one)
    Km = _left_eigenspace(M, -one)
    (p1, q1), (p2, q2) = _hyperbolic_pairs(K1)
    predicted = "(3)" if not a else "(4)"
    if len(Km) == 4:
        (w1, u1), (w2, u2) = _hyperbolic_pairs(Km)
        g = [w1, w2, p1, p2, q2, q1, u2, u1]
        return _finish(model, M, g, "(3)", -one, "z=-1", predicted=predicted)
    # non-semisimple: rows 1, 2 in ker(theta + I), rows 7, 8 generalized eigenvectors
    Np = la.add(M, la.identity(F, 8))
    Gm = la.left_kernel(la.mul(Np, Np))
    for coeffs in _combos(F, len(Gm)):
        v7 = _lin(coeffs, Gm)
        v1 = [-x for x in la.vecmat(v7, Np)]
        if not any(v1) or quad(v7) or quad(v1) or bil(v1, v7):
            continue
        # v8: (v1, v8) = 1, (v8 N, v7) = 1, (v7, v8) = 0, then quadratic conditions
        A = []
        for s_ in Gm:
            A.append([bil(v1, s_), bil(la.vecmat(s_, Np), v7), bil(v7, s_)])
        A = [list(r) for r in zip(*A)]
        for r, rhs in zip(A, (one, one, F.zero)):
            r.append(rhs)
        R, piv = la.rref(A)
        if len(Gm) in piv:
            continue
        part = [F.zero] * len(Gm)
        for r, p in enumerate(piv):
            part[p] = R[r][len(Gm)]
        hom = la.nullspace([r[:len(Gm)] for r in A])
        cands = [part]
        for h in hom:
            cands = [[x + t * y for x, y in zip(cv, h)] for cv in cands for t in F.elements()]
        for cv in cands:
            v8 = _lin(cv, Gm)
            v2 = la.vecmat(v8, Np)
            if quad(v8) or quad(v2) or bil(v2, v8) or bil(v1, v2):
                continue
            g = [v1, v2, p1, p2, q2, q1, v7, v8]
            if is_standard_basis(g):
                return _finish(model, M, g, "(4)", None, "z=-1", predicted=predicted)
    return Classification(None, "z=-1", note="no standard basis found", predicted=predicted)


def _case_flag_vectors(F, a, b, c, t1, t2, t3, t4):
    """v1..v4 of the z = 1, q, r != 0 subcase."""
    two = F.convert(2)
    v1 = [-t1 * t2 ** 2 * t3 ** 3 * t4 ** 2 * c, t1 * t2 ** 2 * t3 ** 2 * t4 * b, -t2 ** 2 * t3 ** 2 * t4 * a,
          two * t2 * t3 * t4, two * t2 * t3 ** 2 * t4, t2 * t3 * t4 * a, t2 * t3 * t4 * (a * c - b), c]
    v2 = [-two * t1 * t2 ** 2 * t3 ** 3 * t4 ** 2, t1 * t2 ** 2 * t3 ** 2 * t4 * a,
          t1 * t2 ** 2 * t3 ** 2 * t4 * (b - a * c), t1 * t2 * t3 * t4 * c, t1 * t2 * t3 ** 2 * t4 * c,
          t1 * t2 * t3 * t4 * b, t2 * t3 * t4 * a, two]
    z = F.zero
    v3 = [z, z, z, z, t1 * t2 * t3 ** 2 * t4 * c, t1 * t2 * t3 * t4 * b, t2 * t3 * t4 * a, two]
    v4 = [t1 * t2 * t3 ** 2 * t4 * c, -t1 * t2 * t3 * b, t2 * t3 * a, -two, z, z, z, z]
    return [v1, v2, v3, v4]


def _q0_basis(F, t0, t1, t3, t4):
    o, z = F.one, F.zero
    i = lambda x: x.inverse()
    return [
        [-t0 ** 4 * t1 * t3 ** 3 * t4 ** 2, t0 ** 3 * t1 * t3 ** 2 * t4, z, z, z, z, t0 * t3 * t4, o],
        [z, z, -t0 ** 2 * t3, t0, t0 * t3, o, z, z],
        [z, z, z, z, t0 * t3, o, z, z],
        [z, z, z, z, z, z, t0 * t3 * t4, o],
        [o, z, z, z, z, z, -i(t0 ** 3 * t1 * t3 ** 2 * t4), z],
        [z, z, o, z, -i(t0), z, z, z],
        [z, z, z, z, i(t0), z, z, z],
        [z, z, z, z, z, z, i(t0 ** 3 * t1 * t3 ** 2 * t4), z],
    ]


def _r0_basis(F, s0, a, t2, t3, t4):
    o, z = F.one, F.zero
    i = lambda x: x.inverse()
    return [
        [-s0 * t2 * t3 ** 2 * t4, z, z, o, t3, a, i(s0) * a, i(s0 * t2 * t3 * t4)],
        [z, s0, -o, z, z, -i(t2 * t3), -i(s0 * t2 * t3), z],
        [z, z, z, z, s0 * t2 * t3 ** 2 * t4, z, z, o],
        [z, z, z, z, z, s0, o, z],
        [z, o, z, z, -i(s0) * a, -i(s0 * t2 * t3), z, z],
        [o, z, z, z, -i(s0 * t2 * t3 * t4), z, z, z],
        [z, z, z, z, z, -o, z, z],
        [z, z, z, z, o, z, z, z],
    ]


def _classify_unipotent(model, M, a, b, c, t1, t2, t3, t4):
    F = model.F
    q = t2 * b * b - c * c
    r = t1 * c * c - 4
    g = None
    sub = None
    if q and r:
        sub = "z=1,q!=0,r!=0"
        g = _complete_from_flag(M, _case_flag_vectors(F, a, b, c, t1, t2, t3, t4))
    elif not q:
        sub = "z=1,q=0"
        if b:
            t0s = [c / b]
        else:
            t0 = F.sqrt(t2)
            t0s = [t0, -t0]
        for t0 in t0s:
            if a == 2 * t0.inverse():
                g = _q0_basis(F, t0, t1, t3, t4)
                break
            if a == -2 * t0.inverse():
                g = _q0_basis(F, -t0, t1, t3, t4)
                break
        if g is None:
            g = _complete_from_flag(M, _case_flag_vectors(F, a, b, c, t1, t2, t3, t4)[:2]
                                    + _stable_extension(model, M, a, b, c, t1, t2, t3, t4))
    else:
        sub = "z=1,r=0"
        s0 = 2 * c.inverse()
        g = _r0_basis(F, s0, a, t2, t3, t4)
    if not is_standard_basis(g):
        return Classification(None, sub, note="case basis is not standard")
    T = _conj(g, M)
    return _normalize_unipotent(model, M, g, T, sub, predicted=-t1 * c * c if (q and r) else None)


def _stable_extension(model, M, a, b, c, t1, t2, t3, t4):
    """v3, v4 of the q = 0, a = t0^-1 (t1 c^2 - 2) subcase (here t0 = c / b)."""
    F = model.F
    t0 = c / b
    i = lambda x: x.inverse()
    z, o = F.zero, F.one
    v3 = [-t0 * t1 * t3 * t4 * c, z, o, i(t0 * t3), z, z, z, z]
    v4 = [-t0 * t3 * t4 * (t1 * c * c - 1), o, z, i(t0 * t3) * c, z, z, z, z]
    return [v3, v4]


def _normalize_unipotent(model, M, g, T, sub, predicted=None):
    """Carry T (in U_A) to class (1) or (2) by root and torus conjugations."""
    F = model.F
    one = F.one
    try:
        coords = dict(model.unipotent_coords(T))
    except GroupError:
        return Classification(None, sub, note="g theta g^-1 is not unipotent lower triangular")
    a2 = coords.get((0, 1, 0, 0), F.zero)
    if a2:
        # clear the 1100, 0110, 0101 coordinates with x_1000 x_0010 x_0001
        done = False
        for signs in itertools.product([one, -one], repeat=3):
            s1 = signs[0] * coords.get((1, 1, 0, 0), F.zero) / a2
            s3 = signs[1] * coords.get((0, 1, 1, 0), F.zero) / a2
            s4 = signs[2] * coords.get((0, 1, 0, 1), F.zero) / a2
            y = model.product([((1, 0, 0, 0), s1), ((0, 0, 1, 0), s3), ((0, 0, 0, 1), s4)])
            T2 = _conj(y, T)
            cc = dict(model.unipotent_coords(T2))
            if not any(cc.get(l) for l in [(1, 1, 0, 0), (0, 1, 1, 0), (0, 1, 0, 1),
                                           (1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]):
                g, T, done = la.mul(y, g), T2, True
                break
        if not done:
            return Classification(None, sub, note="first conjugation step failed")
        bs = model.coords_in_order(T, REDUCTION_ORDER)
        if bs is None:
            return Classification(None, sub, note="not of the reducible shape")
        b0, b1, b2, b3, b4, b5 = bs
        if all((b0, b1, b2, b3, b4)):
            # kill the 1211 term with x_0100, then scale by the torus
            for sg in (one, -one):
                y = model.x((0, 1, 0, 0), sg * b5 / b0)
                T2 = _conj(y, T)
                bb = model.coords_in_order(T2, REDUCTION_ORDER)
                if bb is not None and not bb[5]:
                    g, T = la.mul(y, g), T2
                    break
            else:
                return Classification(None, sub, note="could not clear x_1211")
            t4_ = b2 / b0
            t3_ = b3 / b0
            t1_ = b4 / b0
            t2_ = b0 * b0 / (b2 * b3 * b4)
            D = model.torus_similitude((t1_, t2_, t3_, t4_))
            T2 = _conj(D, T)
            bb = model.coords_in_order(T2, REDUCTION_ORDER)
            if bb is None:
                return Classification(None, sub, note="torus step failed")
            return _finish(model, M, la.mul(D, g), "(2)", bb[1], sub, predicted=predicted)
        if not b0 and all((b1, b2, b3, b4)):
            # remove x_1211 with x_1100 (1100 + 0111 = 1211)
            if b5:
                for sg in (one, -one):
                    y = model.x((1, 1, 0, 0), sg * b5 / b4)
                    T2 = _conj(y, T)
                    bb = model.coords_in_order(T2, X3_SET)
                    if bb is not None:
                        g, T = la.mul(y, g), T2
                        break
                else:
                    return Classification(None, sub, note="could not clear x_1211")
            return _perp_to_class1(model, M, g, T, sub)
        return Classification(None, sub, note="degenerate reduction coefficients")
    return _perp_to_class1(model, M, g, T, sub)


def _perp_to_class1(model, M, g, T, sub):
    """A product of four perpendicular root elements -> x_0100(a) x_1110(1) x_1101(1) x_0111(1)."""
    F = model.F
    words = [[], [1], [2], [1, 2], [2, 1], [3], [4], [2, 1, 3, 4], [2, 3], [2, 4], [1, 2, 1]]
    for w in words:
        n = model.n_matrix(w)
        T2 = _conj(n, T)
        bb = model.coords_in_order(T2, X3_SET) if _is_unitri(T2) else None
        if bb is not None and all(bb):
            B1, B2, B3, B4 = bb
            # chi_1110 = t1 t2 t3, chi_1101 = t1 t2 t4, chi_0111 = t2 t3 t4; t3 = 1
            # solve: t1 t2 = 1/B2, t1 t2 t4 = 1/B3, t2 t4 = 1/B4
            t4_ = B2 / B3
            t2_ = (B4 * t4_).inverse()
            t1_ = (B2 * t2_).inverse()
            D = model.torus_similitude((t1_, t2_, F.one, t4_))
            T3 = _conj(D, T2)
            b3 = model.coords_in_order(T3, X3_SET)
            if b3 is None:
                continue
            return _finish(model, M, la.mul(D, la.mul(n, g)), "(1)", b3[0], sub)
    return Classification(None, sub, note="four perpendicular roots not normalized")


def _is_unitri(T):
    F = T[0][0].field
    for i in range(8):
        if T[i][i] != F.one:
            return False
        for j in range(i + 1, 8):
            if T[i][j]:
                return False
    return True
