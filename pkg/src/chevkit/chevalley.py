"""
Split adjoint Chevalley groups of simply laced type.

Structure constants
    N(a, b) with [e_a, e_b] = N(a, b) e_{a+b}, built from the Frenkel-Kac
    cocycle, rescaled to a Chevalley basis ([e_a, e_-a] = h_a), normalized so
    every extraspecial pair has N = +1, and finally twisted by an optional
    sign vector eps on the positive roots (e_a -> eps_a e_a, e_-a -> eps_a e_-a).
    The group commutator is then
        x_a(s) x_b(t) x_a(-s) x_b(-t) = x_{a+b}(N(a, b) s t).

Elements
    Every element is kept in Bruhat normal form  u1 . n_w . h . u2  where
    u1 is supported on {a > 0 : w^-1 a < 0}, n_w is the product of
    s_i = x_i(1) x_-i(-1) x_i(1) along a reduced word of w, h is recorded by
    its simple-root characters t_j = alpha_j(h) (equivalently h is the
    product of h_{omega_j}(t_j)), and u1, u2 are ordered products over the
    positive roots in the fixed root order.  Products are formed by feeding
    the atoms of the right factor one at a time.
"""

from __future__ import annotations

import functools
import itertools
import json
import os
import re

import numpy as np

from .errors import GroupError, ParseError, RootError
from .exactfield import FieldElem
from .rootsys import build_root_system
from .weyl import WeylElt, identity as weyl_identity, weyl_from_word

__all__ = [
    "StructConsts", "structure_constants", "Chevalley", "GroupElt",
    "AdjointRep", "default_twist",
]


# --- structure constants -------------------------------------------------

class StructConsts:
    """N table, s-conjugation signs and the twist that produced them."""

    def __init__(self, rs, N, twist):
        self.rs = rs
        self.N = N
        self.twist = dict(twist)
        n, R = rs.rank, rs.N
        self.dim = 2 * R + n
        self.eta = [[self._eta(i, b) for b in range(2 * R)] for i in range(n)]
        # s_i^-1 x_b(t) s_i = x_{s_i b}(eta_inv t), using s_i^-1 = s_i h_{alpha_i^vee}(-1)
        self.eta_inv = [[self.eta[i][b] * (-1) ** (rs.pair(b, rs.simple[i]) % 2)
                         for b in range(2 * R)] for i in range(n)]

    def bracket(self, a, k):
        """[e_a, basis_k] as a list of (index, coefficient)."""
        rs = self.rs
        R2 = 2 * rs.N
        if k >= R2:
            j = k - R2
            return [(a, -rs.pair(a, rs.simple[j]))]
        if k == rs.neg(a):
            return [(R2 + j, c) for j, c in enumerate(rs.coroot_coeffs[a]) if c]
        s = rs.add[a][k]
        if s >= 0:
            return [(s, self.N[a][k])]
        return []

    def ad_apply(self, a, vec, t=1):
        """exp(t ad e_a) applied to a sparse vector {index: int}."""
        out = dict(vec)
        first = {}
        for k, c in vec.items():
            for m, d in self.bracket(a, k):
                first[m] = first.get(m, 0) + c * d
        second = {}
        for k, c in first.items():
            for m, d in self.bracket(a, k):
                second[m] = second.get(m, 0) + c * d
        for k, c in first.items():
            out[k] = out.get(k, 0) + t * c
        for k, c in second.items():
            assert (t * t * c) % 2 == 0
            out[k] = out.get(k, 0) + t * t * c // 2
        return {k: c for k, c in out.items() if c}

    def _eta(self, i, b):
        rs = self.rs
        a = rs.simple[i]
        v = {b: 1}
        v = self.ad_apply(a, v, 1)
        v = self.ad_apply(rs.neg(a), v, -1)
        v = self.ad_apply(a, v, 1)
        target = rs.reflect[a][b]
        assert set(v) == {target} and abs(v[target]) == 1, (i, b, v)
        return v[target]

    def twist_vector(self):
        """Positive-root labels with eps = -1."""
        return sorted(self.rs.label(i) for i, e in self.twist.items() if e == -1)


def _frenkel_kac(rs):
    n, C = rs.rank, rs.cartan
    R = rs.roots
    M = 2 * rs.N

    def eps(a, b):
        s = 0
        for i in range(n):
            if a[i]:
                s += a[i] * b[i]
                for j in range(i + 1, n):
                    if C[i][j] == -1:
                        s += a[i] * b[j]
        return -1 if s % 2 else 1

    # rescale e_-a (a > 0) by eps(a, -a) so that [e_a, e_-a] = h_a
    c = [1] * rs.N + [eps(R[i], R[i + rs.N]) for i in range(rs.N)]
    N = [[0] * M for _ in range(M)]
    for a in range(M):
        for b in range(M):
            s = rs.add[a][b]
            if s >= 0:
                N[a][b] = eps(R[a], R[b]) * c[a] * c[b] * c[s]
    return N


def _apply_signs(rs, N, d):
    """Rescale e_a and e_-a by d[a] for positive a."""
    full = list(d) + list(d)
    M = 2 * rs.N
    return [[N[a][b] * full[a] * full[b] * full[rs.add[a][b]] if rs.add[a][b] >= 0 else 0
             for b in range(M)] for a in range(M)]


def extraspecial_pairs(rs):
    """For each non-simple positive root xi, the pair (a, xi - a) with a minimal."""
    pairs = {}
    for xi in range(rs.N):
        if rs.height[xi] == 1:
            continue
        for a in range(rs.N):
            b = rs.index.get(tuple(x - y for x, y in zip(rs.roots[xi], rs.roots[a])))
            if b is not None and b < rs.N:
                pairs[xi] = (a, b)
                break
    return pairs


def _extraspecial_normalize(rs, N):
    d = [1] * rs.N
    for xi, (a, b) in sorted(extraspecial_pairs(rs).items()):
        if N[a][b] * d[a] * d[b] * d[xi] != 1:
            d[xi] = -d[xi]
    return _apply_signs(rs, N, d)


@functools.lru_cache(maxsize=None)
def _structure_constants(name, twist_key):
    rs = build_root_system(name[0], int(name[1:]))
    if not rs.is_simply_laced():
        raise RootError("group arithmetic is implemented for simply laced types only")
    N = _extraspecial_normalize(rs, _frenkel_kac(rs))
    twist = dict(twist_key)
    d = [twist.get(i, 1) for i in range(rs.N)]
    N = _apply_signs(rs, N, d)
    return StructConsts(rs, N, twist)


def structure_constants(rs, twist=None):
    """Structure constants of a simply laced system.

    twist maps positive root indices (or labels) to -1; "default" loads the
    configured twist for this type (the D4 sign match) if there is one.
    """
    if twist == "default":
        twist = default_twist(rs)
    twist = twist or {}
    key = tuple(sorted((rs.idx(k) if not isinstance(k, int) else k, v)
                       for k, v in twist.items() if v == -1))
    return _structure_constants(rs.name, key)


_CONFIG_PATH = os.path.join(os.path.dirname(__file__), "default_config.json")


def load_config(path=None):
    path = path or os.environ.get("CHEVKIT_CONFIG") or _CONFIG_PATH
    with open(path) as f:
        return json.load(f)


def default_twist(rs, config=None):
    """Twist recorded in the configuration for rs (labels of roots with eps = -1)."""
    cfg = config or load_config()
    labels = cfg.get("twist", {}).get(rs.name, [])
    return {rs.idx("(%s)" % lab): -1 for lab in labels}


# --- the group -----------------------------------------------------------

class Chevalley:
    """The adjoint Chevalley group of a simply laced root system over a field."""

    def __init__(self, rs, field, consts=None, twist="default"):
        if not rs.is_simply_laced():
            raise RootError("group arithmetic is implemented for simply laced types only")
        self.rs = rs
        self.F = field
        self.consts = consts or structure_constants(rs, twist)
        self.N = self.consts.N
        self.zero = field.zero
        self.one = field.one
        self._neg_recipe = {}

    def __eq__(self, other):
        return (isinstance(other, Chevalley) and other.rs == self.rs and other.F == self.F
                and other.consts.twist == self.consts.twist)

    def __hash__(self):
        return hash((self.rs.name, self.F.desc))

    def __repr__(self):
        return "Chevalley(%s, %s)" % (self.rs.name, self.F.name())

    def scalar(self, a):
        if isinstance(a, FieldElem):
            if a.field is not self.F and a.field != self.F:
                return self.F.convert(a)
            return a
        return self.F.convert(a)

    # -- unipotent collection --

    def _umul(self, c, b, t):
        """Right-multiply the collected word c (list over positive roots) by x_b(t)."""
        if not t:
            return
        R = self.rs.N
        suffix = [(g, c[g]) for g in range(b + 1, R) if c[g]]
        for g, _ in suffix:
            c[g] = self.zero
        c[b] = c[b] + t
        add = self.rs.add
        N = self.N
        for g, cg in suffix:
            self._umul(c, g, cg)
            s = add[g][b]
            if s >= 0:
                self._umul(c, s, cg * t * N[g][b])

    def collect(self, factors):
        """Ordered coefficient list of a product of positive root elements."""
        c = [self.zero] * self.rs.N
        for b, t in factors:
            self._umul(c, b, t)
        return c

    @staticmethod
    def _factors(c):
        return [(g, x) for g, x in enumerate(c) if x]

    # -- torus helpers --

    def char(self, h, b):
        """alpha_b(h) for a root index b and torus coordinates h."""
        r = self.rs.roots[b]
        v = self.one
        for c, t in zip(r, h):
            if c:
                v = v * t ** c
        return v

    def torus_coroot(self, a, d):
        """Coordinates of h_{a^vee}(d)."""
        rs = self.rs
        return tuple(d ** rs.pair(rs.simple[j], a) for j in range(rs.rank))

    def torus_coweight(self, lam, d):
        return tuple(d ** l for l in lam)

    def torus_conj_w(self, h, w):
        """Coordinates of n_w^-1 h n_w: entry j is alpha_j evaluated at h after w."""
        rs = self.rs
        return tuple(self.char(h, w.perm[rs.simple[j]]) for j in range(rs.rank))

    @staticmethod
    def _tmul(h1, h2):
        return tuple(a * b for a, b in zip(h1, h2))

    # -- signs for n_w conjugation --

    def conj_sign(self, w, b):
        """sigma with n_w x_b(t) n_w^-1 = x_{w b}(sigma t)."""
        rs = self.rs
        eta = self.consts.eta
        sigma = 1
        for i in reversed(w.reduced_word()):
            sigma *= eta[i - 1][b]
            b = rs.sref[i - 1][b]
        return sigma

    def conj_sign_inv(self, w, g):
        """sigma with n_w^-1 x_g(t) n_w = x_{w^-1 g}(sigma t)."""
        return self.conj_sign(w, w.inverse().perm[g])

    # -- constructors --

    def identity(self):
        R = self.rs.N
        z = self.zero
        return GroupElt(self, (z,) * R, weyl_identity(self.rs), (self.one,) * self.rs.rank, (z,) * R)

    def x(self, root, a):
        """x_root(a) for any root (index, tuple or label)."""
        b = self.rs.idx(root)
        a = self.scalar(a)
        g = _Builder(self.identity())
        g.rmul_x(b, a)
        return g.freeze()

    def h(self, lam, t):
        """h_lambda(t) for a coweight lambda in omega-coordinates."""
        t = self.scalar(t)
        if not t:
            raise GroupError("torus parameter must be nonzero")
        e = self.identity()
        return GroupElt(self, e.u1, e.w, self.torus_coweight(lam, t), e.u2)

    def h_omega(self, j, t):
        lam = [0] * self.rs.rank
        lam[j - 1] = 1
        return self.h(lam, t)

    def h_coroot(self, root, t):
        """h_{root^vee}(t)."""
        t = self.scalar(t)
        if not t:
            raise GroupError("torus parameter must be nonzero")
        e = self.identity()
        return GroupElt(self, e.u1, e.w, self.torus_coroot(self.rs.idx(root), t), e.u2)

    def torus(self, coords):
        coords = tuple(self.scalar(t) for t in coords)
        if any(not t for t in coords):
            raise GroupError("torus parameter must be nonzero")
        e = self.identity()
        return GroupElt(self, e.u1, e.w, coords, e.u2)

    def s(self, i):
        """s_i = x_i(1) x_-i(-1) x_i(1)."""
        g = _Builder(self.identity())
        g.rmul_s(i - 1)
        return g.freeze()

    def s_root(self, root, t=1):
        """s_root(t) = x_root(t) x_-root(-t^-1) x_root(t)."""
        b = self.rs.idx(root)
        t = self.scalar(t)
        if not t:
            raise GroupError("s_alpha(t) needs t != 0")
        g = _Builder(self.identity())
        g.rmul_x(b, t)
        g.rmul_x(self.rs.neg(b), -t.inverse())
        g.rmul_x(b, t)
        return g.freeze()

    def n(self, w):
        """n_w along the canonical reduced word (w a WeylElt or a word)."""
        if not isinstance(w, WeylElt):
            w = weyl_from_word(self.rs, w)
        g = _Builder(self.identity())
        for i in w.reduced_word():
            g.rmul_s(i - 1)
        return g.freeze()

    def unipotent(self, factors):
        """Product of x_b(t) over (root, t) pairs, in the given order."""
        g = _Builder(self.identity())
        for b, t in factors:
            g.rmul_x(self.rs.idx(b), self.scalar(t))
        return g.freeze()

    def product(self, *elts):
        g = _Builder(self.identity())
        for e in elts:
            g.rmul(e)
        return g.freeze()

    def sl2_rewrite(self, root, a, b):
        """Normal form of x_root(a) x_-root(b), checked against the closed formula.

        With d = 1 + ab != 0 the result equals
            x_-root(b/d) x_root(a d) h_{root^vee}(d),
        where h_{root^vee}(t) x_root(u) h_{root^vee}(t)^-1 = x_root(t^2 u).
        """
        a, b = self.scalar(a), self.scalar(b)
        d = self.one + a * b
        if not d:
            raise GroupError("1 + ab = 0: the product leaves the big cell")
        r = self.rs.idx(root)
        lhs = self.product(self.x(r, a), self.x(self.rs.neg(r), b))
        rhs = self.product(self.x(self.rs.neg(r), b / d), self.x(r, a * d), self.h_coroot(r, d))
        assert lhs == rhs
        return lhs

    def random_element(self, rng, length=6):
        """Random product of root elements, simple reflections and a torus element."""
        rs = self.rs
        g = _Builder(self.identity())
        for _ in range(length):
            k = rng.randrange(3)
            if k == 0:
                g.rmul_x(rng.randrange(2 * rs.N), self.F.random(rng))
            elif k == 1:
                g.rmul_s(rng.randrange(rs.rank))
            else:
                t = self.F.random(rng)
                while not t:
                    t = self.F.random(rng)
                g.rmul_h(self.torus_coweight([rng.randint(-1, 1) for _ in range(rs.rank)], t))
        return g.freeze()

    # -- parsing --

    def parse(self, text):
        return parse_element(self, text)


class GroupElt:
    """Immutable group element in Bruhat normal form."""

    __slots__ = ("G", "u1", "w", "h", "u2", "_hash")

    def __init__(self, G, u1, w, h, u2):
        self.G = G
        self.u1 = tuple(u1)
        self.w = w
        self.h = tuple(h)
        self.u2 = tuple(u2)
        self._hash = None

    def _check(self, other):
        if not isinstance(other, GroupElt):
            raise GroupError("not a group element: %r" % (other,))
        if other.G is not self.G and other.G != self.G:
            raise GroupError("elements of different groups")

    def __mul__(self, other):
        self._check(other)
        g = _Builder(self)
        g.rmul(other)
        return g.freeze()

    def inverse(self):
        G = self.G
        g = _Builder(G.identity())
        for b, t in reversed(G._factors(self.u2)):
            g.rmul_x(b, -t)
        g.rmul_h(tuple(t.inverse() for t in self.h))
        for i in reversed(self.w.reduced_word()):
            g.rmul_s_inv(i - 1)
        for b, t in reversed(G._factors(self.u1)):
            g.rmul_x(b, -t)
        return g.freeze()

    def conjugate(self, x):
        """x^-1 . self . x"""
        self._check(x)
        g = _Builder(x.inverse())
        g.rmul(self)
        g.rmul(x)
        return g.freeze()

    def bruhat_cell(self):
        return self.w

    def __eq__(self, other):
        return (isinstance(other, GroupElt) and other.G == self.G and other.w == self.w
                and other.h == self.h and other.u1 == self.u1 and other.u2 == self.u2)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.w, tuple(map(hash, self.h)), tuple(map(hash, self.u1)),
                               tuple(map(hash, self.u2))))
        return self._hash

    def is_identity(self):
        return self == self.G.identity()

    def atoms(self):
        """The normal form as a list of atoms (kind, data)."""
        G = self.G
        out = [("x", b, t) for b, t in G._factors(self.u1)]
        out += [("s", i) for i in self.w.reduced_word()]
        out += [("h", j + 1, t) for j, t in enumerate(self.h) if t != G.one]
        out += [("x", b, t) for b, t in G._factors(self.u2)]
        return out

    def __str__(self):
        rs = self.G.rs
        parts = [("x[(%s)](%s)" % (rs.label(b), t)) for b, t in self.G._factors(self.u1)]
        word = self.w.reduced_word()
        if word:
            parts.append("n[w %s]" % " ".join(str(i) for i in word))
        parts += ["h[w%d](%s)" % (j + 1, t) for j, t in enumerate(self.h) if t != self.G.one]
        parts += [("x[(%s)](%s)" % (rs.label(b), t)) for b, t in self.G._factors(self.u2)]
        return " ".join(parts) if parts else "1"

    __repr__ = __str__

    def coefficient(self, root, part="u2"):
        b = self.G.rs.idx(root)
        return (self.u2 if part == "u2" else self.u1)[b]


def bruhat_cell(g):
    return g.w


def conjugate(g, x):
    return g.conjugate(x)


def multiply(g1, g2):
    return g1 * g2


class _Builder:
    """Mutable normal form used while multiplying on the right."""

    __slots__ = ("G", "u1", "w", "h", "u2")

    def __init__(self, g):
        self.G = g.G
        self.u1 = list(g.u1)
        self.w = g.w
        self.h = g.h
        self.u2 = list(g.u2)

    def freeze(self):
        return GroupElt(self.G, self.u1, self.w, self.h, self.u2)

    def rmul(self, other):
        for b, t in self.G._factors(other.u1):
            self.rmul_x(b, t)
        for i in other.w.reduced_word():
            self.rmul_s(i - 1)
        self.rmul_h(other.h)
        for b, t in self.G._factors(other.u2):
            self.rmul_x(b, t)

    def rmul_h(self, hh):
        G = self.G
        if all(t == G.one for t in hh):
            return
        u2 = self.u2
        for b in range(len(u2)):
            if u2[b]:
                u2[b] = u2[b] / G.char(hh, b)
        self.h = G._tmul(self.h, hh)

    def rmul_x(self, b, t):
        G = self.G
        rs = G.rs
        if not t:
            return
        if b < rs.N:
            G._umul(self.u2, b, t)
            return
        # negative root: x_-beta(t) = n_v x_{alpha_j}(sigma t) n_v^-1
        word, j, sigma = self._neg_recipe(b)
        for i in word:
            self.rmul_s(i - 1)
        self.rmul_x(rs.simple[j], t * sigma)
        for i in reversed(word):
            self.rmul_s_inv(i - 1)

    def _neg_recipe(self, b):
        G = self.G
        if b in G._neg_recipe:
            return G._neg_recipe[b]
        rs = G.rs
        # walk -beta down to a negative simple root by reflections lowering the height
        g = b
        prefix = []
        while rs.height[g] != -1:
            for i in range(rs.rank):
                if rs.pair(g, rs.simple[i]) < 0:
                    # s_i raises the (negative) height of g towards -1
                    prefix.append(i + 1)
                    g = rs.sref[i][g]
                    break
            else:
                raise AssertionError("no lowering reflection")
        j = rs.simple.index(rs.neg(g))
        word = prefix + [j + 1]  # v = s_prefix s_j, with v(alpha_j) = b
        v = weyl_from_word(rs, word)
        assert v.perm[rs.simple[j]] == b
        # conjugation by the word, letter by letter (the word need not be canonical)
        sigma = 1
        r = rs.simple[j]
        for i in reversed(word):
            sigma *= G.consts.eta[i - 1][r]
            r = rs.sref[i - 1][r]
        assert r == b
        G._neg_recipe[b] = (word, j, sigma)
        return G._neg_recipe[b]

    def rmul_s_inv(self, i):
        G = self.G
        self.rmul_s(i)
        self.rmul_h(G.torus_coroot(G.rs.simple[i], -G.one))

    def rmul_s(self, i):
        """Right-multiply by s_i (0-based simple index i)."""
        G = self.G
        rs = G.rs
        R = rs.N
        a = rs.simple[i]
        one = G.one
        u2 = self.u2
        c = u2[a]
        if c:
            new = [G.zero] * R
            G._umul(new, a, -c)
            for g, x in G._factors(u2):
                G._umul(new, g, x)
            assert not new[a]
            u2 = new
        # u2' s_i = s_i u2''
        eta_inv = G.consts.eta_inv[i]
        sr = rs.sref[i]
        u2pp = G.collect([(sr[g], x * eta_inv[g]) for g, x in G._factors(u2)])
        h = self.h
        cp = c * h[i] if c else c
        h_s = tuple(h[j] * h[i] ** (-rs.pair(rs.simple[j], a)) for j in range(rs.rank))
        w = self.w
        wa = w.perm[a]
        s_i = weyl_from_word(rs, [i + 1])
        if not cp:
            if wa < R:
                self.w = w * s_i
                self.h = h_s
                self.u2 = u2pp
                return
            gam = wa - R
            e = self.u1[gam]
            wp = w * s_i
            if e:
                G._umul(self.u1, gam, -e)
                assert not self.u1[gam]
                sigma = G.conj_sign_inv(wp, gam)
            H = G._tmul(G.torus_coroot(a, -one), h_s)
            self.w = wp
            self.h = H
            if e:
                self.u2 = G.collect([(a, e * sigma / G.char(H, a))] + G._factors(u2pp))
            else:
                self.u2 = u2pp
            return
        if wa < R:
            sigma = G.conj_sign(w, a)
            G._umul(self.u1, wa, cp * sigma)
            self.w = w * s_i
            self.h = h_s
            self.u2 = u2pp
            return
        # w alpha_i < 0: s x(c) s = x(-1/c) s h(-c) x(-1/c) inside the alpha_i SL2
        gam = wa - R
        wp = w * s_i
        p = -cp.inverse()
        G._umul(self.u1, gam, p * G.conj_sign(wp, a))
        H = G._tmul(G.torus_coroot(a, -cp), h_s)
        self.h = H
        self.u2 = G.collect([(a, p / G.char(h_s, a))] + G._factors(u2pp))


# --- parsing ---------------------------------------------------------------

_ATOM = re.compile(r"\s*(x|h|s|n)\[")


def _balanced(text, pos, open_ch, close_ch):
    """Return (content, end) of a bracketed group starting at text[pos] == open_ch."""
    if pos >= len(text) or text[pos] != open_ch:
        raise ParseError("expected %r" % open_ch, text, pos)
    depth = 0
    for k in range(pos, len(text)):
        if text[k] == open_ch:
            depth += 1
        elif text[k] == close_ch:
            depth -= 1
            if depth == 0:
                return text[pos + 1:k], k + 1
    raise ParseError("unbalanced %r" % open_ch, text, pos)


def parse_element(G, text):
    """Parse a product of atoms into normal form.

    Atoms (whitespace separated, multiplied left to right):
        x[(1234321)](a)   root element; "x[-(0101000)](a)" for a negative root
        h[w3](t)          h_{omega_3}(t)
        h[(0101000)](t)   h_{alpha^vee}(t)
        s[i]              s_i = x_i(1) x_-i(-1) x_i(1)
        n[w 1 3 4]        n_w for the product of the listed simple reflections
    Scalars are read in the group's field.  "1" and "" denote the identity.
    """
    from .rootsys import parse_root
    rs = G.rs
    g = _Builder(G.identity())
    pos = 0
    t = text
    if t.strip() in ("", "1"):
        return g.freeze()
    d4 = rs.name == "E7"
    while pos < len(t):
        while pos < len(t) and t[pos].isspace():
            pos += 1
        if pos >= len(t):
            break
        m = _ATOM.match(t, pos)
        if not m:
            raise ParseError("expected an atom x[..], h[..], s[..] or n[..]", t, pos)
        kind = m.group(1)
        inner, pos = _balanced(t, m.end() - 1, "[", "]")
        if kind in ("x", "h"):
            sc, pos = _balanced(t, pos, "(", ")")
            try:
                val = G.F.parse(sc)
            except ParseError as e:
                raise ParseError("bad scalar (%s)" % e, t, pos - len(sc) - 1)
            if kind == "x":
                try:
                    root = parse_root(inner, rs, d4_context=d4 and len(re.sub(r"\D", "", inner)) == 4)
                except Exception as e:
                    raise ParseError("non-root coefficient vector %s" % inner, t, m.end())
                g.rmul_x(rs.idx(root), val)
            else:
                if not val:
                    raise ParseError("zero torus scalar", t, pos - len(sc) - 1)
                mm = re.fullmatch(r"\s*w\s*(\d+)\s*", inner)
                if mm:
                    j = int(mm.group(1))
                    if not 1 <= j <= rs.rank:
                        raise ParseError("bad coweight index", t, m.end())
                    lam = [0] * rs.rank
                    lam[j - 1] = 1
                    g.rmul_h(G.torus_coweight(lam, val))
                else:
                    try:
                        root = parse_root(inner, rs, d4_context=d4 and len(re.sub(r"\D", "", inner)) == 4)
                    except Exception:
                        raise ParseError("bad torus index %s" % inner, t, m.end())
                    g.rmul_h(G.torus_coroot(rs.idx(root), val))
        elif kind == "s":
            try:
                i = int(inner)
            except ValueError:
                raise ParseError("bad simple index", t, m.end())
            if not 1 <= i <= rs.rank:
                raise ParseError("simple index out of range", t, m.end())
            g.rmul_s(i - 1)
        else:
            body = inner.strip()
            if body.startswith("w"):
                body = body[1:]
            from .weyl import parse_word
            word = parse_word(body)
            if any(not 1 <= i <= rs.rank for i in word):
                raise ParseError("simple index out of range", t, m.end())
            for i in weyl_from_word(rs, word).reduced_word():
                g.rmul_s(i - 1)
    return g.freeze()


# --- adjoint representation oracle -----------------------------------------

class AdjointRep:
    """Adjoint matrices over F_p (column vectors), an independent check on the normal forms.

    Basis: e_root for every root index, then the simple coroots h_1..h_n.
    """

    def __init__(self, consts, p):
        self.consts = consts
        self.rs = rs = consts.rs
        self.p = p
        self.dim = consts.dim
        self._ad = {}

    def ad(self, a):
        if a not in self._ad:
            M = np.zeros((self.dim, self.dim), dtype=np.int64)
            for k in range(self.dim):
                for m, c in self.consts.bracket(a, k):
                    M[m, k] += c
            self._ad[a] = M
        return self._ad[a]

    def x(self, a, t):
        A = self.ad(a)
        t = int(t) % self.p
        M = np.eye(self.dim, dtype=np.int64) + t * A + (t * t) * ((A @ A) // 2)
        return M % self.p

    def torus(self, h):
        """Diagonal matrix of the torus element with coordinates h (ints mod p)."""
        rs = self.rs
        d = np.ones(self.dim, dtype=np.int64)
        for b in range(2 * rs.N):
            v = 1
            for c, t in zip(rs.roots[b], h):
                v = v * pow(int(t), c, self.p) % self.p
            d[b] = v
        return np.diag(d)

    def s(self, i):
        a = self.rs.simple[i - 1]
        return self.mul(self.x(a, 1), self.x(self.rs.neg(a), -1), self.x(a, 1))

    def mul(self, *Ms):
        out = np.eye(self.dim, dtype=np.int64)
        for M in Ms:
            out = out @ M % self.p
        return out

    def of(self, g):
        """Matrix of a GroupElt through its normal form."""
        Ms = []
        for atom in g.atoms():
            if atom[0] == "x":
                Ms.append(self.x(atom[1], int(atom[2].rep)))
            elif atom[0] == "s":
                Ms.append(self.s(atom[1]))
            else:
                pass
        # torus sits between n_w and u2
        k = len(g.G._factors(g.u1)) + len(g.w.reduced_word())
        Ms.insert(k, self.torus([int(t.rep) for t in g.h]))
        return self.mul(*Ms)
