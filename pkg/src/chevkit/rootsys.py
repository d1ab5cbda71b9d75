"""
Root systems of types A-G in Bourbaki numbering.

Roots are integer coefficient tuples over the simple roots.  A RootSystem
indexes them once: positive roots first, ordered by (height, coefficient
tuple), then their negatives in the same order, so that root i and root
i + N are negatives of each other.  Everything hot works on these indices.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction

import numpy as np

from .errors import ParseError, RootError

__all__ = [
    "RootSystem", "build_root_system", "cartan_matrix", "pairing", "polar_type",
    "highest_root_sequence", "perp_set_orbit_reps", "parse_root", "DIAGRAMS",
    "D4_IN_E7", "d4_to_e7", "e7_to_d4",
]


def _edges(letter, n):
    """Dynkin edges (i, j, multiplicity) with i the long end when multiplicity > 1."""
    if letter == "A":
        return [(i, i + 1, 1) for i in range(1, n)]
    if letter == "B":
        return [(i, i + 1, 1) for i in range(1, n - 1)] + [(n - 1, n, 2)]
    if letter == "C":
        return [(i, i + 1, 1) for i in range(1, n - 1)] + [(n, n - 1, 2)]
    if letter == "D":
        return [(i, i + 1, 1) for i in range(1, n - 1)] + [(n - 2, n, 1)]
    if letter == "E":
        return [(1, 3, 1), (2, 4, 1), (3, 4, 1)] + [(i, i + 1, 1) for i in range(4, n)]
    if letter == "F":
        return [(1, 2, 1), (2, 3, 2), (3, 4, 1)]
    if letter == "G":
        return [(2, 1, 3)]
    raise RootError("unknown type %r" % letter)


_VALID = {"A": range(1, 30), "B": range(2, 30), "C": range(2, 30), "D": range(4, 30),
          "E": range(6, 9), "F": range(4, 5), "G": range(2, 3)}


def cartan_matrix(letter, n):
    """C[i][j] = <alpha_i, alpha_j^vee> (0-based indices)."""
    letter = letter.upper()
    if letter not in _VALID or n not in _VALID[letter]:
        raise RootError("unsupported type %s%d" % (letter, n))
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b, m in _edges(letter, n):
        a, b = a - 1, b - 1
        # a is the long root: <alpha_b, alpha_a^vee> = -1, <alpha_a, alpha_b^vee> = -m
        C[b][a] = -1
        C[a][b] = -m
    return C


class RootSystem:
    """A reduced crystallographic root system with indexed roots."""

    def __init__(self, letter, n):
        letter = letter.upper()
        self.letter = letter
        self.rank = n
        self.name = "%s%d" % (letter, n)
        self.cartan = cartan_matrix(letter, n)
        self._squared_lengths()
        pos = self._enumerate_positive()
        pos.sort(key=lambda r: (sum(r), r))
        self.positive = pos
        self.N = N = len(pos)
        self.roots = pos + [tuple(-c for c in r) for r in pos]
        self.index = {r: i for i, r in enumerate(self.roots)}
        self.height = [sum(r) for r in self.roots]
        self.simple = [self.index[tuple(1 if j == i else 0 for j in range(n))] for i in range(n)]
        # pairing table <root_i, root_j^vee> = sum_k c_k(i) <alpha_k, root_j^vee>
        R = self.roots
        self.coroot_coeffs = [self._coroot(r) for r in R]
        Rm = np.array(R, dtype=np.int64)
        Cm = np.array(self.cartan, dtype=np.int64)
        Cv = np.array(self.coroot_coeffs, dtype=np.int64)
        P = Rm @ Cm @ Cv.T
        self._pair = P.tolist()
        base = 2 * int(np.abs(Rm).max()) + 3
        weights = base ** np.arange(n, dtype=np.int64)
        keys = Rm @ weights
        order = np.argsort(keys)
        skeys = keys[order]

        def lookup(vecs):
            k = vecs @ weights
            pos = np.clip(np.searchsorted(skeys, k), 0, len(skeys) - 1)
            ok = skeys[pos] == k
            return np.where(ok, order[pos], -1)

        # reflect[r][b] = s_r(b) = b - <b, r^vee> r
        refl = Rm[None, :, :] - P.T[:, :, None] * Rm[:, None, :]
        self.reflect = lookup(refl).tolist()
        self.sref = [self.reflect[self.simple[i]] for i in range(n)]
        self.add = lookup(Rm[:, None, :] + Rm[None, :, :]).tolist()
        self.highest = max(range(N), key=lambda i: (self.height[i], R[i]))

    def _squared_lengths(self):
        n, C = self.rank, self.cartan
        L = [None] * n
        L[0] = Fraction(1)
        changed = True
        while changed:
            changed = False
            for i in range(n):
                for j in range(n):
                    if C[i][j] and L[i] is not None and L[j] is None:
                        # C[i][j] = 2(a_i,a_j)/(a_j,a_j), C[j][i] = 2(a_i,a_j)/(a_i,a_i)
                        L[j] = L[i] * Fraction(C[j][i], C[i][j])
                        changed = True
        m = max(L)
        self.sqlen = [x / m * 2 for x in L]
        self.form = [[self.cartan[i][j] * self.sqlen[j] / 2 for j in range(n)] for i in range(n)]

    def inner(self, a, b):
        """The invariant form, normalized so long roots have (a, a) = 2."""
        n, B = self.rank, self.form
        return sum(a[i] * B[i][j] * b[j] for i in range(n) if a[i] for j in range(n) if b[j])

    def _pairing_vec(self, b, j):
        a = self.roots[j]
        v = 2 * self.inner(b, a) / self.inner(a, a)
        assert v.denominator == 1
        return int(v)

    def _coroot(self, r):
        """Coefficients of r^vee over the simple coroots."""
        rr = self.inner(r, r)
        out = []
        for i, c in enumerate(r):
            v = c * self.sqlen[i] / rr
            assert v.denominator == 1
            out.append(int(v))
        return tuple(out)

    def _enumerate_positive(self):
        n, C = self.rank, self.cartan
        simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        found = set(simple)
        layer = list(simple)
        while layer:
            nxt = []
            for r in layer:
                for i in range(n):
                    pr = sum(r[j] * C[j][i] for j in range(n))  # <r, alpha_i^vee>
                    if r == simple[i]:
                        continue
                    # length of the alpha_i-string below r
                    down = 0
                    t = list(r)
                    while True:
                        t[i] -= 1
                        if tuple(t) in found:
                            down += 1
                        else:
                            break
                    if down - pr > 0:
                        s = list(r)
                        s[i] += 1
                        s = tuple(s)
                        if s not in found:
                            found.add(s)
                            nxt.append(s)
            layer = nxt
        return sorted(found)

    # --- queries ------------------------------------------------------------

    def __repr__(self):
        return "RootSystem(%s)" % self.name

    def __eq__(self, other):
        return isinstance(other, RootSystem) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def is_simply_laced(self):
        return self.letter in "ADE"

    def idx(self, root):
        """Index of a root given as tuple, string label or index."""
        if isinstance(root, int):
            if not 0 <= root < 2 * self.N:
                raise RootError("root index %d out of range" % root)
            return root
        if isinstance(root, str):
            root = parse_root(root, self)
        root = tuple(root)
        if root not in self.index:
            raise RootError("%s is not a root of %s" % (root, self.name))
        return self.index[root]

    def neg(self, i):
        return i + self.N if i < self.N else i - self.N

    def is_positive(self, i):
        return i < self.N

    def pair(self, b, a):
        """<b, a^vee> for root indices."""
        return self._pair[b][a]

    def label(self, i):
        r = self.roots[i]
        if all(c >= 0 for c in r):
            return "".join(str(c) for c in r)
        return "-" + "".join(str(-c) for c in r)

    def support(self, i):
        return {j + 1 for j, c in enumerate(self.roots[i]) if c}

    def coweight_pairing(self, i, lam):
        """<root_i, lambda> for a coweight given by its omega-coordinates."""
        return sum(c * l for c, l in zip(self.roots[i], lam))

    def coroot_as_coweight(self, i):
        """Omega-coordinates of root_i^vee: entry j is <alpha_j, root_i^vee>."""
        return tuple(self._pair[self.simple[j]][i] for j in range(self.rank))

    def subsystem_roots(self, nodes):
        """Positive root indices supported on the given (1-based) nodes."""
        nodes = set(nodes)
        return [i for i in range(self.N) if self.support(i) <= nodes]

    def components(self, nodes):
        """Connected components of the Dynkin subdiagram on `nodes`."""
        nodes = set(nodes)
        comps = []
        seen = set()
        for s in sorted(nodes):
            if s in seen:
                continue
            comp, stack = set(), [s]
            while stack:
                x = stack.pop()
                if x in comp:
                    continue
                comp.add(x)
                for y in nodes:
                    if y not in comp and self.cartan[x - 1][y - 1]:
                        stack.append(y)
            seen |= comp
            comps.append(sorted(comp))
        return comps

    def highest_root_of(self, nodes):
        """Highest root of an irreducible subsystem given by connected nodes."""
        cand = self.subsystem_roots(nodes)
        return max(cand, key=lambda i: (self.height[i], self.roots[i]))

    def polar_nodes_of(self, nodes):
        """Nodes of the subsystem pairing nonzero with its highest root."""
        phi = self.highest_root_of(nodes)
        return {j for j in nodes if self._pair[self.simple[j - 1]][phi] != 0}

    def component_type(self, nodes):
        """Type name (e.g. "D4") of a connected set of simple nodes."""
        nodes = sorted(nodes)
        k = len(nodes)
        npos = len(self.subsystem_roots(nodes))
        if not self.is_simply_laced():
            return "?%d" % k
        for letter in "ADE":
            if letter == "D" and k < 4:
                continue
            if letter == "E" and k not in (6, 7, 8):
                continue
            if len(build_root_system(letter, k).positive) == npos:
                return "%s%d" % (letter, k)
        return "?%d" % k


_CACHE = {}


def build_root_system(letter, rank):
    """Build (cached) the root system of the given type."""
    key = (letter.upper(), rank)
    if key not in _CACHE:
        _CACHE[key] = RootSystem(letter, rank)
    return _CACHE[key]


def pairing(rs, b, a):
    """Cartan integer <b, a^vee>."""
    return rs.pair(rs.idx(b), rs.idx(a))


def polar_type(rs):
    return rs.polar_nodes_of(range(1, rs.rank + 1))


# Opposition diagrams with polar closed circled node sets.
DIAGRAMS = {
    "E7;1": ("E", 7, {1}),
    "E7;2": ("E", 7, {1, 6}),
    "E7;3": ("E", 7, {1, 6, 7}),
    "E7;4": ("E", 7, {1, 3, 4, 6}),
    "E6;1": ("E", 6, {2}),
    "E6;2": ("E", 6, {1, 2, 6}),
    "E8;1": ("E", 8, {8}),
    "E8;2": ("E", 8, {1, 8}),
    "E8;3": ("E", 8, {1, 6, 7, 8}),
    "E8;4": ("E", 8, set(range(1, 9))),
    "A3;1": ("A", 3, {1, 3}),
    "D4;1": ("D", 4, {2}),
    "D4;2": ("D", 4, {1, 2, 3, 4}),
}


def _circled(rs, diagram):
    if isinstance(diagram, str):
        if diagram not in DIAGRAMS:
            raise RootError("unknown diagram %r" % diagram)
        letter, n, J = DIAGRAMS[diagram]
        if (letter, n) != (rs.letter, rs.rank):
            raise RootError("diagram %s does not belong to %s" % (diagram, rs.name))
        return set(J)
    return set(diagram)


def highest_root_sequence(rs, diagram):
    """phi_1, ..., phi_N for a polar closed diagram by iterated polar-node removal.

    At each step the components of the remaining diagram whose polar type
    lies in J are candidates; the largest (then lowest-numbered) is taken,
    its highest root recorded, and its polar nodes removed.
    """
    J = _circled(rs, diagram)
    nodes = set(range(1, rs.rank + 1))
    covered = set()
    seq = []
    while covered != J:
        cands = []
        for comp in rs.components(nodes):
            pol = rs.polar_nodes_of(comp)
            if pol <= J and not pol <= covered:
                cands.append((-len(comp), comp[0], comp, pol))
        if not cands:
            raise RootError("diagram %s is not polar closed for %s" % (sorted(J), rs.name))
        _, _, comp, pol = min(cands)
        seq.append(rs.highest_root_of(comp))
        covered |= pol
        nodes -= pol
    return seq


def perp_set_orbit_reps(rs, k):
    """Sets of k mutually perpendicular positive roots from the component-choice algorithm.

    Every order of choosing components is explored; identical sets are
    reported once.
    """
    out = []
    seen = set()

    def rec(nodes, chosen):
        if len(chosen) == k:
            key = frozenset(chosen)
            if key not in seen:
                seen.add(key)
                out.append(tuple(chosen))
            return
        for comp in rs.components(nodes):
            phi = rs.highest_root_of(comp)
            rec(nodes - rs.polar_nodes_of(comp), chosen + [phi])

    rec(set(range(1, rs.rank + 1)), [])
    return out


_ROOT_RE = re.compile(r"\s*(-?)\(?\s*([0-9 ,]+?)\s*\)?\s*$")

# D4 node k' sits at E7 node D4_IN_E7[k'] (alpha_2, alpha_4, alpha_3, alpha_5).
D4_IN_E7 = {1: 2, 2: 4, 3: 3, 4: 5}


def d4_to_e7(label):
    """E7 coefficient tuple of a D4 root label like (1100)."""
    c = label if isinstance(label, tuple) else _digits(label)
    sign = -1 if isinstance(label, str) and label.strip().startswith("-") else 1
    v = [0] * 7
    for k, e in D4_IN_E7.items():
        v[e - 1] = sign * c[k - 1]
    return tuple(v)


def e7_to_d4(root):
    """D4 coefficient tuple of an E7 root supported on nodes 2..5."""
    if any(root[i] for i in (0, 5, 6)):
        raise RootError("%s is not in the D4 subsystem" % (root,))
    return tuple(root[D4_IN_E7[k] - 1] for k in range(1, 5))


def _digits(text):
    m = _ROOT_RE.match(text)
    if not m:
        raise ParseError("bad root literal", text, 0)
    body = m.group(2)
    if "," in body or " " in body.strip():
        parts = [int(x) for x in re.split(r"[ ,]+", body.strip())]
    else:
        parts = [int(x) for x in body]
    return tuple(parts)


def parse_root(text, rs=None, d4_context=False):
    """Parse "(1234321)", "-(0101000)" or "1,2,3"; D4 labels when d4_context is set."""
    m = _ROOT_RE.match(text)
    if not m:
        raise ParseError("bad root literal", text, 0)
    sign = -1 if m.group(1) else 1
    c = _digits(text)
    if d4_context and len(c) == 4:
        c = d4_to_e7(c)
    c = tuple(sign * x for x in c)
    if rs is not None:
        if len(c) != rs.rank:
            raise ParseError("root has %d coefficients, expected %d" % (len(c), rs.rank), text, 0)
        if c not in rs.index:
            raise RootError("%s is not a root of %s" % (text, rs.name))
    return c
