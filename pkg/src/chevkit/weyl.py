"""
Weyl group elements as permutations of the indexed root set.

The length of w is the number of positive roots sent to negative ones; the
canonical reduced word is found by repeatedly stripping the smallest right
descent (the smallest i with w(alpha_i) < 0).
"""

from __future__ import annotations

from itertools import combinations

from .errors import BudgetError, RootError

__all__ = [
    "WeylElt", "weyl_from_word", "identity", "longest", "reflection",
    "perp_sets", "orbit_of_perp_sets", "parse_word",
]


class WeylElt:
    __slots__ = ("rs", "perm", "_length", "_word", "_hash")

    def __init__(self, rs, perm):
        self.rs = rs
        self.perm = tuple(perm)
        self._length = None
        self._word = None
        self._hash = None

    @property
    def length(self):
        if self._length is None:
            N = self.rs.N
            p = self.perm
            self._length = sum(1 for i in range(N) if p[i] >= N)
        return self._length

    def __len__(self):
        return self.length

    def act(self, root):
        """Image of a root (index, tuple or label); returns the same kind as given."""
        rs = self.rs
        if isinstance(root, int):
            return self.perm[root]
        i = rs.idx(root)
        return rs.roots[self.perm[i]]

    def __mul__(self, other):
        if not isinstance(other, WeylElt):
            return NotImplemented
        if other.rs != self.rs:
            raise RootError("Weyl elements of different systems")
        p, q = self.perm, other.perm
        return WeylElt(self.rs, [p[j] for j in q])

    def inverse(self):
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return WeylElt(self.rs, inv)

    def __eq__(self, other):
        return isinstance(other, WeylElt) and other.rs == self.rs and other.perm == self.perm

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.perm)
        return self._hash

    def right_descent(self):
        """Smallest simple index i (1-based) with w(alpha_i) < 0, or None."""
        rs = self.rs
        for i, s in enumerate(rs.simple):
            if self.perm[s] >= rs.N:
                return i + 1
        return None

    def left_descent(self):
        return self.inverse().right_descent()

    def reduced_word(self):
        """Canonical reduced word (1-based simple indices), leftmost letter first."""
        if self._word is None:
            rs = self.rs
            word = []
            p = list(self.perm)
            N = rs.N
            while True:
                for i, s in enumerate(rs.simple):
                    if p[s] >= N:
                        break
                else:
                    break
                # w <- w s_i
                sr = rs.sref[i]
                p = [p[sr[j]] for j in range(len(p))]
                word.append(i + 1)
            word.reverse()
            self._word = tuple(word)
        return self._word

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.perm))

    def __repr__(self):
        w = self.reduced_word()
        return "w[%s]" % " ".join(str(i) for i in w) if w else "w[]"

    def inversion_set(self):
        """Positive roots alpha with w(alpha) < 0 (indices)."""
        N = self.rs.N
        return [i for i in range(N) if self.perm[i] >= N]


def identity(rs):
    return WeylElt(rs, range(2 * rs.N))


def reflection(rs, root):
    """The reflection s_root."""
    return WeylElt(rs, rs.reflect[rs.idx(root)])


def weyl_from_word(rs, word):
    """s_{i1} s_{i2} ... s_{ik}; the word need not be reduced."""
    p = list(range(2 * rs.N))
    for i in reversed(list(word)):
        if not 1 <= i <= rs.rank:
            raise RootError("invalid simple index %r for %s" % (i, rs.name))
        sr = rs.sref[i - 1]
        p = [sr[j] for j in p]
    return WeylElt(rs, p)


def parse_word(text):
    """'134265', '1 3 4 2', 'w[1 3 4]' or '' -> list of ints."""
    t = text.strip()
    if t.startswith("w[") and t.endswith("]"):
        t = t[2:-1]
    t = t.strip()
    if not t:
        return []
    if " " in t or "," in t:
        return [int(x) for x in t.replace(",", " ").split()]
    return [int(c) for c in t]


def longest(rs, subset=None):
    """Longest element of the standard parabolic subgroup W_subset."""
    nodes = sorted(range(1, rs.rank + 1) if subset is None else subset)
    w = identity(rs)
    N = rs.N
    while True:
        for i in nodes:
            if w.perm[rs.simple[i - 1]] < N:
                w = w * weyl_from_word(rs, [i])
                break
        else:
            return w


def perp_sets(rs, k):
    """All k-sets of mutually perpendicular positive roots, as sorted index tuples."""
    N = rs.N
    out = []

    def rec(start, chosen):
        if len(chosen) == k:
            out.append(tuple(chosen))
            return
        for j in range(start, N):
            if all(rs.pair(j, c) == 0 for c in chosen):
                chosen.append(j)
                rec(j + 1, chosen)
                chosen.pop()

    rec(0, [])
    return out


def _act_on_set(rs, i, s):
    sr = rs.sref[i]
    N = rs.N
    return tuple(sorted(sr[r] if sr[r] < N else sr[r] - N for r in s))


def orbit_of_perp_sets(rs, k, reps=None, budget=10 ** 7):
    """W-orbits on sets of k mutually perpendicular positive roots.

    Returns (orbit count, canonical representatives, orbit sizes); each
    representative is the lexicographically least index tuple of its orbit.
    If `reps` is given, orbits are grown from those sets first, and a
    mapping from every enumerated set to its representative is checked.
    """
    allsets = perp_sets(rs, k)
    if len(allsets) > budget:
        raise BudgetError("%d perpendicular sets exceed the budget" % len(allsets))
    owner = {}
    orbits = []
    seeds = [tuple(sorted(r)) for r in (reps or [])] + allsets
    for seed in seeds:
        if seed in owner:
            continue
        oid = len(orbits)
        owner[seed] = oid
        frontier = [seed]
        members = [seed]
        while frontier:
            nxt = []
            for s in frontier:
                for i in range(rs.rank):
                    t = _act_on_set(rs, i, s)
                    if t not in owner:
                        owner[t] = oid
                        nxt.append(t)
                        members.append(t)
            frontier = nxt
        orbits.append(members)
    canon = [min(m) for m in orbits]
    sizes = [len(m) for m in orbits]
    missing = [s for s in allsets if s not in owner]
    assert not missing
    return len(orbits), canon, sizes
