"""Thin models: the Gosset graph (an apartment of E7,7) and the 27-vertex E6,1 apartment.

In an apartment every singular subspace of dimension d has d+1 vertices and a
symp is a cross-polytope.  The classifiers translate the geometric relations
through this dictionary:

    relation                            thin meaning
    ----------------------------------  ----------------------------------------
    E7,7 point far from symp            adjacent to exactly 1 symp vertex
    E7,7 point close to symp            adjacent to 6 symp vertices (a 5'-space)
    E7,7 symps equal/adjacent/symplectic  intersection of size 12 / 6 / 2
    E7,7 symps special                  disjoint, and some symp meets both in
                                        6 vertices that are opposite in it
    E7,7 symps opposite                 disjoint, no such bridging symp
    E6,1 point and 5-space              in it / adjacent to 4 (a 3-space) /
                                        adjacent to 1
    E6,1 5-spaces                       intersection of size 0, 1 or 3

Symps are found without using any listing: two vertices at distance 2 lie in
a unique symp, namely the pair together with its common neighbours.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import ChevkitError

__all__ = [
    "ThinModel", "build_gosset", "build_e6_apartment", "thin_point_symp",
    "thin_symp_symp", "thin_point_five_space", "thin_five_five", "gosset_symp_listing",
    "full_imaginary_set", "symp_pair_census", "e6_fact_check",
]


class IncidenceError(ChevkitError):
    pass


@dataclass
class ThinModel:
    name: str
    labels: list
    adj: np.ndarray
    dist: np.ndarray = field(repr=False)
    symps: list = field(repr=False)
    five_spaces: list = field(default_factory=list, repr=False)

    @property
    def n(self):
        return len(self.labels)

    def index(self, label):
        return self.labels.index(label)

    def neighbours(self, v):
        return np.flatnonzero(self.adj[v])

    def degrees(self):
        return self.adj.sum(axis=1)

    def diameter(self):
        return int(self.dist.max())

    def edge_list(self):
        """Edges as pairs of labels."""
        i, j = np.nonzero(np.triu(self.adj))
        return [(self.labels[a], self.labels[b]) for a, b in zip(i, j)]

    def is_cross_polytope(self, S):
        """Whether S induces a cocktail-party graph (every vertex misses exactly one other)."""
        S = sorted(S)
        sub = self.adj[np.ix_(S, S)]
        return bool(np.all(sub.sum(axis=1) == len(S) - 2))


def _distances(adj):
    n = len(adj)
    A = adj.astype(np.int64)
    dist = np.full((n, n), -1, dtype=np.int64)
    np.fill_diagonal(dist, 0)
    reach = np.eye(n, dtype=bool)
    frontier = np.eye(n, dtype=np.int64)
    d = 0
    while not reach.all():
        d += 1
        frontier = ((frontier @ A) > 0) & ~reach
        if not frontier.any():
            break
        dist[frontier] = d
        reach |= frontier
        frontier = frontier.astype(np.int64)
    return dist


def _symps_from_distance_two(adj, dist):
    seen = set()
    out = []
    for x, y in zip(*np.nonzero(np.triu(dist == 2))):
        S = frozenset([int(x), int(y)]) | frozenset(np.flatnonzero(adj[x] & adj[y]).tolist())
        if S not in seen:
            seen.add(S)
            out.append(S)
    return out


def _cliques(adj, size):
    """All cliques of the given size (simple extension search)."""
    n = len(adj)
    out = []

    def grow(clique, cand):
        if len(clique) == size:
            out.append(frozenset(clique))
            return
        for v in cand:
            grow(clique + [v], [w for w in cand if w > v and adj[v, w]])

    grow([], list(range(n)))
    return out


def build_gosset():
    """Vertices {i,j} and {i',j'} for i<j in 1..8.

    Pairs from the same set are adjacent when they share one element, {a,b} and
    {c',d'} when {a,b} and {c,d} are disjoint."""
    pairs = list(itertools.combinations(range(1, 9), 2))
    labels = [(p, False) for p in pairs] + [(p, True) for p in pairs]
    n = len(labels)
    adj = np.zeros((n, n), dtype=bool)
    for (a, x), (b, y) in itertools.combinations(enumerate(labels), 2):
        P, Q = set(x[0]), set(y[0])
        if x[1] == y[1]:
            hit = len(P & Q) == 1
        else:
            hit = not (P & Q)
        adj[a, b] = adj[b, a] = hit
    dist = _distances(adj)
    symps = _symps_from_distance_two(adj, dist)
    return ThinModel("E7,7 (Gosset)", labels, adj, dist, symps)


def gosset_symp_listing(model):
    """The symps as listed by ordered pairs (i,j) and 4-sets, as vertex sets.

    Returns (by_pair, by_quad); used to cross-check the enumeration."""
    idx = {lab: k for k, lab in enumerate(model.labels)}

    def v(s, t, primed):
        return idx[((min(s, t), max(s, t)), primed)]

    by_pair = []
    for i, j in itertools.permutations(range(1, 9), 2):
        rest = [k for k in range(1, 9) if k not in (i, j)]
        by_pair.append(frozenset([v(i, k, False) for k in rest] + [v(j, k, True) for k in rest]))
    by_quad = []
    for Q in itertools.combinations(range(1, 9), 4):
        rest = [k for k in range(1, 9) if k not in Q]
        by_quad.append(frozenset([v(s, t, False) for s, t in itertools.combinations(Q, 2)]
                                 + [v(s, t, True) for s, t in itertools.combinations(rest, 2)]))
    return by_pair, by_quad


def build_e6_apartment():
    """Vertices i, i' (i in 1..6) and {i,j}.

    {i,j} ~ {k,l} when the union has 3 elements; i ~ {j,k} ~ i' when i is not in
    {j,k}; i ~ i'; i ~ j and i' ~ j' for i != j."""
    labels = [("p", i) for i in range(1, 7)] + [("pair", p) for p in itertools.combinations(range(1, 7), 2)] \
        + [("q", i) for i in range(1, 7)]
    n = len(labels)
    adj = np.zeros((n, n), dtype=bool)

    def rel(x, y):
        (s, a), (t, b) = x, y
        if s == "pair" and t == "pair":
            return len(set(a) | set(b)) == 3
        if s == "pair" or t == "pair":
            single, pair = (a, b) if t == "pair" else (b, a)
            return single not in pair
        if s == t:
            return a != b
        return a == b

    for (i, x), (j, y) in itertools.combinations(enumerate(labels), 2):
        adj[i, j] = adj[j, i] = rel(x, y)
    dist = _distances(adj)
    symps = _symps_from_distance_two(adj, dist)
    five = _cliques(adj, 6)
    return ThinModel("E6,1", labels, adj, dist, symps, five)


# ---------------------------------------------------------------------------
# classifiers

def _members(model, S):
    return np.fromiter(sorted(S), dtype=np.int64)


def thin_point_symp(model, v, symp):
    """'far' or 'close' for a vertex outside a Gosset symp."""
    if v in symp:
        raise IncidenceError("vertex lies in the symp")
    k = int(model.adj[v, _members(model, symp)].sum())
    if k == 1:
        return "far"
    if k == 6:
        return "close"
    raise IncidenceError("vertex adjacent to %d symp vertices" % k)


def _bridges(model, s1, s2):
    """Symps meeting both in 6 vertices that together make up the whole bridging symp."""
    out = []
    for S in model.symps:
        U, U2 = S & s1, S & s2
        if len(U) == 6 and len(U2) == 6 and (U | U2) == S:
            out.append(S)
    return out


def thin_symp_symp(model, s1, s2):
    """One of 'equal', 'adjacent', 'symplectic', 'special', 'opposite'."""
    k = len(s1 & s2)
    if k == 12:
        return "equal"
    if k == 6:
        return "adjacent"
    if k == 2:
        return "symplectic"
    if k == 0:
        nb = len(_bridges(model, s1, s2))
        if nb == 1:
            return "special"
        if nb == 0:
            return "opposite"
        raise IncidenceError("%d bridging symps" % nb)
    raise IncidenceError("symps meet in %d vertices" % k)


def symp_pair_census(model):
    """Counts of each symp-symp tag over unordered pairs of distinct symps, plus checks
    of the accompanying statements for each tag.

    Returns (counts, failures) where failures lists (i, j, reason)."""
    counts = {}
    failures = []
    S = model.symps
    for i, j in itertools.combinations(range(len(S)), 2):
        s1, s2 = S[i], S[j]
        tag = thin_symp_symp(model, s1, s2)
        counts[tag] = counts.get(tag, 0) + 1
        if tag == "symplectic":
            L = s1 & s2
            if not model.adj[tuple(L)]:
                failures.append((i, j, "intersection is not a line"))
            for x in s1 - L:
                px = {p for p in L if model.adj[x, p]}
                for y in s2 - L:
                    py = {p for p in L if model.adj[y, p]}
                    if (model.dist[x, y] == 3) != (not px & py):
                        failures.append((i, j, "distance 3 criterion"))
                    # collinearity off L only happens when both points see all of L
                    if model.adj[x, y] and (len(px) < 2 or len(py) < 2):
                        failures.append((i, j, "collinear points off the line"))
        elif tag == "special":
            xi = _bridges(model, s1, s2)[0]
            U = xi & s1
            for p in s1:
                want = "close" if p in U else "far"
                if thin_point_symp(model, p, s2) != want:
                    failures.append((i, j, "point of xi not %s" % want))
                    break
        elif tag == "opposite":
            m = model.adj[np.ix_(sorted(s1), sorted(s2))]
            if not (np.all(m.sum(axis=1) == 1) and np.all(m.sum(axis=0) == 1)):
                failures.append((i, j, "not a perfect matching"))
    return counts, failures


def full_imaginary_set(model, s1, s2):
    """For opposite symps: the connecting lines, the symps meeting every one of them
    inside their union, and whether those symps partition the union."""
    if thin_symp_symp(model, s1, s2) != "opposite":
        raise IncidenceError("symps are not opposite")
    a, b = sorted(s1), sorted(s2)
    lines = [frozenset((x, y)) for x in a for y in b if model.adj[x, y]]
    union = frozenset().union(*lines)
    family = [S for S in model.symps if S <= union and all(S & L for L in lines)]
    covered = sorted(itertools.chain.from_iterable(family))
    partition = len(covered) == len(set(covered)) and set(covered) == set(union)
    return lines, family, partition


def thin_point_five_space(model, v, five):
    """'in', 'three-space' or 'unique-point' for an E6 vertex and a 6-clique."""
    if v in five:
        return "in"
    k = int(model.adj[v, _members(model, five)].sum())
    if k == 4:
        return "three-space"
    if k == 1:
        return "unique-point"
    raise IncidenceError("vertex adjacent to %d vertices of the 5-space" % k)


def thin_five_five(model, f1, f2):
    """'equal', 'disjoint', 'point' or 'plane' for two E6 5-spaces."""
    k = len(f1 & f2)
    tag = {6: "equal", 0: "disjoint", 1: "point", 3: "plane"}.get(k)
    if tag is None:
        raise IncidenceError("5-spaces meet in %d vertices" % k)
    return tag


def e6_fact_check(model):
    """Exhaustive thin checks of the E6,1 facts: strong diameter 2 with unique symps,
    point/5-space trichotomy, 5-space intersections, and the symp/symp duality.

    Returns a dict of booleans and tag counts."""
    n = model.n
    out = {}
    nonadj = [(x, y) for x, y in itertools.combinations(range(n), 2) if not model.adj[x, y]]
    out["diameter_2"] = model.diameter() == 2
    out["unique_symp"] = all(sum(1 for S in model.symps if x in S and y in S) == 1 for x, y in nonadj)
    pf = {}
    for f in model.five_spaces:
        for v in range(n):
            t = thin_point_five_space(model, v, f)
            pf[t] = pf.get(t, 0) + 1
    out["point_five"] = pf
    ff = {}
    for f1, f2 in itertools.combinations(model.five_spaces, 2):
        t = thin_five_five(model, f1, f2)
        ff[t] = ff.get(t, 0) + 1
    out["five_five"] = ff
    out["symp_meets"] = sorted({len(a & b) for a, b in itertools.combinations(model.symps, 2)})
    return out
