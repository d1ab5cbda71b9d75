"""
Opposition diagrams, the perpendicular systems Psi_J, displacement and
brute-force displacement spectra over tiny prime fields.

The spectrum engine enumerates one representative g = u n_w per chamber
(u running over the root groups made negative by w^-1) and reads the
Bruhat cell of g^-1 theta g from a faithful matrix representation in which
the Borel subgroup is lower triangular: the natural 8-dimensional module
for D4 and the adjoint module (basis sorted by height) otherwise.  The cell
is recovered from the GL permutation of the matrix, which is injective on W
for both representations (checked when the lookup table is built).
"""

from __future__ import annotations

import itertools
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .chevalley import AdjointRep, Chevalley, GroupElt
from .errors import BudgetError, GroupError, RootError
from .exactfield import GF
from .rootsys import DIAGRAMS, build_root_system, highest_root_sequence
from .weyl import WeylElt, identity as weyl_identity, longest, reflection, weyl_from_word

__all__ = [
    "PsiSystem", "psi_J", "OppDiagram", "diagram", "displacement", "SpectrumReport",
    "spectrum_bruteforce", "chamber_count", "weyl_elements", "support", "MAGIC_WORDS",
    "default_budget", "verify_corpus", "bruhat_permutations",
]

DEFAULT_BUDGET = 10 ** 7


def default_budget():
    env = os.environ.get("CHEVKIT_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


# --- Psi_J -----------------------------------------------------------------

def _dynkin_type(C):
    """Type name and Bourbaki ordering of a connected simply laced Cartan matrix."""
    n = len(C)
    nbr = [[j for j in range(n) if j != i and C[i][j]] for i in range(n)]
    if n == 1:
        return "A1", [0]
    branch = [i for i in range(n) if len(nbr[i]) == 3]
    if not branch:
        end = min(i for i in range(n) if len(nbr[i]) == 1)
        path, prev = [end], None
        while len(path) < n:
            nxt = [j for j in nbr[path[-1]] if j != prev][0]
            prev = path[-1]
            path.append(nxt)
        return "A%d" % n, path
    c = branch[0]
    arms = []
    for s in nbr[c]:
        arm, prev = [s], c
        while len(nbr[arm[-1]]) == 2:
            nxt = [j for j in nbr[arm[-1]] if j != prev][0]
            prev = arm[-1]
            arm.append(nxt)
        arms.append(arm)
    arms.sort(key=len)
    lens = tuple(len(a) for a in arms)
    if lens[:2] == (1, 1):
        # D_n: long arm reversed, branch node, then the two short leaves
        return "D%d" % n, list(reversed(arms[2])) + [c] + arms[0] + arms[1]
    if lens[:2] == (1, 2) and lens[2] in (2, 3, 4):
        a1, a2, a3 = arms
        order = [a2[1], a1[0], a2[0], c] + a3
        return "E%d" % n, order
    return "?%d" % n, list(range(n))


@dataclass
class PsiSystem:
    """Positive roots, simple system (Bourbaki order per component) and type of Psi_J."""
    J: frozenset
    positive: list
    simple: list
    type: str
    components: list = field(default_factory=list)


def psi_J(rs, J):
    """Roots orthogonal to every simple root outside J, with a simple system and type.

    Components are listed by decreasing height of their highest root; inside
    a component symmetric leaves are ordered by decreasing height.
    """
    J = frozenset(J)
    bad = [j for j in J if not 1 <= j <= rs.rank]
    if bad:
        raise RootError("nodes %s out of range for %s" % (bad, rs.name))
    off = [rs.simple[j - 1] for j in range(1, rs.rank + 1) if j not in J]
    pos = [b for b in range(rs.N) if all(rs.pair(b, a) == 0 for a in off)]
    if not pos:
        return PsiSystem(J, [], [], "empty", [])
    # a positive root of Psi is simple iff it is not a sum of two positive roots of Psi
    simple = [b for b in pos if not any(rs.add[a][c] == b for a in pos for c in pos)]
    # components
    comps, seen = [], set()
    for s in simple:
        if s in seen:
            continue
        comp, stack = [], [s]
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.append(x)
            stack += [y for y in simple if y not in comp and rs.pair(x, y)]
        seen |= set(comp)
        comps.append(comp)

    def top(comp):
        cs = set(comp)
        mine = [b for b in pos if _in_span(rs, b, cs, simple)]
        return max(rs.height[b] for b in mine)

    comps.sort(key=lambda c: -top(c))
    ordered, names, comp_out = [], [], []
    for comp in comps:
        comp.sort(key=lambda b: -rs.height[b])
        C = [[rs.pair(a, b) for b in comp] for a in comp]
        name, order = _dynkin_type(C)
        if name.startswith("D") and len(comp) == 4:
            centre = order[1]
            leaves = sorted((i for i in range(4) if i != centre), key=lambda i: -rs.height[comp[i]])
            order = [leaves[0], centre, leaves[1], leaves[2]]
        simp = [comp[i] for i in order]
        ordered += simp
        names.append(name)
        comp_out.append(simp)
    return PsiSystem(J, pos, ordered, "x".join(names), comp_out)


def _in_span(rs, b, comp, simple):
    """Whether b lies in the span of the simple roots in comp (decided by support in Psi)."""
    coeffs = _psi_coords(rs, b, simple)
    return all(c == 0 or s in comp for s, c in zip(simple, coeffs))


def _psi_coords(rs, b, simple):
    A = np.array([rs.roots[s] for s in simple], dtype=float).T
    x, *_ = np.linalg.lstsq(A, np.array(rs.roots[b], dtype=float), rcond=None)
    return [int(round(v)) for v in x]


# --- diagrams --------------------------------------------------------------

@dataclass
class OppDiagram:
    name: str
    rs: object
    J: frozenset
    sequence: list
    M: int
    target: WeylElt

    def labels(self):
        return [self.rs.label(b) for b in self.sequence]


def diagram(name):
    """Opposition diagram record: circled nodes, highest root sequence, M = l(w_{S-J} w0)."""
    if name not in DIAGRAMS:
        raise RootError("unknown diagram %r" % name)
    letter, n, J = DIAGRAMS[name]
    rs = build_root_system(letter, n)
    rest = [j for j in range(1, n + 1) if j not in J]
    target = longest(rs, rest) * longest(rs)
    return OppDiagram(name, rs, frozenset(J), highest_root_sequence(rs, name), target.length, target)


# Conjugating words for the two diagrams (letters are simple reflections)
MAGIC_WORDS = {
    "E7;3": "134265423143765423143546",
    "E7;4": "431543654231435465765431",
}


# --- displacement ----------------------------------------------------------

def displacement(theta, g):
    """delta(gB, theta gB): the Bruhat cell of g^-1 theta g."""
    if not isinstance(theta, GroupElt) or not isinstance(g, GroupElt):
        raise GroupError("displacement needs group elements")
    if theta.G != g.G:
        raise GroupError("elements of different groups")
    return theta.conjugate(g).bruhat_cell()


def support(w):
    return frozenset(w.reduced_word())


def weyl_elements(rs):
    """All elements of W, ordered by length then by first discovery."""
    e = weyl_identity(rs)
    seen = {e: None}
    layer = [e]
    out = [e]
    gens = [weyl_from_word(rs, [i]) for i in range(1, rs.rank + 1)]
    while layer:
        nxt = []
        for w in layer:
            for s in gens:
                v = w * s
                if v.length == w.length + 1 and v not in seen:
                    seen[v] = None
                    nxt.append(v)
        out += nxt
        layer = nxt
    return out


def chamber_count(rs, q):
    return sum(q ** w.length for w in weyl_elements(rs))


# --- matrix models for the spectrum engine ---------------------------------

class _AdjointModel:
    """Adjoint matrices over F_p, basis sorted by height (Borel lower triangular)."""

    def __init__(self, G):
        self.G = G
        self.p = p = G.F.order
        self.rep = AdjointRep(G.consts, p)
        rs = G.rs
        hts = [rs.height[k] if k < 2 * rs.N else 0 for k in range(self.rep.dim)]
        self.order = np.array(sorted(range(self.rep.dim), key=lambda k: (hts[k], k)))
        self.dim = self.rep.dim

    def _re(self, M):
        return M[np.ix_(self.order, self.order)] % self.p

    def x(self, b, t):
        return self._re(self.rep.x(b, t))

    def n(self, w):
        return self._re(self.rep.mul(*[self.rep.s(i) for i in w.reduced_word()]))

    def of(self, g):
        return self._re(self.rep.of(g))


class _NaturalD4Model:
    """The orthogonal 8-dimensional module of D4 (row vectors, lower triangular Borel)."""

    def __init__(self, G):
        from .d4rep import D4Model
        self.G = G
        self.p = G.F.order
        self.m = D4Model(G.F, "D4")
        self.dim = 8

    def _np(self, M):
        return np.array([[int(e.rep) for e in row] for row in M], dtype=np.int64) % self.p

    def x(self, b, t):
        return self._np(self.m.x(b, t))

    def n(self, w):
        return self._np(self.m.n_matrix(w.reduced_word()))

    def of(self, g):
        return self._np(self.m.of(g, similitude=True))


def _model(G, kind=None):
    if kind is None:
        kind = "natural" if G.rs.name == "D4" else "adjoint"
    if kind == "natural":
        if G.rs.name != "D4":
            raise RootError("natural model is only provided for D4")
        return _NaturalD4Model(G)
    return _AdjointModel(G)


def bruhat_permutations(M, p):
    """GL Bruhat permutations (row -> pivot column) of a batch M (k, n, n) mod p.

    The Borel subgroup is the lower triangular group on both sides: row i may
    absorb earlier rows, column j may absorb later columns.  The pivot of each
    row is its rightmost surviving entry.
    """
    M = np.array(M, dtype=np.int64) % p
    k, n, _ = M.shape
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    piv = np.zeros((k, n), dtype=np.int64)
    ar = np.arange(k)
    cols = np.arange(n)
    for i in range(n):
        row = M[:, i, :]
        for r in range(i):
            row[ar, piv[:, r]] = 0
        nz = row != 0
        c = n - 1 - np.argmax(nz[:, ::-1], axis=1)
        if not nz.any(axis=1).all():
            raise GroupError("singular matrix in Bruhat decomposition")
        v = inv[row[ar, c]]
        f = (row * v[:, None]) % p
        f[cols[None, :] >= c[:, None]] = 0
        if i + 1 < n:
            below = M[:, i + 1:, :]
            colc = below[ar[:, None], np.arange(n - i - 1)[None, :], c[:, None]]
            below -= colc[:, :, None] * f[:, None, :]
            below %= p
        piv[:, i] = c
    return piv


def _perm_keys(piv):
    n = piv.shape[1]
    weights = n ** np.arange(n, dtype=np.int64)
    return piv @ weights


# --- spectrum --------------------------------------------------------------

@dataclass
class SpectrumReport:
    """Displacement multiset of theta over all chambers of a finite building."""
    type: str
    q: int
    theta: str
    counts: dict
    total: int
    chambers: int
    max_length: int
    max_elements: list
    domestic: bool
    fixed_chambers: int
    circled: list
    types_mapped_opposite: list
    inferred_J: object
    inference_note: str
    uncapped_risk: bool

    def length_histogram(self):
        h = Counter()
        for w, c in self.counts.items():
            h[w.length] += c
        return dict(sorted(h.items()))

    def as_record(self):
        return {
            "type": self.type, "q": self.q, "theta": self.theta,
            "chambers": self.chambers, "total": self.total,
            "counts": {" ".join(map(str, w.reduced_word())) or "e": c
                       for w, c in sorted(self.counts.items(), key=lambda kv: (kv[0].length, kv[0].reduced_word()))},
            "length_histogram": self.length_histogram(),
            "max_length": self.max_length,
            "max_elements": [" ".join(map(str, w.reduced_word())) for w in self.max_elements],
            "domestic": self.domestic, "fixed_chambers": self.fixed_chambers,
            "circled": self.circled, "types_mapped_opposite": self.types_mapped_opposite,
            "inferred_J": sorted(self.inferred_J) if self.inferred_J is not None else None,
            "inference_note": self.inference_note, "uncapped_risk": self.uncapped_risk,
        }


_SPECTRUM_TYPES = {"A1", "A2", "A3", "D4"}


def _cell_job(args):
    type_name, q, kind, theta_text, twist, cell_words = args
    rs = build_root_system(type_name[0], int(type_name[1:]))
    G = Chevalley(rs, GF(q), twist=twist)
    theta = G.parse(theta_text)
    eng = _Engine(G, theta, kind)
    out = Counter()
    for word in cell_words:
        out.update(eng.cell(weyl_from_word(rs, word)))
    return out


class _Engine:
    INNER = 9

    def __init__(self, G, theta, kind=None):
        self.G = G
        self.rs = rs = G.rs
        self.p = G.F.order
        self.model = _model(G, kind)
        self.T = self.model.of(theta)
        self.W = weyl_elements(rs)
        ns = np.stack([self.model.n(w) for w in self.W])
        keys = _perm_keys(bruhat_permutations(ns, self.p))
        if len(set(keys.tolist())) != len(self.W):
            raise GroupError("Bruhat permutation lookup is not injective")
        self.lookup = {int(k): w for k, w in zip(keys, self.W)}
        self._X = {}

    def _xs(self, b, sign=1):
        key = (b, sign)
        if key not in self._X:
            self._X[key] = np.stack([self.model.x(b, sign * c) for c in range(self.p)])
        return self._X[key]

    def cell(self, w):
        """Counter of displacements over the chambers u n_w B of the cell of w."""
        rs, p = self.rs, self.p
        winv = w.inverse()
        roots = [b for b in range(rs.N) if winv.perm[b] >= rs.N]
        n = self.model.dim
        nw = self.model.n(w)
        nwi = _mat_inverse_mod(nw, p)
        inner = roots[-self.INNER:] if len(roots) > self.INNER else roots
        outer = roots[:len(roots) - len(inner)]
        U = np.eye(n, dtype=np.int64)[None]
        Ui = np.eye(n, dtype=np.int64)[None]
        for b in inner:
            X, Xi = self._xs(b), self._xs(b, -1)
            U = (U[:, None] @ X[None]).reshape(-1, n, n) % p
            Ui = (Xi[None] @ Ui[:, None]).reshape(-1, n, n) % p
        out = Counter()
        eye = np.eye(n, dtype=np.int64)
        for cs in itertools.product(range(p), repeat=len(outer)):
            O, Oi = eye, eye
            for b, c in zip(outer, cs):
                O = O @ self.model.x(b, c) % p
                Oi = self.model.x(b, -c) @ Oi % p
            # A = n^-1 (O U)^-1 T (O U) n
            L = (Ui @ (Oi @ self.T % p)) % p
            R = (O @ U) % p
            A = (L @ R) % p
            A = (nwi[None] @ A) % p
            A = (A @ nw[None]) % p
            keys = _perm_keys(bruhat_permutations(A, p))
            uk, cnt = np.unique(keys, return_counts=True)
            for k, c in zip(uk.tolist(), cnt.tolist()):
                out[self.lookup[k]] += c
        return out


def _mat_inverse_mod(M, p):
    n = M.shape[0]
    A = np.concatenate([M % p, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        r = next(i for i in range(c, n) if A[i, c] % p)
        A[[c, r]] = A[[r, c]]
        A[c] = A[c] * pow(int(A[c, c]), p - 2, p) % p
        for i in range(n):
            if i != c and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[c]) % p
    return A[:, n:]


def spectrum_bruteforce(rs, q, theta, jobs=1, budget=None, kind=None):
    """Exact displacement multiset of theta over every chamber of the building of rs over F_q."""
    if rs.name not in _SPECTRUM_TYPES:
        raise RootError("spectrum enumeration supports %s, not %s" % (sorted(_SPECTRUM_TYPES), rs.name))
    if q not in (2, 3):
        raise RootError("spectrum enumeration supports q in {2, 3}")
    budget = default_budget() if budget is None else budget
    total_ch = chamber_count(rs, q)
    if total_ch > budget:
        raise BudgetError("%d chambers exceed the budget %d" % (total_ch, budget))
    G = theta.G
    if G.F.order != q or G.rs != rs:
        raise GroupError("theta does not live in %s(F_%d)" % (rs.name, q))
    W = weyl_elements(rs)
    counts = Counter()
    if jobs <= 1:
        eng = _Engine(G, theta, kind)
        for w in W:
            counts.update(eng.cell(w))
    else:
        twist = dict(G.consts.twist)
        chunks = [[] for _ in range(jobs)]
        for i, w in enumerate(sorted(W, key=lambda w: -w.length)):
            chunks[i % jobs].append(w.reduced_word())
        args = [(rs.name, q, kind, str(theta), twist, c) for c in chunks if c]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            for part in ex.map(_cell_job, args):
                counts.update(part)
    return _report(rs, q, theta, counts, total_ch)


def _report(rs, q, theta, counts, total_ch):
    w0 = longest(rs)
    total = sum(counts.values())
    maxlen = max(w.length for w in counts)
    maxel = sorted((w for w in counts if w.length == maxlen), key=lambda w: w.reduced_word())
    S = set(range(1, rs.rank + 1))
    # J(w): nodes outside the support of w w0; a simplex of type J is mapped
    # to an opposite one iff some displacement lies in W_{S-J} w0
    types = set()
    for w in counts:
        types.add(frozenset(S - support(w * w0)))
    maximal = [J for J in types if not any(J < K for K in types)]
    circled = sorted(set().union(*types)) if types else []
    inferred, note = None, ""
    if q < 3:
        note = "capped inference not applied for q = 2"
    elif len(maxel) == 1:
        K = support(maxel[0] * w0)
        if maxel[0] * w0 == longest(rs, sorted(K)):
            inferred = frozenset(S - K)
            note = "agrees with direct testing" if sorted(inferred) == circled else "disagrees with direct testing"
        else:
            note = "max displacement is not of the form w_{S-J} w0"
    else:
        note = "several maximal displacements"
    return SpectrumReport(
        type=rs.name, q=q, theta=str(theta), counts=dict(counts), total=total, chambers=total_ch,
        max_length=maxlen, max_elements=maxel, domestic=counts.get(w0, 0) == 0,
        fixed_chambers=counts.get(weyl_identity(rs), 0), circled=circled,
        types_mapped_opposite=sorted(sorted(J) for J in maximal), inferred_J=inferred,
        inference_note=note, uncapped_risk=q == 2)


def verify_corpus(seed=None, suite="e7-chamber", checks=None):
    """Run the verification corpus (see chevkit.corpus)."""
    from . import corpus
    return corpus.verify_corpus(corpus.DEFAULT_SEED if seed is None else seed, suite, checks)
