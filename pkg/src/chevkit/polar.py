"""Finite hyperbolic polar spaces D_n(q) and their collineations.

Points are the singular projective points of the form
    Q(x) = x_1 x_{2n} + x_2 x_{2n-1} + ... + x_n x_{n+1}
over GF(q), q in {2, 3, 4}. Vectors are stored as arrays of field indices
(0 is zero, 1 is one) so that all arithmetic goes through small lookup tables.
Collineations act on row vectors, x -> x^sigma A, and are turned into point
permutations; every predicate below is evaluated on those permutations, in
batches, with numpy.
"""

from __future__ import annotations

import itertools
import random as _random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import BudgetError, GroupError
from .exactfield import GF, GFq

__all__ = [
    "HyperbolicSpace", "Collineation", "build_space", "is_kangaroo",
    "kangaroo_equivalences", "fixed_structure", "KangarooVerdict",
    "EquivalenceReport", "FixedStructure", "ScanReport", "scan_equivalences",
    "isometry_group", "random_isometries", "permutations_of", "reflection",
    "pair_swap", "baer_involution", "root_elation", "orthogonal_group_order",
]

# line-pair relations
EQUAL, COPLANAR, MEET, COLLINEAR, SPECIAL, OPPOSITE = range(6)
RELATION_NAMES = ("equal", "coplanar", "meet", "collinear", "special", "opposite")

GENERATOR_LIMIT = {2: 4, 3: 4, 4: 3}


class _Tables:
    """Addition/multiplication tables of a small finite field."""

    def __init__(self, q):
        if q in (2, 3, 5, 7):
            F = GF(q)
        elif q == 4:
            F = GFq(2, 2, (1, 1, 1))
        else:
            raise GroupError("unsupported field size %d" % q)
        elems = list(F.elements())
        zero, one = F.zero, F.one
        elems.remove(zero)
        elems.remove(one)
        elems = [zero, one] + elems
        self.F = F
        self.q = q
        self.p = F.characteristic
        self.elems = elems
        self.index = {e: i for i, e in enumerate(elems)}
        ix = self.index
        self.add = np.array([[ix[a + b] for b in elems] for a in elems], dtype=np.int8)
        self.mul = np.array([[ix[a * b] for b in elems] for a in elems], dtype=np.int8)
        self.neg = np.array([ix[-a] for a in elems], dtype=np.int8)
        self.inv = np.array([0] + [ix[a.inverse()] for a in elems[1:]], dtype=np.int8)
        self.frob = np.array([ix[a ** self.p] for a in elems], dtype=np.int8)
        self.degree = 1 if q == self.p else 2

    def of(self, value):
        if isinstance(value, np.integer):
            value = int(value)
        return self.index[self.F.convert(value)]

    def sum(self, terms):
        out = terms[0]
        for t in terms[1:]:
            out = self.add[out, t]
        return out

    def frobenius(self, V, e):
        for _ in range(e % self.degree):
            V = self.frob[V]
        return V

    def apply(self, V, A):
        """Row vectors V (..., m) times matrices A (..., m, m), by tables."""
        m = A.shape[-1]
        out = None
        for i in range(m):
            t = self.mul[V[..., i, None], A[..., i, :]]
            out = t if out is None else self.add[out, t]
        return out


def _bits(m):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def _to_int(row):
    return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")


def _to_bool(m, N):
    raw = m.to_bytes((N + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:N].astype(bool)


def orthogonal_group_order(n, q):
    """|O^+(2n, q)|."""
    out = 2 * q ** (n * (n - 1)) * (q ** n - 1)
    for i in range(1, n):
        out *= q ** (2 * i) - 1
    return out


class HyperbolicSpace:
    """The polar space of the hyperbolic quadric in PG(2n-1, q)."""

    def __init__(self, n, q, generators=None):
        if n < 1:
            raise GroupError("rank must be at least 1")
        self.n, self.q = n, q
        self.m = 2 * n
        self.tables = t = _Tables(q)
        self.F = t.F
        m = self.m
        allv = np.array(list(itertools.product(range(q), repeat=m)), dtype=np.int8)
        Qv = self._Q(allv)
        nz = allv != 0
        first = np.where(nz.any(1), nz.argmax(1), -1)
        keep = (Qv == 0) & (first >= 0)
        keep &= allv[np.arange(len(allv)), np.maximum(first, 0)] == 1
        self.vectors = allv[keep]
        self.N = N = len(self.vectors)
        expect = (q ** (n - 1) + 1) * (q ** n - 1) // (q - 1)
        if N != expect:
            raise GroupError("point count %d, expected %d" % (N, expect))
        self._weights = (q ** np.arange(m)).astype(np.int64)
        self._lookup = np.full(q ** m, -1, dtype=np.int64)
        self._lookup[self._code(self.vectors)] = np.arange(N)
        self.collinear = self._B(self.vectors[:, None, :], self.vectors[None, :, :]) == 0
        self.perp_bits = [_to_int(r) for r in self.collinear]
        self._lines()
        self._levels = {0: [1 << i for i in range(N)], 1: list(self.line_bits)}
        self._inc = {}
        self._rel = None
        want = generators if generators is not None else n <= GENERATOR_LIMIT.get(q, 0)
        self.generators = self.subspaces(n - 1) if want else None
        if self.generators is not None:
            self._oriflamme()

    # arithmetic ---------------------------------------------------------
    def _Q(self, V):
        t, m = self.tables, self.m
        return t.sum([t.mul[V[..., i], V[..., m - 1 - i]] for i in range(self.n)])

    def _B(self, X, Y):
        t, m = self.tables, self.m
        return t.sum([t.mul[X[..., i], Y[..., m - 1 - i]] for i in range(m)])

    def _code(self, V):
        return (V.astype(np.int64) * self._weights).sum(-1)

    def normalize(self, V):
        t = self.tables
        nz = V != 0
        if not nz.any(-1).all():
            raise GroupError("zero vector")
        first = nz.argmax(-1)
        lead = np.take_along_axis(V, first[..., None], -1)
        return t.mul[V, t.inv[lead]]

    def point_index(self, V):
        """Indices of the projective points spanned by the rows of V (-1 if not on the quadric)."""
        return self._lookup[self._code(self.normalize(np.asarray(V, dtype=np.int8)))]

    def point(self, i):
        return [self.tables.elems[c] for c in self.vectors[i]]

    # incidence ----------------------------------------------------------
    def _lines(self):
        t, q, N = self.tables, self.q, self.N
        lop = np.full((N, N), -1, dtype=np.int32)
        lines = []
        scal = np.arange(q, dtype=np.int8)
        for a in range(N):
            for b in np.nonzero(self.collinear[a])[0]:
                if b <= a or lop[a, b] >= 0:
                    continue
                V = t.add[self.vectors[a][None, :], t.mul[scal[:, None], self.vectors[b][None, :]]]
                pts = sorted(set(self.point_index(V).tolist()) | {int(b)})
                lid = len(lines)
                lines.append(pts)
                for x in pts:
                    lop[x, pts] = lid
                lop[pts, pts] = -1
        self.line_points = np.array(lines, dtype=np.int64)
        self.line_of_pair = lop
        self.line_bits = [sum(1 << x for x in L) for L in lines]

    def subspaces(self, d):
        """All singular subspaces of projective dimension d, as point bitmasks."""
        if d > self.n - 1:
            return []
        if d in self._levels:
            return self._levels[d]
        lower = self.subspaces(d - 1)
        lop, lb, pb = self.line_of_pair, self.line_bits, self.perp_bits
        found = set()
        for S in lower:
            pts = list(_bits(S))
            perp = -1
            for x in pts:
                perp &= pb[x]
            cand = perp & ~S
            covered = 0
            while cand & ~covered:
                rest = cand & ~covered
                p = (rest & -rest).bit_length() - 1
                T = S
                row = lop[p]
                for s in pts:
                    T |= lb[row[s]]
                found.add(T)
                covered |= T
        self._levels[d] = sorted(found)
        return self._levels[d]

    def incidence(self, d):
        """Boolean (count x N) incidence matrix of d-dimensional singular subspaces."""
        if d not in self._inc:
            subs = self.subspaces(d)
            self._inc[d] = (np.array([_to_bool(S, self.N) for S in subs])
                            if subs else np.zeros((0, self.N), dtype=bool))
        return self._inc[d]

    def _oriflamme(self):
        G = self.incidence(self.n - 1)
        sizes = G[0].astype(np.int64) @ G.T.astype(np.int64)
        dims = self.dim_of_count(sizes)
        self.oriflamme = ((self.n - 1 - dims) % 2).astype(np.int8)

    def dim_of_count(self, counts):
        """Projective dimension of a subspace with the given number of points (-2 if impossible)."""
        q = self.q
        table = np.full(self.N + 1, -2, dtype=np.int64)
        table[0] = -1
        k, size = 0, 1
        while size <= self.N:
            table[size] = k
            k += 1
            size = size * q + 1
        return table[np.asarray(counts)]

    def line_relations(self):
        """Relation codes between all pairs of lines (computed once)."""
        if self._rel is None:
            L = len(self.line_points)
            if L > 6000:
                raise BudgetError("too many lines (%d) for the relation table" % L)
            inc = self.incidence(1).astype(np.int32)
            lperp = self.collinear[:, self.line_points].all(-1).T  # [line, point]
            meet = inc @ inc.T
            inperp = inc @ lperp.T.astype(np.int32)  # points of L collinear with all of L'
            full = self.q + 1
            R = np.full((L, L), SPECIAL, dtype=np.int8)
            R[(meet == 0) & (inperp == 0)] = OPPOSITE
            R[(meet == 0) & (inperp == full)] = COLLINEAR
            R[(meet == 1) & (inperp == full)] = COPLANAR
            R[(meet == 1) & (inperp < full)] = MEET
            R[meet == full] = EQUAL
            self._rel = R
        return self._rel

    def span_rank(self, points):
        """Vector-space dimension of the span of the given points."""
        if len(points) == 0:
            return 0
        return linalg.rank([self.point(int(i)) for i in points])

    def in_span(self, basis_points, candidates):
        R, piv = linalg.rref([self.point(int(i)) for i in basis_points])
        R = R[:len(piv)]
        return [linalg.span_contains(R, self.point(int(c))) for c in candidates]

    def counts(self):
        out = {"points": self.N, "lines": len(self.line_points)}
        if self.generators is not None:
            out["generators"] = len(self.generators)
        return out

    def __repr__(self):
        return "HyperbolicSpace(D%d(%d))" % (self.n, self.q)


def build_space(n, q, generators=None):
    """D_n(q) with points, lines and (for small cases) all singular subspaces."""
    if q not in (2, 3, 4):
        raise GroupError("q must be 2, 3 or 4")
    if generators and n > GENERATOR_LIMIT[q]:
        raise BudgetError("generator enumeration limited to n <= %d for q=%d" % (GENERATOR_LIMIT[q], q))
    if q ** (2 * n) > 2 ** 20:
        raise BudgetError("D%d(%d) is too large" % (n, q))
    return HyperbolicSpace(n, q, generators)


class Collineation:
    """A semilinear map x -> x^(p^frob) A, verified to induce a collineation."""

    def __init__(self, sp, matrix=None, frob=0, perm=None):
        self.sp = sp
        t = sp.tables
        self.frob = frob % t.degree
        if matrix is not None:
            if isinstance(matrix, np.ndarray) and np.issubdtype(matrix.dtype, np.integer):
                A = matrix.astype(np.int8)   # already field indices
            else:
                A = np.array([[t.of(v) for v in row] for row in matrix], dtype=np.int8)
            if A.shape != (sp.m, sp.m):
                raise GroupError("matrix must be %dx%d" % (sp.m, sp.m))
            self.matrix = A
            img = sp.point_index(t.apply(t.frobenius(sp.vectors, self.frob), A))
            if (img < 0).any():
                raise GroupError("matrix does not preserve the quadric")
            perm = img
        else:
            self.matrix = None
            if perm is None:
                raise GroupError("need a matrix or a permutation")
        perm = np.asarray(perm, dtype=np.int64)
        if sorted(perm.tolist()) != list(range(sp.N)):
            raise GroupError("not a bijection of the point set")
        C = sp.collinear
        if not (C[np.ix_(perm, perm)] == C).all():
            raise GroupError("collinearity is not preserved")
        self.perm = perm

    @classmethod
    def identity(cls, sp):
        return cls(sp, perm=np.arange(sp.N))

    @property
    def linear(self):
        return self.frob == 0

    def is_identity(self):
        return bool((self.perm == np.arange(self.sp.N)).all())

    def is_involution(self):
        return not self.is_identity() and bool((self.perm[self.perm] == np.arange(self.sp.N)).all())

    def fixed_points(self):
        return np.nonzero(self.perm == np.arange(self.sp.N))[0]

    def __mul__(self, other):
        # first self, then other
        return Collineation(self.sp, perm=other.perm[self.perm])


# ---------------------------------------------------------------------------
# predicates, batched over rows of a permutation array T (B x N)

def _evaluate(sp, T):
    n, N, q = sp.n, sp.N, sp.q
    B = len(T)
    ar = np.arange(N)
    rows = np.arange(B)[:, None]
    Tinv = np.empty_like(T)
    Tinv[rows, T] = ar
    fixed = T == ar
    ident = fixed.all(1)
    anyfix = fixed.any(1)
    moved_coll = (sp.collinear[ar[None, :], T] & ~fixed).any(1)
    kang = ~ident & ~moved_coll & anyfix
    c1 = ident | kang

    G = sp.incidence(n - 1)
    Gimg = G[:, Tinv].transpose(1, 0, 2)    # B x G x N: indicator of M^theta
    inter = G[None] & Gimg
    dims = sp.dim_of_count(inter.sum(-1))   # B x G
    kk = dims[:, 0]
    const = (dims == kk[:, None]).all(1) & (kk >= 0)
    moved = np.take_along_axis(inter, np.broadcast_to(Tinv[:, None, :], inter.shape), -1)
    glob = (moved == inter).all((1, 2))
    point = ~(inter & ~fixed[:, None, :]).any((1, 2))
    c2 = const & glob
    c3 = const & point

    L0, L1 = sp.line_points[:, 0], sp.line_points[:, 1]
    limg = sp.line_of_pair[T[:, L0], T[:, L1]]
    R = sp.line_relations()
    rel = R[np.arange(len(L0))[None, :], limg]
    c4 = anyfix & ~((rel == COPLANAR) | (rel == SPECIAL)).any(1)

    # fixed point set structure
    lf = fixed[:, sp.line_points].sum(-1)
    subspace = ~((lf >= 2) & (lf <= q)).any(1)
    meetF = sp.dim_of_count((G[None] & fixed[:, None, :]).sum(-1))
    d = meetF.max(1)
    noncoll = (~sp.collinear).astype(np.int32)
    outside = fixed.astype(np.int32) @ noncoll      # F points not collinear with x
    degenerate = ((outside == 0) & fixed).any(1)
    base = subspace & anyfix
    large = np.zeros(B, dtype=bool)
    for k in range(n):
        sel = base & ~degenerate & (d == k)
        if not sel.any():
            continue
        i = n - k - 1
        Fi = fixed[sel].astype(np.int32)
        ok = (Fi @ sp.incidence(i).T.astype(np.int32) > 0).all(1)
        if i - 1 >= 0:
            ok &= (Fi @ sp.incidence(i - 1).T.astype(np.int32) == 0).any(1)
        large[np.nonzero(sel)[0][ok]] = True
    c5 = large
    ideal = ((meetF == d[:, None]) | (meetF < d[:, None] - 1)).all(1)
    c6 = base & ideal
    conds = np.stack([c1, c2, c3, c4, c5, c6], 1)
    return {
        "conditions": conds, "identity": ident, "kangaroo": kang, "k": np.where(const, kk, -1),
        "fixed_rank": np.where(base, d + 1, -1), "fixed": fixed,
        "lazy": kang & (lf == q + 1).any(1),
    }


@dataclass
class KangarooVerdict:
    kangaroo: bool
    kind: str | None = None
    reason: str = ""

    def __bool__(self):
        return self.kangaroo

    @property
    def lazy(self):
        return self.kind == "lazy"


def is_kangaroo(sp, theta):
    """Nontrivial, at least one fixed point, no point mapped to a distinct collinear point."""
    if not isinstance(theta, Collineation):
        theta = Collineation(sp, perm=theta)
    T = theta.perm
    ar = np.arange(sp.N)
    fixed = T == ar
    if fixed.all():
        return KangarooVerdict(False, reason="identity")
    if not fixed.any():
        return KangarooVerdict(False, reason="no fixed point")
    bad = np.nonzero(sp.collinear[ar, T] & ~fixed)[0]
    if len(bad):
        return KangarooVerdict(False, reason="point %d is mapped to a collinear point" % bad[0])
    lazy = (fixed[sp.line_points].all(1)).any()
    return KangarooVerdict(True, "lazy" if lazy else "diligent")


@dataclass
class EquivalenceReport:
    conditions: tuple
    k: int
    fixed_rank: int
    kangaroo: bool
    identity: bool
    lazy: bool
    notes: list = field(default_factory=list)

    @property
    def agree(self):
        return len(set(self.conditions)) == 1

    def as_dict(self):
        return {"conditions": dict(zip(("i", "ii", "iii", "iv", "v", "vi"), self.conditions)),
                "agree": self.agree, "k": self.k, "fixed_rank": self.fixed_rank,
                "kangaroo": self.kangaroo, "identity": self.identity, "lazy": self.lazy,
                "notes": list(self.notes)}


def kangaroo_equivalences(sp, theta):
    """Evaluate the six kangaroo conditions (i)-(vi) literally for one collineation."""
    if sp.n < 3:
        raise GroupError("the equivalences need rank at least 3")
    if sp.generators is None:
        raise BudgetError("generators were not enumerated for this space")
    if not isinstance(theta, Collineation):
        theta = Collineation(sp, perm=theta)
    r = _evaluate(sp, theta.perm[None, :])
    notes = []
    if r["identity"][0]:
        notes.append("identity: every generator meets its image in itself, k = n-1")
    return EquivalenceReport(tuple(bool(x) for x in r["conditions"][0]), int(r["k"][0]),
                             int(r["fixed_rank"][0]), bool(r["kangaroo"][0]),
                             bool(r["identity"][0]), bool(r["lazy"][0]), notes)


@dataclass
class ScanReport:
    total: int = 0
    agree: int = 0
    kangaroos: int = 0
    lazy: int = 0
    diligent: int = 0
    identities: int = 0
    ovoid_failures: int = 0
    disagreements: list = field(default_factory=list)
    patterns: dict = field(default_factory=dict)

    @property
    def all_agree(self):
        return self.agree == self.total

    def merge(self, other):
        for f in ("total", "agree", "kangaroos", "lazy", "diligent", "identities", "ovoid_failures"):
            setattr(self, f, getattr(self, f) + getattr(other, f))
        self.disagreements.extend(other.disagreements)
        for k, v in other.patterns.items():
            self.patterns[k] = self.patterns.get(k, 0) + v
        return self

    def as_dict(self):
        return {"total": self.total, "agree": self.agree, "kangaroos": self.kangaroos,
                "lazy": self.lazy, "diligent": self.diligent, "identities": self.identities,
                "ovoid_failures": self.ovoid_failures,
                "patterns": {"".join("1" if b else "0" for b in k): v for k, v in self.patterns.items()},
                "disagreements": self.disagreements[:10]}


def _scan_batch(sp, T):
    r = _evaluate(sp, T)
    C = r["conditions"]
    out = ScanReport(total=len(T))
    same = (C == C[:, :1]).all(1)
    out.agree = int(same.sum())
    out.kangaroos = int(r["kangaroo"].sum())
    out.lazy = int(r["lazy"].sum())
    out.diligent = out.kangaroos - out.lazy
    out.identities = int(r["identity"].sum())
    dil = np.nonzero(r["kangaroo"] & ~r["lazy"])[0]
    if len(dil):
        G = sp.incidence(sp.n - 1)
        meets = (G[None] & r["fixed"][dil][:, None, :]).sum(-1)
        out.ovoid_failures = int((meets != 1).any(1).sum())
    rows, cnts = np.unique(C, axis=0, return_counts=True)
    for row, cnt in zip(rows, cnts):
        out.patterns[tuple(bool(b) for b in row)] = int(cnt)
    for i in np.nonzero(~same)[0][:10]:
        out.disagreements.append({"perm": T[i].tolist(), "conditions": C[i].tolist()})
    return out


def scan_equivalences(sp, perms, batch=256, jobs=1):
    """Evaluate the six conditions on many point permutations; report agreement."""
    if sp.n < 3:
        raise GroupError("the equivalences need rank at least 3")
    perms = np.asarray(perms, dtype=np.int64)
    chunks = [perms[i:i + batch] for i in range(0, len(perms), batch)]
    total = ScanReport()
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as ex:
            for r in ex.map(lambda c: _scan_batch(sp, c), chunks):
                total.merge(r)
    else:
        for c in chunks:
            total.merge(_scan_batch(sp, c))
    return total


# ---------------------------------------------------------------------------
# isometries

def _identity_matrix(sp):
    return np.eye(sp.m, dtype=np.int8)


def _reflection_idx(sp, v):
    t = sp.tables
    Qv = sp._Q(v)
    if Qv == 0:
        raise GroupError("reflection vector must be nonsingular")
    c = t.inv[Qv]
    w = v[::-1]                      # B(x, v) = x . w
    R = t.neg[t.mul[t.mul[w[:, None], c], v[None, :]]]
    return t.add[_identity_matrix(sp), R]


def reflection(sp, v):
    """Matrix (field indices) of x -> x - B(x,v) Q(v)^-1 v; a transvection in characteristic 2."""
    return _reflection_idx(sp, np.array([sp.tables.of(c) for c in v], dtype=np.int8))


def _random_nonsingular(sp, rng):
    while True:
        v = np.array([rng.randrange(sp.q) for _ in range(sp.m)], dtype=np.int8)
        if sp._Q(v) != 0:
            return v


def isometry_group(sp, budget=10 ** 6):
    """All point permutations induced by the orthogonal group, by closure under reflections."""
    expected = orthogonal_group_order(sp.n, sp.q) // (2 if sp.q % 2 else 1)
    if expected > budget:
        raise BudgetError("group of order %d exceeds budget %d" % (expected, budget))
    gens, keys = [], set()
    for code in itertools.product(range(sp.q), repeat=sp.m):
        v = np.array(code, dtype=np.int8)
        if sp._Q(v) == 0:
            continue
        g = Collineation(sp, _reflection_idx(sp, v)).perm
        if g.tobytes() not in keys:
            keys.add(g.tobytes())
            gens.append(g)
    ident = np.arange(sp.N, dtype=np.int64)
    seen = {ident.tobytes()}
    elems = [ident]
    frontier = ident[None, :]
    while len(frontier):
        new = []
        for g in gens:
            for row in g[frontier]:
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    new.append(row)
        elems.extend(new)
        frontier = np.array(new) if new else np.zeros((0, sp.N), dtype=np.int64)
    out = np.array(elems)
    if len(out) != expected:
        raise GroupError("closure has %d elements, expected %d" % (len(out), expected))
    return out


def random_isometries(sp, count, rng=None, length=None, involution_share=0.5):
    """Matrices (field indices) of random isometries.

    A share of the samples are long products of random reflections; the rest are
    involutions acting as -1 on the span of a few mutually orthogonal nonsingular
    vectors, which is where kangaroos live."""
    rng = rng or _random.Random()
    t = sp.tables
    length = length or 4 * sp.m
    out = []
    for _ in range(count):
        A = _identity_matrix(sp)
        if rng.random() < involution_share:
            vs = []
            want = rng.randint(1, sp.m - 1)
            tries = 0
            while len(vs) < want and tries < 50:
                tries += 1
                v = _random_nonsingular(sp, rng)
                if all(sp._B(v, u) == 0 for u in vs):
                    vs.append(v)
            for v in vs:
                A = t.apply(A, _reflection_idx(sp, v))
        else:
            for _ in range(length):
                A = t.apply(A, _reflection_idx(sp, _random_nonsingular(sp, rng)))
        out.append(A)
    return np.array(out)


def permutations_of(sp, matrices, frob=0):
    """Point permutations of a batch of (semi)linear maps given by field-index matrices."""
    t = sp.tables
    V = t.frobenius(sp.vectors, frob)
    imgs = t.apply(V[None, :, :], np.asarray(matrices)[:, None, :, :])
    P = sp.point_index(imgs)
    if (P < 0).any():
        raise GroupError("a matrix does not preserve the quadric")
    return P


def pair_swap(sp, pairs):
    """Swap x_i and x_{2n+1-i} on the innermost `pairs` hyperbolic pairs.

    The map is an isometry acting as -1 on a `pairs`-dimensional subspace; it is a
    kangaroo whenever that subspace is anisotropic (pairs=1 always, pairs=2 when
    -1 is a nonsquare)."""
    m, n = sp.m, sp.n
    if not 1 <= pairs <= n:
        raise GroupError("pairs out of range")
    perm = list(range(m))
    for i in range(n - pairs, n):
        perm[i], perm[m - 1 - i] = m - 1 - i, i
    A = np.zeros((m, m), dtype=np.int8)
    A[np.arange(m), perm] = 1
    return Collineation(sp, A)


def baer_involution(sp):
    """Frobenius-twisted involution of D_n(4) whose fixed points form the elliptic
    quadric over GF(2) (an ovoid when n = 2)."""
    if sp.q != 4:
        raise GroupError("Baer involutions need q = 4")
    F, m, n = sp.F, sp.m, sp.n
    w = F.gen
    P = linalg.identity(F, m)
    i, j = n - 1, n                    # middle pair: x_i = y_i + w y_j, x_j = y_i + w^2 y_j
    P[i][i], P[i][j] = F.one, F.one
    P[j][i], P[j][j] = w, w * w
    Pinv = linalg.inverse(P)
    Ps = [[a ** 2 for a in row] for row in Pinv]
    return Collineation(sp, linalg.mul(Ps, P), frob=1)


def root_elation(sp, scalar=1):
    """The Siegel (long root) elation fixing the perp of the line <e_1, e_2> pointwise."""
    F, m = sp.F, sp.m
    A = linalg.identity(F, m)
    c = F.convert(scalar)
    # x -> x + B(x,e_2) c e_1 - B(x,e_1) c e_2 with e_1, e_2 singular and perpendicular
    A[m - 2][0] = A[m - 2][0] + c
    A[m - 1][1] = A[m - 1][1] - c
    return Collineation(sp, A)


# ---------------------------------------------------------------------------
# fixed structures

@dataclass
class FixedStructure:
    kind: str
    fixed_points: list
    span_dim: int
    rank: int
    ovoid: bool
    involution: bool
    linear: bool
    checks: dict = field(default_factory=dict)
    skeleton: object = "not applicable"

    @property
    def ok(self):
        return all(self.checks.values())

    def as_dict(self):
        return {"kind": self.kind, "fixed_points": len(self.fixed_points), "span_dim": self.span_dim,
                "rank": self.rank, "ovoid": self.ovoid, "involution": self.involution,
                "linear": self.linear, "checks": dict(self.checks), "skeleton": self.skeleton}


def _has_skeleton(sp, pts, d):
    """Whether pts contains d+2 points of which every d+1 are independent."""
    rows = {int(i): sp.point(int(i)) for i in pts}
    for combo in itertools.combinations(rows, d + 2):
        if all(linalg.rank([rows[x] for x in combo if x != y]) == d + 1 for y in combo):
            return True
    return False


def fixed_structure(sp, theta, skeleton=True):
    """Shape of the fixed point set of a kangaroo, checked against the expected spans."""
    if not isinstance(theta, Collineation):
        theta = Collineation(sp, perm=theta)
    verdict = is_kangaroo(sp, theta)
    if not verdict:
        raise GroupError("not a kangaroo: %s" % verdict.reason)
    n = sp.n
    F = theta.fixed_points()
    Fmask = np.zeros(sp.N, dtype=bool)
    Fmask[F] = True
    Fbits = _to_int(Fmask)
    span = sp.span_rank(F) - 1
    closed = bool((np.array(sp.in_span(F, range(sp.N))) == Fmask).all())
    # rank of the fixed polar subspace: largest singular subspace inside it
    rank = 0
    for d in range(n):
        if d >= 2 and sp.generators is None:
            break
        if not any(S & ~Fbits == 0 for S in sp.subspaces(d)):
            break
        rank = d + 1
    if sp.generators is not None:
        meets = (sp.incidence(n - 1) & Fmask[None, :]).sum(-1)
        ovoid = bool((meets == 1).all())
    else:
        ovoid = False
    involution = theta.is_involution()
    checks = {}
    skel = "not applicable"
    if verdict.kind == "diligent":
        checks["ovoid"] = ovoid
        if theta.linear:
            checks["span is n-dimensional"] = span == n
            checks["fixed set is span meet quadric"] = closed
        else:
            checks["involution"] = involution
            checks["span is everything"] = span == 2 * n - 1
        if skeleton and sp.q > 2:
            skel = _has_skeleton(sp, F, span)
            checks["skeleton"] = skel
    else:
        checks["linear"] = theta.linear
        checks["span is (n+k)-dimensional"] = span == n + rank - 1
        checks["fixed set is span meet quadric"] = closed
    return FixedStructure(verdict.kind, F.tolist(), span, rank, ovoid, involution,
                          theta.linear, checks, skel)
