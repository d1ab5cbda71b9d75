"""
Verification corpus: executable checks of the E7 chamber-fixing results.

Every check produces a CheckRecord {check, anchor, parameters, seed,
verdict, payload}.  Verdicts: "pass", "fail" (the computation contradicts
the claim and nothing explains it) and "finding" (the claim fails as
literally stated, with the discrepancy characterised in the payload).

Sign conventions.  Root elements follow the engine's structure constants
with the configured twist.  The E7;4 forcing relations below are written in
that convention; where a relation differs from the printed one only by a
sign, the printed form is kept alongside for the record.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field

from .chevalley import Chevalley
from .d4rep import (D4Model, build_theta_E74, char_poly, classify_theta, theta_charpoly_expected,
                    theta_trace_param)
from .exactfield import GF, quadratic_roots
from .opposition import MAGIC_WORDS, diagram, displacement, psi_J
from .rootsys import build_root_system, highest_root_sequence, perp_set_orbit_reps, polar_type
from .weyl import identity as weyl_identity, longest, orbit_of_perp_sets, reflection, weyl_from_word

SCHEMA = "chevkit.report/1"
DEFAULT_SEED = 20240607


@dataclass
class CheckRecord:
    check: str
    anchor: str
    parameters: dict
    seed: object
    verdict: str
    payload: dict = field(default_factory=dict)
    seconds: float = 0.0


@dataclass
class CorpusReport:
    records: list
    seed: int
    schema: str = SCHEMA

    def verdicts(self):
        return {r.check: r.verdict for r in self.records}

    @property
    def hard_failures(self):
        return [r for r in self.records if r.verdict == "fail"]

    @property
    def findings(self):
        return [r for r in self.records if r.verdict == "finding"]

    def to_json(self, **kw):
        return json.dumps({"schema": self.schema, "seed": self.seed,
                           "records": [asdict(r) for r in self.records]}, default=str, **kw)


def _e7():
    return build_root_system("E", 7)


def _R(rs, label):
    return rs.idx(tuple(int(c) for c in label))


def _word(w):
    return "".join(map(str, w.reduced_word()))


# --- (a) conjugating words ---------------------------------------------------

MAGIC_TARGETS = {
    "E7;3": [("2234321", "0000001"), ("0112221", "0000100"), ("0000001", "0100000")],
    "E7;4": [("0112221", "0100000"), ("1000000", "0001000"), ("0112100", "0010000"),
             ("0010000", "0000100")],
}


def check_magic_words():
    rs = _e7()
    out = {}
    ok = True
    for name, word in MAGIC_WORDS.items():
        u = weyl_from_word(rs, [int(c) for c in word])
        ui = u.inverse()
        rows = []
        for src, dst in MAGIC_TARGETS[name]:
            img = rs.label(ui.act(_R(rs, src)))
            rows.append({"gamma": src, "image": img, "expected": dst, "ok": img == dst})
            ok &= img == dst
        out[name] = {"word": word, "length": u.length, "reduced": u.length == len(word), "images": rows}
    return CheckRecord("a", "u^{-1}gamma_1 = alpha_7 ... conjugates Psi_J to the standard D_4 parabolic",
                       {}, None, "pass" if ok else "fail", out)


# --- (b) Psi_J -------------------------------------------------------------

E74_ROOTS = ["0112221", "1112221", "1122221", "1234321", "2234321", "0112100", "1112100",
             "1122100", "0010000", "1224321", "1010000", "1000000"]


def check_psi():
    rs = _e7()
    P3 = psi_J(rs, {1, 6, 7})
    P4 = psi_J(rs, {1, 3, 4, 6})
    s3 = [rs.label(b) for b in P3.simple]
    s4 = [rs.label(b) for b in P4.simple]
    listed = sorted(E74_ROOTS)
    got = sorted(rs.label(b) for b in P4.positive)
    ok = (P3.type == "A1xA1xA1" and s3 == ["2234321", "0112221", "0000001"]
          and P4.type == "D4" and s4 == ["0112221", "1000000", "0112100", "0010000"]
          and len(P4.positive) == 12 and got == listed)
    return CheckRecord("b", "Psi_J is of type A_1 x A_1 x A_1 / of type D_4", {}, None,
                       "pass" if ok else "fail",
                       {"E7;3": {"type": P3.type, "simple": s3},
                        "E7;4": {"type": P4.type, "simple": s4, "positive": got,
                                 "listed_roots_match": got == listed}})


# --- (c), (d) ---------------------------------------------------------------

def check_reflection_products():
    out = {}
    ok = True
    for name in ("E7;1", "E7;2", "E7;3", "E7;4"):
        d = diagram(name)
        rs = d.rs
        w = weyl_identity(rs)
        for phi in d.sequence:
            w = w * reflection(rs, phi)
        out[name] = {"sequence": d.labels(), "equal": w == d.target, "length": d.M}
        ok &= w == d.target
    return CheckRecord("c", "s_{phi_1}...s_{phi_N} = w_{S\\J} w_0", {}, None, "pass" if ok else "fail", out)


def check_lengths():
    m4, m3 = diagram("E7;4").M, diagram("E7;3").M
    return CheckRecord("d", "l(w_{S\\J} w_0) = 60", {}, None,
                       "pass" if (m4, m3) == (60, 51) else "fail", {"E7;4": m4, "E7;3": m3})


# --- E7;3 normal forms ------------------------------------------------------

class E73:
    """theta' = x_phi1(b1) x_phi2(b2) x_phi3(b3) s_phi1^-1 s_phi2^-1 s_phi3^-1 h_w1(t1) h_w6(t2) h_w7(t3)."""

    def __init__(self, F):
        self.rs = rs = _e7()
        self.F = F
        self.G = G = Chevalley(rs, F)
        self.phis = highest_root_sequence(rs, "E7;3")
        self.Sinv = G.product(*[G.s_root(p, -1) for p in self.phis])
        self.S = G.product(*[G.s_root(p, 1) for p in self.phis])
        self.Wphi = weyl_identity(rs)
        for p in self.phis:
            self.Wphi = self.Wphi * reflection(rs, p)

    def u(self, c1, c2, c3):
        return self.G.unipotent(list(zip(self.phis, (c1, c2, c3))))

    def theta(self, b, t):
        G = self.G
        return G.product(self.u(*b), self.Sinv, G.h_omega(1, t[0]), G.h_omega(6, t[1]), G.h_omega(7, t[2]))

    def theta_a(self, a, t):
        t1, t2, _ = t
        return self.theta((a / (t1 * t2), a / t2, a), t)

    def witness_cell(self, th, alpha, beta):
        G, rs = self.G, self.rs
        g = G.product(G.x(rs.neg(_R(rs, alpha)), 1), G.x(rs.neg(_R(rs, beta)), 1))
        return displacement(th, g)

    def g1(self, y, t):
        t1, t2, _ = t
        return self.G.product(self.u(-y / (t1 * t2), -y / t2, -y), self.S)

    def g2(self, y, t, k=None):
        """g_2 with x-coefficients k (t1 t2, t2, 1); k defaults to the printed t3^2 y^3 / (t3 y^2 - 1)."""
        t1, t2, t3 = t
        if k is None:
            k = t3 * t3 * y ** 3 / (t3 * y * y - 1)
        return self.G.product(self.u(t1 * t2 * k, t2 * k, k), self.S)

    def stated_after_g1(self, y, t, inverted=False):
        t1, t2, t3 = t
        s = t3 * y * y
        return self.G.product(self.u(t1 * t2 * t3 * y, t2 * t3 * y, t3 * y),
                              self.G.h_omega(7, s if inverted else s.inverse()))


E73_WITNESSES = [
    {"alpha": "1010000", "beta": "1234321", "cond": "t1 b1 - b2 != 0", "extra": 3},
    {"alpha": "0000110", "beta": "0112211", "cond": "t2 b2 - b3 != 0", "extra": 5},
]


def e73_witness(F, rng, which, violate=True):
    """One sample for an E7;3 forcing condition: returns (cell, expected cell, parameters)."""
    m = E73(F)
    spec = E73_WITNESSES[which]
    t = [_nonzero(F, rng) for _ in range(3)]
    b = [F.random(rng) for _ in range(3)]
    t1, t2, _ = t
    # enforce the other relation, then set this one
    if which == 0:
        b[0] = b[1] / t1 + (_nonzero(F, rng) if violate else F.zero)
    else:
        b[1] = b[2] / t2 + (_nonzero(F, rng) if violate else F.zero)
    v = m.witness_cell(m.theta(b, t), spec["alpha"], spec["beta"])
    expect = m.Wphi * weyl_from_word(m.rs, [spec["extra"]])
    return v, expect, {"b": [str(x) for x in b], "t": [str(x) for x in t]}


def _nonzero(F, rng):
    while True:
        x = F.random(rng)
        if x:
            return x


def check_e73(seed=DEFAULT_SEED, samples=12):
    rng = random.Random(seed)
    F5, F7 = GF(5), GF(7)
    payload = {}
    verdict = "pass"
    # forcing witnesses over F5
    wit = []
    for k, spec in enumerate(E73_WITNESSES):
        v, expect, params = e73_witness(F5, rng, k, violate=True)
        vc, _, pc = e73_witness(F5, rng, k, violate=False)
        ok = v == expect and vc != expect
        wit.append({"condition": spec["cond"], "alpha": spec["alpha"], "beta": spec["beta"],
                    "violating_sample": params, "cell": _word(v), "expected": _word(expect),
                    "control_sample": pc, "control_cell_length": vc.length, "ok": ok})
        if not ok:
            verdict = "fail"
    payload["witnesses"] = wit

    # chamber-fixing identities over F7, y chosen first
    m = E73(F7)
    F = F7
    stats = {"g1_fixes": 0, "g1_conj_stated": 0, "g1_conj_inverted_torus": 0,
             "case1_unipotent": 0, "case1_samples": 0,
             "g2_printed_fixes_printed_theta2": 0, "g2_printed_gives_inverted": 0,
             "g2_printed_fixes_actual": 0, "g2_corrected_fixes": 0, "g2_corrected_gives_stated_homology": 0,
             "case2_samples": 0, "samples": 0}
    for _ in range(samples):
        t = [_nonzero(F, rng) for _ in range(3)]
        y = _nonzero(F, rng)
        t1, t2, t3 = t
        a = -y - (t3 * y).inverse()
        th = m.theta_a(a, t)
        g1 = m.g1(y, t)
        c = th.conjugate(g1)
        stats["samples"] += 1
        stats["g1_fixes"] += c.bruhat_cell().is_identity()
        stats["g1_conj_stated"] += c == m.stated_after_g1(y, t)
        stats["g1_conj_inverted_torus"] += c == m.stated_after_g1(y, t, inverted=True)
        s = t3 * y * y
        if s == F.one:
            stats["case1_samples"] += 1
            stats["case1_unipotent"] += c == m.u(t1 * t2 * t3 * y, t2 * t3 * y, t3 * y)
            continue
        stats["case2_samples"] += 1
        printed = m.stated_after_g1(y, t)
        g2 = m.g2(y, t)
        c2 = printed.conjugate(g2)
        stats["g2_printed_fixes_printed_theta2"] += c2.bruhat_cell().is_identity()
        stats["g2_printed_gives_inverted"] += c2 == m.G.h_omega(7, s)
        stats["g2_printed_fixes_actual"] += c.conjugate(g2).bruhat_cell().is_identity()
        g2c = m.g2(y, t, k=t3 * y / (F.one - s))
        c3 = c.conjugate(g2c)
        stats["g2_corrected_fixes"] += c3.bruhat_cell().is_identity()
        stats["g2_corrected_gives_stated_homology"] += c3 == m.G.h_omega(7, s.inverse())
    payload["identities_F7"] = stats
    n, n2 = stats["samples"], stats["case2_samples"]
    literal = stats["g1_fixes"] == n and stats["g1_conj_stated"] == n and stats["g2_printed_fixes_actual"] == n2
    explained = (stats["g1_fixes"] == n and stats["g1_conj_inverted_torus"] == n
                 and stats["case1_unipotent"] == stats["case1_samples"]
                 and stats["g2_corrected_fixes"] == n2 and stats["g2_corrected_gives_stated_homology"] == n2)
    if not literal:
        payload["analysis"] = (
            "g1 B is fixed and g1^-1 theta' g1 = x_phi1(t1t2t3y) x_phi2(t2t3y) x_phi3(t3y) h_w7(t3 y^2): "
            "the printed torus parameter t3^-1 y^-2 is inverted. The printed g2 fixes a chamber of the "
            "printed theta'' (mapping it to h_w7(t3 y^2)), not of the actual conjugate; with x-coefficient "
            "t3 y / (1 - t3 y^2) in place of t3^2 y^3 / (t3 y^2 - 1) the actual conjugate goes to "
            "h_w7(t3^-1 y^-2), the homology of statement (2).")
        if explained and verdict == "pass":
            verdict = "finding"
        else:
            verdict = "fail"

    # irreducible p: residue of type {2,5,7}
    res = []
    for trial in range(6):
        t = [_nonzero(F, rng) for _ in range(3)]
        a = F.random(rng)
        splits = bool(quadratic_roots(a, t[2].inverse()))
        fixed, stab = e73_residue_fixes(m, a, t)
        res.append({"a": str(a), "t": [str(x) for x in t], "p_splits": splits,
                    "stabilises_R": stab, "fixes_chamber_of_R": fixed, "ok": stab and fixed == splits})
    payload["residue_check"] = res
    if not all(r["ok"] for r in res):
        verdict = "fail"
    return CheckRecord("e", "the chamber g_1B is fixed by theta' / B s_phi1 s_phi2 s_phi3 s_3 B",
                       {"fields": [5, 7], "samples": samples}, seed, verdict, payload)


def e73_residue_fixes(m, a, t):
    """Whether u^-1 theta' u stabilises the {2,5,7} residue of B and fixes one of its chambers."""
    rs, G = m.rs, m.G
    u = G.n(weyl_from_word(rs, [int(c) for c in MAGIC_WORDS["E7;3"]]))
    th = m.theta_a(a, t).conjugate(u)
    nodes = [2, 5, 7]
    stab = support_in(th.bruhat_cell(), nodes)
    if not stab:
        return False, False
    for mask in range(8):
        word = [nodes[i] for i in range(3) if mask >> i & 1]
        w = weyl_from_word(rs, word)
        roots = [rs.simple[i - 1] for i in word]
        for cs in _tuples(m.F, len(roots)):
            g = G.product(G.unipotent(list(zip(roots, cs))), G.n(w))
            if displacement(th, g).is_identity():
                return True, True
    return False, True


def support_in(w, nodes):
    return set(w.reduced_word()) <= set(nodes)


def _tuples(F, k):
    import itertools
    els = list(F.elements())
    return itertools.product(els, repeat=k)


# --- (f) E7;4 forcing conditions -----------------------------------------

class E74:
    """theta' = u' s_phi1^-1 ... s_phi4^-1 h_w1(t1) h_w3(t2) h_w4(t3) h_w6(t4), u' over the twelve Psi_J roots."""

    def __init__(self, F):
        self.rs = rs = _e7()
        self.F = F
        self.G = G = Chevalley(rs, F)
        self.phis = highest_root_sequence(rs, "E7;4")
        self.Sinv = G.product(*[G.s_root(p, -1) for p in self.phis])
        self.roots = [_R(rs, r) for r in E74_ROOTS]

    def theta(self, a, t):
        G = self.G
        h = G.product(G.h_omega(1, t[0]), G.h_omega(3, t[1]), G.h_omega(4, t[2]), G.h_omega(6, t[3]))
        return G.product(G.unipotent(list(zip(self.roots, a))), self.Sinv, h)

    def cell(self, th, alpha, beta):
        G, rs = self.G, self.rs
        g = G.product(G.x(rs.neg(_R(rs, alpha)), 1), G.x(rs.neg(_R(rs, beta)), 1))
        return displacement(th, g)


# index (0-based) of the forced coefficient, relation in the engine convention,
# the printed relation, and the cell reached when it fails
E74_FORCING = [
    {"alpha": "0101000", "beta": "0111100", "coef": 8, "rel": lambda a, t: t[2] * a[5],
     "engine": "a9 = t3 a6", "printed": "a9 = t3 a6", "cell": [5, 7]},
    {"alpha": "0101000", "beta": "1111100", "coef": 10, "rel": lambda a, t: -t[2] * a[6],
     "engine": "a11 = -t3 a7", "printed": "a11 = t3 a7", "cell": [5, 7]},
    {"alpha": "0101000", "beta": "1223321", "coef": 9, "rel": lambda a, t: -a[2] / t[2],
     "engine": "a10 = -t3^-1 a3", "printed": "a10 = t3^-1 a3", "cell": [5, 7]},
    {"alpha": "0000110", "beta": "0112211", "coef": 5, "rel": lambda a, t: t[3] * a[0],
     "engine": "a6 = t4 a1", "printed": "a6 = t4 a1", "cell": [2, 7]},
    {"alpha": "0000110", "beta": "1112211", "coef": 6, "rel": lambda a, t: -t[3] * a[1],
     "engine": "a7 = -t4 a2", "printed": "a7 = t4 a2", "cell": [2, 7]},
    {"alpha": "0000110", "beta": "1122211", "coef": 7, "rel": lambda a, t: -t[3] * a[2],
     "engine": "a8 = -t4 a3", "printed": "a8 = t4 a3", "cell": [2, 7]},
    {"alpha": "0111000", "beta": "1111100", "coef": 11, "rel": lambda a, t: -t[1] * t[2] * t[3] * a[2],
     "engine": "a12 = -t2 t3 t4 a3", "printed": "a12 = t2 t3 t4 a3", "cell": [5, 7]},
    {"alpha": "1111000", "beta": "1223321", "coef": 4, "rel": lambda a, t: a[0] / (t[0] * t[1] * t[2]),
     "engine": "a5 = t1^-1 t2^-1 t3^-1 a1", "printed": "a5 = t1^-1 t2^-1 t3^-1 a1", "cell": [5, 7]},
    {"alpha": "0111000", "beta": "1223321", "coef": 3, "rel": lambda a, t: a[1] / (t[1] * t[2]),
     "engine": "a4 = t2^-1 t3^-1 a2", "printed": "a4 = -t2^-1 t3^-1 a2", "cell": [5, 7]},
]
# relations that feed later ones are imposed first
_E74_ORDER = [3, 4, 5, 0, 1, 2, 6, 7, 8]


def e74_sample(F, rng, k, violate=True):
    """Coefficients satisfying every forcing relation except k; relation k violated or not."""
    a = [F.random(rng) for _ in range(12)]
    t = [_nonzero(F, rng) for _ in range(4)]
    for j in _E74_ORDER:
        if j != k:
            spec = E74_FORCING[j]
            a[spec["coef"]] = spec["rel"](a, t)
    spec = E74_FORCING[k]
    a[spec["coef"]] = spec["rel"](a, t) + (_nonzero(F, rng) if violate else F.zero)
    return a, t


def e74_witness(m, rng, k, violate=True):
    spec = E74_FORCING[k]
    a, t = e74_sample(m.F, rng, k, violate)
    v = m.cell(m.theta(a, t), spec["alpha"], spec["beta"])
    expect = weyl_from_word(m.rs, spec["cell"]) * longest(m.rs)
    return v, expect, {"a": [str(x) for x in a], "t": [str(x) for x in t]}


def check_e74_forcing(seed=DEFAULT_SEED):
    rng = random.Random(seed + 1)
    m = E74(GF(5))
    rows = []
    ok = True
    for k, spec in enumerate(E74_FORCING):
        v, expect, params = e74_witness(m, rng, k, violate=True)
        vc, _, pc = e74_witness(m, rng, k, violate=False)
        good = v == expect and vc.length <= 60
        ok &= good
        rows.append({"alpha": spec["alpha"], "beta": spec["beta"], "relation": spec["engine"],
                     "printed_relation": spec["printed"], "sign_differs": spec["engine"] != spec["printed"],
                     "violating_sample": params, "cell": _word(v), "expected": _word(expect),
                     "control_sample": pc, "control_length": vc.length, "ok": good})
    return CheckRecord("f", "if a_9 != t_3 a_6 then v = s_5 s_7 w_0", {"field": 5}, seed + 1,
                       "pass" if ok else "fail", {"conditions": rows})


# --- (g), (h) ---------------------------------------------------------------

def check_charpoly(seed=DEFAULT_SEED, n101=100, n5=20):
    rng = random.Random(seed + 2)
    bad = []
    count = 0
    for p, n in ((101, n101), (5, n5)):
        F = GF(p)
        model = D4Model(F, "D4")
        for _ in range(n):
            a, b, c = [F.random(rng) for _ in range(3)]
            ts = [_nonzero(F, rng) for _ in range(4)]
            M = build_theta_E74(F, a, b, c, *ts, model=model)
            count += 1
            if char_poly(M) != theta_charpoly_expected(a, b, c, *ts):
                bad.append({"p": p, "params": [str(x) for x in (a, b, c, *ts)]})
    return CheckRecord("g", "det(theta - lambda I) = (lambda - 1)^4 p(lambda)^2",
                       {"F101": n101, "F5": n5}, seed + 2, "fail" if bad else "pass",
                       {"samples": count, "mismatches": bad})


def classify_samples(F, rng, branch, n, model=None):
    """n random parameter tuples landing in a given branch of classify_theta."""
    model = model or D4Model(F, "D4")
    out = []
    tries = 0
    while len(out) < n:
        tries += 1
        if tries > 200000:
            break
        a, b, c = [F.random(rng) for _ in range(3)]
        ts = [_nonzero(F, rng) for _ in range(4)]
        s = theta_trace_param(a, b, c, *ts)
        t1, t2 = ts[0], ts[1]
        if branch == "z!=+-1":
            if s in (F(2), F(-2)) or not quadratic_roots(-s, F.one):
                continue
        elif branch == "z=-1":
            if s != F(-2):
                continue
        elif branch == "irreducible":
            if quadratic_roots(-s, F.one):
                continue
        else:
            if s != F(2):
                continue
            q = t2 * b * b - c * c
            r = t1 * c * c - 4
            sub = "z=1,q!=0,r!=0" if (q and r) else ("z=1,q=0" if not q else "z=1,r=0")
            if sub != branch:
                continue
        out.append((a, b, c, *ts))
    return out


BRANCHES = ["z!=+-1", "z=-1", "z=1,q!=0,r!=0", "z=1,q=0", "z=1,r=0", "irreducible"]


def check_classify(seed=DEFAULT_SEED, per_branch=20):
    rng = random.Random(seed + 3)
    classes = {}
    rows = {}
    ok = True
    for p in (5, 7):
        F = GF(p)
        model = D4Model(F, "D4")
        for br in BRANCHES:
            for params in classify_samples(F, rng, br, per_branch, model):
                r = classify_theta(F, *params, model=model)
                key = "%s F%d" % (br, p)
                row = rows.setdefault(key, {"samples": 0, "verified": 0, "classes": {}})
                row["samples"] += 1
                row["classes"][r.tag] = row["classes"].get(r.tag, 0) + 1
                if r.tag == "no fixed chamber":
                    row["verified"] += 1
                elif r.verified:
                    row["verified"] += 1
                else:
                    ok = False
                classes[r.tag] = classes.get(r.tag, 0) + 1
    covered = all(t in classes for t in ("(1)", "(2)", "(3)", "(4)"))
    return CheckRecord("h", "theta is conjugate to one of the following elements", {"per_branch": per_branch},
                       seed + 3, "pass" if ok and covered else "fail",
                       {"classes": classes, "branches": rows, "all_four_classes_seen": covered})


# --- (i), (j) ---------------------------------------------------------------

def check_orbits(kmax=4):
    rs = _e7()
    expected = [1, 1, 2, 4][:kmax]
    got, rep_info = [], []
    for k in range(1, kmax + 1):
        reps = perp_set_orbit_reps(rs, k)
        n, canon, sizes = orbit_of_perp_sets(rs, k, reps=reps)
        got.append(n)
        rep_info.append({"k": k, "orbits": n, "sizes": sizes,
                         "algorithm_representatives": [[rs.label(b) for b in r] for r in reps]})
    verdict = "pass" if got == expected else "finding"
    payload = {"expected": expected, "computed": got, "detail": rep_info}
    if verdict != "pass":
        payload["analysis"] = ("exhaustive orbit enumeration on unordered sets; the algorithm's "
                               "representatives for k=4 fall into %d orbits" % got[-1])
    return CheckRecord("i", "for k=1,2,3,4 there are 1,1,2,4 orbits", {"kmax": kmax}, None, verdict, payload)


def check_length_arithmetic():
    e8 = build_root_system("E", 8)
    e7 = _e7()
    out = {}
    for rs in (e8, e7):
        S = set(range(1, rs.rank + 1))
        pol = polar_type(rs)
        l0 = longest(rs).length
        lp = longest(rs, sorted(S - pol)).length
        bound = 2 * l0 - 2 * lp - 1
        out[rs.name] = {"l_w0": l0, "l_w_S_minus_polar": lp, "bound": bound, "bound_below_l_w0": bound < l0}
    ok = (out["E8"]["l_w0"], out["E8"]["l_w_S_minus_polar"], out["E8"]["bound"]) == (120, 63, 113) \
        and out["E8"]["bound_below_l_w0"] and out["E7"]["bound"] == 65 and not out["E7"]["bound_below_l_w0"]
    return CheckRecord("j", "l(w_0)=120 and l(w_{S\\p})=63 ... disp(theta) <= 113 < 120", {}, None,
                       "pass" if ok else "fail", out)


# --- aggregate ----------------------------------------------------------------

SUITES = {
    "e7-chamber": ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j"],
    "quick": ["a", "b", "c", "d", "g", "j"],
}


def verify_corpus(seed=DEFAULT_SEED, suite="e7-chamber", checks=None):
    runners = {
        "a": check_magic_words, "b": check_psi, "c": check_reflection_products, "d": check_lengths,
        "e": lambda: check_e73(seed), "f": lambda: check_e74_forcing(seed), "g": lambda: check_charpoly(seed),
        "h": lambda: check_classify(seed), "i": check_orbits, "j": check_length_arithmetic,
    }
    ids = checks or SUITES[suite]
    records = []
    for cid in ids:
        t0 = time.time()
        rec = runners[cid]()
        rec.seconds = round(time.time() - t0, 3)
        records.append(rec)
    return CorpusReport(records, seed)
