"""Command-line entry point: ``chevkit <verb> [options]``.

Exit codes: 0 everything passed, 2 a check reported a finding or failure,
3 a budget was exceeded, 4 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys

from .errors import BudgetError, ChevkitError

EXIT_OK, EXIT_FINDING, EXIT_BUDGET, EXIT_USAGE = 0, 2, 3, 4
DEFAULT_SEED = 20240607


class UsageError(ChevkitError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def _rs(text):
    from .rootsys import build_root_system
    m = re.fullmatch(r"([A-Ga-g])(\d+)", text.strip())
    if not m:
        raise UsageError("bad type %r (expected e.g. E7)" % text)
    return build_root_system(m.group(1).upper(), int(m.group(2)))


def _field(spec, default="f5"):
    from .exactfield import field_from_spec
    return field_from_spec(spec or default)


def _ints(text):
    return [int(x) for x in re.split(r"[,\s]+", text.strip()) if x]


def _word(w):
    return " ".join(map(str, w.reduced_word()))


# ---------------------------------------------------------------------------
# verbs; each returns (record, ok)

def cmd_rootsys(a):
    from .opposition import psi_J
    from .weyl import longest
    rs = _rs(a.type)
    rec = {"type": rs.name, "rank": rs.rank, "positive_roots": rs.N,
           "highest_root": rs.label(max(range(rs.N), key=lambda i: rs.height[i])),
           "longest_length": longest(rs).length}
    if a.psi:
        P = psi_J(rs, _ints(a.psi))
        rec["psi"] = {"J": sorted(P.J), "type": P.type, "positive": len(P.positive),
                      "simple": [rs.label(b) for b in P.simple]}
    return rec, True


def cmd_weyl(a):
    from .weyl import longest, orbit_of_perp_sets, parse_word, weyl_from_word
    rs = _rs(a.type)
    rec = {"type": rs.name}
    if a.word is not None:
        w = weyl_from_word(rs, parse_word(a.word))
        rec.update(word=a.word, length=w.length, reduced_word=_word(w))
    if a.longest is not None:
        nodes = _ints(a.longest) if a.longest else None
        w = longest(rs, nodes)
        rec.update(longest_length=w.length, longest_word=_word(w))
    if a.orbits:
        count, reps, sizes = orbit_of_perp_sets(rs, a.orbits)
        rec.update(orbits=count, representatives=[[rs.label(i) for i in r] for r in reps],
                   orbit_sizes=list(sizes))
    return rec, True


def _group(a):
    from .chevalley import Chevalley
    return Chevalley(_rs(a.type), _field(a.field))


def cmd_bruhat(a):
    from .chevalley import parse_element
    G = _group(a)
    g = parse_element(G, a.element)
    w = g.bruhat_cell()
    return {"type": G.rs.name, "field": G.F.name(), "normal_form": str(g),
            "cell": _word(w) or "e", "length": w.length}, True


def cmd_conjugate(a):
    from .chevalley import parse_element
    G = _group(a)
    theta, g = parse_element(G, a.theta), parse_element(G, a.by)
    c = theta.conjugate(g)
    return {"type": G.rs.name, "field": G.F.name(), "result": str(c),
            "cell": _word(c.bruhat_cell()) or "e"}, True


def cmd_d4(a):
    from . import d4rep
    F = _field(a.field, "f101")
    vals = [F.parse(x) for x in a.params.split(",")]
    if len(vals) != 7:
        raise UsageError("--params needs a,b,c,t1,t2,t3,t4")
    M = d4rep.build_theta_E74(F, *vals)
    cp = d4rep.char_poly(M)
    ok = cp == d4rep.theta_charpoly_expected(*vals)
    rec = {"field": F.name(), "params": a.params, "charpoly_matches": ok,
           "trace_param": str(d4rep.theta_trace_param(*vals))}
    if a.classify:
        c = d4rep.classify_theta(F, *vals)
        rec["classification"] = c.as_record()
        ok = ok and (c.tag == "no fixed chamber" or c.verified)
    return rec, ok


def cmd_polar(a):
    from . import polar
    sp = polar.build_space(a.n, a.q)
    rec = {"space": "D%d(%d)" % (a.n, a.q), "points": sp.N}
    if a.construct:
        maker = {"pair-swap": lambda: polar.pair_swap(sp, a.pairs),
                 "baer": lambda: polar.baer_involution(sp),
                 "elation": lambda: polar.root_elation(sp),
                 "identity": lambda: polar.Collineation.identity(sp)}[a.construct]
        th = maker()
        v = polar.is_kangaroo(sp, th)
        rec.update(construction=a.construct, kangaroo=bool(v), kind=v.kind, reason=v.reason)
        ok = True
        if v.kangaroo:
            fs = polar.fixed_structure(sp, th)
            rec["fixed"] = fs.as_dict()
            ok = fs.ok
        if a.n >= 3:
            eq = polar.kangaroo_equivalences(sp, th)
            rec["equivalences"] = eq.as_dict()
            ok = ok and eq.agree
        return rec, ok
    if a.exhaustive:
        perms = polar.isometry_group(sp)
    else:
        mats = polar.random_isometries(sp, a.samples, random.Random(a.seed))
        perms = polar.permutations_of(sp, mats)
    rep = polar.scan_equivalences(sp, perms, jobs=a.jobs)
    rec.update(mode="exhaustive" if a.exhaustive else "sample", scan=rep.as_dict())
    return rec, rep.all_agree and rep.ovoid_failures == 0


def cmd_algebra(a):
    from . import algebras
    rng = random.Random(a.seed)
    F = _field(a.field)
    rec = {"check": a.check, "samples": a.samples}
    n = a.samples
    if a.check == "e6":
        good = algebras.check_e6_images(F, n, rng)
    elif a.check == "cubic":
        good = algebras.check_cubic_lines(F, n, rng)
    elif a.check == "group-law":
        good = algebras.check_group_law(n, rng)
    else:
        ok1, ok2 = algebras.check_admissible_set(n, rng)
        rec["non_conforming_rejected"] = ok2
        good = min(ok1, ok2)
    if a.check in ("e6", "cubic"):
        rec["field"] = F.name()
    rec["passed"] = good
    return rec, good == n


def cmd_thin(a):
    from . import apartments as ap
    if a.e6:
        m = ap.build_e6_apartment()
        facts = ap.e6_fact_check(m)
        rec = {"model": m.name, "vertices": m.n, "degrees": sorted(set(m.degrees().tolist())),
               "symps": len(m.symps), "five_spaces": len(m.five_spaces), "facts": facts}
        return rec, facts["diameter_2"] and facts["unique_symp"]
    m = ap.build_gosset()
    by_pair, by_quad = ap.gosset_symp_listing(m)
    rec = {"model": m.name, "vertices": m.n, "degrees": sorted(set(m.degrees().tolist())),
           "diameter": m.diameter(), "symps": len(m.symps),
           "listing_matches": set(by_pair) | set(by_quad) == set(m.symps),
           "split": [len(set(by_pair)), len(set(by_quad))]}
    ok = rec["listing_matches"]
    if a.count_symps and not a.census:
        rec = {"symps": len(m.symps), "split": rec["split"], "listing_matches": ok}
    if a.census:
        counts, failures = ap.symp_pair_census(m)
        rec.update(census=counts, census_failures=len(failures))
        ok = ok and not failures
    return rec, ok


def cmd_spectrum(a):
    from .chevalley import Chevalley, parse_element
    from .exactfield import GF
    from .opposition import spectrum_bruteforce
    rs = _rs(a.type)
    G = Chevalley(rs, GF(a.q))
    theta = parse_element(G, a.theta)
    rep = spectrum_bruteforce(rs, a.q, theta, jobs=a.jobs)
    rec = rep.as_record()
    rec["diagram"] = rep.circled
    return rec, True


def cmd_verify(a):
    from .corpus import verify_corpus
    checks = a.checks.split(",") if a.checks else None
    rep = verify_corpus(a.seed, a.suite, checks)
    rec = json.loads(rep.to_json())
    return rec, not (rep.hard_failures or rep.findings)


VERBS = {
    "rootsys": cmd_rootsys, "weyl": cmd_weyl, "bruhat": cmd_bruhat, "conjugate": cmd_conjugate,
    "d4": cmd_d4, "polar": cmd_polar, "algebra": cmd_algebra, "thin": cmd_thin,
    "spectrum": cmd_spectrum, "verify": cmd_verify,
}


def build_parser():
    p = _Parser(prog="chevkit", description="Chevalley groups, opposition and domesticity checks.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--field", default=None, help='e.g. "f5", "q", "gf 2 2: Y^2+Y+1"')
    common.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("rootsys", parents=[common])
    s.add_argument("--type", default="E7")
    s.add_argument("--psi", help="nodes J, e.g. 1,3,4,6")

    s = sub.add_parser("weyl", parents=[common])
    s.add_argument("--type", default="E7")
    s.add_argument("--word")
    s.add_argument("--longest", nargs="?", const="", help="nodes of a parabolic (all if empty)")
    s.add_argument("--orbits", type=int, help="W-orbits on k-sets of perpendicular roots")

    for verb in ("bruhat", "conjugate"):
        s = sub.add_parser(verb, parents=[common])
        s.add_argument("--type", default="E7")
        if verb == "bruhat":
            s.add_argument("element")
        else:
            s.add_argument("theta")
            s.add_argument("by")

    s = sub.add_parser("d4", parents=[common])
    s.add_argument("--params", required=True, help="a,b,c,t1,t2,t3,t4")
    s.add_argument("--classify", action="store_true")

    s = sub.add_parser("polar", parents=[common])
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--q", type=int, default=2)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--exhaustive", action="store_true")
    g.add_argument("--samples", type=int, default=1000)
    g.add_argument("--construct", choices=("pair-swap", "baer", "elation", "identity"))
    s.add_argument("--pairs", type=int, default=1)

    s = sub.add_parser("algebra", parents=[common])
    s.add_argument("--check", choices=("e6", "cubic", "group-law", "admissible"), default="e6")
    s.add_argument("--samples", type=int, default=100)

    s = sub.add_parser("thin", parents=[common])
    g = s.add_mutually_exclusive_group()
    g.add_argument("--gosset", action="store_true", default=True)
    g.add_argument("--e6", action="store_true")
    s.add_argument("--count-symps", action="store_true")
    s.add_argument("--census", action="store_true")

    s = sub.add_parser("spectrum", parents=[common])
    s.add_argument("--type", required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--theta", required=True)

    s = sub.add_parser("verify", parents=[common])
    s.add_argument("--suite", default="e7-chamber", choices=("e7-chamber", "quick"))
    s.add_argument("--checks", help="comma separated check ids a..j")
    return p


def _emit(rec, fmt, out):
    if fmt == "json":
        out.write(json.dumps(rec, default=str, sort_keys=True) + "\n")
        return
    for k, v in rec.items():
        if isinstance(v, (dict, list)):
            v = json.dumps(v, default=str)
        out.write("%s: %s\n" % (k, v))


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.format == "text":
        out.write("seed: %d\n" % args.seed)
    try:
        rec, ok = VERBS[args.verb](args)
    except BudgetError as e:
        sys.stderr.write("budget exceeded: %s\n" % e)
        return EXIT_BUDGET
    except ChevkitError as e:
        sys.stderr.write("error: %s\n" % e)
        return EXIT_USAGE
    if args.format == "json":
        rec = dict(rec, seed=args.seed, ok=ok)
    _emit(rec, args.format, out)
    return EXIT_OK if ok else EXIT_FINDING


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
