"""Batch command line front end.

Commands:

  classify FAMILY N P      one verdict with its full proof trace
  table                    the (family, n, p) classification grid
  verify-paper             recompute every certificate and spot check
  resolve SPEC.json        flasque resolution of a lattice spec file
  cohomology SPEC.json     one Tate cohomology group of a lattice spec

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
Progress goes to stderr; stdout carries only the artifact.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .classify import (
    NOT_P_RETRACT_RATIONAL,
    P_RETRACT_RATIONAL,
    RationalityVerdict,
    classify_norm_one_family,
    retract_summary,
)
from .cohomology import is_flasque, tate_cohomology
from .errors import (
    ComputationTooLargeError,
    DegenerateCaseError,
    NormOneError,
    UnsupportedCaseError,
    VerificationError,
)
from .invert import build_certificate, verify_splitting_prime_to_p
from .lattice import lattice_from_json, norm_one_lattice, permutation_lattice, restrict
from .numutil import is_prime, primes_upto
from .perms import (
    FiniteGroup,
    Permutation,
    Subgroup,
    make_alternating,
    make_symmetric,
    point_stabilizer,
    witness_p_subgroup,
)
from .resolution import flasque_resolution

DEFAULT_PRIMES = tuple(primes_upto(13))


@dataclass
class RunConfig:
    max_n: int = 12
    primes: tuple = DEFAULT_PRIMES
    fmt: str = "json"
    jobs: int = 1
    cutoff: int | None = None
    inject_fault: str | None = None

    def __post_init__(self):
        assert self.max_n >= 2
        assert self.fmt in ("json", "csv", "markdown")
        assert self.jobs >= 1
        assert self.cutoff is None or self.cutoff > 0


def _progress(msg):
    print(msg, file=sys.stderr, flush=True)


def _family_pair(family, n):
    G = make_symmetric(n) if family == "S" else make_alternating(n)
    return G, point_stabilizer(G, n)


# -- classify -------------------------------------------------------------


def _short_verdict(verdict):
    return {
        P_RETRACT_RATIONAL: "Yes",
        NOT_P_RETRACT_RATIONAL: "Not",
        "RetractRational": "Yes",
        "NotRetractRational": "Not",
    }.get(verdict, verdict)


def _verdict_row(v: RationalityVerdict):
    rule = ref = criterion = ""
    trace = v.trace
    if hasattr(trace, "deciding_rule") and trace.deciding_rule is not None:
        rule = trace.deciding_rule.name
        ref = trace.deciding_rule.ref
    if hasattr(trace, "certificate") and trace.certificate is not None:
        criterion = trace.certificate.criterion
        # cite the proposition the certificate instantiates when the
        # deciding rule is a generic one
        ref = trace.certificate.extras.get("rule", ref)
    fam, n = v.subject if isinstance(v.subject[0], str) else ("", "")
    return {
        "family": fam,
        "n": n,
        "p": v.p,
        "verdict": v.verdict,
        "rule": rule,
        "ref": ref,
        "criterion": criterion,
    }


def _render_verdict(v: RationalityVerdict, fmt):
    if fmt == "json":
        return json.dumps(v.to_json(), indent=2)
    if fmt == "csv":
        return _render_csv([_verdict_row(v)])
    lines = ["verdict: %s (p=%s)" % (v.verdict, v.p)]
    for note in v.notes:
        lines.append("note: %s" % note)
    traces = v.trace if isinstance(v.trace, dict) else {v.p: v.trace}
    for p, dec in sorted(traces.items(), key=lambda kv: str(kv[0])):
        if dec is None:
            continue
        for r in dec.rules:
            mark = "-> %s" % r.verdict if r.verdict else "(no conclusion)"
            lines.append("  p=%s  %s [%s] %s" % (p, r.name, r.ref, mark))
    return "\n".join(lines)


def cmd_classify(args, config: RunConfig):
    if args.p == "all":
        G, H = _family_pair(args.family, args.n)
        v = retract_summary(G, H)
        v.subject = (args.family, args.n)
    else:
        v = classify_norm_one_family(args.family, args.n, int(args.p))
    print(_render_verdict(v, config.fmt))
    return 0


# -- table ----------------------------------------------------------------

TABLE_FIELDS = ("family", "n", "p", "verdict", "rule", "ref", "criterion")


def _render_csv(rows):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=TABLE_FIELDS, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: row.get(k, "") for k in TABLE_FIELDS})
    return buf.getvalue().rstrip("\n")


def parse_table_csv(text):
    """Inverse of the csv table rendering, for round-trip checks."""
    rows = list(csv.DictReader(io.StringIO(text)))
    for row in rows:
        row["n"] = int(row["n"])
        row["p"] = int(row["p"])
    return rows


def _render_table_markdown(rows, primes):
    lines = []
    for family in ("S", "A"):
        fam_rows = [r for r in rows if r["family"] == family]
        if not fam_rows:
            continue
        ns = sorted({r["n"] for r in fam_rows})
        cell = {(r["n"], r["p"]): r for r in fam_rows}
        lines.append("## %s_n" % family)
        lines.append("| n \\ p | " + " | ".join(str(p) for p in primes) + " |")
        lines.append("|" + "---|" * (len(primes) + 1))
        for n in ns:
            row = ["| %d" % n]
            for p in primes:
                r = cell[(n, p)]
                text = _short_verdict(r["verdict"])
                if r["ref"] and r["verdict"] == NOT_P_RETRACT_RATIONAL:
                    text += " (%s)" % r["ref"]
                row.append(text)
            lines.append(" | ".join(row) + " |")
        lines.append("")
    return "\n".join(lines).rstrip("\n")


def table_rows(config: RunConfig):
    cells = []
    for family in ("S", "A"):
        start = 2 if family == "S" else 4
        for n in range(start, config.max_n + 1):
            for p in config.primes:
                cells.append((family, n, p))

    def work(cell):
        family, n, p = cell
        return cell, _verdict_row(classify_norm_one_family(family, n, p))

    results = {}
    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as ex:
            for cell, row in ex.map(work, cells):
                results[cell] = row
    else:
        for cell in cells:
            key, row = work(cell)
            results[key] = row
    done = sorted(results)
    assert done == sorted(cells)
    return [results[c] for c in sorted(cells)]


def cmd_table(args, config: RunConfig):
    t0 = time.time()
    rows = table_rows(config)
    _progress("table: %d cells in %.1fs" % (len(rows), time.time() - t0))
    if config.fmt == "json":
        print(json.dumps(rows, indent=2))
    elif config.fmt == "csv":
        print(_render_csv(rows))
    else:
        print(_render_table_markdown(rows, config.primes))
    return 0


# -- verify-paper ---------------------------------------------------------


def proposition_instances(max_n):
    """Every decomposition-proposition instance with n <= max_n."""
    out = []
    for n in range(4, max_n + 1):
        for p in (3, 5, 7, 11):
            if p <= n and n % p == 0 and not is_prime(n) and n // p >= 2:
                out.append(("oddprimeS", "S", n, p))
                out.append(("oddprimeA", "A", n, p))
    for n in range(6, max_n + 1, 2):
        out.append(("evenS", "S", n, 2))
    if max_n >= 4:
        out.append(("endo11-n4", "S", 4, 2))
    for n in range(4, max_n + 1, 4):
        out.append(("evenA1", "A", n, 2))
    for n in range(6, max_n + 1, 2):
        if n % 4 == 2:
            out.append(("evenA2", "A", n, 2))
    return out


def _check_certificate(label, family, n, p, fault):
    cert = build_certificate(family, n, p)
    if fault == label:
        # negative control: perturb one multiplicity and revalidate
        s0, m0 = cert.decomposition[0]
        cert.decomposition[0] = (s0, m0 + 1)
        cert.validate()
    return "criterion %s, %d summands" % (
        cert.criterion, len(cert.decomposition),
    )


def _check_splitting(family, n, p):
    G, H = _family_pair(family, n)
    art = verify_splitting_prime_to_p(G, H, p)
    return "orbit sizes %s" % (art["orbit_sizes"],)


def _check_closed_form(family, n, primes):
    for p in primes:
        classify_norm_one_family(family, n, p)
    return "engine agrees on %d primes" % len(primes)


def _check_family_flasque(family, n, cutoff):
    G, H = _family_pair(family, n)
    res = flasque_resolution(norm_one_lattice(G, H), cutoff=cutoff)
    return "flasque rank %d" % res.F.rank


def _check_restriction_flasque(label, family, n, p, cutoff):
    G, H = _family_pair(family, n)
    if label == "endo11-n4":
        P = build_certificate(family, n, p).witness
    else:
        P = witness_p_subgroup(family, n, p)
    J = restrict(norm_one_lattice(G, H), P)
    res = flasque_resolution(J, cutoff=cutoff)
    return "|P|=%d, flasque rank %d" % (P.order, res.F.rank)


def _check_perm_flasque(family, n, cutoff):
    G, H = _family_pair(family, n)
    M = permutation_lattice(G, H)
    if not is_flasque(M, cutoff=cutoff):
        raise VerificationError("permutation lattice with nonzero H^-1")
    return "H^-1 = 0 at every subgroup class"


def verify_paper_checks(config: RunConfig):
    """The check list: (name, zero-argument callable)."""
    checks = []
    fault = config.inject_fault
    props = proposition_instances(config.max_n)
    for label, family, n, p in props:
        name = "%s (%s, n=%d, p=%d)" % (label, family, n, p)
        checks.append(
            (name, lambda l=label, f=family, m=n, q=p:
                _check_certificate(l, f, m, q, fault))
        )
    for family in ("S", "A"):
        start = 2 if family == "S" else 4
        for n in range(start, config.max_n + 1):
            for p in config.primes:
                if n % p != 0:
                    checks.append(
                        ("splitting (%s, n=%d, p=%d)" % (family, n, p),
                         lambda f=family, m=n, q=p: _check_splitting(f, m, q))
                    )
            checks.append(
                ("closed-form agreement (%s, n=%d)" % (family, n),
                 lambda f=family, m=n: _check_closed_form(f, m, config.primes))
            )
    for n in range(3, min(5, config.max_n) + 1):
        checks.append(
            ("flasqueness rho(J) (S, n=%d)" % n,
             lambda m=n: _check_family_flasque("S", m, config.cutoff))
        )
        checks.append(
            ("permutation H^-1 (S, n=%d)" % n,
             lambda m=n: _check_perm_flasque("S", m, config.cutoff))
        )
    for label, family, n, p in props:
        try:
            P = (build_certificate(family, n, p).witness
                 if label == "endo11-n4" else witness_p_subgroup(family, n, p))
        except UnsupportedCaseError:
            continue
        if P.order > 64:
            continue
        checks.append(
            ("flasqueness rho(J|_P) %s (%s, n=%d, p=%d)" % (label, family, n, p),
             lambda l=label, f=family, m=n, q=p:
                _check_restriction_flasque(l, f, m, q, config.cutoff))
        )
    return checks


def cmd_verify_paper(args, config: RunConfig):
    checks = verify_paper_checks(config)
    if config.inject_fault and not any(
        name.startswith(config.inject_fault + " ") for name, _ in checks
    ):
        print(
            "no proposition named %r within --max-n %d"
            % (config.inject_fault, config.max_n),
            file=sys.stderr,
        )
        return 2
    results = []
    failed = []
    for name, fn in checks:
        t0 = time.time()
        try:
            detail = fn()
            status = "ok"
        except (VerificationError, ComputationTooLargeError) as exc:
            detail = str(exc)
            status = "FAIL"
            failed.append(name)
        _progress("verify: %s %s (%.1fs)" % (status, name, time.time() - t0))
        results.append({"name": name, "status": status, "detail": detail})
    report = {
        "checks": results,
        "failures": failed,
        "passed": len(results) - len(failed),
        "total": len(results),
    }
    if config.fmt == "json":
        print(json.dumps(report, indent=2))
    else:
        for r in results:
            print("%-4s %s  (%s)" % (r["status"], r["name"], r["detail"]))
        print("passed %d/%d" % (report["passed"], report["total"]))
    return 1 if failed else 0


# -- resolve / cohomology -------------------------------------------------


class SystemExit2(Exception):
    """Usage or parse error carrying the diagnostic."""


def _load_lattice(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SystemExit2("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise SystemExit2("malformed JSON in %s: %s" % (path, exc))
    try:
        return lattice_from_json(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise SystemExit2("bad lattice spec %s: %s" % (path, exc))


def cmd_resolve(args, config: RunConfig):
    M = _load_lattice(args.spec)
    res = flasque_resolution(M, cutoff=config.cutoff)
    doc = res.to_json()
    doc["ranks"] = "%d+%d=%d" % (M.rank, res.F.rank, res.P.rank)
    print(json.dumps(doc, indent=2))
    return 0


def cmd_cohomology(args, config: RunConfig):
    M = _load_lattice(args.spec)
    G = M.group
    if args.subgroup:
        try:
            gens = [
                Permutation.parse(tok, G.degree)
                for tok in args.subgroup.split(";") if tok.strip()
            ]
        except (ValueError, AssertionError) as exc:
            raise SystemExit2("bad subgroup spec: %s" % exc)
        H = Subgroup(G, FiniteGroup.from_generators(gens, G.degree))
    else:
        H = Subgroup(G, G)
    res = tate_cohomology(M, H, args.degree)
    print(json.dumps({
        "degree": args.degree,
        "subgroup_order": H.order,
        "tate": res.to_json(),
        "group": str(res),
    }, indent=2))
    return 0


# -- argument plumbing ----------------------------------------------------


def _parse_primes(text):
    if text.strip() == "":
        return ()
    out = []
    for tok in text.split(","):
        v = int(tok)
        if not is_prime(v):
            raise argparse.ArgumentTypeError("%d is not prime" % v)
        out.append(v)
    return tuple(sorted(set(out)))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="normone",
        description="norm one torus rationality toolkit",
    )
    parser.add_argument("--format", choices=("json", "csv", "markdown"),
                        default="json")
    parser.add_argument("--max-n", type=int, default=12)
    parser.add_argument("--primes", type=_parse_primes,
                        default=DEFAULT_PRIMES,
                        help="comma separated primes (default 2..13)")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--cutoff", type=int, default=None,
                        help="verification cost cutoff (or NORMONE_CUTOFF)")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="one (family, n, p) verdict")
    c.add_argument("family", choices=("S", "A"))
    c.add_argument("n", type=int)
    c.add_argument("p", help="a prime, or 'all' for the retract summary")
    c.set_defaults(fn=cmd_classify)

    t = sub.add_parser("table", help="full classification grid")
    t.set_defaults(fn=cmd_table)

    v = sub.add_parser("verify-paper", help="recompute all certificates")
    v.add_argument("--inject-fault", default=None, metavar="PROP",
                   help="negative control: perturb PROP's decomposition")
    v.set_defaults(fn=cmd_verify_paper)

    r = sub.add_parser("resolve", help="flasque resolution of a spec file")
    r.add_argument("spec")
    r.set_defaults(fn=cmd_resolve)

    h = sub.add_parser("cohomology", help="Tate cohomology of a spec file")
    h.add_argument("spec")
    h.add_argument("--subgroup", default=None,
                   help="semicolon separated generator cycles")
    h.add_argument("--degree", type=int, choices=(-1, 0, 1), default=-1)
    h.set_defaults(fn=cmd_cohomology)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_n < 2 or args.jobs < 1 or (
        args.cutoff is not None and args.cutoff <= 0
    ):
        parser.error("--max-n, --jobs, --cutoff must be positive")
    config = RunConfig(
        max_n=args.max_n,
        primes=args.primes,
        fmt=args.format,
        jobs=args.jobs,
        cutoff=args.cutoff,
        inject_fault=getattr(args, "inject_fault", None),
    )
    try:
        if args.command == "classify" and args.p != "all":
            try:
                p = int(args.p)
            except ValueError:
                parser.error("p must be a prime or 'all'")
            if not is_prime(p):
                parser.error("p must be a prime or 'all'")
        return args.fn(args, config)
    except SystemExit2 as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (DegenerateCaseError, UnsupportedCaseError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except VerificationError as exc:
        print("verification failure: %s" % exc, file=sys.stderr)
        return 1
    except NormOneError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


__all__ = [
    "RunConfig",
    "build_parser",
    "main",
    "table_rows",
    "parse_table_csv",
    "proposition_instances",
    "verify_paper_checks",
]
