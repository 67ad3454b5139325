"""Command-line front end.

Subcommands: kac, constant-term, betti, count, check, identities.  One
invocation per process; results of the kac subcommand are cached on disk
as the result JSON plus an engine-version stamp, so warm re-runs emit
byte-identical output without recomputation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import pipeline
from .errors import CensusError, IdentityViolation, UsageError
from .pipeline import ENGINE_VERSION, KacResult
from .zeta import CurveData


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    top = _Parser(prog="census",
                  description="Exact counts of geometrically indecomposable "
                              "bundles on curves over finite fields.")
    top.add_argument("--format", choices=("json", "latex", "text"),
                     default="text", help="output format (default: text)")
    top.add_argument("--cache-dir", default=None,
                     help="directory for result caching; the CENSUS_CACHE "
                          "environment variable overrides this flag")
    top.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                     help="parallelism bound for the partition sum")
    top.add_argument("--verbose", action="store_true")
    sub = top.add_subparsers(dest="subcommand", metavar="COMMAND")

    def gr(p, degree=True):
        p.add_argument("--genus", "-g", type=int, required=True)
        p.add_argument("--rank", "-r", type=int, required=True)
        if degree:
            p.add_argument("--degree", "-d", type=int, default=0)

    gr(sub.add_parser("kac", help="the full counting polynomial"))
    gr(sub.add_parser("constant-term",
                      help="evaluation at vanishing Weil numbers"))
    gr(sub.add_parser("betti", help="Poincare polynomial of the coprime "
                                    "moduli space"))
    pc = sub.add_parser("count", help="numeric counts over a concrete curve")
    pc.add_argument("--rank", "-r", type=int, required=True)
    pc.add_argument("--degree", "-d", type=int, default=0)
    pc.add_argument("--curve", required=True,
                    help="JSON file with q, genus, point_counts")
    gr(sub.add_parser("check", help="pole structure and degree-class report"),
       degree=False)
    pi = sub.add_parser("identities", help="internal consistency identities")
    pi.add_argument("--genus", "-g", type=int, required=True)
    pi.add_argument("--orders", "-L", type=int, default=6,
                    help="series truncation order (default: 6)")
    return top


def _cache_dir(args):
    return os.environ.get("CENSUS_CACHE") or args.cache_dir


def _cache_load(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            blob = json.load(fh)
    except (OSError, ValueError):
        return None
    if blob.get("engine") != ENGINE_VERSION:
        return None
    return blob.get("result")


def _cache_store(path, result):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump({"engine": ENGINE_VERSION, "result": result}, fh,
                      sort_keys=True)
        os.replace(tmp, path)
    except OSError:
        try:
            os.unlink(tmp)
        except OSError:
            pass


def _kac_result_json(args):
    """The result JSON for a kac invocation, through the cache if enabled."""
    d = args.degree % args.rank if args.rank else args.degree
    cdir = _cache_dir(args)
    path = None
    if cdir:
        path = os.path.join(cdir, "kac_g%d_r%d_d%d.json"
                            % (args.genus, args.rank, d))
        cached = _cache_load(path)
        if cached is not None:
            return cached
    result = pipeline.kac_polynomial(args.genus, args.rank, args.degree)
    blob = result.to_json()
    if path:
        _cache_store(path, blob)
    return blob


def _emit_kac(args, out):
    blob = _kac_result_json(args)
    if args.format == "json":
        out.write(json.dumps(blob, sort_keys=True) + "\n")
        return
    res = KacResult.from_json(blob)
    if args.format == "latex":
        out.write(pipeline.latex_value(res) + "\n")
        return
    out.write("A(genus=%d, rank=%d, degree class=%d)\n"
              % (res.genus, res.rank, res.degree_class))
    out.write("polynomial: %s\n" % ("yes" if res.is_polynomial else "no"))
    out.write("degree-class independent: %s\n"
              % ("yes" if res.is_d_independent else "no"))
    out.write("value: %r\n" % (res.polynomial,))


def _emit_constant_term(args, out):
    v = pipeline.constant_term(args.genus, args.rank, args.degree)
    if args.format == "json":
        out.write(json.dumps({
            "genus": args.genus, "rank": args.rank,
            "degree_class": args.degree % args.rank,
            "constant_term": "%d/%d" % (v.numerator, v.denominator),
            "provenance": {"route": "constant-term", "engine": ENGINE_VERSION},
        }, sort_keys=True) + "\n")
    elif args.format == "latex" and v.denominator != 1:
        out.write("\\tfrac{%d}{%d}\n" % (v.numerator, v.denominator))
    else:
        out.write("%s\n" % (v,))


def _emit_betti(args, out):
    p = pipeline.betti_polynomial(args.genus, args.rank, args.degree)
    if args.format == "json":
        blob = {"genus": args.genus, "rank": args.rank,
                "degree_class": args.degree % args.rank,
                "polynomial": dict(kind="polynomial",
                                   **pipeline.poly_to_json(p)),
                "provenance": {"route": "betti", "engine": ENGINE_VERSION}}
        out.write(json.dumps(blob, sort_keys=True) + "\n")
    elif args.format == "latex":
        out.write(pipeline.latex_poly(p) + "\n")
    else:
        out.write("%r\n" % (p,))


def _emit_count(args, out):
    with open(args.curve, "r", encoding="utf-8") as fh:
        curve = CurveData.from_dict(json.load(fh))
    n, higgs = pipeline.count_points(curve, args.rank, args.degree)
    if args.format == "json":
        blob = {"q": curve.q, "genus": curve.genus, "rank": args.rank,
                "degree_class": args.degree % args.rank,
                "indecomposables": n}
        if higgs is not None:
            blob["higgs_points"] = higgs
        out.write(json.dumps(blob, sort_keys=True) + "\n")
    else:
        out.write("indecomposables %d\n" % n)
        if higgs is not None:
            out.write("higgs_points %d\n" % higgs)


def _emit_check(args, out):
    rep = pipeline.regularity_report(args.genus, args.rank)
    if args.format == "json":
        blob = {"genus": rep.genus, "rank": rep.rank,
                "pole_orders": {str(m): o for m, o in
                                sorted(rep.pole_orders.items())},
                "all_simple": rep.all_simple,
                "clears_linear": rep.clears_linear,
                "clears_power": rep.clears_power,
                "is_d_independent": rep.is_d_independent}
        out.write(json.dumps(blob, sort_keys=True) + "\n")
    else:
        for line in rep.lines():
            out.write(line + "\n")


def _emit_identities(args, out):
    report = pipeline.identity_report(args.genus, args.orders)
    if args.format == "json":
        out.write(json.dumps({"genus": args.genus, "orders": args.orders,
                              "identities": {n: ok for n, ok in report}},
                             sort_keys=True) + "\n")
    else:
        for name, ok in report:
            out.write("%s %s\n" % ("pass" if ok else "FAIL", name))
    failed = [name for name, ok in report if not ok]
    if failed:
        raise IdentityViolation("identities failed: %s" % ", ".join(failed))


_DISPATCH = {
    "kac": _emit_kac,
    "constant-term": _emit_constant_term,
    "betti": _emit_betti,
    "count": _emit_count,
    "check": _emit_check,
    "identities": _emit_identities,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.subcommand:
            raise UsageError("a subcommand is required")
        pipeline.set_jobs(args.jobs)
        _DISPATCH[args.subcommand](args, sys.stdout)
    except UsageError as exc:
        sys.stderr.write("usage error: %s\n" % (exc,))
        return 2
    except CensusError as exc:
        sys.stderr.write("%s: %s\n" % (type(exc).__name__, exc))
        return 1
    except OSError as exc:
        sys.stderr.write("%s: %s\n" % (type(exc).__name__, exc))
        return 1
    except ValueError as exc:
        sys.stderr.write("%s: %s\n" % (type(exc).__name__, exc))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
