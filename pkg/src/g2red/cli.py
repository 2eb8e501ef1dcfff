"""Command line interface: ``g2red <command> [options]``.

Exit codes: 0 success, 1 verification mismatch, 2 usage error,
3 computation failure.  Diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time

from . import database
from .covariants import julia_from_g
from .forms import BinaryForm, discriminant, fmt_rational, height, parse_form, to_text
from .genus2 import AutLabel, absolute_invariants, aut_label, igusa, igusa_clebsch, moduli_key, reduced_automorphisms
from .julia import julia
from .minimality import factor, minimize_disc, minimize_disc_cubic, minimize_disc_even
from .numerics import DEFAULT_TOL
from .reduce import reduce_even_form, reduce_pipeline

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_FAIL = 0, 1, 2, 3

log = logging.getLogger("g2red")


class UsageError(Exception):
    pass


def num(x) -> str:
    return "%.15g" % x


def cnum(z: complex) -> str:
    re_, im = num(z.real + 0.0), num(abs(z.imag))
    return "%s%s%si" % (re_, "-" if z.imag < 0 else "+", im)


def default_tol() -> float:
    env = os.environ.get("G2RED_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            raise UsageError("G2RED_TOL must be a number, got %r" % env)
    return DEFAULT_TOL


def _form(args) -> BinaryForm:
    try:
        return parse_form(args.form)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc))


def _sextic(args) -> BinaryForm:
    f = _form(args)
    if f.degree != 6:
        raise UsageError("this command needs a sextic (7 coefficients), got degree %d" % f.degree)
    return f


# ---------------------------------------------------------------------------

def cmd_invariants(args, out):
    f = _sextic(args)
    inv = igusa(f)
    I = igusa_clebsch(f)
    out.write("J2: %s\nJ4: %s\nJ6: %s\nJ10: %s\n" % tuple(fmt_rational(v) for v in inv))
    out.write("I2,I4,I6,I10: %s\n" % ",".join(fmt_rational(v) for v in I))
    out.write("discriminant: %s\n" % fmt_rational(discriminant(f)))
    if inv.J10 == 0:
        out.write("key: none (J10 = 0, not a genus 2 curve)\n")
    else:
        out.write("key: %s\n" % moduli_key(inv).to_text())
    ab = absolute_invariants(inv)
    out.write("absolute: %s\n" % ("undefined (J2 = 0)" if ab is None else ",".join(fmt_rational(v) for v in ab)))
    return EXIT_OK


def cmd_julia(args, out):
    f = _form(args)
    tol = args.tol if args.tol is not None else default_tol()
    if args.via_g:
        q = julia_from_g(f)
        if args.csv:
            out.write("c0,c1,c2,zero_re,zero_im\n")
            out.write(",".join(num(v) for v in q.coeffs) + ",%s,%s\n" % (num(q.zero.real), num(q.zero.imag)))
            return EXIT_OK
        out.write("julia quadratic (c0,c1,c2): %s\n" % ",".join(num(v) for v in q.coeffs))
        if q.exact is not None:
            out.write("exact factor: %s\n" % to_text(q.exact))
        out.write("zero: %s\n" % cnum(q.zero))
        return EXIT_OK
    r = julia(f, tol)
    if args.csv:
        out.write("theta,c0,c1,c2,zero_re,zero_im,grad_norm,max_residual\n")
        mres = max((abs(v) for v in r.residuals), default=0.0)
        out.write(",".join(num(v) for v in (r.theta,) + tuple(r.julia_quadratic)
                           + (r.zero.real, r.zero.imag, r.grad_norm, mres)) + "\n")
        return EXIT_OK
    out.write("theta: %s\n" % num(r.theta))
    out.write("julia quadratic (c0,c1,c2): %s\n" % ",".join(num(v) for v in r.julia_quadratic))
    out.write("zero: %s\n" % cnum(r.zero))
    out.write("weights (real): %s\n" % ",".join(num(v) for v in r.weights.real_weights))
    out.write("weights (pairs): %s\n" % ",".join(num(v) for v in r.weights.pair_weights))
    out.write("gradient norm: %s\n" % num(r.grad_norm))
    out.write("stationarity residuals: %s\n" % ",".join(num(v) for v in r.residuals))
    return EXIT_OK


def cmd_reduce(args, out):
    f = _form(args)
    if args.even:
        g = reduce_even_form(f)
        out.write("model: %s\nheight: %d\n" % (to_text(g), height(g)))
        return EXIT_OK
    res = reduce_pipeline(f)
    t = res.trace
    out.write("zero: %s\n" % cnum(t.initial_zero))
    for m in t.moves:
        a, b, c, d = (int(v) for v in m.as_tuple())
        out.write("move: [%d,%d;%d,%d]\n" % (a, b, c, d))
    out.write("reduced zero: %s\n" % cnum(t.final_zero))
    out.write("reduced form: %s\n" % to_text(t.reduced))
    out.write("scaled form: %s (scale %s)\n" % (to_text(res.scaled), fmt_rational(res.scale)))
    for g in res.descent:
        out.write("descent: %s (height %d)\n" % (to_text(g), height(g)))
    out.write("final model: %s\n" % to_text(res.model))
    out.write("height: %d\n" % res.height)
    return EXIT_OK


def cmd_mindisc(args, out):
    f = _sextic(args)
    if not f.is_integral():
        raise UsageError("mindisc needs an integral model")
    if args.even:
        g, steps = minimize_disc_even(f)
    elif args.cubic:
        g, steps = minimize_disc_cubic(f)
    else:
        g, steps = minimize_disc(f)
    D0, D1 = discriminant(f), discriminant(g)
    out.write("input discriminant: %s = %s\n" % (fmt_rational(D0), _fact(D0)))
    for p, e in steps:
        out.write("removed: %d^%d\n" % (p, e))
    out.write("model: %s\n" % to_text(g))
    out.write("discriminant: %s = %s\n" % (fmt_rational(D1), _fact(D1)))
    return EXIT_OK


def _fact(D):
    fac = factor(int(D))
    s = " * ".join("%d^%d" % (p, e) if e > 1 else str(p) for p, e in sorted(fac.items()))
    return ("-" if D < 0 else "") + (s or "1")


def cmd_aut(args, out):
    f = _sextic(args)
    lab = aut_label(f)
    gid = lab.group_id
    out.write("label: %s\n" % lab)
    out.write("order: %d\n" % lab.order)
    out.write("group id: %s\n" % ("[%d, %d]" % gid if gid else "unassigned"))
    out.write("reduced automorphisms: %d\n" % len(reduced_automorphisms(f)))
    return EXIT_OK


def cmd_dbgen(args, out):
    os.makedirs(args.out, exist_ok=True)
    recs, stats = database.build_database(args.hmax, jobs=args.jobs, dedup=args.dedup)
    database.export_csv(recs, os.path.join(args.out, "records.csv"), kind="records")
    database.export_csv(stats, os.path.join(args.out, "table1.csv"), kind="stats")
    degenerate = [(r.a, r.b) for r in recs if not r.j10_nonzero]
    for a, b in degenerate:
        log.info("degenerate tuple (%d,%d)", a, b)
    out.write("tuples: %d\ndegenerate: %s\n" % (len(recs), " ".join("(%d,%d)" % t for t in degenerate) or "none"))
    d6 = [(r.a, r.b) for r in recs if r.is_new_moduli_point and r.aut is AutLabel.D6]
    out.write("new D6 points: %s\n" % (" ".join("(%d,%d)" % t for t in d6) or "none"))
    if stats:
        s = stats[-1]
        out.write("h=%d: %d %d %d %d %d\n" % ((s.h,) + s.table_row()))
    return EXIT_OK


def cmd_verify(args, out):
    if args.table == 1:
        ref = database.read_stats(args.fixture or database.fixture_path("table1.csv"))
        if args.stats:
            stats = database.read_stats(args.stats)
        else:
            hmax = max(s.h for s in ref) if ref else 0
            stats = database.build_table1(hmax, jobs=args.jobs)
        rep = database.verify_table1(stats, args.fixture)
        for row in rep.mismatches:
            out.write("h=%d expected %s got %s\n" % (row["h"], row["expected"], row["got"]))
    elif args.table == 2:
        rep = database.verify_table2(args.fixture)
        for row in rep.mismatches:
            out.write("row %d: key %s, label %s (computed %s / %s, listed %s), r %s\n" % (
                row["num"], row["key_ok"], row["label_ok"], row["label"], row["twist_label"],
                row["expected"], row["r_ok"]))
    else:
        rep = database.verify_table3(args.fixture)
        for row in rep.rows:
            out.write("case %d: %s height %d (listed %d)%s%s\n" % (
                row["case"], to_text(row["model"]), row["height"], row["paper_height"],
                "" if row["key_ok"] else " KEY MISMATCH", " exact" if row["exact"] else ""))
    out.write("table %d: %s\n" % (args.table, rep.summary()))
    return EXIT_OK if rep.ok else EXIT_MISMATCH


# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    p = _Parser(prog="g2red", description=__doc__.splitlines()[0])
    p.add_argument("--timestamps", action="store_true", help="report elapsed time on stderr")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("invariants", help="Igusa invariants and moduli key of a sextic")
    s.add_argument("--form", required=True, help='ascending coefficients "a0,a1,...,an"')
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("julia", help="Julia quadratic, invariant and zero map")
    s.add_argument("--form", required=True)
    s.add_argument("--via-g", action="store_true", help="use the G_f covariant (totally real forms)")
    s.add_argument("--tol", type=float, default=None)
    s.add_argument("--csv", action="store_true")
    s.set_defaults(func=cmd_julia)

    s = sub.add_parser("reduce", help="reduce a form and search for a smaller model")
    s.add_argument("--form", required=True)
    s.add_argument("--even", action="store_true", help="even sextic: choose f or f(-z,x)")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("mindisc", help="minimize the discriminant of an integral sextic")
    s.add_argument("--form", required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--even", action="store_true")
    g.add_argument("--cubic", action="store_true")
    s.set_defaults(func=cmd_mindisc)

    s = sub.add_parser("aut", help="automorphism group of y^2 = f")
    s.add_argument("--form", required=True)
    s.set_defaults(func=cmd_aut)

    s = sub.add_parser("dbgen", help="build the height database")
    s.add_argument("--hmax", type=int, required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--dedup", choices=("absolute", "moduli"), default="absolute")
    s.set_defaults(func=cmd_dbgen)

    s = sub.add_parser("verify", help="check a published table")
    s.add_argument("--table", type=int, choices=(1, 2, 3), required=True)
    s.add_argument("--fixture", default=None, help="fixture CSV (defaults to the bundled one)")
    s.add_argument("--stats", default=None, help="table 1 only: compare this stats CSV instead of rebuilding")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_verify)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a command is required")
    except UsageError as exc:
        sys.stderr.write("g2red: %s\n" % exc)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        code = args.func(args, out)
    except UsageError as exc:
        sys.stderr.write("g2red: %s\n" % exc)
        return EXIT_USAGE
    except Exception as exc:
        sys.stderr.write("g2red: computation failed: %s: %s\n" % (type(exc).__name__, exc))
        return EXIT_FAIL
    if args.timestamps:
        sys.stderr.write("elapsed: %.3f s\n" % (time.perf_counter() - t0))
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
