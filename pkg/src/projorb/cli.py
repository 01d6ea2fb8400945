"""Command line front end.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error, 3 I/O error.
"""

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import ends, geometry, holonomy, moduli
from .projlin import cubic_discriminant, invariant_symmetric_form
from .projlin.scalar import FLOAT, RATIONAL, close, fmt, is_exact, set_tolerance, to_scalar

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

# rows with |x + y - xy| below this are skipped
SINGULAR_THRESHOLD = 1e-12

CSV_HEADER = ["x", "y", "w", "z", "component", "disc", "degree", "cusp", "lambda1", "lambda2", "lambda3"]


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Certificate:
    point: object
    checks: list = field(default_factory=list)

    @property
    def overall(self):
        return bool(self.checks) and all(c.passed for c in self.checks)

    def add(self, name, passed, detail=""):
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)

    def first_failure(self):
        return next((c for c in self.checks if not c.passed), None)

    def to_dict(self, title):
        return {
            "command": title,
            "point": _point_dict(self.point),
            "checks": [{"name": c.name, "pass": c.passed, "detail": c.detail} for c in self.checks],
            "overall": self.overall,
        }

    def to_text(self, title):
        lines = [title]
        if self.point is not None:
            lines.append("point: (w, x, y, z) = (%s)" % ", ".join(fmt(v) for v in self.point.astuple()))
        for c in self.checks:
            lines.append("%s %s%s" % ("PASS" if c.passed else "FAIL", c.name,
                                      (": " + c.detail) if c.detail else ""))
        lines.append("overall: %s" % ("PASS" if self.overall else "FAIL"))
        return "\n".join(lines)


def _json_number(v):
    return fmt(v) if is_exact(v) else float(v)


def _point_dict(p):
    if p is None:
        return None
    return {k: _json_number(v) for k, v in zip("wxyz", p.astuple())}


def _guarded(cert, name, fn):
    """Run ``fn`` returning ``(passed, detail)``; exceptions count as failures."""
    try:
        passed, detail = fn()
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        passed, detail = False, "error: %s" % exc
    return cert.add(name, passed, detail)


# point parsing


class UsageError(Exception):
    pass


def parse_values(text, count, backend=None):
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != count or not all(parts):
        raise UsageError("expected %d comma-separated numbers, got %r" % (count, text))
    if backend is None:
        decimal = any(("." in s or "e" in s.lower()) and "/" not in s for s in parts)
        backend = FLOAT if decimal else RATIONAL
    try:
        return tuple(to_scalar(s, backend) for s in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError("cannot parse %r: %s" % (text, exc))


def parse_range(text, backend=None):
    parts = text.split(":")
    if len(parts) != 2:
        raise UsageError("range must look like lo:hi, got %r" % text)
    try:
        return tuple(to_scalar(s.strip(), RATIONAL) for s in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError("cannot parse range %r: %s" % (text, exc))


# verify


def verify_point(point=None, params=None, chart=None):
    """Run every check of the moduli description at one point, in order.

    Exactly one of ``point`` (w, x, y, z), ``params`` (a1, a2, b3, b4) or
    ``chart`` (x, y) is given.  Checks after a failed variety test are
    skipped since nothing downstream is defined.
    """
    cert = Certificate(None)
    if chart is not None:
        try:
            point = moduli.chart_lift(chart)
        except ValueError as exc:
            cert.add("chart_lift", False, str(exc))
            return cert
    if params is not None:
        params = holonomy.AffineParams(*params)
        point = moduli.ModuliPoint(*holonomy.trace_coords(params, check=False).astuple())
    else:
        point = point if isinstance(point, moduli.ModuliPoint) else moduli.ModuliPoint(*point)
    cert.point = point

    if not cert.add("on_variety", moduli.on_variety(*point.astuple()),
                    "w+x+y+z-3-wy = %s, wy-zx = %s" % tuple(fmt(d) for d in moduli.variety_defects(*point.astuple()))):
        return cert
    if params is None:
        try:
            params = holonomy.lift_to_affine(point.astuple())
        except ValueError as exc:
            cert.add("lift_to_affine", False, str(exc))
            return cert
    rep = holonomy.build_representation(params)

    cert.add("relation", params.on_relation,
             "(a1+a2)(b3+b4) - 3 - a1a2b3b4 = %s" % fmt(params.relation_defect()))
    rel = holonomy.verify_relations(rep)
    cert.add("group_relations", bool(rel), "A^3=I %s, B^3=I %s, C^3=I %s" % tuple(rel))

    def traces():
        t = holonomy.trace_coords(params)
        cr = geometry.cross_ratio_coords(rep)
        ok = geometry.same_coords(t, cr) and all(close(a, b) for a, b in zip(t.astuple(), point.astuple()))
        return ok, "trace (%s), cross ratio (%s)" % (", ".join(fmt(v) for v in t.astuple()),
                                                      ", ".join(fmt(v) for v in cr.astuple()))
    _guarded(cert, "trace_cross_ratio", traces)

    axes = geometry.axis_injectivity(params)
    cert.add("axis_injectivity", all(axes), "A axis %s, B axis %s" % tuple(axes))

    def degree():
        d = geometry.edge_degree(rep)
        return d == 1, "degree=%d" % d
    _guarded(cert, "edge_degree", degree)

    def component():
        comp = moduli.classify_component(point)
        return comp == moduli.X, "component=%s" % comp
    _guarded(cert, "component", component)

    def cusp():
        c1 = ends.cusp_type(point.astuple(), ends.V1)
        c4 = ends.cusp_type(point.astuple(), ends.V4)
        ok = c1.type in (ends.STANDARD, ends.GENERALIZED) and c1.type == c4.type
        return ok, "cusp=%s (v4: %s), eigenvalues %s" % (
            c1.type, c4.type, ", ".join(fmt(v) for v in c1.eigenvalues))
    _guarded(cert, "cusp_type", cusp)

    def discriminant():
        d = cubic_discriminant(*ends.ac_cubic(point.astuple()))
        return d >= 0 or close(d, 0), "disc=%s" % fmt(d)
    _guarded(cert, "discriminant_nonnegative", discriminant)
    return cert


# scan


def scan_row(args):
    """One CSV row (list of strings) for a chart point, or None on the singular curve."""
    x, y, backend = args
    c = moduli.ChartPoint(to_scalar(x, backend), to_scalar(y, backend))
    if abs(float(c.denominator())) < SINGULAR_THRESHOLD:
        return None
    try:
        p = moduli.chart_lift(c)
    except ValueError:
        return None
    t = p.astuple()
    comp = moduli.classify_component(p)
    dsc = ends.closed_form_discriminant(c)
    try:
        rep = holonomy.build_representation(holonomy.lift_to_affine(t))
        degree = str(geometry.edge_degree(rep))
    except (ValueError, ArithmeticError):
        degree = ""
    try:
        cusp = ends.cusp_type(t)
        kind = cusp.type
        lams = [_csv_num(v) for v in cusp.cubic_roots] + [""] * (3 - len(cusp.cubic_roots))
    except (ValueError, ArithmeticError):
        kind, lams = "", ["", "", ""]
    return [_csv_num(c.x), _csv_num(c.y), _csv_num(p.w), _csv_num(p.z), comp, _csv_num(dsc),
            degree, kind] + lams


def _csv_num(v):
    v = float(v)
    if v == 0:
        v = 0.0
    return format(v, ".12g")


def scan(x_range, y_range, steps, backend=FLOAT, jobs=1):
    """CSV text for the row-major chart grid."""
    xs = moduli.grid(*x_range, steps)
    ys = moduli.grid(*y_range, steps)
    tasks = [(x, y, backend) for x in xs for y in ys]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(scan_row, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        rows = [scan_row(t) for t in tasks]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for (x, y, _), row in zip(tasks, rows):
        if row is None:
            buf.write("# skipped x=%s,y=%s: chart singular locus\n" % (_csv_num(x), _csv_num(y)))
        else:
            writer.writerow(row)
    return buf.getvalue()


# hyperbolic certificate


def certify_hyperbolic():
    p = moduli.ModuliPoint(3, 3, 3, 3)
    cert = Certificate(p)
    rep = holonomy.build_representation(holonomy.lift_to_affine(p.astuple()))

    def fixed():
        pts = moduli.fixed_points_of_involution()
        on_x = [q for q in pts if q.component == moduli.X]
        ok = len(on_x) == 1 and on_x[0].astuple() == (3, 3, 3, 3)
        return ok, "fixed points: " + "; ".join(
            "(%s) %s" % (", ".join(fmt(v) for v in q.astuple()), q.component) for q in pts)
    _guarded(cert, "involution_fixed_point", fixed)

    def cusps():
        reps = [ends.cusp_type(p.astuple(), e) for e in (ends.V1, ends.V4)]
        ok = all(c.type == ends.STANDARD for c in reps)
        return ok, "; ".join("%s %s eigenvalues %s" % (c.end, c.type, ", ".join(fmt(v) for v in c.eigenvalues))
                             for c in reps)
    _guarded(cert, "standard_cusps", cusps)

    def form():
        f = invariant_symmetric_form([rep.A, rep.B])
        if f is None or isinstance(f, list):
            dim = 0 if f is None else len(f)
            return False, "invariant form space has dimension %d" % dim
        return f.signature[:2] == (3, 1) and f.signature[2] == 0, "signature=%s" % (f.signature,)
    _guarded(cert, "invariant_form", form)

    def degree():
        d = geometry.edge_degree(rep)
        return d == 1, "degree=%d" % d
    _guarded(cert, "edge_degree", degree)
    return cert


# alt5


def alt5_report(rep=None):
    if rep is None:
        rep = holonomy.build_representation(holonomy.AffineParams.of(1, 1, 1, 1))
    return geometry.alt5_analysis(rep)


# argument handling


def _global_flags(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--json", action="store_true", default=d(False), help="emit JSON")
    parser.add_argument("--tolerance", type=float, default=d(None), metavar="EPS",
                        help="float comparison tolerance (default 1e-9)")
    parser.add_argument("--backend", choices=[RATIONAL, FLOAT], default=d(None),
                        help="force the scalar backend (default: exact for p/q inputs)")


def build_parser():
    parser = argparse.ArgumentParser(prog="projorb", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run all checks at one point")
    _global_flags(v, suppress=True)
    g = v.add_mutually_exclusive_group(required=True)
    g.add_argument("--wxyz", metavar="W,X,Y,Z")
    g.add_argument("--chart", metavar="X,Y")
    g.add_argument("--affine", metavar="A1,A2,B3,B4")

    s = sub.add_parser("scan", help="scan the (x, y) chart and write CSV")
    _global_flags(s, suppress=True)
    s.add_argument("--x", required=True, metavar="LO:HI")
    s.add_argument("--y", required=True, metavar="LO:HI")
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--output", "-o", metavar="PATH", help="CSV path (default stdout)")
    s.add_argument("--jobs", type=int, default=1)

    a = sub.add_parser("alt5", help="the finite group at (1,1,1,1)")
    _global_flags(a, suppress=True)

    c = sub.add_parser("cert-hyperbolic", help="certificate for the hyperbolic point (3,3,3,3)")
    _global_flags(c, suppress=True)
    return parser


def _emit(text, stream=None):
    stream = stream or sys.stdout
    stream.write(text)
    if not text.endswith("\n"):
        stream.write("\n")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.tolerance is not None:
        try:
            set_tolerance(args.tolerance)
        except ValueError as exc:
            parser.error(str(exc))
    try:
        return _dispatch(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write("projorb: error: %s\n" % exc)
        return EXIT_USAGE


def _dispatch(args):
    if args.command == "verify":
        if args.wxyz:
            cert = verify_point(point=parse_values(args.wxyz, 4, args.backend))
        elif args.chart:
            cert = verify_point(chart=parse_values(args.chart, 2, args.backend))
        else:
            cert = verify_point(params=parse_values(args.affine, 4, args.backend))
        _emit(json.dumps(cert.to_dict("verify")) if args.json else cert.to_text("verify"))
        return EXIT_OK if cert.overall else EXIT_FAIL

    if args.command == "scan":
        if args.steps < 1:
            raise UsageError("--steps must be >= 1")
        x_range, y_range = parse_range(args.x), parse_range(args.y)
        backend = args.backend
        if backend is None:
            decimal = any("." in s or "e" in s.lower() for s in (args.x, args.y))
            backend = FLOAT if decimal else RATIONAL
        text = scan(x_range, y_range, args.steps, backend, max(1, args.jobs))
        if args.output:
            try:
                with open(args.output, "w", newline="") as fh:
                    fh.write(text)
            except OSError as exc:
                sys.stderr.write("projorb: cannot write %s: %s\n" % (args.output, exc))
                return EXIT_IO
        else:
            sys.stdout.write(text)
        return EXIT_OK

    if args.command == "alt5":
        rep = alt5_report()
        ok = rep.matches_expected()
        if args.json:
            _emit(json.dumps({
                "group_order": rep.group_order,
                "orbit": rep.orbit_size,
                "stabilizer": rep.stabilizer_size,
                "adjacency": rep.edge_adjacency,
                "permutation_group_order": rep.permutation_group_order,
                "all_even": rep.all_even,
                "pass": ok,
            }))
        else:
            adj = rep.edge_adjacency
            _emit("group_order=%d\norbit=%d\nstabilizer=%d\nadjacency A:%d B:%d C:%d\n%s" % (
                rep.group_order, rep.orbit_size, rep.stabilizer_size,
                adj.get("A", 0), adj.get("B", 0), adj.get("C", 0), "PASS" if ok else "FAIL"))
        return EXIT_OK if ok else EXIT_FAIL

    if args.command == "cert-hyperbolic":
        cert = certify_hyperbolic()
        _emit(json.dumps(cert.to_dict("cert-hyperbolic")) if args.json else cert.to_text("cert-hyperbolic"))
        return EXIT_OK if cert.overall else EXIT_FAIL
    raise UsageError("unknown command %r" % args.command)


if __name__ == "__main__":
    sys.exit(main())
