"""Command-line surface.

Subcommands: construct, verify, catalog, bounds, designs.  Exit codes:
0 success / verified, 1 verification failure, 2 usage or unsatisfiable
request, 3 missing fixture.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from cretan.catalog import (
    catalog_structured,
    catalog_table,
    construct_best,
    format_catalog_text,
)
from cretan.constructions import (
    ComplexLevelMatrix,
    GroupMatrix,
    LevelMatrix,
    ModulusViolation,
    basic_family,
    bordered_solver,
    conference_complex,
    direct_sum,
    from_values,
    gh_from_field,
    gh_z3_order6,
    group_orthogonality_check,
    kronecker_cretan,
    regular_hadamard_border,
    sbibd_two_level,
)
from cretan.designs import (
    DESIGN_REGISTRY,
    MissingFixture,
    NotADifferenceSet,
    biquadratic_difference_set,
    build_family,
    qr_difference_set,
    registered_designs,
    singer_difference_set,
)
from cretan.fields import factor_prime_power
from cretan.files import ParseError, load_matrix, save_matrix, serialize_matrix
from cretan.hadamard import (
    NoConstructionAvailable,
    paley_conference,
    regular_hadamard,
)
from cretan.render import render
from cretan.scalar import Scalar, format_scalar
from cretan.verify import det_bounds, verify_complex, verify_cretan


class CliError(Exception):
    """Request that cannot be satisfied: reported on stderr, exit 2."""


def _fail(msg: str) -> "CliError":
    return CliError(msg)


def _is_prime_power(n: int):
    try:
        return factor_prime_power(n)
    except ValueError:
        return None


def _best_design_two_level(v: int):
    mats = []
    for _, _, _, fam, kw in registered_designs(v):
        design = build_family(fam, **kw).develop()
        mats += sbibd_two_level(design) + sbibd_two_level(design.complement())
    if not mats and v % 4 == 3 and _is_prime_power(v):
        design = qr_difference_set(v).develop()
        mats += sbibd_two_level(design) + sbibd_two_level(design.complement())
    if not mats:
        raise _fail("no symmetric design available at order %d" % v)
    return max(mats, key=lambda m: m.omega.to_float())


def _design_for_border(v: int):
    rows = registered_designs(v)
    if rows:
        _, _, _, fam, kw = rows[0]
        return build_family(fam, **kw).develop()
    if v % 4 == 3 and _is_prime_power(v):
        return qr_difference_set(v).develop()
    raise _fail("no symmetric design available at order %d" % v)


def _construct_auto(n: int):
    if n == 1:
        return from_values([[Scalar(1)]], Scalar(1), "unit")
    if n % 2 == 1:
        return construct_best(n).best.matrix
    if n >= 4:
        return basic_family(n)
    raise _fail("no construction for order %d" % n)


def _construct_kronecker(n: int):
    if n % 2 == 0:
        raise _fail("kronecker dispatch covers odd orders only")
    pairs = [(a, n // a) for a in range(3, math.isqrt(n) + 1, 2)
             if n % a == 0]
    if not pairs:
        raise _fail("%d has no nontrivial odd factorization" % n)
    mats = [kronecker_cretan(construct_best(a).best.matrix,
                             construct_best(b).best.matrix)
            for a, b in pairs]
    return max(mats, key=lambda m: m.omega.to_float())


def _construct_direct_sum(n: int):
    if n < 6:
        raise _fail("direct sum needs order at least 6")
    a = n // 2
    if a % 2 == 0:
        a -= 1
    b = n - a

    def part(x):
        if x % 2 == 1:
            return construct_best(x).best.matrix
        return basic_family(x)

    return direct_sum(part(a), part(b))


def _construct_regular_hadamard(n: int):
    m = math.isqrt((n - 1) // 4) if n > 1 else 0
    if n < 5 or 4 * m * m + 1 != n:
        raise _fail("order must be 4m^2+1, got %d" % n)
    return regular_hadamard_border(regular_hadamard(m))


def _construct_bordered(n: int):
    mats = bordered_solver(_design_for_border(n - 1))
    if not mats:
        raise _fail("no bordered solution at order %d" % n)
    return max(mats, key=lambda m: m.omega.to_float())


def _construct_conference(n: int):
    q = n - 1
    if q < 5 or q % 4 != 1 or not _is_prime_power(q):
        raise _fail("conference route needs order q+1, q a prime power"
                    " 1 mod 4; got %d" % n)
    return conference_complex(paley_conference(q))


def _construct_gh(n: int):
    if n == 6:
        return gh_z3_order6()
    pk = _is_prime_power(n)
    if pk is None or n > 256:
        raise _fail("group route needs a prime power order up to 256"
                    " (or 6); got %d" % n)
    return gh_from_field(*pk)


def _construct_basic(n: int):
    try:
        return basic_family(n)
    except (ModulusViolation, ValueError) as exc:
        raise _fail(str(exc))


_CONSTRUCTORS = {
    "auto": _construct_auto,
    "basic": _construct_basic,
    "sbibd": _best_design_two_level,
    "regular-hadamard": _construct_regular_hadamard,
    "bordered": _construct_bordered,
    "kronecker": _construct_kronecker,
    "direct-sum": _construct_direct_sum,
    "conference": _construct_conference,
    "gh": _construct_gh,
}


def _verify_any(m, strict: bool, tolerance: float):
    """(passed, report lines) for any of the three matrix kinds."""
    if isinstance(m, LevelMatrix):
        cert = verify_cretan(m, mode="strict" if strict else "relaxed",
                             tolerance=tolerance)
        lines = ["%-20s %s" % (k, v) for k, v in cert.summary_rows()]
        return cert.passed, lines
    if isinstance(m, ComplexLevelMatrix):
        ok = verify_complex(m, tolerance=tolerance)
        return ok, ["order %d complex, radius %s: %s"
                    % (m.order, m.omega, "pass" if ok else "FAIL")]
    if isinstance(m, GroupMatrix):
        rep = group_orthogonality_check(m)
        return rep.passed, ["%s census over %d rows: %s"
                            % (m.kind, m.order,
                               "pass" if rep.passed else rep.message)]
    raise _fail("cannot verify %r" % type(m).__name__)


def _cmd_construct(args) -> int:
    builder = _CONSTRUCTORS[args.method]
    m = builder(args.order)
    ok, _ = _verify_any(m, strict=False, tolerance=1e-9)
    text = serialize_matrix(m)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print("wrote %s" % args.out)
    else:
        sys.stdout.write(text)
    if args.render:
        if args.render.endswith(".svg"):
            style = "svg"
        elif args.render.endswith(".pgm"):
            style = "pgm"
        else:
            raise _fail("render target must end in .svg or .pgm")
        with open(args.render, "w", encoding="utf-8") as fh:
            fh.write(render(m, style))
        print("rendered %s" % args.render)
    if not ok:
        print("constructed matrix failed verification", file=sys.stderr)
        return 1
    return 0


def _cmd_verify(args) -> int:
    try:
        m = load_matrix(args.file)
    except FileNotFoundError:
        raise _fail("no such file: %s" % args.file)
    except ParseError as exc:
        raise _fail("cannot parse %s: %s" % (args.file, exc))
    ok, lines = _verify_any(m, args.strict, args.tolerance)
    for ln in lines:
        print(ln)
    return 0 if ok else 1


def _cmd_catalog(args) -> int:
    report = catalog_table(args.max)
    if args.format == "structured":
        doc = catalog_structured(report)
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        sys.stdout.write(format_catalog_text(report, show_diff=args.diff))
    return 0


def _cmd_bounds(args) -> int:
    try:
        b = det_bounds(args.order)
    except ValueError as exc:
        raise _fail(str(exc))

    def fmt(exact, value, log):
        if exact is not None:
            return "%d (log %.6f)" % (exact, log)
        if value is not None:
            return "%.6g (log %.6f)" % (value, log)
        return "exp(%.6f)" % log

    print("order %d" % b.order)
    print("hadamard      %s" % fmt(b.hadamard_exact, b.hadamard_value,
                                   b.hadamard_log))
    if b.barba_log is not None:
        print("barba         %s" % fmt(b.barba_exact, b.barba_value,
                                       b.barba_log))
    if b.brent_osborn_log is not None:
        print("brent-osborn  %s" % fmt(b.brent_osborn_exact,
                                       b.brent_osborn_value,
                                       b.brent_osborn_log))
    if b.wojtas_log is not None:
        print("wojtas        %s" % fmt(b.wojtas_exact, b.wojtas_value,
                                       b.wojtas_log))
    return 0


def _cmd_designs(args) -> int:
    if args.action == "list":
        for v, k, lam, fam, kw in DESIGN_REGISTRY:
            detail = " ".join("%s=%s" % (a, b) for a, b in sorted(kw.items()))
            print("(%d, %d, %d)  %-12s %s" % (v, k, lam, fam, detail))
        return 0
    # make
    if not args.family:
        raise _fail("designs make needs --family")
    p = args.params or []
    try:
        if args.family == "qr":
            if len(p) != 1:
                raise _fail("qr takes one parameter: q")
            ds = qr_difference_set(p[0])
        elif args.family == "biquadratic":
            if len(p) not in (1, 2):
                raise _fail("biquadratic takes p [with_zero]")
            ds = biquadratic_difference_set(p[0], bool(p[1])
                                            if len(p) == 2 else False)
        elif args.family == "singer":
            if len(p) != 2:
                raise _fail("singer takes n q")
            ds = singer_difference_set(p[0], p[1])
        else:
            raise _fail("unknown family %s" % args.family)
    except NotADifferenceSet as exc:
        print("census failed: %s" % exc, file=sys.stderr)
        return 1
    except ValueError as exc:
        raise _fail(str(exc))
    print("group %s" % ds.group)
    print("params (%d, %d, %d)" % ds.params)
    print("elements %s" % " ".join(str(e) for e in ds.elements))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cretan",
        description="Construct, verify, and catalog Cretan matrices.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a matrix")
    c.add_argument("--order", type=int, required=True)
    c.add_argument("--method", choices=sorted(_CONSTRUCTORS),
                   default="auto")
    c.add_argument("--out", help="write the matrix file here")
    c.add_argument("--render", help="write an .svg or .pgm heatmap")
    c.set_defaults(func=_cmd_construct)

    v = sub.add_parser("verify", help="check a matrix file")
    v.add_argument("file")
    v.add_argument("--strict", action="store_true",
                   help="require a unit entry in every row and column")
    v.add_argument("--tolerance", type=float, default=1e-9)
    v.set_defaults(func=_cmd_verify)

    k = sub.add_parser("catalog", help="best known constructions per order")
    k.add_argument("--max", type=int, default=199)
    k.add_argument("--diff", action="store_true",
                   help="include the published-table diff")
    k.add_argument("--format", choices=("text", "structured"),
                   default="text")
    k.set_defaults(func=_cmd_catalog)

    b = sub.add_parser("bounds", help="determinant bounds for an order")
    b.add_argument("order", type=int)
    b.set_defaults(func=_cmd_bounds)

    d = sub.add_parser("designs", help="difference-set families")
    d.add_argument("action", choices=("list", "make"))
    d.add_argument("--family", choices=("qr", "biquadratic", "singer"))
    d.add_argument("--params", type=int, nargs="*")
    d.set_defaults(func=_cmd_designs)

    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except (MissingFixture, NoConstructionAvailable) as exc:
        print(str(exc), file=sys.stderr)
        return 3
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
