"""Command-line driver over the disk-file protocol.

Three commands cover the pipeline: ``compute`` runs a problem file and
writes result files, ``print`` shows how an input file was parsed, and
``check`` re-verifies a result directory against the structural
invariants of a Hilbert basis computation.

Exit codes: 0 on success, 1 for computation errors and failed checks
(for example a cone that is not pointed), 2 for usage and parse errors.
"""

import argparse
import os
import sys
from collections import Counter
from math import comb

from .cones import supports_from_generators
from .errors import (
    ConeError,
    IncompleteResultError,
    InvalidInputError,
    NotPointedError,
    ParseError,
)
from .fileio import (
    TYPE_KEYWORDS,
    ProjectFiles,
    read_input_file,
    read_rational_cone,
    write_result_files,
)
from .hilbert import reduce_candidates
from .linalg import dot, matmul, transpose, vec_add
from .problems import (
    CONGRUENCES,
    MODE_HILBERT_BASIS,
    MODE_SUPPORT_HYPERPLANES,
    ComputationOptions,
    compute_cone,
)

_TYPE_NAMES = {code: keyword for keyword, code in TYPE_KEYWORDS.items()}

CHECK_DEGREE_BOUND = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conekit",
        description="Hilbert bases of rational cones over a plain-file protocol.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    compute = commands.add_parser(
        "compute", help="run a problem file and write result files"
    )
    compute.add_argument("input", help="problem file (<matrix> <type>)+")
    compute.add_argument(
        "--outdir", help="write result files here instead of next to the input"
    )
    compute.add_argument(
        "--dual", action="store_true", help="use the constraint-driven algorithm"
    )
    compute.add_argument(
        "--hilb", action="store_true", help="also compute h-vector and polynomial"
    )
    compute.add_argument(
        "--allf", action="store_true", help="compute every optional component"
    )
    compute.add_argument(
        "--supp", action="store_true", help="stop after the support hyperplanes"
    )
    compute.add_argument("--errorcheck", action="store_true", help="accepted, no-op")
    compute.add_argument("--normbig", action="store_true", help="accepted, no-op")
    compute.add_argument("--verbose", action="store_true")
    compute.set_defaults(handler=_cmd_compute)

    show = commands.add_parser("print", help="parse an input file and display it")
    show.add_argument("input")
    show.add_argument("--verbose", action="store_true")
    show.set_defaults(handler=_cmd_print)

    check = commands.add_parser(
        "check", help="re-verify the result files written for a basename"
    )
    check.add_argument("basename", help="path stem of an existing result set")
    check.add_argument("--verbose", action="store_true")
    check.set_defaults(handler=_cmd_check)

    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except ParseError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (InvalidInputError, IncompleteResultError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except NotPointedError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except ConeError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


def _result_stem(input_path: str, outdir) -> str:
    name = os.path.basename(input_path)
    if name.endswith(".in"):
        name = name[: -len(".in")]
    if outdir is None:
        directory = os.path.dirname(input_path) or "."
    else:
        directory = outdir
        os.makedirs(directory, exist_ok=True)
    return os.path.join(directory, name)


def _cmd_compute(args) -> int:
    system = read_input_file(args.input)
    for name in ("errorcheck", "normbig"):
        if getattr(args, name):
            print(
                "note: --%s has no effect, arithmetic is always exact" % name,
                file=sys.stderr,
            )
    mode = MODE_SUPPORT_HYPERPLANES if args.supp else MODE_HILBERT_BASIS
    opts = ComputationOptions(
        all_computations=args.allf, hilb=args.hilb, dual=args.dual, mode=mode
    )
    if args.verbose:
        print("mode=%s dual=%s hilb=%s allf=%s" % (mode, opts.dual, opts.hilb, opts.all_computations), file=sys.stderr)
    rc = compute_cone(system, opts)
    stem = _result_stem(args.input, args.outdir)
    write_result_files(rc, stem)
    if args.verbose:
        written = ["gen"]
        written += [s for s in ("sup", "equ", "typ", "cgr") if getattr(rc, s) is not None]
        written += ["inv", "out"]
        for suffix in written:
            print("wrote %s.%s" % (stem, suffix), file=sys.stderr)
    with open(ProjectFiles(stem).output("out")) as fh:
        sys.stdout.write(fh.read())
    return 0


def _cmd_print(args) -> int:
    system = read_input_file(args.input)
    lines = ["ambient dimension %d" % system.ambient_dim]
    for item in system.items:
        width = system.ambient_dim + (1 if item.input_type == CONGRUENCES else 0)
        lines.append(
            "%d x %d matrix, type %s (%d)"
            % (len(item.matrix), width, _TYPE_NAMES[item.input_type], item.input_type)
        )
        for row in item.matrix:
            lines.append("  " + " ".join(str(x) for x in row))
    print("\n".join(lines))
    return 0


def _series_coefficient(h, r: int, k: int):
    """Coefficient of t^k in h(t) / (1-t)^r."""
    if r == 0:
        return h[k] if k < len(h) else 0
    total = 0
    for i, hi in enumerate(h):
        n = k - i + r - 1
        if n >= r - 1:
            total += hi * comb(n, r - 1)
    return total


def _monoid_degree_counts(gen, weights, bound: int):
    """Count distinct sums of generators by degree, up to ``bound``."""
    dim = len(weights)
    origin = (0,) * dim
    points = {origin}
    frontier = [origin]
    while frontier:
        grown = []
        for point in frontier:
            for g in gen:
                q = vec_add(point, g)
                if dot(weights, q) <= bound and q not in points:
                    points.add(q)
                    grown.append(q)
        frontier = grown
    return Counter(dot(weights, p) for p in points)


def _check_failures(rc) -> list:
    failures = []
    gen = rc.gen
    sup = rc.sup
    if sup is None:
        sup, _ = supports_from_generators(gen, rc.ambient_dim)

    for row in gen:
        values = tuple(dot(a, row) for a in sup)
        if any(v < 0 for v in values):
            failures.append("generator %s lies outside the cone" % (row,))
    if failures:
        return failures

    if "hilbert basis elements" in rc.inv and rc.inv["hilbert basis elements"] != len(gen):
        failures.append(
            "record hilbert_basis_elements = %d disagrees with %d rows in .gen"
            % (rc.inv["hilbert basis elements"], len(gen))
        )

    if rc.typ is not None and rc.sup is not None:
        if rc.typ != matmul(gen, transpose(rc.sup)):
            failures.append("typ matrix does not equal gen * sup^T")

    kept = set(reduce_candidates(tuple(set(gen)), sup))
    reducible = sorted(set(gen) - kept)
    for row in reducible:
        failures.append(
            "reduction minimality violated: %s is a sum of smaller elements" % (row,)
        )

    if (
        not failures
        and rc.inv.get("homogeneous")
        and "h-vector" in rc.inv
        and "homogeneous weights" in rc.inv
        and "rank" in rc.inv
    ):
        weights = rc.inv["homogeneous weights"]
        if all(dot(weights, g) >= 1 for g in gen):
            counts = _monoid_degree_counts(gen, weights, CHECK_DEGREE_BOUND)
            h = rc.inv["h-vector"]
            r = rc.inv["rank"]
            for k in range(CHECK_DEGREE_BOUND + 1):
                expect = _series_coefficient(h, r, k)
                if counts.get(k, 0) != expect:
                    failures.append(
                        "hilbert series mismatch at degree %d: records imply %d, enumeration finds %d"
                        % (k, expect, counts.get(k, 0))
                    )
                    break
        else:
            failures.append("recorded grading is not positive on all generators")
    return failures


def _cmd_check(args) -> int:
    rc = read_rational_cone(args.basename)
    failures = _check_failures(rc)
    if failures:
        for line in failures:
            print("check failed: %s" % line, file=sys.stderr)
        return 1
    print(
        "%s: checks passed (cone membership, reduction minimality, typ, series through degree %d)"
        % (args.basename, CHECK_DEGREE_BOUND)
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
