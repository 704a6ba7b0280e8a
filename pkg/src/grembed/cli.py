"""Command-line interface: embeddings, Pluecker dumps, identity checks,
point enumeration and the verification suites, all with JSON I/O.

Exit codes: 0 success (including an expected failure that was observed),
1 verification failure or degenerate result, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys

from grembed import verify
from grembed.grassmann import (
    DegenerateImageError,
    GrassmannPoint,
    pluecker_coordinates,
    sym_embed,
    tensor_embed,
    tensor_power_embed,
    wedge_embed,
)
from grembed.linalg import LinalgError, Matrix
from grembed.multilinear import (
    check_det_sym_identity,
    check_det_tensor_identity,
    check_det_wedge_identity,
    sym_indices,
    tensor_indices,
    wedge_indices,
)
from grembed.rings import (
    DualNumbers,
    IntegerRing,
    PolynomialRing,
    PrimeField,
    RationalField,
    RingError,
)


class InputError(Exception):
    """Invalid user input; maps to exit code 2."""


def _add_ring_flags(parser):
    parser.add_argument("--ring", choices=["int", "rat", "fp", "dual", "poly"],
                        help="coefficient ring")
    parser.add_argument("--p", type=int, help="prime for fp/dual rings")
    parser.add_argument("--q", type=int,
                        help="shorthand for --ring fp --p Q")
    parser.add_argument("--vars", help="comma-separated variable names for poly")


def _ring_from_args(args, default=None):
    if args.q is not None:
        return PrimeField(args.q)
    kind = args.ring
    if kind is None:
        if default is not None:
            return default
        raise InputError("no ring given; use --ring or --q")
    if kind == "int":
        return IntegerRing()
    if kind == "rat":
        return RationalField()
    if kind in ("fp", "dual"):
        if args.p is None:
            raise InputError(f"--ring {kind} needs --p")
        return PrimeField(args.p) if kind == "fp" else DualNumbers(args.p)
    if args.vars is None:
        raise InputError("--ring poly needs --vars")
    return PolynomialRing([v.strip() for v in args.vars.split(",") if v.strip()])


def _load_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}") from exc


def _emit(args, obj, text):
    if args.format == "json":
        print(json.dumps(obj))
    else:
        print(text)


def _point_text(point, labels=None):
    fmt = point.ring.format_value
    if labels is None:
        labels = list(range(point.ambient_dim))
    lines = [f"Gr({point.ambient_dim}, {point.rank}) over {point.ring}"]
    for i, label in enumerate(labels):
        row = " ".join(fmt(point.basis.entry(i, j)) for j in range(point.rank))
        lines.append(f"  {label}: {row}")
    return "\n".join(lines)


def _embed_labels(kind, points, r):
    if kind == "wedge":
        return wedge_indices(points[0].ambient_dim, r)
    if kind == "sym":
        return sym_indices(points[0].ambient_dim, r)
    if kind == "tensor-power":
        return tensor_indices([points[0].ambient_dim] * r)
    return tensor_indices([p.ambient_dim for p in points])


def _cmd_embed(args):
    points = [GrassmannPoint.from_json(_load_json(path)) for path in args.points]
    kind = args.kind
    if kind in ("tensor-power", "wedge", "sym"):
        if len(points) != 1:
            raise InputError(f"--kind {kind} takes exactly one point")
        if args.r is None:
            raise InputError(f"--kind {kind} needs --r")
    if kind == "tensor":
        image = tensor_embed(points)
    elif kind == "tensor-power":
        image = tensor_power_embed(points[0], args.r)
    elif kind == "wedge":
        image = wedge_embed(points[0], args.r)
    else:
        image = sym_embed(points[0], args.r)
    labels = _embed_labels(kind, points, args.r)
    _emit(args, image.to_json(), _point_text(image, labels))
    return 0


def _cmd_pluecker(args):
    point = GrassmannPoint.from_json(_load_json(args.point))
    coords = pluecker_coordinates(point)
    ring = point.ring
    obj = [[list(label), ring.value_to_json(value)] for label, value in coords]
    text = "\n".join(
        f"{','.join(map(str, label))}: {ring.format_value(value)}"
        for label, value in coords
    )
    _emit(args, obj, text)
    return 0


def _cmd_det_identity(args):
    matrices = [Matrix.from_json(_load_json(path)) for path in args.matrices]
    if args.which == "tensor":
        report = check_det_tensor_identity(matrices)
    else:
        if len(matrices) != 1:
            raise InputError(f"--which {args.which} takes exactly one matrix")
        if args.d is None:
            raise InputError(f"--which {args.which} needs --d")
        checker = check_det_sym_identity if args.which == "sym" else check_det_wedge_identity
        report = checker(matrices[0], args.d)
    return _finish_report(args, report)


def _cmd_enumerate(args):
    ring = _ring_from_args(args)
    count = 0
    for point in verify.enumerate_grassmannian(ring, args.n, args.m):
        if args.format == "json":
            print(json.dumps(point.to_json()), flush=False)
        else:
            print(point.basis.pretty())
        count += 1
        if args.limit and count >= args.limit:
            break
    if args.format != "json":
        print(f"# {count} points of Gr({args.n}, {args.m}) over {ring}")
    return 0


def _spec_from_args(args, ring):
    factors = ()
    if args.n1 is not None:
        if None in (args.m1, args.n2, args.m2):
            raise InputError("product specs need all of --n1 --m1 --n2 --m2")
        factors = ((args.n1, args.m1), (args.n2, args.m2))
        return verify.EnumerationSpec(ring=ring, factors=factors)
    if args.n is None or args.m is None:
        raise InputError("this suite needs --n and --m")
    return verify.EnumerationSpec(ring=ring, n=args.n, m=args.m, r=args.r or 0)


def _finish_report(args, report, out=None):
    if out:
        with open(out, "w") as handle:
            json.dump(report.to_json(), handle, indent=2)
    if args.format == "json":
        print(json.dumps(report.to_json()))
    print(report.summary_line())
    return 0 if report.ok else 1


def _cmd_verify(args):
    suite = args.suite
    if suite == "det-identities":
        ring = _ring_from_args(args, default=IntegerRing())
        report = verify.verify_det_identities(
            trials=args.trials, seed=args.seed, ring=ring,
            include_symbolic=not args.no_symbolic,
            allow_large_symbolic=args.large_symbolic,
        )
        return _finish_report(args, report, args.out)
    ring = _ring_from_args(args)
    spec = _spec_from_args(args, ring)
    if suite == "tensor-lemma":
        report = verify.verify_tensor_image_lemma(spec)
    elif suite == "wedge-lemma":
        report = verify.verify_wedge_image_lemma(spec)
    elif suite == "sym-lemma":
        report = verify.verify_sym_image_lemma(spec, expect_failure=args.expect_failure)
    elif suite == "point-count":
        report = verify.verify_grassmannian_count(spec)
    else:
        if args.which is None:
            raise InputError("the injectivity suite needs --which")
        report = verify.verify_embedding_injectivity(
            spec, args.which, expect_failure=args.expect_failure
        )
    return _finish_report(args, report, args.out)


def _cmd_counterexample(args):
    report = verify.run_counterexample(args.p, args.r, args.n)
    return _finish_report(args, report, args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grembed",
        description="Exact Grassmannian embeddings and their verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=["text", "json"], default="text")
        return p

    p = add("embed", "embed Grassmannian points")
    p.add_argument("--kind", choices=["tensor", "tensor-power", "wedge", "sym"],
                   required=True)
    p.add_argument("--r", type=int)
    p.add_argument("points", nargs="+", help="point JSON files ('-' for stdin)")
    p.set_defaults(func=_cmd_embed)

    p = add("pluecker", "dump labeled Pluecker coordinates of a point")
    p.add_argument("point", help="point JSON file ('-' for stdin)")
    p.set_defaults(func=_cmd_pluecker)

    p = add("det-identity", "check a determinant identity on given matrices")
    p.add_argument("--which", choices=["tensor", "sym", "wedge"], required=True)
    p.add_argument("--d", type=int)
    p.add_argument("matrices", nargs="+", help="matrix JSON files")
    p.set_defaults(func=_cmd_det_identity)

    p = add("enumerate", "list all points of a finite Grassmannian")
    _add_ring_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--limit", type=int, default=0)
    p.set_defaults(func=_cmd_enumerate)

    p = add("verify", "run a verification suite")
    p.add_argument("suite", choices=["tensor-lemma", "wedge-lemma", "sym-lemma",
                                     "injectivity", "point-count", "det-identities"])
    _add_ring_flags(p)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--n1", type=int)
    p.add_argument("--m1", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("--m2", type=int)
    p.add_argument("--which", choices=["tensor", "tensor-power", "wedge", "sym"])
    p.add_argument("--expect-failure", action="store_true")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-symbolic", action="store_true")
    p.add_argument("--large-symbolic", action="store_true")
    p.add_argument("--out", help="write the full report JSON to this file")
    p.set_defaults(func=_cmd_verify)

    p = add("counterexample", "reproduce the char-p symmetric power collision")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--out", help="write the full report JSON to this file")
    p.set_defaults(func=_cmd_counterexample)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DegenerateImageError as exc:
        print(f"degenerate symmetric power image: {exc}", file=sys.stderr)
        return 1
    except (InputError, RingError, LinalgError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
