"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 cost-guard refusal.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from nearnormal import constructions as cons
from nearnormal.catalog import (
    FAMILIES,
    CatalogError,
    CatalogRecord,
    ParseError,
    decode_compact,
    encode_compact,
    family_report,
    format_quad,
    read_quad,
    write_catalog,
)
from nearnormal.families import (
    ConstraintViolation,
    SequenceQuad,
    TernaryQuad,
    check_base,
    check_near_normal,
    check_normal,
    check_t_sequences,
    quad_sums,
)
from nearnormal.search import CostGuardError, Family, enumerate_family, family_group
from nearnormal.seq_core import BinarySequence, InvalidInputError
from nearnormal.transforms import canonical

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str, family: str) -> SequenceQuad | TernaryQuad:
    return read_quad(path, ternary=family == "ts")


def cmd_verify(args: argparse.Namespace) -> int:
    q = _load(args.file, args.family)
    if isinstance(q, TernaryQuad):
        checks = [("t-sequences", check_t_sequences(q))]
    else:
        checks = [("base", check_base(q))]
        if args.family in ("ns", "nn"):
            checker = check_normal if args.family == "ns" else check_near_normal
            checks.append((args.family, checker(q)))
    ok = True
    for name, report in checks:
        status = "PASS" if report else "FAIL"
        detail = f" ({report.detail})" if not report else ""
        print(f"{name}: {status}{detail}")
        ok = ok and report.ok
    return EXIT_OK if ok else EXIT_FAIL


def cmd_sums(args: argparse.Namespace) -> int:
    q = _load(args.file, "bs")
    s = quad_sums(q)  # type: ignore[arg-type]
    print("a,b,c,d     " + ",".join(str(v) for v in s.plain))
    print("a*,b*,c*,d* " + ",".join(str(v) for v in s.starred))
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    if args.family not in ("ns", "nn"):
        raise UsageError("search supports --family ns or nn")
    if args.n is None:
        raise UsageError("search needs --n")
    reps = enumerate_family(
        args.family,
        args.n,
        args.mode,
        chunks=args.chunks,
        workers=args.workers,
        override_cost_guard=args.override_cost_guard,
    )
    provenance = {"source": "search", "mode": args.mode, "n": args.n}
    records = [CatalogRecord.from_quad(args.family, q, canonical=True, provenance=provenance) for q in reps]
    _emit(write_catalog(records), args.out)
    print(f"{args.family.upper()}({args.n}): {len(records)} class(es)", file=sys.stderr)
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    if args.family not in ("ns", "nn"):
        raise UsageError("classify supports --family ns or nn")
    q = _load(args.file, args.family)
    report = family_report(args.family, q)
    if not report:
        print(f"{args.family}: FAIL ({report.detail})")
        return EXIT_FAIL
    rep = canonical(q, family_group(Family(args.family)))  # type: ignore[arg-type]
    record = CatalogRecord.from_quad(
        args.family, rep, canonical=True, provenance={"source": "classify", "input": str(args.file)}
    )
    _emit(record.to_json() + "\n", args.out)
    return EXIT_OK


def cmd_construct(args: argparse.Namespace) -> int:
    files = args.files
    if args.chain == "yang":
        if len(files) != 2:
            raise UsageError("construct yang needs an NN file and a BS file")
        out = cons.yang_multiply(read_quad(files[0]), read_quad(files[1]))  # type: ignore[arg-type]
        _emit(format_quad(out, [f"T-sequences of length {out.length}", f"construction: yang {files[0]} {files[1]}"]), args.out)
        return EXIT_OK
    if len(files) != 1:
        raise UsageError(f"construct {args.chain} needs one quad file")
    q = read_quad(files[0])
    if args.chain == "double":
        out_q = cons.bs_double(q)  # type: ignore[arg-type]
        _emit(format_quad(out_q, [f"BS({out_q.m},{out_q.n})", f"construction: double {files[0]}"]), args.out)
    elif args.chain == "ts":
        out_t = cons.bs_to_ts(q)  # type: ignore[arg-type]
        _emit(format_quad(out_t, [f"T-sequences of length {out_t.length}", f"construction: ts {files[0]}"]), args.out)
    elif args.chain == "hadamard":
        if q.m != q.n:  # type: ignore[union-attr]
            q = cons.bs_double(q)  # type: ignore[arg-type]
        h = cons.goethals_seidel(q, args.assignment)  # type: ignore[arg-type]
        _emit(h.to_text(), args.out)
    return EXIT_OK


def cmd_export_matrix(args: argparse.Namespace) -> int:
    q = read_quad(args.file)
    if args.double:
        q = cons.bs_double(q)  # type: ignore[arg-type]
    elif q.m != q.n:  # type: ignore[union-attr]
        raise UsageError(f"export-matrix needs a BS(n,n) quad, got BS({q.m},{q.n}); pass --double")  # type: ignore[union-attr]
    h = cons.goethals_seidel(q, args.assignment)  # type: ignore[arg-type]
    _emit(h.to_text(), args.out)
    return EXIT_OK


def cmd_encode(args: argparse.Namespace) -> int:
    print(encode_compact(BinarySequence.from_text(args.sequence)))
    return EXIT_OK


def cmd_decode(args: argparse.Namespace) -> int:
    print(decode_compact(args.compact).text())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nearnormal", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def family_arg(p: argparse.ArgumentParser, default: str) -> None:
        p.add_argument("--family", choices=FAMILIES, default=default)

    def out_arg(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", help="write output to this file instead of stdout")

    p = sub.add_parser("verify", help="check a quad file against a family")
    p.add_argument("file")
    family_arg(p, "bs")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sums", help="print the plain and alternated sums of a quad")
    p.add_argument("file")
    p.set_defaults(func=cmd_sums)

    p = sub.add_parser("search", help="enumerate NS(n) or NN(n) up to equivalence")
    family_arg(p, "nn")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int, help="accepted for symmetry with other commands; must equal n+1")
    p.add_argument("--mode", choices=("oracle", "mitm"), default="mitm")
    p.add_argument("--chunks", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--override-cost-guard", action="store_true")
    out_arg(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("classify", help="canonical representative of a quad's class")
    p.add_argument("file")
    family_arg(p, "nn")
    out_arg(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("construct", help="run a construction: double, ts, hadamard or yang")
    p.add_argument("chain", choices=("double", "ts", "hadamard", "yang"))
    p.add_argument("files", nargs="+")
    p.add_argument("--assignment", default="ABCD", help="components for the U,X,Y,Z slots")
    out_arg(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("export-matrix", help="Goethals-Seidel Hadamard matrix of a BS(n,n) quad")
    p.add_argument("file")
    p.add_argument("--assignment", default="ABCD")
    p.add_argument("--double", action="store_true", help="apply the doubling map first")
    out_arg(p)
    p.set_defaults(func=cmd_export_matrix)

    p = sub.add_parser("encode", help="compact L:hex form of a +/- string")
    p.add_argument("sequence")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="+/- string from the compact L:hex form")
    p.add_argument("compact")
    p.set_defaults(func=cmd_decode)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if getattr(args, "m", None) is not None and args.n is not None and args.m != args.n + 1:
        print(f"error: --m must equal n+1 for {args.family}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except CostGuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ConstraintViolation, CatalogError, cons.ConstructionError) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, ParseError, InvalidInputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
