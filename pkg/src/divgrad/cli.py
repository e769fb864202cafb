"""Command-line front end.

Exit status: 0 success, 1 other errors, 2 parse or validation errors,
3 complex-linear case deferred, 4 not a division grading.  Errors print one
line ``error: <code>: <message>`` on stderr.
"""
from __future__ import annotations

import argparse
import sys

from . import gda
from .classify import (AmbientMismatch, ClassificationError, DeferredCase, NotDivisionGrading, classify,
                       is_equivalent, is_isomorphic)
from .forms import FormError
from .graded import (BLOCK_NAMES, EXTRA_BLOCKS, GradingError, build_block, check_division_grading, check_grading,
                     relabel_degrees, tensor_product)
from .groups import GroupError, GroupHom, parse_element
from .oracle import SUITES, run_suite
from .realize import CASE_MIN_M, RealizationError, canonical_representative, realize_from_invariants
from .refine import refine

EXIT_OK, EXIT_ERROR, EXIT_PARSE, EXIT_DEFERRED, EXIT_NOT_DIVISION = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: str, msg: str, status: int = EXIT_ERROR):
        super().__init__(msg)
        self.code = code
        self.status = status


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError("io", f"{path}: {exc.strerror}") from exc


def _load_algebra(path: str):
    try:
        return gda.parse_document(_read(path))
    except gda.DocumentError as exc:
        raise CliError("parse", f"{path}: {exc}", EXIT_PARSE) from exc
    except (GradingError, GroupError) as exc:
        raise CliError("invalid-grading", f"{path}: {exc}", EXIT_PARSE) from exc


def _validated_record(path: str):
    a = _load_algebra(path)
    rep = check_grading(a)
    if not rep.ok:
        raise CliError("invalid-grading", f"{path}: {rep.first()}", EXIT_PARSE)
    div = check_division_grading(a, grading_checked=True)
    if not div.ok:
        raise CliError("not-division", f"{path}: {div.violations[0]}", EXIT_NOT_DIVISION)
    return classify(a)


def parse_relabeling(text: str, group) -> GroupHom:
    try:
        images = [parse_element(tok, group) for tok in text.split()]
        phi = GroupHom(group, group, images)
    except GroupError as exc:
        raise CliError("bad-relabeling", str(exc)) from exc
    if not phi.is_bijective():
        raise CliError("bad-relabeling", "generator images do not define an automorphism")
    return phi


# ---------------------------------------------------------------------------

def cmd_build(args) -> int:
    try:
        a = tensor_product([build_block(name) for name in args.blocks])
    except GradingError as exc:
        raise CliError("bad-build", str(exc)) from exc
    if args.relabel:
        phi = parse_relabeling(args.relabel, a.group)
        inv = {phi(x): x for x in a.group.elements}
        a = relabel_degrees(a, lambda t: inv[t])
    _emit(gda.format_document(a), args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    r = _validated_record(args.file)
    print(r.summary())
    if args.out:
        _emit(gda.format_record(r), args.out)
    return EXIT_DEFERRED if r.deferred else EXIT_OK


def _compare(args, fn) -> int:
    ra, rb = _validated_record(args.a), _validated_record(args.b)
    v = fn(ra, rb)
    print(f"{'yes' if v.value else 'no'}: {v.reason}")
    print(f"  A: {ra.summary()}")
    print(f"  B: {rb.summary()}")
    return EXIT_OK


def cmd_iso(args) -> int:
    return _compare(args, is_isomorphic)


def cmd_equiv(args) -> int:
    return _compare(args, is_equivalent)


def cmd_canonical(args) -> int:
    if args.tag == "2f":
        raise CliError("deferred", "case 2f has no canonical representative here", EXIT_DEFERRED)
    if args.tag not in CASE_MIN_M:
        raise CliError("bad-tag", f"unknown case {args.tag!r}")
    if args.m < CASE_MIN_M[args.tag]:
        raise CliError("bad-tag", f"case {args.tag} needs m >= {CASE_MIN_M[args.tag]}")
    _emit(gda.format_document(canonical_representative(args.tag, args.m)), args.out)
    return EXIT_OK


def cmd_realize(args) -> int:
    try:
        r = gda.parse_record(_read(args.file))
    except gda.DocumentError as exc:
        raise CliError("parse", f"{args.file}: {exc}", EXIT_PARSE) from exc
    except (TypeError, GroupError) as exc:
        raise CliError("parse", f"{args.file}: {exc}", EXIT_PARSE) from exc
    _emit(gda.format_document(realize_from_invariants(r)), args.out)
    return EXIT_OK


def cmd_refine(args) -> int:
    _validated_record(args.file)
    _emit(gda.format_document(refine(_load_algebra(args.file))), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    seed = args.seed_pos if args.seed_pos is not None else args.seed
    reports = run_suite(args.suite, seed=seed, max_m=args.max_m)
    text = "\n".join(r.format() for r in reports) + "\n"
    failed = [r.suite for r in reports if not r.passed]
    text += f"{len(reports) - len(failed)}/{len(reports)} suites passed\n"
    _emit(text, args.out)
    if failed:
        raise CliError("verify-failed", ", ".join(failed))
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the result to this path instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for pseudorandom choices")
    common.add_argument("--max-m", type=int, default=2, help="largest m used by list-based suites")

    p = argparse.ArgumentParser(prog="divgrad", description="Division gradings on real, complex and "
                                "quaternionic matrix algebras, in exact arithmetic.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("build", parents=[common], help="tensor product of building blocks")
    s.add_argument("blocks", nargs="+", metavar="BLOCK",
                   help="one of " + ", ".join(BLOCK_NAMES + EXTRA_BLOCKS))
    s.add_argument("--relabel", help="new basis of the grading group as old degrees, space separated")
    s.set_defaults(fn=cmd_build)

    s = sub.add_parser("classify", parents=[common], help="classify a document")
    s.add_argument("file")
    s.set_defaults(fn=cmd_classify)

    for name, fn, what in (("iso", cmd_iso, "isomorphic"), ("equiv", cmd_equiv, "equivalent")):
        s = sub.add_parser(name, parents=[common], help=f"decide whether two documents are {what}")
        s.add_argument("a")
        s.add_argument("b")
        s.set_defaults(fn=fn)

    s = sub.add_parser("canonical", parents=[common], help="canonical representative of a list entry")
    s.add_argument("tag")
    s.add_argument("m", type=int)
    s.set_defaults(fn=cmd_canonical)

    s = sub.add_parser("realize", parents=[common], help="realize a classification record")
    s.add_argument("file")
    s.set_defaults(fn=cmd_realize)

    s = sub.add_parser("refine", parents=[common], help="one refinement step")
    s.add_argument("file")
    s.set_defaults(fn=cmd_refine)

    s = sub.add_parser("verify", parents=[common], help="run oracle suites")
    s.add_argument("suite", choices=SUITES + ("all",))
    s.add_argument("seed_pos", nargs="?", type=int, metavar="SEED")
    s.set_defaults(fn=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except CliError as exc:
        code, msg, status = exc.code, str(exc), exc.status
    except NotDivisionGrading as exc:
        code, msg, status = "not-division", str(exc), EXIT_NOT_DIVISION
    except DeferredCase as exc:
        code, msg, status = "deferred", str(exc), EXIT_DEFERRED
    except AmbientMismatch as exc:
        code, msg, status = "ambient-mismatch", str(exc), EXIT_ERROR
    except (ClassificationError, RealizationError, FormError, GradingError, GroupError) as exc:
        code, msg, status = getattr(exc, "code", "error"), str(exc), EXIT_ERROR
    msg = " ".join(msg.split())
    print(f"error: {code}: {msg}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
