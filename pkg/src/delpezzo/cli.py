"""Command-line front end.

Subcommands: ``exceptional``, ``null-classes``, ``check``, ``verify``,
``adjoint``, ``tables``.  Human-readable tables go to stdout; ``--json``
switches ``check``/``adjoint``/``verify`` to the machine-readable report
(stable field names and order, all numbers decimal integers).

Class literals pair with an explicit ``--r``.  Two grammars:

* coefficient list ``a;b1,b2,...`` e.g. ``3;1,1,1`` (with ``--no-strict``,
  a short b is zero-padded instead of rejected);
* type pattern ``(a0;m1^n1,m2^n2,...)`` e.g. ``(6;3,2^7)``, expanded to
  the canonical descending representative at rank r.

Exit status: 0 only when there was no parse or usage error and, for
``verify``, no consistency violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .lattice import (
    MAX_RANK,
    MIN_RANK,
    CurveTypePattern,
    PicardClass,
    adjoint as adjoint_class,
)
from .enumeration import (
    enumerate_exceptional,
    enumerate_null_classes,
    exceptional_type_census,
    surface_context,
)
from .positivity import adjoint_kva_check, is_k_very_ample
from .reider import DESK_SCALE_K, consistency_sweep
from . import tables as table_views

USAGE_ERROR = 2


class ClassLiteralError(ValueError):
    """Malformed class literal; carries the 1-based column of the problem."""

    def __init__(self, message: str, column: int):
        super().__init__(message)
        self.column = column


def _parse_int(text: str, start: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise ClassLiteralError(f"expected an integer, got {text!r}", start + 1) from None


def _parse_coefficient_literal(text: str, r: int, strict: bool) -> PicardClass:
    if ";" not in text:
        raise ClassLiteralError("missing ';' between a and b coefficients", len(text))
    head, _, tail = text.partition(";")
    a = _parse_int(head.strip(), 0)
    b = []
    pos = len(head) + 1
    for piece in tail.split(","):
        if piece.strip() == "":
            raise ClassLiteralError("empty b coefficient", pos + 1)
        b.append(_parse_int(piece.strip(), pos))
        pos += len(piece) + 1
    if len(b) > r:
        raise ClassLiteralError(f"{len(b)} b-coefficients for rank {r}", len(head) + 2)
    if len(b) < r:
        if strict:
            raise ClassLiteralError(
                f"{len(b)} b-coefficients for rank {r} (use --no-strict to zero-pad)",
                len(text),
            )
        b.extend([0] * (r - len(b)))
    return PicardClass(a, tuple(b))


def _parse_pattern_literal(text: str, r: int) -> PicardClass:
    if not text.endswith(")"):
        raise ClassLiteralError("pattern literal must end with ')'", len(text))
    inner = text[1:-1]
    if ";" not in inner:
        raise ClassLiteralError("missing ';' after a0 in pattern literal", len(text))
    head, _, tail = inner.partition(";")
    a0 = _parse_int(head.strip(), 1)
    entries = []
    pos = 1 + len(head) + 1
    for piece in tail.split(","):
        if piece.strip() == "":
            raise ClassLiteralError("empty pattern entry", pos + 1)
        if "^" in piece:
            m_txt, _, n_txt = piece.partition("^")
            mult = _parse_int(m_txt.strip(), pos)
            count = _parse_int(n_txt.strip(), pos + len(m_txt) + 1)
        else:
            mult, count = _parse_int(piece.strip(), pos), 1
        if count <= 0:
            raise ClassLiteralError(f"pattern count must be positive, got {count}", pos + 1)
        entries.append((mult, count))
        pos += len(piece) + 1
    try:
        pattern = CurveTypePattern(a0, tuple(entries))
        return pattern.to_class(r)
    except ValueError as exc:
        raise ClassLiteralError(str(exc), 1) from None


def parse_class_literal(text: str, r: int, strict: bool = True) -> PicardClass:
    """Parse either literal grammar against an explicit rank."""
    stripped = text.strip()
    if not stripped:
        raise ClassLiteralError("empty class literal", 1)
    if stripped.startswith("("):
        return _parse_pattern_literal(stripped, r)
    return _parse_coefficient_literal(stripped, r, strict)


def _add_rank_option(parser):
    parser.add_argument("--r", type=int, required=True, metavar="R",
                        help=f"number of blown-up points ({MIN_RANK}..{MAX_RANK})")


def _check_rank_arg(parser, r):
    if not MIN_RANK <= r <= MAX_RANK:
        parser.error(f"--r must be in {MIN_RANK}..{MAX_RANK}, got {r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="delpezzo",
        description="Exact positivity tests for divisor classes on del Pezzo surfaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exceptional", help="enumerate the exceptional classes at rank r")
    _add_rank_option(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--types", action="store_true", help="per-type census (default)")
    group.add_argument("--list", action="store_true", help="full class list, canonically sorted")

    p = sub.add_parser("null-classes", help="square-zero classes of anticanonical degree two")
    _add_rank_option(p)

    p = sub.add_parser("check", help="positivity report for one class")
    _add_rank_option(p)
    p.add_argument("--k", type=int, default=0, metavar="K", help="ampleness level (default 0)")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--strict", action=argparse.BooleanOptionalAction, default=True,
                   help="reject b-length mismatches (default); --no-strict zero-pads")
    p.add_argument("literal", help="class literal, e.g. \"3;1,1,1\" or \"(6;3,2^7)\"")

    p = sub.add_parser("verify", help="window-search consistency sweep")
    _add_rank_option(p)
    p.add_argument("--k", type=int, default=1, metavar="K")
    p.add_argument("--box", type=int, default=10, metavar="A", help="scan nef classes with a <= A")
    p.add_argument("--sample", type=int, default=None, metavar="N",
                   help="seeded random sample instead of the exhaustive box")
    p.add_argument("--seed", type=int, default=None, metavar="S",
                   help="sample seed (default 0, printed)")
    p.add_argument("--json", action="store_true", help="machine-readable summary")

    p = sub.add_parser("adjoint", help="adjoint class and its (k-1)-very-ampleness")
    _add_rank_option(p)
    p.add_argument("--k", type=int, required=True, metavar="K")
    p.add_argument("--json", action="store_true")
    p.add_argument("--strict", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("literal")

    sub.add_parser("tables", help="emit all reference tables")
    return parser


def _parse_literal_or_exit(parser, args) -> PicardClass:
    try:
        return parse_class_literal(args.literal, args.r, strict=args.strict)
    except ClassLiteralError as exc:
        print(f"error: cannot parse class literal {args.literal!r}: {exc} (column {exc.column})",
              file=sys.stderr)
        raise SystemExit(USAGE_ERROR) from None


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _cmd_exceptional(parser, args) -> int:
    _check_rank_arg(parser, args.r)
    if args.list:
        for cls in enumerate_exceptional(args.r):
            print(cls.render())
    else:
        print(table_views.render_rank_census(exceptional_type_census(args.r)), end="")
    return 0


def _cmd_null_classes(parser, args) -> int:
    _check_rank_arg(parser, args.r)
    records = enumerate_null_classes(args.r)
    print(table_views.render_null_class_table(records, args.r), end="")
    print()
    print(table_views.render_decomposition_table(records, args.r), end="")
    return 0


def _cmd_check(parser, args) -> int:
    _check_rank_arg(parser, args.r)
    if args.k < 0:
        parser.error(f"--k must be >= 0, got {args.k}")
    L = _parse_literal_or_exit(parser, args)
    report = is_k_very_ample(L, args.k, surface_context(args.r))
    if args.json:
        print(json.dumps(report.as_dict(), indent=2))
        return 0
    print(f"class: {L.render()}  (r={args.r}, k={args.k})")
    print(f"degree: {report.degree}")
    print(f"genus: {report.genus}")
    print(f"effective: {_yes(report.effective)}")
    print(f"nef: {_yes(report.nef)}")
    print(f"spanned: {_yes(report.spanned)}")
    print(f"big: {_yes(report.big)}")
    print(f"{args.k}-very ample: {_yes(report.k_very_ample)}")
    print(f"exception_flag: {report.exception_flag}")
    if report.certificate is not None:
        parts = [f"{m}x({c.render()})" for c, m in report.certificate.subtracted]
        parts.append(f"nef remainder {report.certificate.terminal.render()}")
        print(f"effectivity certificate: {' + '.join(parts)}")
    if report.violations:
        print("violations:")
        for v in report.violations:
            print(f"  [{v.check}] {v.family}: value {v.value} < {v.bound}")
    return 0


def _cmd_verify(parser, args) -> int:
    _check_rank_arg(parser, args.r)
    if args.k < 0:
        parser.error(f"--k must be >= 0, got {args.k}")
    if args.k > DESK_SCALE_K:
        print(
            f"refusing: verify is desk-scale only (k <= {DESK_SCALE_K}); the scan box "
            f"grows like (6*(2k+1))*(2k+2+6*(2k+1))**r and k={args.k} is past the envelope",
            file=sys.stderr,
        )
        return USAGE_ERROR
    seed = 0 if args.seed is None else args.seed
    try:
        summary = consistency_sweep(args.r, args.k, args.box, sample=args.sample, seed=seed)
    except ValueError as exc:
        print(f"refusing: {exc}", file=sys.stderr)
        return USAGE_ERROR
    if args.json:
        print(json.dumps(summary.as_dict(), indent=2))
    else:
        if args.sample is not None and args.seed is None:
            print("seed: 0 (default)")
        print(summary.render())
    return 0 if summary.ok else 1


def _cmd_adjoint(parser, args) -> int:
    _check_rank_arg(parser, args.r)
    if args.k < 1:
        parser.error(f"--k must be >= 1 for the adjoint check, got {args.k}")
    L = _parse_literal_or_exit(parser, args)
    ctx = surface_context(args.r)
    base = is_k_very_ample(L, args.k, ctx)
    if not base.k_very_ample:
        print(f"error: {L.render()} is not {args.k}-very ample; the adjoint check needs that",
              file=sys.stderr)
        return USAGE_ERROR
    adj = adjoint_class(L)
    verdict = adjoint_kva_check(L, args.k, ctx)
    adj_report = is_k_very_ample(adj, args.k - 1, ctx)
    if args.json:
        payload = {
            "subject": L.render(),
            "r": args.r,
            "k": args.k,
            "adjoint": adj.render(),
            "adjoint_k": args.k - 1,
            "adjoint_k_very_ample": verdict,
            "adjoint_report": adj_report.as_dict(),
        }
        print(json.dumps(payload, indent=2))
        return 0
    print(f"class: {L.render()}  (r={args.r}, k={args.k})")
    print(f"adjoint: {adj.render()}")
    print(f"{args.k - 1}-very ample: {_yes(verdict)}")
    if adj_report.exception_flag != "none":
        print(f"exception_flag: {adj_report.exception_flag}")
    return 0


def _cmd_tables(parser, args) -> int:
    print(table_views.render_all_tables(), end="")
    return 0


_HANDLERS = {
    "exceptional": _cmd_exceptional,
    "null-classes": _cmd_null_classes,
    "check": _cmd_check,
    "verify": _cmd_verify,
    "adjoint": _cmd_adjoint,
    "tables": _cmd_tables,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return _HANDLERS[args.command](parser, args)


if __name__ == "__main__":
    sys.exit(main())
