"""Command-line frontend.

Subcommands map one-to-one onto library calls; no search or verification
logic lives here.  Data goes to stdout (or --output), diagnostics to
stderr.  Exit codes: 0 success, 1 invalid parameters, 2 verification
failure, 3 input/output or parse errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import IO

from .canon import (
    DifferenceFamily,
    canonical_form,
    dedup,
    mirror_expand,
    multiplier_automorphisms,
    orbit_class_keys,
)
from .catalog import (
    FamilyRecord,
    ParseError,
    builtin_families,
    builtin_keys,
    parse_text,
    read_jsonl,
    render_text,
    write_jsonl,
)
from .designer import InvalidFamilyError, develop, verify_blocks, verify_design
from .engine import DedupMode, SearchConfig, SearchWorkerError, run_parallel
from .modring import Admissibility, InvalidParametersError, classify
from .oracle import CapExceededError, DEFAULT_CAP, oracle_enumerate

THREADS_ENV = "CYCLICDF_THREADS"


def _default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InvalidParametersError(f"{THREADS_ENV}={env!r} is not an integer")
    return os.cpu_count() or 1


def _emit_records(records, fmt: str, out: IO[str]) -> None:
    if fmt == "jsonl":
        write_jsonl(records, out)
    else:
        for r in records:
            out.write(render_text(r) + "\n")


def _family_record(f: DifferenceFamily, source: str) -> FamilyRecord:
    return FamilyRecord(
        v=f.params.v, k=f.params.k, blocks=f.full_blocks, source=source, normalized=True
    )


def _load_records(args) -> list[FamilyRecord]:
    if getattr(args, "builtin", False):
        if args.v is None or args.k is None:
            raise InvalidParametersError("--builtin requires --v and --k")
        records = list(builtin_families(args.v, args.k))
        if not records:
            raise InvalidParametersError(f"no builtin families for (v,k)=({args.v},{args.k})")
        return records
    stream = sys.stdin if args.input == "-" else open(args.input, "r", encoding="utf-8")
    try:
        if args.format == "text":
            if args.v is None or args.k is None:
                raise InvalidParametersError("text input requires --v and --k")
            records = []
            for lineno, line in enumerate(stream.read().splitlines(), start=1):
                if not line.strip():
                    continue
                try:
                    records.append(parse_text(line, args.v, args.k))
                except ParseError as exc:
                    raise ParseError(f"line {lineno}: {exc}") from exc
            return records
        records = read_jsonl(stream)
    finally:
        if stream is not sys.stdin:
            stream.close()
    for r in records:
        if (args.v is not None and r.v != args.v) or (args.k is not None and r.k != args.k):
            raise InvalidParametersError(
                f"record with (v,k)=({r.v},{r.k}) does not match requested "
                f"({args.v},{args.k})"
            )
    return records


def _admissible_params(v: int, k: int, err: IO[str]):
    p = classify(v, k)
    if p.admissibility is Admissibility.INADMISSIBLE:
        period = k * (k - 1)
        print(
            f"error: (v,k)=({v},{k}) is inadmissible: {v} mod {period} = {v % period}, "
            f"admissible residues are 1 and {k}",
            file=err,
        )
        return None
    return p


def _cmd_search(args, out: IO[str], err: IO[str]) -> int:
    p = _admissible_params(args.v, args.k, err)
    if p is None:
        return 1
    cfg = SearchConfig(thread_count=args.threads, dedup_mode=DedupMode(args.dedup_mode))
    if args.progress:
        cfg.progress = lambda task, nf, nodes: print(
            f"task b2={task.b2}: families={nf} nodes={nodes}", file=err, flush=True
        )
    bases = run_parallel(p, cfg)
    _emit_records([_family_record(f, "base") for f in bases], args.format, out)
    if args.base_only:
        print(f"base={len(bases)}", file=out)
        return 0
    classes = dedup(m for b in bases for m in mirror_expand(b))
    _emit_records([_family_record(f, "class") for f in classes], args.format, out)
    print(f"classes={len(classes)} base={len(bases)}", file=out)
    return 0


def _cmd_verify(args, out: IO[str], err: IO[str]) -> int:
    records = _load_records(args)
    failed = 0
    for i, r in enumerate(records, start=1):
        p = classify(r.v, r.k)
        if p.admissibility is Admissibility.INADMISSIBLE:
            print(f"family {i}: FAIL inadmissible (v,k)=({r.v},{r.k})", file=out)
            failed += 1
            continue
        report = verify_blocks(p, r.blocks)
        if report.ok and args.design:
            family = r.to_family()
            report = verify_design(develop(family))
        if report.ok:
            print(f"family {i}: ok", file=out)
        else:
            print(f"family {i}: FAIL {report.summary()}", file=out)
            failed += 1
    print(f"verified={len(records) - failed} failed={failed}", file=out)
    return 2 if failed else 0


def _cmd_develop(args, out: IO[str], err: IO[str]) -> int:
    records = _load_records(args)
    first = True
    for r in records:
        design = develop(r.to_family())
        if args.format == "jsonl":
            import json

            out.write(
                json.dumps(
                    {"v": design.v, "k": design.k, "blocks": [list(b) for b in design.blocks]}
                )
                + "\n"
            )
        else:
            if not first:
                out.write("\n")
            for b in design.blocks:
                out.write(" ".join(str(x) for x in b) + "\n")
        first = False
    return 0


def _cmd_canon(args, out: IO[str], err: IO[str]) -> int:
    records = _load_records(args)
    keys = [canonical_form(r.to_family()) for r in records]
    if args.dedup:
        seen = sorted(set(zip(keys, ((r.v, r.k) for r in records))))
        out_records = [
            FamilyRecord(v=v, k=k, blocks=key, source="class", normalized=True)
            for key, (v, k) in seen
        ]
    else:
        out_records = [
            FamilyRecord(v=r.v, k=r.k, blocks=key, source="canonical", normalized=True)
            for r, key in zip(records, keys)
        ]
    _emit_records(out_records, args.format, out)
    return 0


def _cmd_autos(args, out: IO[str], err: IO[str]) -> int:
    records = _load_records(args)
    for r in records:
        print(multiplier_automorphisms(r.to_family()), file=out)
    return 0


def _cmd_oracle(args, out: IO[str], err: IO[str]) -> int:
    p = _admissible_params(args.v, args.k, err)
    if p is None:
        return 1
    families = oracle_enumerate(p, cap=args.cap)
    _emit_records([_family_record(f, "oracle") for f in families], args.format, out)
    classes = len(orbit_class_keys(families)) if families else 0
    print(f"classes={classes} families={len(families)}", file=out)
    return 0


def _cmd_catalog(args, out: IO[str], err: IO[str]) -> int:
    if (args.v is None) != (args.k is None):
        raise InvalidParametersError("catalog needs both --v and --k, or neither")
    if args.v is not None:
        records = list(builtin_families(args.v, args.k))
    else:
        records = [r for key in builtin_keys() for r in builtin_families(*key)]
    _emit_records(records, args.format, out)
    return 0


def _add_io_args(sp, *, v_required: bool = False) -> None:
    sp.add_argument("--v", type=int, required=v_required, help="group order v")
    sp.add_argument("--k", type=int, required=v_required, help="block size k")
    sp.add_argument(
        "--format", choices=("jsonl", "text"), default="jsonl", help="record format"
    )
    sp.add_argument("--output", default="-", help="output path, '-' for stdout")


def _add_input_args(sp) -> None:
    sp.add_argument("--input", default="-", help="input path, '-' for stdin")
    sp.add_argument(
        "--builtin", action="store_true", help="use the embedded catalog for (v, k)"
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cyclicdf",
        description="Search, classify, verify, and develop cyclic (v,k,1) difference families.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("search", help="exhaustive pruned search for base families")
    _add_io_args(sp, v_required=True)
    sp.add_argument(
        "--threads",
        type=int,
        default=None,
        help=f"worker count (default: {THREADS_ENV} or the machine core count)",
    )
    sp.add_argument(
        "--dedup-mode",
        choices=tuple(m.value for m in DedupMode),
        default=DedupMode.FULL_DELTA_CLASS.value,
        help="difference-multiset dedup during search",
    )
    sp.add_argument(
        "--base-only", action="store_true", help="skip the mirror expansion and classing"
    )
    sp.add_argument(
        "--progress", action="store_true", help="report per-task progress on stderr"
    )
    sp.set_defaults(handler=_cmd_search)

    sp = sub.add_parser("verify", help="verify difference families")
    _add_io_args(sp)
    _add_input_args(sp)
    sp.add_argument(
        "--design",
        action="store_true",
        help="also develop each family and certify pair coverage",
    )
    sp.set_defaults(handler=_cmd_verify)

    sp = sub.add_parser("develop", help="develop families into block designs")
    _add_io_args(sp)
    _add_input_args(sp)
    sp.set_defaults(handler=_cmd_develop)

    sp = sub.add_parser("canon", help="canonical forms of families")
    _add_io_args(sp)
    _add_input_args(sp)
    sp.add_argument("--dedup", action="store_true", help="one record per class")
    sp.set_defaults(handler=_cmd_canon)

    sp = sub.add_parser("autos", help="multiplier automorphism counts")
    _add_io_args(sp)
    _add_input_args(sp)
    sp.set_defaults(handler=_cmd_autos)

    sp = sub.add_parser("oracle", help="unpruned brute-force enumeration")
    _add_io_args(sp, v_required=True)
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="refuse v beyond this")
    sp.set_defaults(handler=_cmd_oracle)

    sp = sub.add_parser("catalog", help="embedded published families")
    _add_io_args(sp)
    sp.set_defaults(handler=_cmd_catalog)

    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "threads", None) is None and hasattr(args, "threads"):
        try:
            args.threads = _default_threads()
        except InvalidParametersError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    out = sys.stdout if args.output == "-" else None
    try:
        if out is None:
            with open(args.output, "w", encoding="utf-8") as fh:
                return args.handler(args, fh, sys.stderr)
        return args.handler(args, out, sys.stderr)
    except (InvalidParametersError, CapExceededError, SearchWorkerError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvalidFamilyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
