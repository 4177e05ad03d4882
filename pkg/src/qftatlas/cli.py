"""Command-line surface: gen, verify, synth, bench, export.

Exit codes: 0 success (and, for gen, verification passed), 1 verification
failure, 2 invalid flags, parameters, or unreadable/malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench as bench_mod
from .circuit import SchemaError, export_json, export_qasm, import_json, metrics
from .qft_gates import Mode
from .synthesis import SHAPES, SynthesisError, cross_validate, solve_shape
from .topology import ArchKind, TopologyError, build_architecture
from .verifier import verify, verify_file


def _parse_faulty(text: str | None) -> frozenset[int]:
    if not text:
        return frozenset()
    try:
        return frozenset(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad faulty list {text!r}") from exc


def cmd_gen(args: argparse.Namespace) -> int:
    arch = ArchKind(args.arch)
    size = args.n if arch in (ArchKind.LNN, ArchKind.HEAVYHEX) else args.m
    if size is None:
        flag = "--n" if arch in (ArchKind.LNN, ArchKind.HEAVYHEX) else "--m"
        print(f"error: {flag} is required for --arch {arch.value}", file=sys.stderr)
        return 2
    faulty = _parse_faulty(args.faulty)
    try:
        circuit = bench_mod.generate(arch, size, args.mode, faulty)
    except (ValueError, TopologyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if not args.no_verify:
        graph = build_architecture(arch, size)
        report = verify(circuit, graph, args.mode)
        if not report.ok:
            report_path = Path(args.out).with_suffix(".report.json") if args.out \
                else Path("verify.report.json")
            report_path.write_text(json.dumps(report.to_json(), indent=2))
            print(f"error: verification failed; report at {report_path}",
                  file=sys.stderr)
            return 1
    payload: bytes
    if args.format == "qasm":
        payload = export_qasm(circuit).encode()
    else:
        payload = export_json(circuit)
    if args.out:
        Path(args.out).write_bytes(payload)
    else:
        sys.stdout.buffer.write(payload)
        if args.format == "json":
            sys.stdout.write("\n")
    m = metrics(circuit)
    print(f"depth={m.depth} two_qubit_depth={m.two_qubit_depth} "
          f"swaps={m.swap_count} cphases={m.cphase_count} h={m.h_count}",
          file=sys.stderr)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        report = verify_file(args.path, mode=args.mode)
    except (OSError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(report.to_json(), indent=2))
    return 0 if report.ok else 1


def cmd_synth(args: argparse.Namespace) -> int:
    try:
        assignments = solve_shape(args.shape, args.size, limit=args.limit)
    except SynthesisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    doc = {"shape": args.shape, "size": args.size,
           "assignments": [a.as_json() for a in assignments],
           "satisfiable": bool(assignments)}
    if args.validate_sizes and assignments:
        make_sketch, make_spec = SHAPES[args.shape]
        sizes = [int(s) for s in args.validate_sizes.split(",")]
        report = cross_validate(assignments[0], make_sketch(),
                                [make_spec(s) for s in sizes])
        doc["cross_validation"] = report.as_json()
    print(json.dumps(doc, indent=2))
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    arch_sizes: list[tuple[str, int]] = []
    if args.arch in ("grid", "sycamore"):
        sizes = [int(x) for x in args.m.split(",")] if args.m else []
        arch_sizes = [(args.arch, s) for s in sizes]
    elif args.arch in ("lnn", "heavyhex"):
        sizes = [int(x) for x in args.n.split(",")] if args.n else []
        arch_sizes = [(args.arch, s) for s in sizes]
    elif args.arch == "paper":
        arch_sizes = sorted(bench_mod.REFERENCE)
    if not arch_sizes:
        print("error: no sizes given (use --m or --n, or --arch paper)",
              file=sys.stderr)
        return 2
    rows = bench_mod.run_bench(arch_sizes, args.mode, workers=args.workers)
    csv_text = bench_mod.to_csv(rows)
    if args.csv:
        Path(args.csv).write_text(csv_text)
    if args.markdown:
        Path(args.markdown).write_text(bench_mod.to_markdown(rows))
    if not args.csv and not args.markdown:
        sys.stdout.write(csv_text)
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    try:
        circuit = import_json(Path(args.path).read_bytes())
    except (OSError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = export_qasm(circuit).encode() if args.format == "qasm" \
        else export_json(circuit)
    if args.out:
        Path(args.out).write_bytes(payload)
    else:
        sys.stdout.buffer.write(payload)
        if args.format == "json":
            sys.stdout.write("\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qftatlas",
        description="Linear-depth QFT schedules for constrained qubit topologies")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a schedule")
    gen.add_argument("--arch", required=True,
                     choices=[k.value for k in ArchKind])
    gen.add_argument("--m", type=int, help="side length for grid/sycamore")
    gen.add_argument("--n", type=int, help="qubit count for lnn/heavyhex")
    gen.add_argument("--mode", default="relaxed", choices=["strict", "relaxed"])
    gen.add_argument("--out", help="output path (stdout when omitted)")
    gen.add_argument("--faulty", help="comma-separated faulty physical indices")
    gen.add_argument("--format", default="json", choices=["json", "qasm"])
    gen.add_argument("--no-verify", action="store_true")
    gen.set_defaults(func=cmd_gen)

    ver = sub.add_parser("verify", help="verify a circuit document")
    ver.add_argument("path")
    ver.add_argument("--mode", default=None, choices=["strict", "relaxed"])
    ver.set_defaults(func=cmd_verify)

    syn = sub.add_parser("synth", help="solve a loop sketch")
    syn.add_argument("--shape", required=True, choices=sorted(SHAPES))
    syn.add_argument("--size", required=True, type=int)
    syn.add_argument("--limit", type=int, default=1)
    syn.add_argument("--validate-sizes",
                     help="comma-separated sizes to cross-validate the first hit")
    syn.set_defaults(func=cmd_synth)

    ben = sub.add_parser("bench", help="benchmark and tabulate")
    ben.add_argument("--arch", required=True,
                     choices=["lnn", "grid", "sycamore", "heavyhex", "paper"])
    ben.add_argument("--m", help="comma-separated sizes for grid/sycamore")
    ben.add_argument("--n", help="comma-separated sizes for lnn/heavyhex")
    ben.add_argument("--mode", default="relaxed", choices=["strict", "relaxed"])
    ben.add_argument("--csv", help="write CSV here")
    ben.add_argument("--markdown", help="write a markdown table here")
    ben.add_argument("--workers", type=int, default=1)
    ben.set_defaults(func=cmd_bench)

    exp = sub.add_parser("export", help="re-export a circuit document")
    exp.add_argument("path")
    exp.add_argument("--format", default="qasm", choices=["json", "qasm"])
    exp.add_argument("--out")
    exp.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
