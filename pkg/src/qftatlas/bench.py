"""Benchmark harness: generate, verify, and tabulate schedule metrics.

Each row is verified before being reported.  Published reference results
for the nine architecture/size combinations evaluated in the source paper
are embedded as data; depth deviations are computed against the two-qubit
layer count, which is the accounting those reference figures use (layers
holding only a boundary H are reported separately inside ``depth``).
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass

from .circuit import ScheduledCircuit, metrics
from .grid import grid_qft
from .heavyhex import hh_qft
from .lnn import lnn_qft
from .qft_gates import Mode
from .sycamore import syc_qft
from .topology import ArchKind, build_architecture
from .verifier import verify
from .faults import hh_qft_faulty, syc_qft_faulty

# Published reference results (depth, swap count) per architecture and size.
REFERENCE: dict[tuple[str, int], tuple[int, int]] = {
    ("grid", 3): (32, 33),
    ("grid", 4): (66, 116),
    ("grid", 5): (113, 295),
    ("grid", 6): (172, 624),
    ("sycamore", 2): (10, 6),
    ("sycamore", 4): (81, 116),
    ("sycamore", 6): (208, 540),
    ("heavyhex", 10): (42, 52),
    ("heavyhex", 20): (172, 189),
    ("heavyhex", 30): (288, 444),
}

BENCH_FIELDS = ("arch", "size", "mode", "depth", "two_qubit_depth", "swaps",
                "cphases", "depth_per_qubit", "paper_depth", "paper_swaps",
                "depth_deviation_pct", "swap_deviation_pct")


@dataclass(frozen=True)
class BenchRow:
    arch: str
    size: int
    mode: str
    depth: int
    two_qubit_depth: int
    swaps: int
    cphases: int
    depth_per_qubit: float
    paper_depth: int | None = None
    paper_swaps: int | None = None
    depth_deviation_pct: float | None = None
    swap_deviation_pct: float | None = None

    def values(self) -> list:
        return [getattr(self, f) for f in BENCH_FIELDS]


def generate(arch: str | ArchKind, size: int, mode: Mode | str = Mode.RELAXED,
             faulty: frozenset[int] = frozenset()) -> ScheduledCircuit:
    arch = ArchKind(arch)
    if arch is ArchKind.LNN:
        if faulty:
            raise ValueError("fault handling is not defined for the lnn architecture")
        return lnn_qft(size, mode)
    if arch is ArchKind.GRID:
        if faulty:
            raise ValueError("fault handling is not defined for the grid architecture")
        return grid_qft(size, mode)
    if arch is ArchKind.SYCAMORE:
        if faulty:
            return syc_qft_faulty(size, set(faulty), mode)
        return syc_qft(size, mode)
    if faulty:
        return hh_qft_faulty(size, set(faulty), mode)
    return hh_qft(size, mode)


def qubit_count(arch: str | ArchKind, size: int) -> int:
    arch = ArchKind(arch)
    if arch in (ArchKind.GRID, ArchKind.SYCAMORE):
        return size * size
    return size


def bench_one(arch: str, size: int, mode: str = "relaxed") -> BenchRow:
    """Generate, verify, and measure one configuration."""
    circuit = generate(arch, size, mode)
    graph = build_architecture(arch, size)
    report = verify(circuit, graph, mode)
    if not report.ok:
        raise RuntimeError(f"{arch} size {size} {mode} failed verification")
    m = metrics(circuit)
    n = qubit_count(arch, size)
    ref = REFERENCE.get((arch, size))
    row = BenchRow(
        arch=arch, size=size, mode=mode,
        depth=m.depth, two_qubit_depth=m.two_qubit_depth,
        swaps=m.swap_count, cphases=m.cphase_count,
        depth_per_qubit=round(m.depth / n, 3),
        paper_depth=ref[0] if ref else None,
        paper_swaps=ref[1] if ref else None,
        depth_deviation_pct=(round(100 * (m.two_qubit_depth - ref[0]) / ref[0], 1)
                             if ref else None),
        swap_deviation_pct=(round(100 * (m.swap_count - ref[1]) / ref[1], 1)
                            if ref else None),
    )
    return row


def run_bench(arch_sizes: list[tuple[str, int]], mode: str = "relaxed",
              workers: int = 1) -> list[BenchRow]:
    """Bench every (arch, size); rows come back ordered by (arch, size)."""
    if workers <= 1:
        rows = [bench_one(a, s, mode) for a, s in arch_sizes]
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {pool.submit(bench_one, a, s, mode): (a, s)
                       for a, s in arch_sizes}
            rows = [f.result() for f in futures]
    return sorted(rows, key=lambda r: (r.arch, r.size))


def to_csv(rows: list[BenchRow]) -> str:
    lines = ["# qftatlas bench", ",".join(BENCH_FIELDS)]
    for row in rows:
        lines.append(",".join("" if v is None else str(v) for v in row.values()))
    return "\n".join(lines) + "\n"


def to_markdown(rows: list[BenchRow]) -> str:
    header = "| " + " | ".join(BENCH_FIELDS) + " |"
    sep = "|" + "|".join(["---"] * len(BENCH_FIELDS)) + "|"
    lines = [header, sep]
    for row in rows:
        lines.append("| " + " | ".join("" if v is None else str(v)
                                       for v in row.values()) + " |")
    return "\n".join(lines) + "\n"
