"""Linear-depth QFT on a path of qubits: the triangular crossing pattern.

Crossings are organized in rounds r = 1 .. 2n-3.  In round r the occupant
pairs at positions {p : p <= min(r-1, 2n-3-r), p proper parity} interact
(CPHASE) and then cross (SWAP), so every pair meets exactly once, the final
arrangement is the full reversal, and the same-control/same-target/chained
orderings all hold because pair (i, j) meets in round i + j.  Each qubit
ascends to the line's top, pauses for one round (where its H lands in an
otherwise two-qubit layer), and descends to its mirrored position.

Layer count is 4n - 4 for n >= 2: the 2(2n-3) interaction/swap layers plus
one boundary layer for the first H and one for the last.  Exhaustive search
over all valid schedules at n = 4 shows 4n - 4 is optimal, so the published
per-block figure of 4n - 6 is a two-qubit-layer count: those boundary
H-only layers are excluded from ``two_qubit_depth`` but included in
``depth``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import ScheduleBuilder, ScheduledCircuit
from .qft_gates import Mode
from .topology import ArchKind, CouplingGraph, build_architecture


@dataclass(frozen=True)
class LnnOptions:
    """A path segment and the logical range scheduled onto it.

    ``segment`` lists physical indices forming a path in the host graph, in
    the orientation the pattern should run (index 0 is the "top").  Logical
    qubit ``logical_base + k`` must currently sit on ``segment[k]`` when
    ``reverse_orientation`` is false, or on ``segment[n-1-k]`` when true.
    """

    n: int
    segment: tuple[int, ...]
    logical_base: int = 0
    reverse_orientation: bool = False


def swap_window(r: int, n: int) -> list[int]:
    """Crossing positions for round r (1-based) of the n-qubit pattern."""
    cap = min(r - 1, 2 * n - 3 - r)
    return [p for p in range((r - 1) % 2, cap + 1, 2)]


def emit_lnn(builder: ScheduleBuilder, opts: LnnOptions,
             logicals: list[int] | None = None) -> None:
    """Emit the pattern through ``builder``.

    ``logicals`` overrides the contiguous logical range: logicals[k] is the
    qubit expected at line position k (after orientation is applied).  The
    occupants are read from the builder, so callers only need the line's
    *order* to match.
    """
    n = opts.n
    if n < 1:
        raise ValueError("lnn pattern needs n >= 1")
    if len(opts.segment) != n:
        raise ValueError("segment length must equal n")
    seg = list(opts.segment)
    if opts.reverse_orientation:
        seg.reverse()
    if logicals is None:
        logicals = [opts.logical_base + k for k in range(n)]

    occ = [builder.occupant(p) for p in seg]
    if occ != logicals:
        raise ValueError(f"segment occupants {occ} do not match expected {logicals}")

    rank = {q: k for k, q in enumerate(logicals)}

    def emit_h(q: int) -> None:
        builder.h(q)

    emit_h(logicals[0])
    if n == 1:
        return
    line = list(logicals)  # occupants by line position
    for r in range(1, 2 * n - 2):
        positions = swap_window(r, n)
        for p in positions:
            a, b = line[p], line[p + 1]
            builder.cphase(a, b)
        for p in positions:
            builder.swap(seg[p], seg[p + 1])
            line[p], line[p + 1] = line[p + 1], line[p]
        # a qubit that just arrived at the top pauses next round: place its H
        # (the last arrival has no following round; its H trails the loop)
        if positions and positions[0] == 0:
            top = line[0]
            if 0 != rank[top] != n - 1:
                emit_h(top)
    emit_h(line[0])


def lnn_qft(n: int, mode: Mode | str = Mode.STRICT,
            graph: CouplingGraph | None = None) -> ScheduledCircuit:
    """Full QFT schedule on LNN(n); strict-valid, final mapping reversed."""
    if n < 1:
        raise ValueError(f"qubit count must be >= 1, got {n}")
    if graph is None:
        graph = build_architecture(ArchKind.LNN, n)
    builder = ScheduleBuilder(graph, mode)
    emit_lnn(builder, LnnOptions(n=n, segment=tuple(range(n))))
    return builder.build()
