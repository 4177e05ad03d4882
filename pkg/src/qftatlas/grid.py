"""Full QFT on the m x m grid via row units.

Row r initially holds logical block [r*m, (r+1)*m).  Intra-unit QFT is the
path pattern on the row; the unit swap is one transversal layer over the m
vertical links; inter-unit interaction aligns every cross pair vertically
exactly once:

- relaxed: the rows brick-rotate with opposite parities for m iterations,
  interacting across all vertical links each iteration; both rows exit
  mirrored.
- strict: both rows run the triangular path pattern with the second row
  one round behind.  The crossing swap of ranks x and y in the leading row
  happens exactly one round before the same crossing in the trailing row,
  which puts rank x above rank y at round x + y - the precise moment the
  same-control/same-target order releases the pair.  Same-rank pairs align
  during their pause at the pattern's top.  Both rows exit mirrored.  The
  construction needs rank-matched entry arrangements (both ascending or
  both descending); the scheduler guarantees that by assigning odd-ranked
  rows a descending initial layout.

No explicit layer fencing is needed: the builder's per-qubit busy frontier
keeps each iteration's swaps and interactions ordered while letting
operations of far-apart units share layers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import ScheduleBuilder, ScheduledCircuit
from .driver import UnitState, run_unit_chain
from .lnn import LnnOptions, emit_lnn, swap_window
from .qft_gates import Mode
from .topology import ArchKind, CouplingGraph, build_architecture, grid_index


class GridScheduleError(ValueError):
    pass


@dataclass(frozen=True)
class GridIeOptions:
    m: int
    mode: Mode
    top_row: int
    bottom_row: int


def row_segment(m: int, row: int) -> tuple[int, ...]:
    return tuple(grid_index(m, row, c) for c in range(m))


def grid_unit_swap(builder: ScheduleBuilder, m: int, row_a: int, row_b: int) -> None:
    """Exchange two adjacent rows with one transversal layer of m swaps."""
    if abs(row_a - row_b) != 1:
        raise GridScheduleError(f"rows {row_a} and {row_b} are not adjacent")
    for c in range(m):
        builder.swap(grid_index(m, row_a, c), grid_index(m, row_b, c))


def _norm(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


class CrossReadiness:
    """Product-order release over the cross pairs of two logical blocks."""

    def __init__(self, side_a: list[int], side_b: list[int]):
        lo, hi = (side_a, side_b) if max(side_a) < min(side_b) else (side_b, side_a)
        self.lo_rank = {q: r for r, q in enumerate(sorted(lo))}
        self.hi_rank = {q: r for r, q in enumerate(sorted(hi))}
        self.executed: set[tuple[int, int]] = set()
        self.count = 0
        self.total = len(lo) * len(hi)

    def ranks(self, a: int, b: int) -> tuple[int, int]:
        lo, hi = (a, b) if a in self.lo_rank else (b, a)
        return self.lo_rank[lo], self.hi_rank[hi]

    def ready(self, a: int, b: int) -> bool:
        x, y = self.ranks(a, b)
        return all((x, y2) in self.executed for y2 in range(y)) and \
               all((x2, y) in self.executed for x2 in range(x))

    def mark(self, a: int, b: int) -> None:
        self.executed.add(self.ranks(a, b))
        self.count += 1

    def is_done(self, a: int, b: int) -> bool:
        return self.ranks(a, b) in self.executed

    def complete(self) -> bool:
        return self.count == self.total


def grid_ie(builder: ScheduleBuilder, opts: GridIeOptions) -> None:
    """All m^2 cross pairs between two adjacent rows, exactly once."""
    m = opts.m
    if abs(opts.top_row - opts.bottom_row) != 1:
        raise GridScheduleError("inter-unit interaction needs adjacent rows")
    top = row_segment(m, opts.top_row)
    bottom = row_segment(m, opts.bottom_row)
    t_occ = [builder.occupant(p) for p in top]
    b_occ = [builder.occupant(p) for p in bottom]
    if m == 1:
        builder.cphase(t_occ[0], b_occ[0])
        return
    tracker = CrossReadiness(t_occ, b_occ)
    if opts.mode is Mode.RELAXED:
        _relaxed_ie(builder, top, bottom, t_occ, b_occ, m, tracker)
    else:
        _strict_ie(builder, top, bottom, t_occ, b_occ, m, tracker)
    if not tracker.complete():
        raise GridScheduleError(
            f"inter-unit sweep incomplete: {tracker.count}/{tracker.total} pairs")


def _relaxed_ie(builder, top, bottom, t_occ, b_occ, m, tracker) -> None:
    for i in range(m):
        for c in range(m):
            a, b = t_occ[c], b_occ[c]
            if tracker.is_done(a, b):
                raise GridScheduleError(
                    f"pair {_norm(a, b)} aligned twice in relaxed sweep")
            builder.cphase(a, b)
            tracker.mark(a, b)
        for p in range(i % 2, m - 1, 2):
            builder.swap(top[p], top[p + 1])
            t_occ[p], t_occ[p + 1] = t_occ[p + 1], t_occ[p]
        for p in range((i + 1) % 2, m - 1, 2):
            builder.swap(bottom[p], bottom[p + 1])
            b_occ[p], b_occ[p + 1] = b_occ[p + 1], b_occ[p]


def _strict_ie(builder, top, bottom, t_occ, b_occ, m, tracker) -> None:
    ascending = all(t_occ[k] < t_occ[k + 1] for k in range(m - 1))
    descending = all(t_occ[k] > t_occ[k + 1] for k in range(m - 1))
    asc_b = all(b_occ[k] < b_occ[k + 1] for k in range(m - 1))
    desc_b = all(b_occ[k] > b_occ[k + 1] for k in range(m - 1))
    if ascending and asc_b:
        mirror = False
    elif descending and desc_b:
        mirror = True
    else:
        raise GridScheduleError(
            "strict interaction needs rank-matched row arrangements")

    def window(r: int) -> list[int]:
        if r < 1:
            return []
        ps = swap_window(r, m)
        return [m - 2 - p for p in ps] if mirror else ps

    def sweep() -> None:
        for c in range(m):
            a, b = t_occ[c], b_occ[c]
            if not tracker.is_done(a, b) and tracker.ready(a, b):
                builder.cphase(a, b)
                tracker.mark(a, b)

    rounds = 2 * m - 2
    for r in range(1, rounds + 1):
        sweep()
        for p in window(r):
            builder.swap(top[p], top[p + 1])
            t_occ[p], t_occ[p + 1] = t_occ[p + 1], t_occ[p]
        for p in window(r - 1):
            builder.swap(bottom[p], bottom[p + 1])
            b_occ[p], b_occ[p + 1] = b_occ[p + 1], b_occ[p]
    sweep()


def grid_qft(m: int, mode: Mode | str = Mode.RELAXED,
             graph: CouplingGraph | None = None) -> ScheduledCircuit:
    """QFT over all m^2 grid qubits via the unit-level chain."""
    if m < 2:
        raise GridScheduleError(f"grid size must be >= 2, got {m}")
    mode = Mode(mode)
    if graph is None:
        graph = build_architecture(ArchKind.GRID, m)

    initial: dict[int, int] = {}
    for rank in range(m):
        logicals = list(range(rank * m, (rank + 1) * m))
        if mode is Mode.STRICT and rank % 2 == 1:
            logicals.reverse()
        for p, q in zip(row_segment(m, rank), logicals):
            initial[q] = p
    builder = ScheduleBuilder(graph, mode, initial_mapping=initial)

    class Ops:
        def ia(self, unit: UnitState) -> None:
            seg = row_segment(m, unit.slot)
            emit_lnn(builder,
                     LnnOptions(n=m, segment=seg, reverse_orientation=unit.reversed_),
                     logicals=list(unit.logicals))
            unit.reversed_ = not unit.reversed_

        def ie(self, lower: UnitState, upper: UnitState) -> None:
            grid_ie(builder, GridIeOptions(m=m, mode=mode,
                                           top_row=lower.slot, bottom_row=upper.slot))
            lower.reversed_ = not lower.reversed_
            upper.reversed_ = not upper.reversed_

        def unit_swap(self, a: UnitState, b: UnitState) -> None:
            grid_unit_swap(builder, m, a.slot, b.slot)

    def make_unit(rank: int) -> UnitState:
        return UnitState(rank=rank,
                         logicals=tuple(range(rank * m, (rank + 1) * m)),
                         slot=rank,
                         reversed_=(mode is Mode.STRICT and rank % 2 == 1))

    run_unit_chain(m, make_unit, Ops())
    return builder.build()
