"""Full QFT on the m x m diagonal grid via two-row serpentine units.

Each unit covers two rows, traversed as a serpentine line of length
L = 2m.  Between adjacent units the 2m - 1 boundary links connect odd line
positions of the upper unit to even line positions of the lower unit whose
indices differ by one, so two stacked units interact like two rows whose
columns must differ by one to be linked.

Unit swap: three transversal layers (boundary row pair, both intra-unit
row pairs, boundary row pair again) exchange the units' contents while
preserving serpentine positions.

Inter-unit interaction:

- relaxed: a detour phase first serves the L same-position pairs (shift
  one unit's qubit sideways, interact, shift back: two 3-layer rounds for
  even and odd positions), then L + 1 iterations of [CPHASE every linked
  undone pair; synchronized brick swap in both units] cover the remaining
  L^2 - L pairs; both units exit mirrored.
- strict: both units run the triangular path pattern in lockstep, so cross
  pair (x, y) becomes linked exactly at its crossing round x + y, matching
  the same-control/same-target release order; same-rank pairs are served
  by a three-layer sideways bubble at their pause round.  Entry
  arrangements must be rank-matched (both ascending or both descending),
  which the driver guarantees by assigning odd-ranked units descending
  initial layouts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import ScheduleBuilder, ScheduledCircuit
from .driver import UnitState, run_unit_chain
from .lnn import LnnOptions, emit_lnn, swap_window
from .qft_gates import Mode
from .topology import ArchKind, CouplingGraph, build_architecture, grid_index, serpentine_line


class SycamoreScheduleError(ValueError):
    pass


@dataclass(frozen=True)
class SycIeOptions:
    m: int
    mode: Mode
    upper_slot: int   # unit slot index; unit u occupies rows 2u, 2u+1
    lower_slot: int


def unit_line(m: int, slot: int) -> tuple[int, ...]:
    return tuple(serpentine_line(m, 2 * slot))


def boundary_link_positions(L: int) -> list[tuple[int, int]]:
    """(upper line position, lower line position) pairs that are linked."""
    links = []
    for p in range(1, L, 2):
        links.append((p, p - 1))
        if p + 1 < L:
            links.append((p, p + 1))
    return links


def syc_unit_swap(builder: ScheduleBuilder, m: int, slot_a: int, slot_b: int) -> None:
    """Exchange two adjacent units' contents in exactly 3 swap layers."""
    if abs(slot_a - slot_b) != 1:
        raise SycamoreScheduleError(f"units {slot_a} and {slot_b} are not adjacent")
    s = min(slot_a, slot_b)
    rows = [2 * s, 2 * s + 1, 2 * s + 2, 2 * s + 3]

    def swap_rows(ra: int, rb: int) -> None:
        for c in range(m):
            builder.swap(grid_index(m, ra, c), grid_index(m, rb, c))

    swap_rows(rows[1], rows[2])
    swap_rows(rows[0], rows[1])
    swap_rows(rows[2], rows[3])
    swap_rows(rows[1], rows[2])


def _emit_link_cphases(builder: ScheduleBuilder, pairs: list[tuple[int, int]]) -> None:
    """Emit cphases so conflicting links land in successive layers."""
    for i, j in pairs:
        builder.cphase(i, j)


def syc_ie(builder: ScheduleBuilder, opts: SycIeOptions) -> None:
    m = opts.m
    L = 2 * m
    if abs(opts.upper_slot - opts.lower_slot) != 1:
        raise SycamoreScheduleError("inter-unit interaction needs adjacent units")
    up = unit_line(m, min(opts.upper_slot, opts.lower_slot))
    lo = unit_line(m, max(opts.upper_slot, opts.lower_slot))
    u_occ = [builder.occupant(p) for p in up]
    l_occ = [builder.occupant(p) for p in lo]
    total = L * L
    done: set[tuple[int, int]] = set()

    def norm(a: int, b: int) -> tuple[int, int]:
        return (a, b) if a < b else (b, a)

    def cph(a: int, b: int) -> None:
        builder.cphase(a, b)
        done.add(norm(a, b))

    if opts.mode is Mode.RELAXED:
        _relaxed_ie(builder, up, lo, u_occ, l_occ, L, cph, done)
    else:
        _strict_ie(builder, up, lo, u_occ, l_occ, L, cph, done, norm)

    if len(done) != total:
        raise SycamoreScheduleError(
            f"inter-unit sweep incomplete: {len(done)}/{total} pairs")


def _relaxed_ie(builder, up, lo, u_occ, l_occ, L, cph, done) -> None:
    links = boundary_link_positions(L)

    def sweep() -> None:
        for pu, pl in links:
            a, b = u_occ[pu], l_occ[pl]
            if (min(a, b), max(a, b)) in done:
                continue
            cph(a, b)

    def half_brick(seg, occ, beg) -> None:
        for p in range(beg, L - 1, 2):
            builder.swap(seg[p], seg[p + 1])
            occ[p], occ[p + 1] = occ[p + 1], occ[p]

    # Same-position pairs never become linked while the two units move in
    # lockstep.  Staggering the first three brick layers (upper unit first,
    # then the lower one) opens sideways alignments that serve all of them
    # without any extra swaps.
    for i in range(L + 1):
        sweep()
        if i == L:
            break
        beg = i % 2
        if i < 3:
            half_brick(up, u_occ, beg)
            sweep()
            half_brick(lo, l_occ, beg)
        else:
            half_brick(up, u_occ, beg)
            half_brick(lo, l_occ, beg)


def _strict_ie(builder, up, lo, u_occ, l_occ, L, cph, done, norm) -> None:
    # rank-matched entry: both units ascending, or both descending
    ascending_u = all(u_occ[k] < u_occ[k + 1] for k in range(L - 1))
    ascending_l = all(l_occ[k] < l_occ[k + 1] for k in range(L - 1))
    descending_u = all(u_occ[k] > u_occ[k + 1] for k in range(L - 1))
    descending_l = all(l_occ[k] > l_occ[k + 1] for k in range(L - 1))
    if ascending_u and ascending_l:
        mirror = False
    elif descending_u and descending_l:
        mirror = True
    else:
        raise SycamoreScheduleError(
            "strict interaction needs rank-matched unit arrangements")

    u_rank = {q: r for r, q in enumerate(sorted(u_occ))}
    l_rank = {q: r for r, q in enumerate(sorted(l_occ))}
    lower_is_u = max(u_occ) < min(l_occ)

    def ranks(a: int, b: int) -> tuple[int, int]:
        """(control-side rank, target-side rank) of a cross pair."""
        ua, lb = (a, b) if a in u_rank else (b, a)
        ru, rl = u_rank[ua], l_rank[lb]
        return (ru, rl) if lower_is_u else (rl, ru)

    executed: set[tuple[int, int]] = set()

    def ready(a: int, b: int) -> bool:
        x, y = ranks(a, b)
        return all((x, y2) in executed for y2 in range(y)) and \
               all((x2, y) in executed for x2 in range(x))

    def mark(a: int, b: int) -> None:
        executed.add(ranks(a, b))

    def pos(p: int) -> int:
        return L - 1 - p if mirror else p

    links = boundary_link_positions(L)

    def harvest() -> None:
        progressed = True
        while progressed:
            progressed = False
            for pu, pl in links:
                a, b = u_occ[pu], l_occ[pl]
                key = norm(a, b)
                if key in done or not ready(a, b):
                    continue
                cph(a, b)
                mark(a, b)
                progressed = True

    def bubble(rank: int) -> None:
        """Serve the same-rank pair while it pauses at the pattern's top.

        Links run from odd upper positions to even lower positions, so the
        shift goes through whichever side sits on an unlinkable position.
        """
        p = pos(0)
        a, b = u_occ[p], l_occ[p]
        if norm(a, b) in done:
            return
        if not ready(a, b):
            raise SycamoreScheduleError(f"same-rank pair {norm(a, b)} not released")
        if p % 2 == 0:
            seg, occ, q = up, u_occ, p + 1
        else:
            seg, occ, q = lo, l_occ, p - 1
        builder.swap(seg[p], seg[q])
        occ[p], occ[q] = occ[q], occ[p]
        cph(a, b)
        mark(a, b)
        builder.swap(seg[p], seg[q])
        occ[p], occ[q] = occ[q], occ[p]

    bubble(0)
    for r in range(1, 2 * L - 2):
        harvest()
        if r % 2 == 0 and 1 <= r // 2 <= L - 2:
            bubble(r // 2)
        window = swap_window(r, L)
        for p in window:
            pa, pb = (pos(p + 1), pos(p)) if mirror else (pos(p), pos(p + 1))
            builder.swap(up[pa], up[pb])
            u_occ[pa], u_occ[pb] = u_occ[pb], u_occ[pa]
            builder.swap(lo[pa], lo[pb])
            l_occ[pa], l_occ[pb] = l_occ[pb], l_occ[pa]
    harvest()
    bubble(L - 1)


def syc_qft(m: int, mode: Mode | str = Mode.RELAXED,
            graph: CouplingGraph | None = None) -> ScheduledCircuit:
    """QFT over all m^2 sycamore qubits via the two-row unit chain."""
    if m < 2:
        raise SycamoreScheduleError(f"sycamore size must be >= 2, got {m}")
    if m % 2 != 0:
        raise SycamoreScheduleError(f"sycamore size must be even, got {m}")
    mode = Mode(mode)
    if graph is None:
        graph = build_architecture(ArchKind.SYCAMORE, m)
    k = m // 2
    L = 2 * m

    # strict interactions need rank-matched arrangements at every meeting;
    # starting odd-ranked units descending achieves that with no extra swaps
    initial: dict[int, int] = {}
    for rank in range(k):
        line = unit_line(m, rank)
        logicals = list(range(rank * L, (rank + 1) * L))
        if mode is Mode.STRICT and rank % 2 == 1:
            logicals.reverse()
        for p, q in zip(line, logicals):
            initial[q] = p
    builder = ScheduleBuilder(graph, mode, initial_mapping=initial)

    class Ops:
        def ia(self, unit: UnitState) -> None:
            seg = unit_line(m, unit.slot)
            emit_lnn(builder,
                     LnnOptions(n=L, segment=seg, reverse_orientation=unit.reversed_),
                     logicals=list(unit.logicals))
            unit.reversed_ = not unit.reversed_

        def ie(self, lower: UnitState, upper: UnitState) -> None:
            syc_ie(builder, SycIeOptions(m=m, mode=mode,
                                         upper_slot=min(lower.slot, upper.slot),
                                         lower_slot=max(lower.slot, upper.slot)))
            lower.reversed_ = not lower.reversed_
            upper.reversed_ = not upper.reversed_

        def unit_swap(self, a: UnitState, b: UnitState) -> None:
            syc_unit_swap(builder, m, a.slot, b.slot)

    def make_unit(rank: int) -> UnitState:
        return UnitState(rank=rank,
                         logicals=tuple(range(rank * L, (rank + 1) * L)),
                         slot=rank,
                         reversed_=(mode is Mode.STRICT and rank % 2 == 1))

    run_unit_chain(k, make_unit, Ops())
    return builder.build()
