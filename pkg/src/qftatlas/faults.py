"""Fault-aware QFT schedules: exclude error-prone qubits from computation.

Heavy-hex supports faults on dangling qubits only (a dead path qubit would
cut the line in two).  The faulty dangler's column simply runs without a
rider; rider relocations that would land on a faulty or occupied dangler
are deferred, and any interactions the geometry then misses are completed
by the routing fallback.

Sycamore supports faults confined to one two-row unit.  That unit is
excluded from the logical assignment and never touched; the adjacent unit
is designated the buffer and hosts the staging detours.  Interactions and
unit movement across the excluded band are routed through its healthy
cells pair by pair, so the overhead grows with fault position but
correctness is unconditional.

Empty fault sets delegate to the fault-free generators, byte for byte.
"""

from __future__ import annotations

from .circuit import ScheduleBuilder, ScheduledCircuit
from .driver import UnitState, run_unit_chain
from .heavyhex import ColumnState, HeavyHexEmitter, HeavyHexScheduleError, hh_qft
from .lnn import LnnOptions, emit_lnn, swap_window
from .qft_gates import Mode
from .routing import exchange_contents, serve_pair_routed
from .sycamore import SycIeOptions, syc_ie, syc_qft, syc_unit_swap, unit_line
from .topology import ArchKind, build_architecture, heavyhex_group, unit_partition


class FaultError(ValueError):
    pass


# -- heavy-hex ----------------------------------------------------------------


class _FaultyHeavyHexEmitter(HeavyHexEmitter):
    """Column machinery with optional riders and deferred relocations."""

    def __init__(self, builder, mode, n_logical, faulty: frozenset[int]):
        super().__init__(builder, mode, n_logical)
        self.faulty = faulty
        self.adj = None  # set by the driver

    def column_ia(self, col: ColumnState) -> None:  # type: ignore[override]
        # a fault can strand a rider away from the crossings that normally
        # serve it; sweep every pending pair targeting this column before
        # its H gates close those windows
        own = set(col.logicals)
        for q in col.logicals:
            for x in range(q):
                if x in own or self.b.done(x, q):
                    continue
                serve_pair_routed(self.b, self.adj, x, q, self.faulty)
        path, dangler = heavyhex_group(self.n, col.slot)
        block = list(col.logicals[:4])
        occupants = [self.b.occupant(p) for p in path]
        if occupants != block:
            raise HeavyHexScheduleError(
                f"column {col.rank} block not in entry arrangement: {occupants}")
        rider = col.logicals[4] if len(col.logicals) == 5 else None
        home = rider is not None and self.b.position(rider) == dangler
        if rider is not None and home and self.mode is Mode.RELAXED:
            emit_lnn(self.b, LnnOptions(n=5, segment=tuple(path) + (dangler,)),
                     logicals=block + [rider])
            return
        emit_lnn(self.b, LnnOptions(n=4, segment=tuple(path)), logicals=block)
        if rider is None:
            return
        if home:
            self.rider_walk(path, dangler)
        else:
            for q in block:
                if not self.b.done(q, rider):
                    serve_pair_routed(self.b, self.adj, q, rider, self.faulty)
        self.b.h(rider)

    def relocate_rider(self, rider: int, target_dangler: int) -> None:
        if self.b.position(rider) == target_dangler:
            return
        if target_dangler in self.faulty or self.b.occupant(target_dangler) is not None:
            return  # stays stray; missed pairs fall to the router
        exchange_contents(self.b, self.adj, self.b.position(rider),
                          target_dangler, self.faulty)

    def crossing_with_riders(self, left: ColumnState, right: ColumnState) -> None:
        lp, ld = heavyhex_group(self.n, left.slot)
        rp, rd = heavyhex_group(self.n, right.slot)
        seg = lp + rp
        edges = [(seg[i], seg[i + 1]) for i in range(7)]
        for anchor, dangler in ((lp[3], ld), (rp[3], rd)):
            if dangler not in self.faulty:
                edges.append((anchor, dangler))
        self.harvest(edges)
        self._stream(seg, edges)
        if self.mode is Mode.STRICT:
            for path, dangler in ((lp, ld), (rp, rd)):
                if dangler not in self.faulty and self.b.occupant(dangler) is not None:
                    self.rider_walk(path, dangler, best_effort=True)
            self.harvest(edges)
        # columns have exchanged slots: ferry each rider toward its column
        l_rider = left.logicals[4] if len(left.logicals) == 5 else None
        r_rider = right.logicals[4] if len(right.logicals) == 5 else None
        both_home = (l_rider is not None and self.b.position(l_rider) == ld
                     and r_rider is not None and self.b.position(r_rider) == rd
                     and ld not in self.faulty and rd not in self.faulty)
        if both_home:
            self._travel(lp, ld, rp, rd, edges)
            return
        if l_rider is not None:
            self.relocate_rider(l_rider, rd)
        if r_rider is not None:
            self.relocate_rider(r_rider, ld)
        self.harvest(edges)


def hh_qft_faulty(n: int, faults: set[int] | frozenset[int],
                  mode: Mode | str = Mode.RELAXED) -> ScheduledCircuit:
    """Heavy-hex QFT over the surviving qubits; faults must be danglers."""
    mode = Mode(mode)
    faults = frozenset(faults)
    if not faults:
        return hh_qft(n, mode)
    graph = build_architecture(ArchKind.HEAVYHEX, n)
    for f in faults:
        if not 0 <= f < n:
            raise FaultError(f"faulty index {f} outside the graph")
        if graph.coords[f][0] != "dangler":
            raise FaultError(
                f"faulty qubit {f} is on the path; excluding it would split the line")
    m = n // 5
    survivors = n - len(faults)

    # contiguous logicals in column-major order, skipping faulty danglers
    initial: dict[int, int] = {}
    columns: list[ColumnState] = []
    next_logical = 0
    for g in range(m):
        path, dangler = heavyhex_group(n, g)
        logicals = []
        for p in path:
            initial[next_logical] = p
            logicals.append(next_logical)
            next_logical += 1
        if dangler not in faults:
            initial[next_logical] = dangler
            logicals.append(next_logical)
            next_logical += 1
        columns.append(ColumnState(rank=g, logicals=tuple(logicals), slot=g))
    assert next_logical == survivors

    builder = ScheduleBuilder(graph, mode, initial_mapping=initial, faulty=faults)
    emitter = _FaultyHeavyHexEmitter(builder, mode, survivors, faults)
    emitter.adj = {q: {nb for nb in graph.adjacency()[q] if nb not in faults}
                   for q in range(graph.node_count) if q not in faults}

    # the standard chain, but crossings go through the rider-aware variant
    at_slot = {c.slot: c for c in columns}
    emitter.column_ia(at_slot[0])
    if m > 1:
        last_round = 2 * m - 3
        for r in range(1, last_round + 1):
            window = swap_window(r, m)
            for s in window:
                a, b = at_slot[s], at_slot[s + 1]
                emitter.crossing_with_riders(a, b)
                a.slot, b.slot = b.slot, a.slot
                at_slot[s], at_slot[s + 1] = b, a
            if r != last_round:
                emitter.b.barrier()
            if window and window[0] == 0:
                top = at_slot[0]
                if 0 != top.rank != m - 1:
                    emitter.column_ia(top)
        emitter.column_ia(next(c for c in columns if c.rank == m - 1))

    emitter.cleanup(graph, list(range(survivors)))
    return builder.build()


# -- sycamore -----------------------------------------------------------------


def syc_qft_faulty(m: int, faults: set[int] | frozenset[int],
                   mode: Mode | str = Mode.RELAXED,
                   buffer_side: str = "after") -> ScheduledCircuit:
    """Sycamore QFT with one faulty unit excluded from logical assignment.

    The faulty unit's qubits are never touched; operations that must cross
    the excluded band are routed through its healthy cells.  The buffer
    unit (by default the one after the faulty unit) hosts the staged
    traffic and is recorded in the architecture metadata.
    """
    mode = Mode(mode)
    faults = frozenset(faults)
    if not faults:
        return syc_qft(m, mode)
    graph = build_architecture(ArchKind.SYCAMORE, m)
    partition = unit_partition(graph)
    k = m // 2
    hit_units = set()
    for f in faults:
        if not 0 <= f < graph.node_count:
            raise FaultError(f"faulty index {f} outside the graph")
        hit_units.add(next(u.id for u in partition.units if f in u.qubit_line))
    if len(hit_units) > 1:
        raise FaultError(f"faults span units {sorted(hit_units)}; only a single "
                         f"faulty unit is supported")
    faulty_unit = hit_units.pop()
    remaining = [u for u in range(k) if u != faulty_unit]
    if len(remaining) < 2:
        raise FaultError(
            f"excluding unit {faulty_unit} leaves {len(remaining)} unit(s); "
            f"at least 2 are needed")
    buffer_unit = faulty_unit + 1 if faulty_unit < k - 1 else faulty_unit - 1
    if buffer_side == "before" and faulty_unit > 0:
        buffer_unit = faulty_unit - 1

    L = 2 * m
    initial: dict[int, int] = {}
    for rank, unit in enumerate(remaining):
        line = unit_line(m, unit)
        logicals = list(range(rank * L, (rank + 1) * L))
        if mode is Mode.STRICT and rank % 2 == 1:
            logicals.reverse()
        for p, q in zip(line, logicals):
            initial[q] = p
    builder = ScheduleBuilder(graph, mode, initial_mapping=initial, faulty=faults)
    arch = builder.arch
    arch["buffer_unit"] = buffer_unit
    adj = {q: {nb for nb in graph.adjacency()[q] if nb not in faults}
           for q in range(graph.node_count) if q not in faults}

    def phys(slot: int) -> int:
        return remaining[slot]

    def gap_ie(lower: UnitState, upper: UnitState) -> None:
        """Cross-band interaction:每 pair routed through healthy cells."""
        lo_line = unit_line(m, phys(min(lower.slot, upper.slot)))
        hi_line = unit_line(m, phys(max(lower.slot, upper.slot)))
        lo_qubits = sorted(builder.occupant(p) for p in lo_line)
        hi_qubits = sorted(builder.occupant(p) for p in hi_line)
        ctrl, tgt = (lo_qubits, hi_qubits) if lo_qubits[0] < hi_qubits[0] \
            else (hi_qubits, lo_qubits)
        for x in ctrl:
            for y in tgt:
                serve_pair_routed(builder, adj, x, y, faults)
        for line in (lo_line, hi_line):
            _mirror_line(builder, line)

    def gap_unit_swap(a: UnitState, b: UnitState) -> None:
        line_a = unit_line(m, phys(min(a.slot, b.slot)))
        line_b = unit_line(m, phys(max(a.slot, b.slot)))
        for pa, pb in zip(line_a, line_b):
            exchange_contents(builder, adj, pa, pb, faults)

    class Ops:
        def ia(self, unit: UnitState) -> None:
            seg = unit_line(m, phys(unit.slot))
            emit_lnn(builder,
                     LnnOptions(n=L, segment=seg, reverse_orientation=unit.reversed_),
                     logicals=list(unit.logicals))
            unit.reversed_ = not unit.reversed_

        def ie(self, lower: UnitState, upper: UnitState) -> None:
            ua, ub = phys(min(lower.slot, upper.slot)), phys(max(lower.slot, upper.slot))
            if ub - ua == 1:
                syc_ie(builder, SycIeOptions(m=m, mode=mode,
                                             upper_slot=ua, lower_slot=ub))
            else:
                gap_ie(lower, upper)
            lower.reversed_ = not lower.reversed_
            upper.reversed_ = not upper.reversed_

        def unit_swap(self, a: UnitState, b: UnitState) -> None:
            ua, ub = phys(min(a.slot, b.slot)), phys(max(a.slot, b.slot))
            if ub - ua == 1:
                syc_unit_swap(builder, m, ua, ub)
            else:
                gap_unit_swap(a, b)

    def make_unit(rank: int) -> UnitState:
        return UnitState(rank=rank,
                         logicals=tuple(range(rank * L, (rank + 1) * L)),
                         slot=rank,
                         reversed_=(mode is Mode.STRICT and rank % 2 == 1))

    run_unit_chain(len(remaining), make_unit, Ops())
    return builder.build()


def _mirror_line(builder: ScheduleBuilder, line: tuple[int, ...]) -> None:
    """Reverse a unit's contents in place with alternating brick layers."""
    L = len(line)
    for i in range(L):
        for p in range(i % 2, L - 1, 2):
            builder.swap(line[p], line[p + 1])
