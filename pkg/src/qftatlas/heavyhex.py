"""Full QFT on the unrolled heavy-hex line with danglers.

Each column owns five logical qubits: four ride the path group, one rides
the dangler.  Columns follow the triangular chain schedule; a column
crossing is one fused phase:

- on-path stream: the two 4-blocks exchange through the 8-qubit path
  segment in a seven-layer order-preserving counterflow (16 swaps, one per
  cross pair), interacting as they pass; every streaming qubit also passes
  the left anchor, which serves the left dangler rider.
- off-path travel: the two dangler riders exchange through the segment in
  an 11-swap counterflow that leaves the path contents in place, serving
  rider/block and rider/rider pairs en route.

Interactions are harvested opportunistically: after every movement layer
the phase's edges are scanned and every linked, undone, dependency-ready
pair is placed.  In relaxed mode the fused phase covers all 25 cross pairs
of a column pair.  In strict mode the rider pairs are released later than
the stream geometry presents them, so each phase adds a short walk that
bubbles each rider through the block parked on its side, and a routing
cleanup backstops anything still missing.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .circuit import ScheduleBuilder, ScheduledCircuit
from .lnn import LnnOptions, emit_lnn, swap_window
from .qft_gates import Mode
from .topology import ArchKind, CouplingGraph, build_architecture, heavyhex_group


class HeavyHexScheduleError(ValueError):
    pass


@dataclass
class ColumnState:
    rank: int
    logicals: tuple[int, ...]   # five ascending logical indices
    slot: int


@dataclass(frozen=True)
class HhPlan:
    """Column-major arrangement: on-path units on top, off-path below."""

    columns: int
    on_units: tuple[int, ...]
    off_units: tuple[int, ...]


def hh_plan(n: int) -> HhPlan:
    m = n // 5
    return HhPlan(m, tuple(2 * g for g in range(m)), tuple(2 * g + 1 for g in range(m)))


class HeavyHexEmitter:
    """Movement and harvest machinery, shared with the fault-aware variant."""

    def __init__(self, builder: ScheduleBuilder, mode: Mode, n_logical: int):
        self.b = builder
        self.mode = mode
        self.n = n_logical
        # strict release bookkeeping, kept in sync through the builder hook:
        # the next undone target per control, and the number of controls
        # done per target (gated emission completes them in rank order)
        self.next_target = list(range(1, n_logical + 1))
        self.ctrl_prefix = [0] * n_logical
        builder.on_cphase = self._observe

    def _observe(self, i: int, j: int) -> None:
        if self.next_target[i] == j:
            self.next_target[i] = j + 1
        self.ctrl_prefix[j] += 1

    # -- dependency gating --------------------------------------------------

    def pair_ready(self, x: int, y: int) -> bool:
        if x > y:
            x, y = y, x
        if not self.b.h_done(x) or self.b.h_done(y):
            return False
        if self.mode is Mode.RELAXED:
            return True
        return (self.next_target[x] == y
                and self.ctrl_prefix[y] == x
                and self.ctrl_prefix[x] == x)

    def try_pair(self, x: int | None, y: int | None) -> bool:
        if x is None or y is None or x == y:
            return False
        if self.b.done(min(x, y), max(x, y)) or not self.pair_ready(x, y):
            return False
        self.b.cphase(x, y)
        return True

    def harvest(self, edges: list[tuple[int, int]]) -> None:
        progressed = True
        while progressed:
            progressed = False
            for p, q in edges:
                if self.try_pair(self.b.occupant(p), self.b.occupant(q)):
                    progressed = True

    # -- intra-column QFT ---------------------------------------------------

    def column_ia(self, col: ColumnState) -> None:
        path, dangler = heavyhex_group(self.n, col.slot)
        d = col.logicals[4]
        occupants = [self.b.occupant(p) for p in path] + [self.b.occupant(dangler)]
        if occupants != list(col.logicals):
            raise HeavyHexScheduleError(
                f"column {col.rank} not in entry arrangement: {occupants}")
        if self.mode is Mode.RELAXED:
            # the whole column is one ascending 5-path including the dangler
            emit_lnn(self.b, LnnOptions(n=5, segment=tuple(path) + (dangler,)),
                     logicals=list(col.logicals))
            return
        # strict: the block pattern alone, so the block exits descending and
        # the dangler keeps its rider; rider pairs are served by a walk
        emit_lnn(self.b, LnnOptions(n=4, segment=tuple(path)),
                 logicals=list(col.logicals[:4]))
        self.rider_walk(path, dangler)
        self.b.h(d)

    # -- rider service ------------------------------------------------------

    def rider_walk(self, path: list[int], dangler: int,
                   best_effort: bool = False) -> None:
        """Bubble the dangler rider through the 4-block and back.

        Adjacent pairs are tried at every step of the walk in both
        directions, which serves them in release order for both ascending
        and descending block arrangements.  With ``best_effort`` the walk
        tolerates pairs the dependency order has not released yet.
        """
        rider = self.b.occupant(dangler)
        block = [self.b.occupant(p) for p in path]
        if rider is None:
            return
        pending = {q for q in block if q is not None
                   and not self.b.done(min(q, rider), max(q, rider))
                   and not (self.b.h_done(max(q, rider)))}
        if not pending:
            return

        def scan(pos: int) -> None:
            for nb in (pos - 1, pos + 1):
                if 0 <= nb < 4:
                    if self.try_pair(self.b.occupant(path[nb]), rider):
                        pending.discard(self.b.occupant(path[nb]))
            if pos == 3 and self.try_pair(self.b.occupant(dangler), rider):
                pending.discard(self.b.occupant(dangler))

        self.try_pair(self.b.occupant(path[3]), rider)
        pending.discard(self.b.occupant(path[3]))
        self.b.swap(dangler, path[3])
        scan(3)
        for k in (2, 1):
            self.b.swap(path[k], path[k + 1])
            scan(k)
        for k in (1, 2):
            self.b.swap(path[k], path[k + 1])
            scan(k + 1)
        self.b.swap(dangler, path[3])
        for q in list(pending):
            if self.b.done(min(q, rider), max(q, rider)):
                pending.discard(q)
        if pending and not best_effort:
            raise HeavyHexScheduleError(
                f"rider walk left pairs unserved: {sorted(pending)} x {rider}")

    # -- fused column crossing ----------------------------------------------

    def crossing(self, left_slot: int, right_slot: int) -> None:
        lp, ld = heavyhex_group(self.n, left_slot)
        rp, rd = heavyhex_group(self.n, right_slot)
        seg = lp + rp
        edges = [(seg[i], seg[i + 1]) for i in range(7)]
        edges += [(lp[3], ld), (rp[3], rd)]

        self.harvest(edges)
        self._stream(seg, edges)
        if self.mode is Mode.STRICT:
            self.rider_walk(lp, ld)
            self.rider_walk(rp, rd)
            self.harvest(edges)
        self._travel(lp, ld, rp, rd, edges)

    def _stream(self, seg: list[int], edges: list[tuple[int, int]]) -> None:
        """Order-preserving exchange of the two 4-blocks on the 8-path."""
        diamond = [
            [3],
            [2, 4],
            [1, 3, 5],
            [0, 2, 4, 6],
            [1, 3, 5],
            [2, 4],
            [3],
        ]
        for layer in diamond:
            for p in layer:
                self.b.swap(seg[p], seg[p + 1])
            self.harvest(edges)

    def _travel(self, lp, ld, rp, rd, edges) -> None:
        """Counterflow exchange of the two dangler riders (11 swaps)."""
        route = [ld, lp[3], rp[0], rp[1], rp[2], rp[3], rd]
        steps = [
            [(0, 1), (5, 6)],
            [(1, 2), (4, 5)],
            [(2, 3)],
            [(3, 4)],          # the riders cross here
            [(2, 3), (4, 5)],
            [(1, 2), (5, 6)],
            [(0, 1)],
        ]
        for layer in steps:
            for i, j in layer:
                self.b.swap(route[i], route[j])
            self.harvest(edges)

    # -- last-resort completion ----------------------------------------------

    def cleanup(self, graph: CouplingGraph, logicals: list[int]) -> int:
        """Route any remaining pairs in reference order; returns the count."""
        adj = graph.adjacency()
        pending = []
        for ai, x in enumerate(logicals):
            for y in logicals[ai + 1:]:
                if not self.b.done(x, y):
                    pending.append((x, y))
        for x, y in pending:
            self._route_pair(x, y, adj)
        return len(pending)

    def _route_pair(self, x: int, y: int, adj: dict[int, set[int]]) -> None:
        src, dst = self.b.position(x), self.b.position(y)
        prev: dict[int, int | None] = {src: None}
        queue = deque([src])
        while queue:
            p = queue.popleft()
            if p == dst:
                break
            for q in sorted(adj[p]):
                if q not in prev and q not in self.b.faulty:
                    prev[q] = p
                    queue.append(q)
        path = [dst]
        while path[-1] != src:
            path.append(prev[path[-1]])  # type: ignore[arg-type]
        path.reverse()
        for i in range(len(path) - 2):
            self.b.swap(path[i], path[i + 1])
        if not self.try_pair(x, y):
            raise HeavyHexScheduleError(f"router could not place pair ({x}, {y})")


def run_column_chain(emitter: HeavyHexEmitter, columns: list[ColumnState]) -> None:
    """Triangular chain schedule over whole columns."""
    m = len(columns)
    at_slot = {c.slot: c for c in columns}
    emitter.column_ia(at_slot[min(at_slot)])
    if m == 1:
        return
    slots = sorted(at_slot)
    last_round = 2 * m - 3
    for r in range(1, last_round + 1):
        window = swap_window(r, m)
        for s in window:
            a, b = at_slot[slots[s]], at_slot[slots[s + 1]]
            emitter.crossing(a.slot, b.slot)
            a.slot, b.slot = b.slot, a.slot
            at_slot[slots[s]], at_slot[slots[s + 1]] = b, a
        # rounds advance in lockstep; a column's intra work may still
        # overlap the next round since it is emitted after the fence
        if r != last_round:
            emitter.b.barrier()
        if window and window[0] == 0:
            top = at_slot[slots[0]]
            if 0 != top.rank != m - 1:
                emitter.column_ia(top)
    emitter.column_ia(next(c for c in columns if c.rank == m - 1))


def hh_qft(n: int, mode: Mode | str = Mode.RELAXED,
           graph: CouplingGraph | None = None) -> ScheduledCircuit:
    """QFT over all n heavy-hex qubits via the column chain."""
    if n < 10 or n % 5 != 0:
        raise HeavyHexScheduleError(
            f"heavy-hex size must be a multiple of 5 and >= 10, got {n}")
    mode = Mode(mode)
    if graph is None:
        graph = build_architecture(ArchKind.HEAVYHEX, n)
    m = n // 5
    builder = ScheduleBuilder(graph, mode)
    emitter = HeavyHexEmitter(builder, mode, n)

    columns = [ColumnState(rank=g, logicals=tuple(range(5 * g, 5 * g + 5)), slot=g)
               for g in range(m)]
    run_column_chain(emitter, columns)

    routed = emitter.cleanup(graph, list(range(n)))
    if mode is Mode.RELAXED and routed:
        raise HeavyHexScheduleError(
            f"relaxed schedule left {routed} pairs to the fallback router")
    return builder.build()
