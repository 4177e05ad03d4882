"""Unit-level driver: the qubit-line pattern lifted to whole units.

Units sit on a chain of slots and follow the same triangular trajectories
as qubits in the path pattern: intra-unit QFT plays the role of H (done at
the unit's pause at slot 0), inter-unit interaction plays the role of
CPHASE (done when two units meet), and the unit swap plays the role of
SWAP.  Pair (u, v) of unit ranks meets in round u + v, which linearizes
every unit-level ordering requirement: IA(u) before IE(u, v) before IA(v)
for u < v, and in strict mode the induced cross-unit CPHASE orders as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Protocol

from .lnn import swap_window


@dataclass
class UnitState:
    """One unit's logical block riding the slot chain."""

    rank: int                 # logical order of the block
    logicals: tuple[int, ...]  # ascending logical indices
    slot: int
    reversed_: bool = False   # True when the block lies descending on its line


class UnitOps(Protocol):
    def ia(self, unit: UnitState) -> None: ...
    def ie(self, lower: UnitState, upper: UnitState) -> None: ...
    def unit_swap(self, a: UnitState, b: UnitState) -> None: ...


def run_unit_chain(k: int, make_unit: Callable[[int], UnitState], ops: UnitOps) -> None:
    """Run the triangular unit schedule over k units.

    ``make_unit(rank)`` builds the initial state for the unit starting at
    slot ``rank``.  ``ops.ie`` receives the logically-lower unit first and
    is responsible for updating orientation flags; ``ops.unit_swap`` must
    exchange the two units' slots (the driver updates the ``slot`` fields).
    """
    units = [make_unit(r) for r in range(k)]
    at_slot = {u.slot: u for u in units}

    ops.ia(at_slot[0])
    if k == 1:
        return
    last_round = 2 * k - 3
    for r in range(1, last_round + 1):
        window = swap_window(r, k)
        for s in window:
            a, b = at_slot[s], at_slot[s + 1]
            lower, upper = (a, b) if a.rank < b.rank else (b, a)
            ops.ie(lower, upper)
        if r == last_round:
            break  # the final round's unit swaps feed no later interaction
        for s in window:
            a, b = at_slot[s], at_slot[s + 1]
            ops.unit_swap(a, b)
            a.slot, b.slot = b.slot, a.slot
            at_slot[s], at_slot[s + 1] = b, a
        if window and window[0] == 0:
            top = at_slot[0]
            if 0 != top.rank != k - 1:
                ops.ia(top)
    ops.ia(next(u for u in units if u.rank == k - 1))
