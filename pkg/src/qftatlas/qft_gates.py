"""Logical QFT gate set and the strict/relaxed dependency partial orders.

The logical circuit on n qubits has one H per qubit and one CPHASE per
ordered pair (i, j), i < j.  Gate G(i, j) is preceded by H(i) and followed
by H(j).  In strict mode the CPHASE gates additionally respect:

- same control: G(i, j) before G(i, k) for j < k,
- same target:  G(i, j) before G(i', j) for i < i',
- control-target chaining: G(i, j) before G(j, k).

Relaxed mode drops all CPHASE-CPHASE ordering (the gates are diagonal and
mutually commute) but keeps the H-relative constraints.

Gates are encoded compactly: H(i) as the pair (i, i), CPHASE(i, j) as
(i, j) with i < j.  The generator set is O(n^2): the closures of the
same-control and same-target chains plus the seeds G(j-1, j) < G(j, j+1)
generate every strict constraint transitively.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

Gate = tuple[int, int]


class Mode(str, Enum):
    STRICT = "strict"
    RELAXED = "relaxed"


def is_h(gate: Gate) -> bool:
    return gate[0] == gate[1]


def logical_gates(n: int) -> list[Gate]:
    """All QFT gates in reference order: for each i, H(i) then G(i, j), j > i."""
    if n < 1:
        raise ValueError(f"qubit count must be >= 1, got {n}")
    gates: list[Gate] = []
    for i in range(n):
        gates.append((i, i))
        for j in range(i + 1, n):
            gates.append((i, j))
    return gates


@dataclass(frozen=True)
class DependencyOrder:
    """Generator pairs (a before b) for one dependency mode."""

    n: int
    mode: Mode
    generators: tuple[tuple[Gate, Gate], ...]


def dependency_generators(n: int, mode: Mode | str) -> DependencyOrder:
    """Build the O(n^2) generator set for the requested mode."""
    if n < 1:
        raise ValueError(f"qubit count must be >= 1, got {n}")
    mode = Mode(mode)
    gens: list[tuple[Gate, Gate]] = []
    for i in range(n):
        for j in range(i + 1, n):
            gens.append(((i, i), (i, j)))   # H(i) < G(i,j)
            gens.append(((i, j), (j, j)))   # G(i,j) < H(j)
    if mode is Mode.STRICT:
        for i in range(n):
            for j in range(i + 1, n - 1):
                gens.append(((i, j), (i, j + 1)))       # same control
        for j in range(n):
            for i in range(j - 2, -1, -1):
                gens.append(((i, j), (i + 1, j)))       # same target
        for j in range(1, n - 1):
            gens.append(((j - 1, j), (j, j + 1)))       # control-target seed
    return DependencyOrder(n, mode, tuple(gens))


def strict_closure_bruteforce(n: int) -> set[tuple[Gate, Gate]]:
    """All strict constraints, enumerated directly (test oracle for small n)."""
    pairs: set[tuple[Gate, Gate]] = set()
    for i in range(n):
        for j in range(i + 1, n):
            pairs.add(((i, i), (i, j)))
            pairs.add(((i, j), (j, j)))
            for k in range(j + 1, n):
                pairs.add(((i, j), (i, k)))     # type I, shared control
                pairs.add(((i, j), (j, k)))     # type II
            for i2 in range(i + 1, j):
                pairs.add(((i, j), (i2, j)))    # type I, shared target
    return pairs


def transitive_closure(gens: Iterable[tuple[Gate, Gate]]) -> set[tuple[Gate, Gate]]:
    succ: dict[Gate, set[Gate]] = {}
    for a, b in gens:
        succ.setdefault(a, set()).add(b)
    closure: set[tuple[Gate, Gate]] = set()
    for start in list(succ):
        seen: set[Gate] = set()
        stack = list(succ[start])
        while stack:
            g = stack.pop()
            if g in seen:
                continue
            seen.add(g)
            stack.extend(succ.get(g, ()))
        closure.update((start, g) for g in seen)
    return closure


@dataclass(frozen=True)
class OrderViolation:
    before: Gate
    after: Gate
    layer_before: int
    layer_after: int


def check_order(order: DependencyOrder,
                gate_layer: dict[Gate, int]) -> tuple[list[OrderViolation], list[Gate]]:
    """Check a gate -> layer assignment against the generator set.

    Returns (violations, missing).  A generator (a, b) is violated when
    layer(a) >= layer(b); gates absent from the assignment are reported as
    missing rather than as order violations.
    """
    violations: list[OrderViolation] = []
    missing: list[Gate] = []
    expected = set()
    for a, b in order.generators:
        expected.add(a)
        expected.add(b)
    for g in sorted(expected):
        if g not in gate_layer:
            missing.append(g)
    for a, b in order.generators:
        la, lb = gate_layer.get(a), gate_layer.get(b)
        if la is None or lb is None:
            continue
        if la >= lb:
            violations.append(OrderViolation(a, b, la, lb))
    return violations, missing
