"""Independent validation of scheduled circuits.

The verifier replays a circuit layer by layer with its own mapping state
(no scheduler internals are reused) and checks five things: every two-qubit
op sits on a coupling-graph edge, layers are disjoint, H/CPHASE physical
args match the replayed mapping, exactly one H per expected logical qubit
and one CPHASE per expected pair, and the layer assignment linearizes the
requested dependency order.  All problems become report findings; only
malformed documents raise.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path

from .circuit import OP_CP, OP_H, OP_SWAP, Metrics, ScheduledCircuit, import_json, metrics
from .qft_gates import Mode, dependency_generators
from .topology import CouplingGraph

FINDING_CAP = 100


@dataclass
class FindingList:
    """Bounded list of findings with an exact total."""

    items: list[str] = field(default_factory=list)
    total: int = 0

    def add(self, msg: str) -> None:
        self.total += 1
        if len(self.items) < FINDING_CAP:
            self.items.append(msg)

    def __bool__(self) -> bool:
        return self.total > 0

    def to_json(self) -> dict:
        return {"total": self.total, "findings": self.items}


@dataclass
class VerificationReport:
    ok: bool
    connectivity: FindingList
    overlaps: FindingList
    mapping: FindingList
    dependencies: FindingList
    completeness: FindingList
    metrics: Metrics | None
    elapsed_s: float

    def to_json(self) -> dict:
        doc = {
            "ok": self.ok,
            "connectivity_violations": self.connectivity.to_json(),
            "overlap_violations": self.overlaps.to_json(),
            "mapping_violations": self.mapping.to_json(),
            "dependency_violations": self.dependencies.to_json(),
            "completeness_violations": self.completeness.to_json(),
            "elapsed_s": round(self.elapsed_s, 3),
        }
        if self.metrics is not None:
            doc["metrics"] = {
                "depth": self.metrics.depth,
                "two_qubit_depth": self.metrics.two_qubit_depth,
                "swap_count": self.metrics.swap_count,
                "cphase_count": self.metrics.cphase_count,
                "h_count": self.metrics.h_count,
            }
        return doc


def verify(circuit: ScheduledCircuit, graph: CouplingGraph,
           mode: Mode | str | None = None,
           expected_logical: set[int] | None = None) -> VerificationReport:
    """Replay and check ``circuit`` against ``graph`` and a dependency mode."""
    t0 = time.perf_counter()
    mode = Mode(mode) if mode is not None else circuit.mode
    faulty = circuit.faulty
    if expected_logical is None:
        expected_logical = set(circuit.initial_mapping)

    connectivity = FindingList()
    overlaps = FindingList()
    mapping_v = FindingList()
    dependencies = FindingList()
    completeness = FindingList()

    adj = graph.adjacency()
    phys_of = dict(circuit.initial_mapping)
    log_at = {p: l for l, p in phys_of.items()}

    h_layer: dict[int, int] = {}
    pair_layer: dict[tuple[int, int], int] = {}
    h_dupes: dict[int, int] = {}
    pair_dupes: dict[tuple[int, int], int] = {}

    for li, layer in enumerate(circuit.layers):
        used: set[int] = set()
        swaps: list[tuple[int, int]] = []
        for op in layer:
            for p in op.p:
                if p in used:
                    overlaps.add(f"layer {li}: physical qubit {p} used twice")
                used.add(p)
                if not 0 <= p < graph.node_count:
                    connectivity.add(f"layer {li}: physical qubit {p} outside graph")
                elif p in faulty:
                    connectivity.add(f"layer {li}: op touches faulty qubit {p}")
            if len(op.p) == 2:
                a, b = op.p
                if not (0 <= a < graph.node_count and b in adj.get(a, ())):
                    connectivity.add(f"layer {li}: {op.g} on non-edge ({a}, {b})")
            if op.g == OP_H:
                (l,) = op.q
                if phys_of.get(l) != op.p[0]:
                    mapping_v.add(
                        f"layer {li}: h({l}) on {op.p[0]}, mapping says {phys_of.get(l)}")
                if l in h_layer:
                    h_dupes[l] = h_dupes.get(l, 1) + 1
                else:
                    h_layer[l] = li
            elif op.g == OP_CP:
                i, j = op.q
                want = (phys_of.get(i), phys_of.get(j))
                if want != op.p:
                    mapping_v.add(
                        f"layer {li}: cp({i},{j}) on {op.p}, mapping says {want}")
                key = (i, j) if i < j else (j, i)
                if key in pair_layer:
                    pair_dupes[key] = pair_dupes.get(key, 1) + 1
                else:
                    pair_layer[key] = li
            elif op.g == OP_SWAP:
                swaps.append(op.p)  # mapping updates after the whole layer
            else:
                connectivity.add(f"layer {li}: unknown op kind {op.g!r}")
        for a, b in swaps:
            la, lb = log_at.pop(a, None), log_at.pop(b, None)
            if lb is not None:
                log_at[a] = lb
                phys_of[lb] = a
            if la is not None:
                log_at[b] = la
                phys_of[la] = b

    # completeness: one H per expected qubit, one CPHASE per expected pair
    expected = sorted(expected_logical)
    for l in expected:
        if l not in h_layer:
            completeness.add(f"missing h({l})")
    for l, count in sorted(h_dupes.items()):
        completeness.add(f"h({l}) executed {count} times")
    for ai, i in enumerate(expected):
        for j in expected[ai + 1:]:
            if (i, j) not in pair_layer:
                completeness.add(f"missing cphase({i},{j})")
    for (i, j), count in sorted(pair_dupes.items()):
        completeness.add(f"cphase({i},{j}) executed {count} times")
    for l in sorted(h_layer):
        if l not in expected_logical:
            completeness.add(f"unexpected h({l})")
    for (i, j) in sorted(pair_layer):
        if i not in expected_logical or j not in expected_logical:
            completeness.add(f"unexpected cphase({i},{j})")

    # dependency order over the expected logical set (relabel to 0..k-1)
    rank = {l: r for r, l in enumerate(expected)}
    gate_layer: dict[tuple[int, int], int] = {}
    for l, li in h_layer.items():
        if l in rank:
            gate_layer[(rank[l], rank[l])] = li
    for (i, j), li in pair_layer.items():
        if i in rank and j in rank:
            gate_layer[(rank[i], rank[j])] = li
    if expected:
        order = dependency_generators(len(expected), mode)
        for a, b in order.generators:
            la, lb = gate_layer.get(a), gate_layer.get(b)
            if la is None or lb is None:
                continue  # reported as incompleteness above
            if la >= lb:
                ga = expected[a[0]] if a[0] == a[1] else (expected[a[0]], expected[a[1]])
                gb = expected[b[0]] if b[0] == b[1] else (expected[b[0]], expected[b[1]])
                dependencies.add(
                    f"{_gate_name(a, ga)} at layer {la} not before "
                    f"{_gate_name(b, gb)} at layer {lb}")

    ok = not (connectivity or overlaps or mapping_v or dependencies or completeness)
    mets = metrics(circuit)
    return VerificationReport(ok, connectivity, overlaps, mapping_v, dependencies,
                              completeness, mets, time.perf_counter() - t0)


def _gate_name(ranked: tuple[int, int], original) -> str:
    if ranked[0] == ranked[1]:
        return f"h({original})"
    return f"cp{original}"


def verify_file(path: str | Path, mode: Mode | str | None = None) -> VerificationReport:
    """Import a circuit document and verify it against a freshly built graph.

    IO and schema problems raise (OSError / SchemaError); verification
    problems come back as report findings.
    """
    data = Path(path).read_bytes()
    circuit = import_json(data)
    graph = circuit.graph()
    return verify(circuit, graph, mode=mode)
