"""Scheduled-circuit IR: placed operations, layers, mapping, metrics, I/O.

A circuit is an ordered list of layers over a coupling graph.  Each layer
holds operations on pairwise-disjoint physical qubits.  H and CPHASE are
recorded with their logical indices (physical positions follow from replay);
SWAP is recorded with physical indices and is the only mapping-changing
operation.

:class:`ScheduleBuilder` is how generators emit circuits.  It places each
operation at the earliest layer compatible with (a) the per-qubit busy
frontier and (b) the dependency frontier of the requested mode, so emitted
streams pack into mixed layers without violating gate order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, NamedTuple

from .topology import ArchKind, CouplingGraph, build_architecture
from .qft_gates import Mode

OP_H = "h"
OP_CP = "cp"
OP_SWAP = "swap"


class ScheduleError(ValueError):
    """A generator or append asked for an invalid placement."""


class SchemaError(ValueError):
    """A circuit document violates the JSON schema."""


class PlacedOp(NamedTuple):
    """One gate placed on physical qubits.

    ``q`` holds logical indices (one for H, ordered pair i < j for CPHASE,
    empty for SWAP); ``p`` holds the physical indices occupied at execution
    time.
    """

    g: str
    q: tuple[int, ...]
    p: tuple[int, ...]

    @property
    def angle_exponent(self) -> int:
        if self.g != OP_CP:
            raise ValueError("angle_exponent is defined for CPHASE only")
        return self.q[1] - self.q[0]


Layer = list[PlacedOp]


@dataclass(frozen=True)
class Metrics:
    depth: int
    two_qubit_depth: int
    swap_count: int
    cphase_count: int
    h_count: int
    final_mapping: dict[int, int]


@dataclass
class ScheduledCircuit:
    """Layers of placed operations plus the evolving logical/physical maps."""

    arch: dict
    mode: Mode
    initial_mapping: dict[int, int]
    layers: list[Layer] = field(default_factory=list)

    def graph(self) -> CouplingGraph:
        return build_architecture(ArchKind(self.arch["kind"]), self.arch["size"])

    @property
    def faulty(self) -> frozenset[int]:
        return frozenset(self.arch.get("faulty", ()))

    def n_logical(self) -> int:
        return len(self.initial_mapping)

    def replay_mapping(self, upto: int | None = None) -> dict[int, int]:
        """Logical -> physical mapping after the first ``upto`` layers."""
        phys_of = dict(self.initial_mapping)
        log_at = {p: l for l, p in phys_of.items()}
        end = len(self.layers) if upto is None else upto
        for layer in self.layers[:end]:
            for op in layer:
                if op.g == OP_SWAP:
                    a, b = op.p
                    la, lb = log_at.pop(a, None), log_at.pop(b, None)
                    if lb is not None:
                        log_at[a] = lb
                        phys_of[lb] = a
                    if la is not None:
                        log_at[b] = la
                        phys_of[la] = b
        return phys_of

    def final_mapping(self) -> dict[int, int]:
        return self.replay_mapping()


def metrics(circuit: ScheduledCircuit) -> Metrics:
    """Exact counts over layers.

    ``depth`` counts every layer; ``two_qubit_depth`` counts only layers
    containing at least one two-qubit operation, which is the accounting
    used by the published reference results (boundary layers holding a lone
    H do not add to it).
    """
    swaps = cphases = hs = twoq = 0
    for layer in circuit.layers:
        has2 = False
        for op in layer:
            if op.g == OP_SWAP:
                swaps += 1
                has2 = True
            elif op.g == OP_CP:
                cphases += 1
                has2 = True
            else:
                hs += 1
        if has2:
            twoq += 1
    return Metrics(
        depth=len(circuit.layers),
        two_qubit_depth=twoq,
        swap_count=swaps,
        cphase_count=cphases,
        h_count=hs,
        final_mapping=circuit.final_mapping(),
    )


def append_layer(circuit: ScheduledCircuit, layer: Iterable[PlacedOp]) -> ScheduledCircuit:
    """Return ``circuit`` extended by one validated layer.

    Rejects overlapping physical args, non-edge two-qubit placements and
    H/CPHASE ops whose physical args disagree with the current mapping.
    """
    layer = list(layer)
    graph = circuit.graph()
    current = circuit.replay_mapping()
    used: set[int] = set()
    for op in layer:
        for p in op.p:
            if p in used:
                raise ScheduleError(f"layer uses physical qubit {p} twice")
            if not 0 <= p < graph.node_count:
                raise ScheduleError(f"physical qubit {p} outside the graph")
            used.add(p)
        if len(op.p) == 2 and not graph.has_edge(*op.p):
            raise ScheduleError(f"{op.g} on non-edge {op.p}")
        if op.g in (OP_H, OP_CP):
            want = tuple(current[l] for l in op.q)
            if want != op.p:
                raise ScheduleError(
                    f"{op.g}{op.q} placed on {op.p}, but mapping puts it on {want}")
    out = replace(circuit, layers=circuit.layers + [layer])
    return out


class ScheduleBuilder:
    """Earliest-feasible placement of H/CPHASE/SWAP streams.

    Operations are emitted in a valid topological order by the generators;
    the builder assigns each one the smallest layer index at or above both
    the busy frontier of its physical qubits and the dependency frontier of
    its logical arguments, then updates the live mapping for swaps.
    """

    def __init__(self, graph: CouplingGraph, mode: Mode | str,
                 initial_mapping: dict[int, int] | None = None,
                 faulty: Iterable[int] = (),
                 arch: dict | None = None):
        self.graph = graph
        self.mode = Mode(mode)
        self.faulty = frozenset(faulty)
        if initial_mapping is None:
            initial_mapping = {q: q for q in range(graph.node_count)
                               if q not in self.faulty}
        self.initial_mapping = dict(initial_mapping)
        self.arch = dict(arch) if arch is not None else graph.descriptor(tuple(self.faulty))
        self.layers: list[Layer] = []
        self.phys_of = dict(self.initial_mapping)
        self.log_at = {p: l for l, p in self.phys_of.items()}
        self._edges = graph.adjacency()
        # busy[p] = last layer index (1-based) occupied by physical qubit p
        self._busy: dict[int, int] = {}
        # dependency frontiers, 1-based layer indices
        self._h_layer: dict[int, int] = {}
        self._last_ctrl: dict[int, int] = {}
        self._last_tgt: dict[int, int] = {}
        self._barrier = 0
        self.placed_pairs: set[tuple[int, int]] = set()
        # observers get (i, j) after each cphase placement
        self.on_cphase = None

    # -- queries ----------------------------------------------------------

    def position(self, logical: int) -> int:
        return self.phys_of[logical]

    def occupant(self, phys: int) -> int | None:
        return self.log_at.get(phys)

    def depth(self) -> int:
        return len(self.layers)

    # -- placement --------------------------------------------------------

    def _place(self, op: PlacedOp, at: int) -> int:
        """Append op at 1-based layer ``at``, growing the layer list."""
        while len(self.layers) < at:
            self.layers.append([])
        self.layers[at - 1].append(op)
        for p in op.p:
            self._busy[p] = max(self._busy.get(p, 0), at)
        return at

    def _check_phys(self, phys: Iterable[int]) -> None:
        for p in phys:
            if p in self.faulty:
                raise ScheduleError(f"physical qubit {p} is marked faulty")
            if not 0 <= p < self.graph.node_count:
                raise ScheduleError(f"physical qubit {p} outside the graph")

    def swap(self, p1: int, p2: int) -> int:
        """Swap the contents of two linked physical qubits."""
        self._check_phys((p1, p2))
        if p2 not in self._edges[p1]:
            raise ScheduleError(f"swap on non-edge ({p1}, {p2})")
        at = max(self._busy.get(p1, 0), self._busy.get(p2, 0), self._barrier) + 1
        self._place(PlacedOp(OP_SWAP, (), (p1, p2)), at)
        l1, l2 = self.log_at.pop(p1, None), self.log_at.pop(p2, None)
        if l2 is not None:
            self.log_at[p1] = l2
            self.phys_of[l2] = p1
        if l1 is not None:
            self.log_at[p2] = l1
            self.phys_of[l1] = p2
        return at

    def cphase(self, i: int, j: int) -> int:
        """CPHASE between logical qubits i and j at their current positions."""
        if i == j:
            raise ScheduleError("cphase needs two distinct logical qubits")
        if i > j:
            i, j = j, i
        p1, p2 = self.phys_of[i], self.phys_of[j]
        self._check_phys((p1, p2))
        if p2 not in self._edges[p1]:
            raise ScheduleError(f"cphase({i},{j}) on non-edge ({p1}, {p2})")
        if j in self._h_layer:
            raise ScheduleError(f"cphase({i},{j}) emitted after h({j})")
        if i not in self._h_layer:
            raise ScheduleError(f"cphase({i},{j}) emitted before h({i})")
        dep = self._h_layer[i]
        if self.mode is Mode.STRICT:
            dep = max(dep,
                      self._last_ctrl.get(i, 0),
                      self._last_tgt.get(i, 0),
                      self._last_tgt.get(j, 0))
        at = max(self._busy.get(p1, 0), self._busy.get(p2, 0), dep, self._barrier) + 1
        self._place(PlacedOp(OP_CP, (i, j), (p1, p2)), at)
        self._last_ctrl[i] = max(self._last_ctrl.get(i, 0), at)
        self._last_tgt[j] = max(self._last_tgt.get(j, 0), at)
        self.placed_pairs.add((i, j))
        if self.on_cphase is not None:
            self.on_cphase(i, j)
        return at

    def h(self, i: int) -> int:
        """Hadamard on logical qubit i, after every CPHASE targeting i."""
        if i in self._h_layer:
            raise ScheduleError(f"h({i}) emitted twice")
        if self._last_ctrl.get(i):
            raise ScheduleError(f"h({i}) emitted after a cphase it must precede")
        p = self.phys_of[i]
        self._check_phys((p,))
        at = max(self._busy.get(p, 0), self._last_tgt.get(i, 0), self._barrier) + 1
        self._place(PlacedOp(OP_H, (i,), (p,)), at)
        self._h_layer[i] = at
        return at

    def barrier(self) -> None:
        """Force every later op strictly after all layers emitted so far."""
        self._barrier = len(self.layers)

    def done(self, i: int, j: int) -> bool:
        """Whether cphase(i, j) (or h(i) for i == j) has been emitted."""
        if i == j:
            return i in self._h_layer
        if i > j:
            i, j = j, i
        return (i, j) in self.placed_pairs

    def h_done(self, i: int) -> bool:
        return i in self._h_layer

    def build(self) -> ScheduledCircuit:
        return ScheduledCircuit(self.arch, self.mode, dict(self.initial_mapping),
                                self.layers)


# -- serialization ---------------------------------------------------------


def _op_to_json(op: PlacedOp) -> dict:
    if op.g == OP_H:
        return {"g": "h", "q": [op.q[0]]}
    if op.g == OP_CP:
        return {"g": "cp", "q": [op.q[0], op.q[1]], "k": op.q[1] - op.q[0]}
    return {"g": "swap", "p": [op.p[0], op.p[1]]}


def export_json(circuit: ScheduledCircuit) -> bytes:
    """Serialize deterministically: fixed key order, no whitespace variance."""
    doc = {
        "version": 1,
        "architecture": {
            "kind": circuit.arch["kind"],
            "size": circuit.arch["size"],
            "faulty": sorted(circuit.arch.get("faulty", ())),
        },
        "mode": circuit.mode.value,
        "initial_mapping": [circuit.initial_mapping[l]
                            for l in sorted(circuit.initial_mapping)],
        "layers": [[_op_to_json(op) for op in layer] for layer in circuit.layers],
    }
    return json.dumps(doc, separators=(",", ":")).encode()


def _require(cond: bool, where: str, msg: str) -> None:
    if not cond:
        raise SchemaError(f"{where}: {msg}")


def import_json(data: bytes | str) -> ScheduledCircuit:
    """Parse and validate a circuit document; inverse of :func:`export_json`."""
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    _require(isinstance(doc, dict), "document", "must be an object")
    for key in ("version", "architecture", "mode", "initial_mapping", "layers"):
        _require(key in doc, "document", f"missing field {key!r}")
    _require(doc["version"] == 1, "version", f"unsupported version {doc['version']!r}")
    arch = doc["architecture"]
    _require(isinstance(arch, dict), "architecture", "must be an object")
    for key in ("kind", "size"):
        _require(key in arch, "architecture", f"missing field {key!r}")
    try:
        kind = ArchKind(arch["kind"])
    except ValueError as exc:
        raise SchemaError(f"architecture.kind: unknown kind {arch['kind']!r}") from exc
    _require(isinstance(arch["size"], int), "architecture.size", "must be an integer")
    faulty = arch.get("faulty", [])
    _require(isinstance(faulty, list) and all(isinstance(x, int) for x in faulty),
             "architecture.faulty", "must be a list of integers")
    try:
        mode = Mode(doc["mode"])
    except ValueError as exc:
        raise SchemaError(f"mode: unknown mode {doc['mode']!r}") from exc
    imap = doc["initial_mapping"]
    _require(isinstance(imap, list) and all(isinstance(x, int) for x in imap),
             "initial_mapping", "must be a list of integers")
    _require(len(set(imap)) == len(imap), "initial_mapping", "must be injective")
    _require(isinstance(doc["layers"], list), "layers", "must be a list")

    graph = build_architecture(kind, arch["size"])
    initial = {l: p for l, p in enumerate(imap)}
    phys_of = dict(initial)
    log_at = {p: l for l, p in phys_of.items()}
    layers: list[Layer] = []
    for li, raw_layer in enumerate(doc["layers"]):
        where = f"layers[{li}]"
        _require(isinstance(raw_layer, list), where, "must be a list")
        layer: Layer = []
        for oi, raw in enumerate(raw_layer):
            w = f"{where}[{oi}]"
            _require(isinstance(raw, dict), w, "must be an object")
            _require("g" in raw, w, "missing field 'g'")
            g = raw["g"]
            if g == "h":
                _require(isinstance(raw.get("q"), list) and len(raw["q"]) == 1,
                         w, "h needs q = [logical]")
                (l,) = raw["q"]
                _require(l in phys_of, w, f"unknown logical qubit {l}")
                layer.append(PlacedOp(OP_H, (l,), (phys_of[l],)))
            elif g == "cp":
                _require(isinstance(raw.get("q"), list) and len(raw["q"]) == 2,
                         w, "cp needs q = [i, j]")
                i, j = raw["q"]
                _require(i < j, w, "cp logical pair must be ordered i < j")
                _require(i in phys_of and j in phys_of, w, "unknown logical qubit")
                if "k" in raw:
                    _require(raw["k"] == j - i, w, f"k must equal j - i = {j - i}")
                layer.append(PlacedOp(OP_CP, (i, j), (phys_of[i], phys_of[j])))
            elif g == "swap":
                _require(isinstance(raw.get("p"), list) and len(raw["p"]) == 2,
                         w, "swap needs p = [p1, p2]")
                p1, p2 = raw["p"]
                _require(isinstance(p1, int) and isinstance(p2, int),
                         w, "swap indices must be integers")
                layer.append(PlacedOp(OP_SWAP, (), (p1, p2)))
                l1, l2 = log_at.pop(p1, None), log_at.pop(p2, None)
                if l2 is not None:
                    log_at[p1] = l2
                    phys_of[l2] = p1
                if l1 is not None:
                    log_at[p2] = l1
                    phys_of[l1] = p2
            else:
                raise SchemaError(f"{w}: unknown gate {g!r}")
        layers.append(layer)
    circuit = ScheduledCircuit(
        {"kind": kind.value, "size": arch["size"], "faulty": sorted(faulty)},
        mode, initial, layers)
    _ = graph  # built above to surface parameter errors early
    return circuit


def export_qasm(circuit: ScheduledCircuit) -> str:
    """OpenQASM 2.0 text; layers are separated by barriers."""
    graph = circuit.graph()
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{graph.node_count}];",
    ]
    for layer in circuit.layers:
        for op in layer:
            if op.g == OP_H:
                lines.append(f"h q[{op.p[0]}];")
            elif op.g == OP_CP:
                k = op.q[1] - op.q[0]
                angle = "pi" if k == 0 else f"pi/{2 ** k}"
                lines.append(f"cp({angle}) q[{op.p[0]}],q[{op.p[1]}];")
            else:
                lines.append(f"swap q[{op.p[0]}],q[{op.p[1]}];")
        lines.append("barrier q;")
    lines.append("")
    return "\n".join(lines)


def angle_of(op: PlacedOp) -> float:
    """CPHASE rotation angle in radians (pi / 2**(j - i))."""
    return math.pi / (2 ** op.angle_exponent)
