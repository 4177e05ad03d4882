"""Coupling graphs and unit partitions for the supported architectures.

Four architectures are supported:

- ``lnn``: a path of n qubits.
- ``grid``: an m x m square grid, row-major indexing.
- ``sycamore``: an m x m diagonal grid (m even).  Edges are vertical plus
  alternating diagonals, which gives every bulk node degree 4 and makes two
  stacked rows traversable as a single serpentine line.
- ``heavyhex``: a heavy-hex lattice unrolled to a line of 4n/5 path qubits
  with one dangling qubit attached after every group of four.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class ArchKind(str, Enum):
    LNN = "lnn"
    GRID = "grid"
    SYCAMORE = "sycamore"
    HEAVYHEX = "heavyhex"


class UnitKind(str, Enum):
    ROW = "row"
    TWO_ROW = "two_row"
    ON_PATH = "on_path"
    OFF_PATH = "off_path"


# Dangler attachment point inside each heavy-hex group of four path qubits.
DEFAULT_DANGLER_ANCHOR = 3


class TopologyError(ValueError):
    """Invalid architecture parameters."""


@dataclass(frozen=True)
class CouplingGraph:
    """Physical qubits and undirected links for one architecture instance."""

    kind: ArchKind
    size_param: int
    node_count: int
    edges: frozenset[tuple[int, int]]
    coords: dict[int, tuple] = field(repr=False)

    def has_edge(self, a: int, b: int) -> bool:
        return (a, b) in self.edges or (b, a) in self.edges

    def neighbors(self, q: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == q:
                out.append(b)
            elif b == q:
                out.append(a)
        return sorted(out)

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {q: set() for q in range(self.node_count)}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def is_connected(self) -> bool:
        if self.node_count == 0:
            return True
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return len(seen) == self.node_count

    def descriptor(self, faulty: tuple[int, ...] = ()) -> dict:
        """Architecture descriptor as embedded in the circuit JSON."""
        return {"kind": self.kind.value, "size": self.size_param, "faulty": sorted(faulty)}


@dataclass(frozen=True)
class Unit:
    """A path-shaped group of physical qubits treated as one super-node."""

    id: int
    qubit_line: tuple[int, ...]
    kind: UnitKind

    def __len__(self) -> int:
        return len(self.qubit_line)


@dataclass(frozen=True)
class UnitPartition:
    units: tuple[Unit, ...]
    unit_adjacency: frozenset[tuple[int, int]]

    def unit(self, uid: int) -> Unit:
        return self.units[uid]

    def are_adjacent(self, u: int, v: int) -> bool:
        a, b = min(u, v), max(u, v)
        return (a, b) in self.unit_adjacency


def _edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def grid_index(m: int, row: int, col: int) -> int:
    return row * m + col


def heavyhex_group(size_param: int, g: int) -> tuple[list[int], int]:
    """Physical indices of on-path group g and its dangler, for HeavyHex(n)."""
    base = 5 * g
    return [base, base + 1, base + 2, base + 3], base + 4


def build_architecture(kind: ArchKind | str, size_param: int,
                       dangler_anchor: int = DEFAULT_DANGLER_ANCHOR) -> CouplingGraph:
    """Construct the canonical coupling graph for one architecture.

    Raises :class:`TopologyError` for invalid parameters; each architecture
    has its own minimum size and parity rules.
    """
    kind = ArchKind(kind)
    edges: set[tuple[int, int]] = set()
    coords: dict[int, tuple] = {}

    if kind is ArchKind.LNN:
        if size_param < 1:
            raise TopologyError(f"lnn size must be >= 1, got {size_param}")
        n = size_param
        for i in range(n):
            coords[i] = ("path", i)
        for i in range(n - 1):
            edges.add((i, i + 1))
        return CouplingGraph(kind, size_param, n, frozenset(edges), coords)

    if kind is ArchKind.GRID:
        if size_param < 2:
            raise TopologyError(f"grid size must be >= 2, got {size_param}")
        m = size_param
        for r in range(m):
            for c in range(m):
                q = grid_index(m, r, c)
                coords[q] = (r, c)
                if c + 1 < m:
                    edges.add(_edge(q, grid_index(m, r, c + 1)))
                if r + 1 < m:
                    edges.add(_edge(q, grid_index(m, r + 1, c)))
        return CouplingGraph(kind, size_param, m * m, frozenset(edges), coords)

    if kind is ArchKind.SYCAMORE:
        if size_param < 2:
            raise TopologyError(f"sycamore size must be >= 2, got {size_param}")
        if size_param % 2 != 0:
            raise TopologyError(f"sycamore size must be even, got {size_param}")
        m = size_param
        for r in range(m):
            for c in range(m):
                coords[grid_index(m, r, c)] = (r, c)
        for r in range(m - 1):
            for c in range(m):
                q = grid_index(m, r, c)
                edges.add(_edge(q, grid_index(m, r + 1, c)))
                # Alternating diagonals: even rows lean left, odd rows lean right.
                if r % 2 == 0 and c - 1 >= 0:
                    edges.add(_edge(q, grid_index(m, r + 1, c - 1)))
                if r % 2 == 1 and c + 1 < m:
                    edges.add(_edge(q, grid_index(m, r + 1, c + 1)))
        return CouplingGraph(kind, size_param, m * m, frozenset(edges), coords)

    if kind is ArchKind.HEAVYHEX:
        if size_param < 5:
            raise TopologyError(f"heavyhex size must be >= 5, got {size_param}")
        if size_param % 5 != 0:
            raise TopologyError(f"heavyhex size must be a multiple of 5, got {size_param}")
        if not 0 <= dangler_anchor <= 3:
            raise TopologyError(f"dangler anchor must be in [0, 3], got {dangler_anchor}")
        n = size_param
        groups = n // 5
        prev_path: int | None = None
        pos = 0
        for g in range(groups):
            path, dangler = heavyhex_group(n, g)
            for q in path:
                coords[q] = ("path", pos)
                pos += 1
                if prev_path is not None:
                    edges.add(_edge(prev_path, q))
                prev_path = q
            anchor = path[dangler_anchor]
            coords[dangler] = ("dangler", anchor)
            edges.add(_edge(anchor, dangler))
        return CouplingGraph(kind, size_param, n, frozenset(edges), coords)

    raise TopologyError(f"unknown architecture kind: {kind}")


def serpentine_line(m: int, top_row: int) -> list[int]:
    """Serpentine order over two stacked rows of a sycamore grid.

    Position p maps to (top_row + p % 2, p // 2); consecutive positions are
    linked by a vertical or diagonal edge of the canonical graph.
    """
    return [grid_index(m, top_row + (p % 2), p // 2) for p in range(2 * m)]


def unit_partition(graph: CouplingGraph) -> UnitPartition:
    """Decompose the graph's qubits into line-shaped units.

    Grid: one unit per row.  Sycamore: one unit per pair of rows, ordered as
    a serpentine.  HeavyHex: alternating 4-qubit on-path and 1-qubit off-path
    units in path order.  LNN: a single unit.
    """
    m = graph.size_param
    units: list[Unit] = []
    adjacency: set[tuple[int, int]] = set()

    if graph.kind is ArchKind.LNN:
        units.append(Unit(0, tuple(range(m)), UnitKind.ROW))
    elif graph.kind is ArchKind.GRID:
        for r in range(m):
            units.append(Unit(r, tuple(grid_index(m, r, c) for c in range(m)), UnitKind.ROW))
        adjacency = {(r, r + 1) for r in range(m - 1)}
    elif graph.kind is ArchKind.SYCAMORE:
        for u in range(m // 2):
            units.append(Unit(u, tuple(serpentine_line(m, 2 * u)), UnitKind.TWO_ROW))
        adjacency = {(u, u + 1) for u in range(m // 2 - 1)}
    elif graph.kind is ArchKind.HEAVYHEX:
        groups = m // 5
        for g in range(groups):
            path, dangler = heavyhex_group(m, g)
            units.append(Unit(2 * g, tuple(path), UnitKind.ON_PATH))
            units.append(Unit(2 * g + 1, (dangler,), UnitKind.OFF_PATH))
        for g in range(groups):
            adjacency.add(_edge(2 * g, 2 * g + 1))
            if g + 1 < groups:
                adjacency.add(_edge(2 * g, 2 * (g + 1)))
    else:  # pragma: no cover
        raise TopologyError(f"unknown architecture kind: {graph.kind}")

    return UnitPartition(tuple(units), frozenset(adjacency))


def boundary_links(partition: UnitPartition, graph: CouplingGraph,
                   u: int, v: int) -> list[tuple[int, int]]:
    """All graph edges with one endpoint in unit u and the other in unit v.

    Links are ordered along the units' lines; the list is empty when the
    units are not physically adjacent.
    """
    if u == v:
        raise TopologyError("boundary_links requires two distinct units")
    for uid in (u, v):
        if not 0 <= uid < len(partition.units):
            raise TopologyError(f"unknown unit id: {uid}")
    line_u = partition.unit(u).qubit_line
    line_v = partition.unit(v).qubit_line
    set_u, set_v = set(line_u), set(line_v)
    pos_u = {q: p for p, q in enumerate(line_u)}
    pos_v = {q: p for p, q in enumerate(line_v)}
    links = []
    for a, b in graph.edges:
        if a in set_u and b in set_v:
            links.append((a, b))
        elif b in set_u and a in set_v:
            links.append((b, a))
    links.sort(key=lambda e: (pos_u[e[0]], pos_v[e[1]]))
    return links
