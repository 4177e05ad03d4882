"""Generic swap routing used by the fault-aware schedulers.

These helpers trade depth for generality: they bubble contents along BFS
paths through healthy cells, restoring displaced qubits afterwards, so the
structured schedulers' bookkeeping survives arbitrary detours.
"""

from __future__ import annotations

from collections import deque

from .circuit import ScheduleBuilder


class RoutingError(RuntimeError):
    pass


def bfs_path(adj: dict[int, set[int]], src: int, dst: int,
             blocked: frozenset[int] = frozenset()) -> list[int]:
    """Shortest path of physical cells from src to dst avoiding blocked."""
    if src == dst:
        return [src]
    prev: dict[int, int | None] = {src: None}
    queue = deque([src])
    while queue:
        p = queue.popleft()
        for q in sorted(adj[p]):
            if q in prev or q in blocked:
                continue
            prev[q] = p
            if q == dst:
                path = [dst]
                while path[-1] != src:
                    path.append(prev[path[-1]])  # type: ignore[arg-type]
                path.reverse()
                return path
            queue.append(q)
    raise RoutingError(f"no healthy path from {src} to {dst}")


def bubble_forward(builder: ScheduleBuilder, path: list[int]) -> None:
    """Carry the content at path[0] to path[-1], shifting the rest back."""
    for i in range(len(path) - 1):
        builder.swap(path[i], path[i + 1])


def bubble_restore(builder: ScheduleBuilder, path: list[int]) -> None:
    """After bubble_forward, put the displaced contents back; the carried
    content stays at path[-1] and the original path[-1] content lands at
    path[0] (a clean content exchange of the endpoints)."""
    for i in range(len(path) - 2, 0, -1):
        builder.swap(path[i - 1], path[i])


def exchange_contents(builder: ScheduleBuilder, adj: dict[int, set[int]],
                      a: int, b: int,
                      blocked: frozenset[int] = frozenset()) -> None:
    """Swap the contents of two cells, restoring everything in between."""
    if a == b:
        return
    path = bfs_path(adj, a, b, blocked)
    bubble_forward(builder, path)
    bubble_restore(builder, path)


def serve_pair_routed(builder: ScheduleBuilder, adj: dict[int, set[int]],
                      x: int, y: int,
                      blocked: frozenset[int] = frozenset()) -> None:
    """Bring logical x next to logical y, interact, and route back."""
    px, py = builder.position(x), builder.position(y)
    if py in adj[px]:
        builder.cphase(x, y)
        return
    targets = {q for q in adj[py] if q not in blocked}
    best: list[int] | None = None
    for t in sorted(targets):
        try:
            path = bfs_path(adj, px, t, blocked | {py})
        except RoutingError:
            continue
        if best is None or len(path) < len(best):
            best = path
    if best is None:
        raise RoutingError(f"cannot route {x} next to {y}")
    bubble_forward(builder, best)
    builder.cphase(x, y)
    bubble_forward(builder, list(reversed(best)))
