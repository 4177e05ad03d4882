import pytest

from qftatlas.topology import (
    ArchKind,
    TopologyError,
    UnitKind,
    boundary_links,
    build_architecture,
    unit_partition,
)


def test_grid3_counts():
    g = build_architecture("grid", 3)
    assert g.node_count == 9
    assert len(g.edges) == 12          # 2m(m-1)


def test_sycamore4_counts():
    g = build_architecture("sycamore", 4)
    assert g.node_count == 16
    vertical = sum(1 for a, b in g.edges if g.coords[a][1] == g.coords[b][1])
    diagonal = len(g.edges) - vertical
    assert (vertical, diagonal) == (12, 9)
    assert len(g.edges) == 21


def test_sycamore_bulk_degree_four():
    g = build_architecture("sycamore", 6)
    adj = g.adjacency()
    for q, (r, c) in g.coords.items():
        if 0 < r < 5 and 0 < c < 5:
            assert len(adj[q]) == 4, f"bulk node {q} has degree {len(adj[q])}"


def test_heavyhex10_counts():
    g = build_architecture("heavyhex", 10)
    assert g.node_count == 10
    assert len(g.edges) == 9
    path_edges = [e for e in g.edges if g.coords[e[0]][0] == g.coords[e[1]][0] == "path"]
    assert len(path_edges) == 7
    danglers = [q for q, c in g.coords.items() if c[0] == "dangler"]
    assert sorted(danglers) == [4, 9]
    adj = g.adjacency()
    assert all(len(adj[d]) == 1 for d in danglers)


@pytest.mark.parametrize("kind,size", [
    ("lnn", 1), ("lnn", 17), ("grid", 2), ("grid", 9),
    ("sycamore", 2), ("sycamore", 10), ("heavyhex", 10), ("heavyhex", 45),
])
def test_connected(kind, size):
    assert build_architecture(kind, size).is_connected()


@pytest.mark.parametrize("kind,size", [
    ("sycamore", 5), ("sycamore", 0), ("heavyhex", 12), ("heavyhex", 0),
    ("grid", 1), ("lnn", 0),
])
def test_invalid_parameters(kind, size):
    with pytest.raises(TopologyError):
        build_architecture(kind, size)


def test_unit_partition_sycamore4():
    g = build_architecture("sycamore", 4)
    part = unit_partition(g)
    assert len(part.units) == 2
    assert all(len(u) == 8 for u in part.units)
    assert all(u.kind is UnitKind.TWO_ROW for u in part.units)


def test_unit_partition_grid5():
    part = unit_partition(build_architecture("grid", 5))
    assert len(part.units) == 5
    assert all(len(u) == 5 for u in part.units)


def test_unit_partition_heavyhex20():
    part = unit_partition(build_architecture("heavyhex", 20))
    on = [u for u in part.units if u.kind is UnitKind.ON_PATH]
    off = [u for u in part.units if u.kind is UnitKind.OFF_PATH]
    assert len(on) == 4 and len(off) == 4
    assert all(len(u) == 4 for u in on)
    assert all(len(u) == 1 for u in off)


@pytest.mark.parametrize("kind,size", [
    ("lnn", 12), ("grid", 6), ("sycamore", 8), ("heavyhex", 25),
])
def test_unit_lines_are_paths(kind, size):
    g = build_architecture(kind, size)
    part = unit_partition(g)
    covered = set()
    for u in part.units:
        for a, b in zip(u.qubit_line, u.qubit_line[1:]):
            assert g.has_edge(a, b), f"unit {u.id}: ({a}, {b}) not linked"
        covered.update(u.qubit_line)
    assert covered == set(range(g.node_count))


def test_sycamore_boundary_links_form_path():
    g = build_architecture("sycamore", 4)
    part = unit_partition(g)
    links = boundary_links(part, g, 0, 1)
    assert len(links) == 2 * 4 - 1
    # endpoints chain into a single path
    from collections import Counter
    degree = Counter()
    for a, b in links:
        degree[a] += 1
        degree[b] += 1
    assert sorted(degree.values()).count(1) == 2
    assert max(degree.values()) <= 2


@pytest.mark.parametrize("m", range(2, 42, 2))
def test_sycamore_boundary_link_count_sweep(m):
    g = build_architecture("sycamore", m)
    part = unit_partition(g)
    for u in range(m // 2 - 1):
        assert len(boundary_links(part, g, u, u + 1)) == 2 * m - 1


def test_grid_boundary_links_disjoint():
    g = build_architecture("grid", 4)
    part = unit_partition(g)
    links = boundary_links(part, g, 1, 2)
    assert len(links) == 4
    seen = set()
    for a, b in links:
        assert a not in seen and b not in seen
        seen.update((a, b))


def test_grid_nonadjacent_rows_no_links():
    g = build_architecture("grid", 4)
    part = unit_partition(g)
    assert boundary_links(part, g, 0, 2) == []


def test_boundary_links_rejects_bad_unit():
    g = build_architecture("grid", 3)
    part = unit_partition(g)
    with pytest.raises(TopologyError):
        boundary_links(part, g, 0, 7)
    with pytest.raises(TopologyError):
        boundary_links(part, g, 1, 1)


def test_descriptor_round():
    g = build_architecture(ArchKind.HEAVYHEX, 15)
    assert g.descriptor((9,)) == {"kind": "heavyhex", "size": 15, "faulty": [9]}
