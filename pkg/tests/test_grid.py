import pytest

from qftatlas.circuit import ScheduleBuilder, metrics
from qftatlas.grid import (
    GridIeOptions,
    GridScheduleError,
    grid_ie,
    grid_qft,
    grid_unit_swap,
    row_segment,
)
from qftatlas.qft_gates import Mode
from qftatlas.topology import build_architecture
from qftatlas.verifier import verify


def fresh_builder(m, mode="relaxed"):
    return ScheduleBuilder(build_architecture("grid", m), mode)


def test_unit_swap_single_layer():
    b = fresh_builder(4)
    grid_unit_swap(b, 4, 0, 1)
    c = b.build()
    assert len(c.layers) == 1
    assert len(c.layers[0]) == 4


def test_unit_swap_involution():
    b = fresh_builder(3)
    grid_unit_swap(b, 3, 0, 1)
    grid_unit_swap(b, 3, 0, 1)
    fm = b.build().final_mapping()
    assert all(fm[l] == l for l in range(9))


def test_unit_swap_rejects_nonadjacent():
    b = fresh_builder(3)
    with pytest.raises(GridScheduleError):
        grid_unit_swap(b, 3, 0, 2)


def _prepare_rows(m, mode):
    """Builder with H's done on the top row so cross interaction is legal."""
    b = fresh_builder(m, mode)
    for q in range(m):
        b.h(q)
    return b


@pytest.mark.parametrize("mode", ["relaxed", "strict"])
def test_ie_m1_single_pair(mode):
    g = build_architecture("grid", 2)
    b = ScheduleBuilder(g, mode)
    b.h(0)
    grid_ie(b, GridIeOptions(m=1, mode=Mode(mode), top_row=0, bottom_row=1))
    assert len(b.placed_pairs) == 1


def test_ie_relaxed_m4_bound():
    b = _prepare_rows(4, "relaxed")
    d0 = b.depth()
    grid_ie(b, GridIeOptions(m=4, mode=Mode.RELAXED, top_row=0, bottom_row=1))
    assert len(b.placed_pairs) == 16
    assert b.depth() - d0 <= 2 * 4 + 1


def test_ie_relaxed_mirrors_rows():
    m = 5
    b = _prepare_rows(m, "relaxed")
    grid_ie(b, GridIeOptions(m=m, mode=Mode.RELAXED, top_row=0, bottom_row=1))
    fm = b.build().final_mapping()
    for q in range(m):
        assert fm[q] == row_segment(m, 0)[m - 1 - q]
        assert fm[m + q] == row_segment(m, 1)[m - 1 - q]


def test_ie_strict_mirror_exit_and_bound():
    m = 4
    b = _prepare_rows(m, "strict")
    d0 = b.depth()
    grid_ie(b, GridIeOptions(m=m, mode=Mode.STRICT, top_row=0, bottom_row=1))
    assert len(b.placed_pairs) == 16
    assert b.depth() - d0 <= 4 * m + 2
    fm = b.build().final_mapping()
    for q in range(m):
        assert fm[q] == row_segment(m, 0)[m - 1 - q]
        assert fm[m + q] == row_segment(m, 1)[m - 1 - q]


def test_ie_strict_fragment_order_valid():
    """The strict fragment, replayed, respects the induced cross order."""
    m = 4
    b = _prepare_rows(m, "strict")
    grid_ie(b, GridIeOptions(m=m, mode=Mode.STRICT, top_row=0, bottom_row=1))
    seen = []
    for layer in b.layers:
        for op in layer:
            if op.g == "cp":
                seen.append(op.q)
    done = set()
    for i, j in seen:
        assert all((i, j2) in done for j2 in range(m, j)), (i, j)
        assert all((i2, j) in done for i2 in range(i)), (i, j)
        done.add((i, j))


@pytest.mark.parametrize("m,mode", [(2, "relaxed"), (2, "strict"),
                                    (3, "relaxed"), (3, "strict"),
                                    (5, "relaxed"), (5, "strict")])
def test_qft_verifies(m, mode):
    c = grid_qft(m, mode)
    report = verify(c, build_architecture("grid", m), mode)
    assert report.ok
    mets = metrics(c)
    n = m * m
    assert mets.cphase_count == n * (n - 1) // 2
    assert mets.h_count == n


def test_qft_m2_trivial_counts():
    for mode in ("relaxed", "strict"):
        m = metrics(grid_qft(2, mode))
        assert m.cphase_count == 6
        assert m.h_count == 4


def test_qft_rejects_m1():
    with pytest.raises(GridScheduleError):
        grid_qft(1)


def test_qft_m3_relaxed_near_published():
    m = metrics(grid_qft(3, "relaxed"))
    assert abs(m.two_qubit_depth - 32) / 32 <= 0.15
    assert abs(m.swap_count - 33) / 33 <= 0.20
