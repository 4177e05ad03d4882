import pytest

from qftatlas.circuit import ScheduleBuilder, metrics
from qftatlas.heavyhex import (
    ColumnState,
    HeavyHexEmitter,
    HeavyHexScheduleError,
    hh_plan,
    hh_qft,
)
from qftatlas.qft_gates import Mode
from qftatlas.topology import build_architecture, heavyhex_group
from qftatlas.verifier import verify


def test_plan_shape():
    plan = hh_plan(20)
    assert plan.columns == 4
    assert plan.on_units == (0, 2, 4, 6)
    assert plan.off_units == (1, 3, 5, 7)


def _emitter(n, mode="relaxed"):
    g = build_architecture("heavyhex", n)
    b = ScheduleBuilder(g, mode)
    e = HeavyHexEmitter(b, Mode(mode), n)
    return b, e


def test_crossing_budgets():
    """On-path stream <= 18 layers, rider travel <= 11, fused phase <= 29."""
    b, e = _emitter(10)
    e.column_ia(ColumnState(0, (0, 1, 2, 3, 4), 0))
    b.barrier()
    d0 = b.depth()
    lp, ld = heavyhex_group(10, 0)
    rp, rd = heavyhex_group(10, 1)
    seg = lp + rp
    edges = [(seg[i], seg[i + 1]) for i in range(7)] + [(lp[3], ld), (rp[3], rd)]
    e.harvest(edges)
    e._stream(seg, edges)
    stream_depth = b.depth() - d0
    assert stream_depth <= 18
    b.barrier()
    d1 = b.depth()
    e._travel(lp, ld, rp, rd, edges)
    travel_depth = b.depth() - d1
    assert travel_depth <= 11
    assert stream_depth + travel_depth <= 29


def test_crossing_covers_all_cross_pairs():
    b, e = _emitter(10)
    e.column_ia(ColumnState(0, (0, 1, 2, 3, 4), 0))
    e.crossing(0, 1)
    for x in range(5):
        for y in range(5, 10):
            assert (x, y) in b.placed_pairs, (x, y)


def test_stream_exchanges_blocks_in_order():
    b, e = _emitter(10)
    e.column_ia(ColumnState(0, (0, 1, 2, 3, 4), 0))
    e.crossing(0, 1)
    fm = b.build().final_mapping()
    lp0, _ = heavyhex_group(10, 0)
    lp1, _ = heavyhex_group(10, 1)
    # the right column (logicals 5..8 on the path) moved left, preserving order
    for i, q in enumerate(range(5, 9)):
        assert fm[q] == lp0[i]


def test_on_path_swaps_only_path_edges_in_stream():
    b, e = _emitter(10)
    e.column_ia(ColumnState(0, (0, 1, 2, 3, 4), 0))
    d0 = len(b.layers)
    lp, ld = heavyhex_group(10, 0)
    rp, rd = heavyhex_group(10, 1)
    seg = lp + rp
    e._stream(seg, [(seg[i], seg[i + 1]) for i in range(7)])
    for layer in b.layers[d0:]:
        for op in layer:
            if op.g == "swap":
                assert ld not in op.p and rd not in op.p


def test_off_before_on_never_happens():
    """Within each fused phase the rider travel follows the block stream."""
    n = 20
    c = hh_qft(n, "relaxed")
    g = build_architecture("heavyhex", n)
    danglers = {q for q, coord in g.coords.items() if coord[0] == "dangler"}
    # find layers of dangler-touching swaps and block swaps per barrier-phase:
    # rider swaps at a dangler must come after at least one path swap of the
    # same phase窗口; approximate by checking the first dangler swap in the
    # whole circuit appears after the first path swap
    first_path = first_dangler = None
    for i, layer in enumerate(c.layers):
        for op in layer:
            if op.g == "swap":
                if set(op.p) & danglers:
                    first_dangler = first_dangler if first_dangler is not None else i
                else:
                    first_path = first_path if first_path is not None else i
    assert first_path is not None and first_dangler is not None
    assert first_path < first_dangler


@pytest.mark.parametrize("n,mode", [(10, "relaxed"), (10, "strict"),
                                    (20, "relaxed"), (20, "strict"),
                                    (30, "relaxed"), (30, "strict")])
def test_qft_verifies(n, mode):
    c = hh_qft(n, mode)
    report = verify(c, build_architecture("heavyhex", n), mode)
    assert report.ok
    m = metrics(c)
    assert m.cphase_count == n * (n - 1) // 2
    assert m.h_count == n


def test_qft_rejects_bad_sizes():
    with pytest.raises(HeavyHexScheduleError):
        hh_qft(12)
    with pytest.raises(HeavyHexScheduleError):
        hh_qft(5)


def test_relaxed_never_uses_fallback_router():
    # generation raises if the fused phases miss anything in relaxed mode
    hh_qft(35, "relaxed")
