import json

import pytest

from qftatlas.circuit import (
    OP_CP,
    OP_H,
    OP_SWAP,
    PlacedOp,
    ScheduleBuilder,
    ScheduledCircuit,
    ScheduleError,
    SchemaError,
    append_layer,
    export_json,
    export_qasm,
    import_json,
    metrics,
)
from qftatlas.lnn import lnn_qft
from qftatlas.grid import grid_qft
from qftatlas.qft_gates import Mode
from qftatlas.topology import build_architecture


def empty_circuit(n=4):
    return ScheduledCircuit({"kind": "lnn", "size": n, "faulty": []},
                            Mode.STRICT, {i: i for i in range(n)}, [])


def test_append_disjoint_swaps():
    c = empty_circuit()
    c2 = append_layer(c, [PlacedOp(OP_SWAP, (), (0, 1)), PlacedOp(OP_SWAP, (), (2, 3))])
    assert metrics(c2).depth == metrics(c).depth + 1


def test_append_overlap_rejected():
    c = empty_circuit()
    with pytest.raises(ScheduleError, match="twice"):
        append_layer(c, [PlacedOp(OP_SWAP, (), (0, 1)), PlacedOp(OP_SWAP, (), (1, 2))])


def test_append_non_edge_rejected():
    c = empty_circuit()
    with pytest.raises(ScheduleError, match="non-edge"):
        append_layer(c, [PlacedOp(OP_CP, (0, 2), (0, 2))])


def test_append_stale_mapping_rejected():
    c = empty_circuit()
    c = append_layer(c, [PlacedOp(OP_SWAP, (), (0, 1))])
    with pytest.raises(ScheduleError, match="mapping"):
        append_layer(c, [PlacedOp(OP_CP, (0, 1), (0, 1))])


def test_metrics_empty():
    m = metrics(empty_circuit())
    assert (m.depth, m.swap_count, m.cphase_count, m.h_count) == (0, 0, 0, 0)


def test_metrics_lnn4_match_published():
    m = metrics(lnn_qft(4))
    assert m.swap_count == 6
    assert m.two_qubit_depth == 10
    assert m.depth == 12     # two boundary layers hold a lone H


def test_metrics_grid3_counts():
    m = metrics(grid_qft(3, "relaxed"))
    assert m.cphase_count == 36      # C(9, 2)
    assert m.h_count == 9


def test_json_round_trip_identity():
    c = lnn_qft(5)
    data = export_json(c)
    c2 = import_json(data)
    assert export_json(c2) == data
    assert c2.initial_mapping == c.initial_mapping
    assert c2.layers == c.layers


def test_json_deterministic():
    assert export_json(lnn_qft(6)) == export_json(lnn_qft(6))


def test_json_missing_field():
    doc = json.loads(export_json(lnn_qft(3)))
    del doc["layers"]
    with pytest.raises(SchemaError, match="layers"):
        import_json(json.dumps(doc))


def test_json_bad_mode():
    doc = json.loads(export_json(lnn_qft(3)))
    doc["mode"] = "loose"
    with pytest.raises(SchemaError, match="mode"):
        import_json(json.dumps(doc))


def test_json_rejects_malformed():
    with pytest.raises(SchemaError):
        import_json(b"{not json")


def test_json_swap_uses_physical_h_cp_logical():
    doc = json.loads(export_json(lnn_qft(3)))
    kinds = {op["g"] for layer in doc["layers"] for op in layer}
    assert kinds == {"h", "cp", "swap"}
    for layer in doc["layers"]:
        for op in layer:
            if op["g"] == "swap":
                assert "p" in op and "q" not in op
            else:
                assert "q" in op and "p" not in op


def test_qasm_single_h():
    c = empty_circuit(1)
    c = append_layer(c, [PlacedOp(OP_H, (0,), (0,))])
    text = export_qasm(c)
    assert text.count("h q[0];") == 1
    assert text.count("barrier") == 1


def test_qasm_angle_convention():
    c = empty_circuit(2)
    c = append_layer(c, [PlacedOp(OP_CP, (0, 1), (0, 1))])
    assert "cp(pi/2) q[0],q[1];" in export_qasm(c)


def test_qasm_lnn4_swap_statements():
    text = export_qasm(lnn_qft(4))
    assert text.count("swap ") == 6


def test_replay_invariant():
    """Physical args of H/CPHASE equal the replayed mapping at every layer."""
    c = grid_qft(3, "strict")
    phys_of = dict(c.initial_mapping)
    for layer in c.layers:
        for op in layer:
            if op.g in (OP_H, OP_CP):
                assert tuple(phys_of[l] for l in op.q) == op.p
        for op in layer:
            if op.g == OP_SWAP:
                a, b = op.p
                la = next((l for l, p in phys_of.items() if p == a), None)
                lb = next((l for l, p in phys_of.items() if p == b), None)
                if la is not None:
                    phys_of[la] = b
                if lb is not None:
                    phys_of[lb] = a


def test_builder_rejects_double_h():
    builder = ScheduleBuilder(build_architecture("lnn", 2), Mode.STRICT)
    builder.h(0)
    with pytest.raises(ScheduleError):
        builder.h(0)


def test_builder_rejects_cphase_before_h():
    builder = ScheduleBuilder(build_architecture("lnn", 2), Mode.STRICT)
    with pytest.raises(ScheduleError):
        builder.cphase(0, 1)


def test_builder_rejects_cphase_after_target_h():
    builder = ScheduleBuilder(build_architecture("lnn", 2), Mode.STRICT)
    builder.h(0)
    builder.h(1)
    with pytest.raises(ScheduleError):
        builder.cphase(0, 1)
