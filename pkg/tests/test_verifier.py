import json

import pytest

from qftatlas.circuit import OP_CP, OP_H, PlacedOp, export_json, import_json
from qftatlas.grid import grid_qft
from qftatlas.lnn import lnn_qft
from qftatlas.topology import build_architecture
from qftatlas.verifier import verify, verify_file


def test_lnn5_ok():
    c = lnn_qft(5)
    report = verify(c, build_architecture("lnn", 5), "strict")
    assert report.ok
    assert report.metrics.swap_count == 10


def test_deleted_cphase_layer_is_incomplete():
    c = lnn_qft(5)
    idx = next(i for i, layer in enumerate(c.layers)
               if any(op.g == OP_CP for op in layer))
    missing_pairs = [op.q for op in c.layers[idx] if op.g == OP_CP]
    c.layers.pop(idx)
    report = verify(c, build_architecture("lnn", 5), "strict")
    assert not report.ok
    assert report.completeness.total >= 1
    joined = " ".join(report.completeness.items)
    assert any(f"({i},{j})" in joined.replace(" ", "") or f"cphase({i},{j})" in joined
               for i, j in missing_pairs)


def test_moved_h_layer_is_dependency_violation():
    c = lnn_qft(3)
    idx = next(i for i, layer in enumerate(c.layers)
               if any(op.g == OP_H and op.q == (1,) for op in layer))
    layer = c.layers.pop(idx)
    h_op = next(op for op in layer if op.q == (1,))
    rest = [op for op in layer if op is not h_op]
    if rest:
        c.layers.insert(idx, rest)
    c.layers.insert(0, [PlacedOp(OP_H, (1,), (1,))])
    report = verify(c, build_architecture("lnn", 3), "relaxed")
    assert not report.ok
    assert report.dependencies.total >= 1
    assert any("cp(0, 1)" in f and "h(1)" in f for f in report.dependencies.items)


def test_swap_endpoint_flip_detected():
    c = grid_qft(3, "relaxed")
    for li, layer in enumerate(c.layers):
        for oi, op in enumerate(layer):
            if op.g == "swap":
                a, b = op.p
                nb = next(q for q in range(9) if q not in (a, b)
                          and build_architecture("grid", 3).has_edge(a, q))
                layer[oi] = PlacedOp("swap", (), (a, nb))
                report = verify(c, build_architecture("grid", 3), "relaxed")
                assert not report.ok
                return
    pytest.fail("no swap found")


def test_strict_check_on_relaxed_only_schedule():
    c = grid_qft(4, "relaxed")
    report = verify(c, build_architecture("grid", 4), "strict")
    assert not report.ok
    assert report.dependencies.total >= 1


def test_strict_ok_implies_relaxed_ok():
    c = grid_qft(3, "strict")
    g = build_architecture("grid", 3)
    assert verify(c, g, "strict").ok
    assert verify(c, g, "relaxed").ok


def test_findings_capped():
    c = lnn_qft(30)
    # destroy every cphase layer's mapping by dropping all swaps
    c.layers = [[op for op in layer if op.g != "swap"] for layer in c.layers]
    report = verify(c, build_architecture("lnn", 30), "strict")
    assert not report.ok
    assert len(report.mapping.items) <= 100
    assert report.mapping.total >= len(report.mapping.items)


def test_verify_file_roundtrip(tmp_path):
    path = tmp_path / "c.json"
    path.write_bytes(export_json(grid_qft(4, "relaxed")))
    report = verify_file(path)
    assert report.ok


def test_verify_file_mode_override(tmp_path):
    path = tmp_path / "c.json"
    path.write_bytes(export_json(grid_qft(4, "relaxed")))
    report = verify_file(path, mode="strict")
    assert not report.ok


def test_verify_file_missing(tmp_path):
    with pytest.raises(OSError):
        verify_file(tmp_path / "nope.json")


def test_verify_file_tampered_mode_field(tmp_path):
    doc = json.loads(export_json(grid_qft(3, "relaxed")))
    doc["mode"] = "strict"
    path = tmp_path / "c.json"
    path.write_text(json.dumps(doc))
    report = verify_file(path)
    assert not report.ok
    assert report.dependencies.total >= 1


def test_expected_logical_subset():
    c = lnn_qft(4)
    report = verify(c, build_architecture("lnn", 4), "strict",
                    expected_logical={0, 1, 2})
    assert not report.ok           # the full circuit has unexpected gates on 3
    assert report.completeness.total >= 1
