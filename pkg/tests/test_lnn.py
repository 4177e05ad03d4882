import pytest

from qftatlas.circuit import OP_CP, OP_SWAP, metrics
from qftatlas.lnn import lnn_qft, swap_window
from qftatlas.topology import build_architecture
from qftatlas.verifier import verify


def reversal_ok(c, n):
    fm = c.final_mapping()
    return all(fm[l] == n - 1 - l for l in range(n))


def test_n1_single_h_layer():
    c = lnn_qft(1)
    m = metrics(c)
    assert (m.depth, m.swap_count, m.h_count) == (1, 0, 1)


def test_n4_matches_published_row():
    m = metrics(lnn_qft(4))
    assert m.two_qubit_depth == 10
    assert m.swap_count == 6


def test_n5_verified_and_reversed():
    c = lnn_qft(5)
    assert verify(c, build_architecture("lnn", 5), "strict").ok
    assert metrics(c).swap_count == 10
    assert reversal_ok(c, 5)


def test_rejects_zero():
    with pytest.raises(ValueError):
        lnn_qft(0)


@pytest.mark.parametrize("n", [2, 3, 7, 16, 33, 64])
def test_depth_bound_and_reversal(n):
    c = lnn_qft(n)
    m = metrics(c)
    assert m.depth <= 4 * n - 4
    assert m.swap_count == n * (n - 1) // 2
    assert reversal_ok(c, n)
    assert verify(c, build_architecture("lnn", n), "strict").ok


def test_pattern_alternates_wavefronts():
    """CPHASE and SWAP wavefronts alternate; the swap window start flips
    parity each round and its extent is capped by two affine functions."""
    n = 9
    c = lnn_qft(n)
    # skip the opening H layer; afterwards layers alternate cp/swap except
    # where an H shares a cp layer
    kinds = []
    for layer in c.layers[1:-1]:
        ops = {op.g for op in layer}
        if OP_CP in ops:
            assert OP_SWAP not in ops
            kinds.append("cp")
        elif OP_SWAP in ops:
            kinds.append("swap")
    assert kinds[0] == "cp"
    assert all(a != b for a, b in zip(kinds, kinds[1:]))
    # window structure by round
    for r in range(1, 2 * n - 2):
        w = swap_window(r, n)
        assert all(p % 2 == (r - 1) % 2 for p in w)
        cap = min(r - 1, 2 * n - 3 - r)
        assert all(p <= cap for p in w)
        if 0 <= cap:
            assert max(w) + 2 > cap


def test_fragment_reverse_orientation():
    from qftatlas.circuit import ScheduleBuilder
    from qftatlas.lnn import LnnOptions, emit_lnn

    g = build_architecture("lnn", 6)
    builder = ScheduleBuilder(g, "strict",
                              initial_mapping={0: 5, 1: 4, 2: 3, 3: 2, 4: 1, 5: 0})
    emit_lnn(builder, LnnOptions(n=6, segment=(0, 1, 2, 3, 4, 5),
                                 reverse_orientation=True))
    c = builder.build()
    assert verify(c, g, "strict").ok
    fm = c.final_mapping()
    assert all(fm[l] == l for l in range(6))     # reversal of the reversal
