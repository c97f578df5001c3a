import itertools

import pytest

from magcodec.core.errors import MagValidationError, SelfLoopError, SizeCapExceededError
from magcodec.mag import (
    BinarySignature,
    CompanionTuple,
    CompositeEdge,
    CompositeVertex,
    bitstring_from_tau_general,
    empty_mag,
    make_mag,
    signature_of,
    tau_from_bitstring,
    tau_from_bitstring_general,
)


def test_companion_tuple_counts():
    tau = CompanionTuple((2, 1, 2))
    assert tau.order == 3
    assert tau.num_composite_vertices == 4
    assert tau.num_possible_edges == 6
    assert not tau.is_uniform
    assert CompanionTuple((2, 2)).is_uniform


@pytest.mark.parametrize("sizes", [(), (0,), (2, -1)])
def test_companion_tuple_rejects_invalid_sizes(sizes):
    with pytest.raises(MagValidationError):
        CompanionTuple(sizes)


def test_companion_tuple_parse():
    assert CompanionTuple.parse("2, 1 2").sizes == (2, 1, 2)
    with pytest.raises(MagValidationError):
        CompanionTuple.parse("2 x")


def test_size_cap_is_enforced():
    tau = CompanionTuple((2,) * 10)
    assert tau.check_cap(cap=tau.num_possible_edges) is tau
    with pytest.raises(SizeCapExceededError) as excinfo:
        tau.check_cap(cap=tau.num_possible_edges - 1)
    assert excinfo.value.n_possible_edges == 1024 * 1023 // 2


def test_size_cap_reads_settings(monkeypatch):
    from magcodec.core.config import get_settings

    monkeypatch.setenv("MAGCODEC_SIZE_CAP_BITS", "100")
    get_settings.cache_clear()
    try:
        with pytest.raises(SizeCapExceededError):
            tau_from_bitstring("1111")
    finally:
        get_settings.cache_clear()


def test_make_mag_examples():
    single = make_mag(CompanionTuple((2, 1)), [0])
    assert single.tau.num_composite_vertices == 2
    assert single.n_bits == 1
    assert single.edge_indices() == [0]

    empty = make_mag(CompanionTuple((2, 1, 2)), [])
    assert empty.tau.num_composite_vertices == 4
    assert empty.n_bits == 6
    assert empty.num_edges == 0

    mag = make_mag(CompanionTuple((3, 2)), [0, 7])
    assert mag.n_bits == 15
    assert [i + 1 for i, bit in enumerate(mag.flags()) if bit] == [1, 8]


def test_make_mag_collapses_duplicates_and_checks_range():
    mag = make_mag(CompanionTuple((2, 2)), [5, 0, 5, 0])
    assert mag.edge_indices() == [0, 5]
    with pytest.raises(MagValidationError):
        make_mag(CompanionTuple((2, 2)), [6])
    with pytest.raises(MagValidationError):
        make_mag(CompanionTuple((2, 2)), [-1])


def test_empty_mag_and_has_edge():
    mag = empty_mag(CompanionTuple((3,)))
    assert not any(mag.has_edge(j) for j in range(3))
    with pytest.raises(MagValidationError):
        mag.has_edge(3)


def test_tau_from_bitstring_examples():
    assert tau_from_bitstring("101").sizes == (2, 1, 2)
    zeros = tau_from_bitstring("0000")
    assert zeros.num_composite_vertices == 1
    assert zeros.num_possible_edges == 0
    ones = tau_from_bitstring("1111")
    assert ones.sizes == (2, 2, 2, 2)
    assert ones.num_possible_edges == 120
    with pytest.raises(MagValidationError):
        tau_from_bitstring("")
    with pytest.raises(MagValidationError):
        tau_from_bitstring("10a")


def test_signature_round_trip_for_all_short_bitstrings():
    for length in range(1, 9):
        for digits in itertools.product("01", repeat=length):
            w = "".join(digits)
            tau = tau_from_bitstring(w)
            assert signature_of(tau).bits == w
            assert tau.num_composite_vertices == 2 ** w.count("1")


def test_general_construction_examples():
    assert tau_from_bitstring_general("10", 3, 2).sizes == (5, 3)
    assert tau_from_bitstring_general("1", 1, 1).sizes == (2,)
    assert tau_from_bitstring_general("011", {3: 2}, lambda p: -1).sizes == (2, 1, 1)


@pytest.mark.parametrize(
    "f1, f2",
    [(0, 1), (2, 0), (1, -1), ({5: 2}, 1)],
)
def test_general_construction_rejects_bad_functions(f1, f2):
    with pytest.raises(MagValidationError):
        tau_from_bitstring_general("10", f1, f2)


def test_general_construction_inverts_with_negative_delta():
    tau = tau_from_bitstring_general("011", 2, -1)
    assert signature_of(tau).bits == "100"
    assert bitstring_from_tau_general(tau, 2, -1).bits == "011"
    with pytest.raises(MagValidationError):
        bitstring_from_tau_general(CompanionTuple((7, 1, 1)), 2, -1)


def test_signature_of_examples():
    assert str(signature_of(CompanionTuple((2, 1, 2)))) == "101"
    assert str(signature_of(CompanionTuple((1, 1, 1)))) == "000"
    assert str(signature_of(CompanionTuple((5, 3)))) == "11"
    assert BinarySignature("1011").ones == 3


def test_vertex_validation():
    tau = CompanionTuple((2, 3))
    CompositeVertex((2, 3)).validate(tau)
    for coords in [(0, 1), (3, 1), (1, 4), (1,), (1, 1, 1)]:
        with pytest.raises(MagValidationError):
            CompositeVertex(coords).validate(tau)


def test_composite_edge_is_canonical():
    tau = CompanionTuple((2, 3))
    edge = CompositeEdge.of(tau, (1, 3), (2, 1))
    assert edge.origin.coords == (2, 1)
    assert edge.destination.coords == (1, 3)
    with pytest.raises(SelfLoopError):
        CompositeEdge.of(tau, (1, 2), (1, 2))


def test_direct_edge_construction_rejects_self_loops():
    with pytest.raises(SelfLoopError):
        CompositeEdge(CompositeVertex((1, 2)), CompositeVertex((1, 2)))
    assert CompositeEdge(CompositeVertex((1, 1)), CompositeVertex((1, 2))).v.coords == (1, 2)
