import math
import tracemalloc

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magcodec.bits import BitReader, BitWriter, bits_to_bytes, bytes_to_bits, decode_gamma, gamma_code
from magcodec.codec import (
    CharacteristicString,
    EdgeSetString,
    EdgeSetStringEncoder,
    decode_characteristic,
    decode_edge_set_string,
    decode_int_prefix_free,
    decode_tau,
    edge_set_bit_length,
    edge_set_records,
    edge_set_string_bits,
    encode_characteristic,
    encode_edge_set_string,
    encode_int_prefix_free,
    encode_tau,
    encode_tau_bits,
    flag_projection,
    pair,
    pair_tuple,
    unpair,
    unpair_tuple,
)
from magcodec.core.errors import DecodeError, MagValidationError
from magcodec.mag import CompanionTuple, SimpleMag, make_mag, tau_from_bitstring


@st.composite
def mags(draw, max_edges=10_000):
    sizes = draw(st.lists(st.integers(min_value=1, max_value=5), min_size=1, max_size=5))
    tau = CompanionTuple(tuple(sizes))
    if tau.num_possible_edges > max_edges:
        sizes = sizes[:1]
        tau = CompanionTuple(tuple(sizes))
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    density = draw(st.sampled_from([0.0, 0.1, 0.5, 0.9, 1.0]))
    flags = np.random.default_rng(seed).random(tau.num_possible_edges) < density
    return make_mag(tau, np.flatnonzero(flags).tolist())


def test_pairing_examples():
    assert pair(0, 0) == 0
    assert pair(1, 2) == 8
    with pytest.raises(MagValidationError):
        pair(-1, 0)


def test_unpair_inverts_pair_exhaustively():
    for x in range(0, 1 << 10, 7):
        for y in range(1 << 10):
            assert unpair(pair(x, y)) == (x, y)


def test_tuple_pairing_is_right_nested():
    assert pair_tuple((1, 2, 3)) == pair(1, pair(2, 3))
    assert unpair_tuple(pair_tuple((4, 0, 9, 2)), 4) == (4, 0, 9, 2)


@pytest.mark.parametrize("n, code", [(1, "1"), (2, "010"), (4, "00100"), (5, "00101")])
def test_gamma_examples(n, code):
    assert encode_int_prefix_free(n) == code
    assert decode_int_prefix_free(code) == (n, len(code))


def test_gamma_rejects_zero():
    with pytest.raises(MagValidationError):
        gamma_code(0)


@given(st.lists(st.integers(min_value=1, max_value=2**40), min_size=1, max_size=50))
def test_gamma_concatenation_decodes_unambiguously(values):
    bits = "".join(gamma_code(v) for v in values)
    pos = 0
    decoded = []
    while pos < len(bits):
        value, pos = decode_gamma(bits, pos)
        decoded.append(value)
    assert decoded == values


def test_gamma_truncation_is_detected():
    with pytest.raises(DecodeError):
        decode_gamma("0001")
    with pytest.raises(DecodeError):
        decode_gamma("000")


def test_bit_writer_and_reader_stream_in_chunks():
    writer = BitWriter()
    chunks = []
    for value in range(1, 300):
        writer.write_gamma(value)
        chunks.append(writer.take_bytes())
    chunks.append(writer.flush())
    reader = BitReader(chunk for chunk in chunks if chunk)
    assert [reader.read_gamma() for _ in range(1, 300)] == list(range(1, 300))
    reader.finish()


def test_reader_rejects_trailing_data():
    reader = BitReader(bits_to_bytes("1" + "0" * 7 + "1"))
    assert reader.read_gamma() == 1
    with pytest.raises(DecodeError):
        reader.finish()


def test_bits_bytes_helpers():
    assert bits_to_bytes("010010110101010") == bytes([0x4B, 0x54])
    assert bytes_to_bits(bytes([0x4B, 0x54])) == "0100101101010100"
    assert bits_to_bytes("") == b""


def test_characteristic_examples():
    assert str(encode_characteristic(make_mag(CompanionTuple((2, 1)), [0]))) == "1"
    assert str(encode_characteristic(make_mag(CompanionTuple((2, 1, 2)), []))) == "000000"
    assert str(encode_characteristic(make_mag(CompanionTuple((2, 2)), [0, 5]))) == "100001"


def test_decode_characteristic_examples():
    single = decode_characteristic(CompanionTuple((2, 1)), CharacteristicString.from_bits("1"))
    assert single.edge_indices() == [0]
    mag = decode_characteristic(CompanionTuple((2, 2)), CharacteristicString.from_bits("100001"))
    assert mag.edge_indices() == [0, 5]
    with pytest.raises(MagValidationError):
        decode_characteristic(CompanionTuple((2, 1, 2)), CharacteristicString.from_bits("00000"))


def test_edge_set_string_single_edge_fixture():
    mag = make_mag(CompanionTuple((2, 1)), [0])
    assert edge_set_string_bits(mag) == "010010110101010"
    s = encode_edge_set_string(mag)
    assert s.data == bytes([0x4B, 0x54])
    assert list(edge_set_records(s)) == [((1, 1), (2, 1), 1)]


def test_edge_set_string_empty_edge_set():
    mag = make_mag(CompanionTuple((2, 1, 2)), [])
    records = list(edge_set_records(encode_edge_set_string(mag)))
    assert len(records) == 6
    assert all(flag == 0 for _, _, flag in records)


def test_edge_set_string_trivial_topology_decodes():
    mag = make_mag(tau_from_bitstring("101"), [0])
    decoded = decode_edge_set_string(encode_edge_set_string(mag))
    assert decoded.tau.num_composite_vertices == 4
    assert decoded.tau.num_possible_edges == 6
    assert decoded == mag


def test_edge_set_string_of_single_vertex_space():
    mag = make_mag(tau_from_bitstring("000"), [])
    s = encode_edge_set_string(mag)
    assert list(edge_set_records(s)) == []
    decoded = decode_edge_set_string(s)
    assert decoded.tau.order == 3
    assert decoded.tau.num_composite_vertices == 1


def test_truncated_edge_set_string_fails():
    s = encode_edge_set_string(make_mag(CompanionTuple((3, 2)), [0, 7]))
    with pytest.raises(DecodeError):
        decode_edge_set_string(EdgeSetString(s.data[:-2]))


def test_edge_set_string_with_trailing_garbage_fails():
    s = encode_edge_set_string(make_mag(CompanionTuple((3, 2)), [0, 7]))
    with pytest.raises(DecodeError):
        decode_edge_set_string(EdgeSetString(s.data + b"\xff"))


def test_chunked_encoder_matches_single_shot():
    mag = make_mag(CompanionTuple((3, 4, 2)), range(0, 276, 5))
    whole = encode_edge_set_string(mag).data
    chunks = list(EdgeSetStringEncoder(mag, chunk_bits=64).chunks())
    assert len(chunks) > 2
    assert b"".join(chunks) == whole


def test_rows_longer_than_one_slice_keep_record_order():
    rng = np.random.default_rng(7)
    tau = CompanionTuple((2, 520))
    mag = make_mag(tau, np.flatnonzero(rng.random(tau.num_possible_edges) < 0.01).tolist())
    s = encode_edge_set_string(mag)
    assert len(bytes_to_bits(s.data)) == 8 * math.ceil(edge_set_bit_length(mag) / 8)
    assert flag_projection(s) == encode_characteristic(mag).to_bits()


def test_encoder_memory_stays_near_the_packed_bitset():
    tau = CompanionTuple((2,) * 11)
    mag = make_mag(tau, range(0, tau.num_possible_edges, 997))
    tracemalloc.start()
    try:
        for _ in EdgeSetStringEncoder(mag, chunk_bits=1 << 14).chunks():
            pass
        _, peak = tracemalloc.get_traced_memory()
    finally:
        tracemalloc.stop()
    # one unpacked byte per possible edge would be eight times the packed size
    assert peak < 3 * len(mag.edges)


def test_graph_edge_set_string_follows_from_characteristic_and_n():
    x = CharacteristicString.from_bits("101100")
    s = encode_edge_set_string(SimpleMag(CompanionTuple((4,)), x.data))
    assert flag_projection(s) == "101100"
    assert [u for u, _, _ in edge_set_records(s)][:3] == [(1,), (1,), (2,)]


@settings(max_examples=100, deadline=None)
@given(mags())
def test_codecs_round_trip(mag):
    x = encode_characteristic(mag)
    assert decode_characteristic(mag.tau, x) == mag

    s = encode_edge_set_string(mag)
    assert flag_projection(s) == x.to_bits()
    assert len(bytes_to_bits(s.data)) == 8 * math.ceil(edge_set_bit_length(mag) / 8)
    assert decode_edge_set_string(s) == mag

    assert decode_tau(encode_tau(mag.tau)) == mag.tau


def test_random_mags_round_trip_through_edge_set_strings():
    rng = np.random.default_rng(20210101)
    for _ in range(1000):
        w = "".join(rng.choice(["0", "1"], size=int(rng.integers(1, 13))).tolist())
        if not 1 <= w.count("1") <= 6:
            continue
        tau = tau_from_bitstring(w)
        flags = rng.random(tau.num_possible_edges) < rng.random()
        mag = make_mag(tau, np.flatnonzero(flags).tolist())
        s = encode_edge_set_string(mag)
        assert flag_projection(s) == str(encode_characteristic(mag))
        assert decode_edge_set_string(s) == mag


def test_encode_tau_fixtures():
    assert encode_tau_bits(CompanionTuple((2, 1, 2))) == "0110101010"
    assert encode_tau(CompanionTuple((2, 1, 2))).data == bytes([0x6A, 0x80])
    assert encode_tau_bits(CompanionTuple((1,))) == "11"
    assert encode_tau(CompanionTuple((1,))).data == bytes([0xC0])
    assert decode_tau(encode_tau(CompanionTuple((1,)))).sizes == (1,)


def test_decode_tau_rejects_malformed_stream():
    with pytest.raises(DecodeError):
        decode_tau(bits_to_bytes("011010"))


@given(
    st.lists(st.integers(min_value=1, max_value=1000), min_size=1, max_size=8),
    st.lists(st.integers(min_value=1, max_value=1000), min_size=1, max_size=8),
)
def test_encoded_tuples_are_prefix_free(a, b):
    bits_a = encode_tau_bits(CompanionTuple(tuple(a)))
    bits_b = encode_tau_bits(CompanionTuple(tuple(b)))
    if a != b:
        assert not bits_b.startswith(bits_a)
        assert not bits_a.startswith(bits_b)


@settings(max_examples=50, deadline=None)
@given(mags(max_edges=500), mags(max_edges=500))
def test_edge_set_strings_are_prefix_free(a, b):
    bits_a = edge_set_string_bits(a)
    bits_b = edge_set_string_bits(b)
    if bits_a != bits_b:
        assert not bits_b.startswith(bits_a)
        assert not bits_a.startswith(bits_b)
