import math

import networkx as nx
import numpy as np
import pytest

from magcodec.codec import encode_characteristic, encode_edge_set_string
from magcodec.core.errors import MagValidationError
from magcodec.isomorphism import (
    ClassicalGraph,
    canonical_bijection,
    check_mag_graph_isomorphism,
    graph_to_mag,
    mag_to_graph,
)
from magcodec.mag import CompanionTuple, make_mag, tau_from_bitstring


def _random_mag(rng):
    sizes = tuple(int(s) for s in rng.integers(1, 4, size=int(rng.integers(1, 5))))
    tau = CompanionTuple(sizes)
    flags = rng.random(tau.num_possible_edges) < 0.4
    return make_mag(tau, np.flatnonzero(flags).tolist())


def test_mag_to_graph_carries_the_bitset():
    mag = make_mag(tau_from_bitstring("101"), [0, 3])
    graph = mag_to_graph(mag)
    assert graph.n == 4
    assert graph.edge_indices() == [0, 3]
    assert graph.pairs() == [(1, 2), (1, 4)]


def test_first_order_mag_maps_to_identical_graph():
    mag = make_mag(CompanionTuple((5,)), [1, 4, 9])
    graph = mag_to_graph(mag)
    assert graph.as_mag() == mag
    assert graph_to_mag(graph, CompanionTuple((5,))) == mag


def test_canonical_bijection_witnesses_random_mags():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        mag = _random_mag(rng)
        graph = mag_to_graph(mag)
        assert graph.n == math.prod(mag.tau.sizes)
        assert encode_characteristic(graph.as_mag()) == encode_characteristic(mag)
        assert check_mag_graph_isomorphism(mag, graph, canonical_bijection(mag.tau))
        assert graph_to_mag(graph, mag.tau) == mag


def test_graph_invariants_match_networkx():
    rng = np.random.default_rng(3)
    for _ in range(50):
        mag = _random_mag(rng)
        graph = mag_to_graph(mag)
        nx_graph = graph.to_networkx()
        assert nx_graph.number_of_nodes() == graph.n
        assert nx_graph.number_of_edges() == mag.num_edges
        assert sorted(graph.degrees()) == sorted(d for _, d in nx_graph.degree())


def test_permuted_graph_is_isomorphic_under_that_permutation():
    rng = np.random.default_rng(5)
    mag = make_mag(CompanionTuple((2, 3)), [0, 2, 7, 14])
    graph = mag_to_graph(mag)
    f = rng.permutation(graph.n).tolist()
    relabelled = graph.relabel(f)
    assert check_mag_graph_isomorphism(mag, relabelled, f)
    assert nx.is_isomorphic(graph.to_networkx(), relabelled.to_networkx())
    assert sorted(relabelled.degrees()) == sorted(graph.degrees())


def test_path_graph_counterexample():
    path = ClassicalGraph.from_pairs(3, [(1, 2), (2, 3)])
    mag = graph_to_mag(path, CompanionTuple((3,)))
    assert check_mag_graph_isomorphism(mag, path, [0, 1, 2])
    assert check_mag_graph_isomorphism(mag, path, [2, 1, 0])
    assert not check_mag_graph_isomorphism(mag, path, [1, 0, 2])


def test_invalid_bijection_is_rejected():
    mag = make_mag(CompanionTuple((3,)), [0])
    graph = mag_to_graph(mag)
    for f in ([0, 0, 1], [0, 1], [0, 1, 3]):
        with pytest.raises(MagValidationError):
            check_mag_graph_isomorphism(mag, graph, f)


def test_graph_to_mag_vertex_count_mismatch():
    graph = ClassicalGraph.from_pairs(5, [(1, 5)])
    with pytest.raises(MagValidationError):
        graph_to_mag(graph, CompanionTuple((2, 2)))


def test_same_graph_lifted_to_different_tuples_has_different_edge_set_strings():
    graph = ClassicalGraph.from_pairs(4, [(1, 2), (3, 4)])
    flat = graph_to_mag(graph, CompanionTuple((4,)))
    square = graph_to_mag(graph, CompanionTuple((2, 2)))
    assert check_mag_graph_isomorphism(flat, graph, canonical_bijection(flat.tau))
    assert check_mag_graph_isomorphism(square, graph, canonical_bijection(square.tau))
    assert encode_characteristic(flat) == encode_characteristic(square)
    assert encode_edge_set_string(flat) != encode_edge_set_string(square)


def test_from_pairs_validates_labels():
    with pytest.raises(MagValidationError):
        ClassicalGraph.from_pairs(3, [(0, 1)])
    with pytest.raises(MagValidationError):
        ClassicalGraph.from_pairs(3, [(2, 2)])
