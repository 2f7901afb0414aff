"""Prover outputs: pinned examples plus structural certificate invariants."""

from __future__ import annotations

import math

import pytest

from streamcert.certs import decode_blob
from streamcert.graph import (
    Graph,
    bounded_degree_graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    gnp_random_graph,
    matching_graph,
    path_graph,
    star_graph,
)
from streamcert.oracles import (
    count_odd_components_excluding,
    k_core,
    oracle_degeneracy,
    oracle_max_matching,
)
from streamcert.provers import (
    NotCertifiable,
    gallai_edmonds_witness,
    lex_min_maximum_matching,
    prove_coloring_atmost,
    prove_deg_atleast,
    prove_deg_atmost,
    prove_deg_equal,
    prove_diam_atleast,
    prove_mm_atleast_coloring,
    prove_mm_atleast_list,
    prove_mm_atmost,
    prove_mm_equal,
    prove_set_cert,
)

TRIANGLE = Graph.from_edges(3, [(1, 2), (1, 3), (2, 3)])


# -- matching list -----------------------------------------------------------------

def test_mm_list_examples():
    cert = prove_mm_atleast_list(TRIANGLE, 1)
    assert decode_blob(cert, "mm_atleast_list", 3, 1) == ((1, 2),)
    cert = prove_mm_atleast_list(path_graph(4), 2)
    assert decode_blob(cert, "mm_atleast_list", 4, 2) == ((1, 2), (3, 4))
    with pytest.raises(NotCertifiable):
        prove_mm_atleast_list(TRIANGLE, 2)


def test_lex_min_matching_is_maximum_and_lex_minimal():
    for seed in range(12):
        g = gnp_random_graph(9, 0.35, seed)
        matching = lex_min_maximum_matching(g)
        assert len(matching) == oracle_max_matching(g)
        used = [x for e in matching for x in e]
        assert len(set(used)) == len(used)
        assert all(e in g.edge_set for e in matching)
        assert matching == sorted(matching)


def test_mm_list_truncates():
    g = matching_graph(8)  # edges (1,2),(3,4),(5,6),(7,8)
    cert = prove_mm_atleast_list(g, 2)
    assert decode_blob(cert, "mm_atleast_list", 8, 2) == ((1, 2), (3, 4))


# -- matching coloring --------------------------------------------------------------

def _coloring_cert_stats(g, k):
    cert = prove_mm_atleast_coloring(g, k)
    domain, colors = decode_blob(cert, "mm_atleast_coloring", g.n, k)
    adj = g.adjacency()
    mono = [(u, v) for u, v in g.edges if colors[u] == colors[v]]
    same_color_neighbors = {
        v: sum(1 for w in adj[v] if colors[w] == colors[v]) for v in range(1, g.n + 1)
    }
    return domain, colors, mono, same_color_neighbors


def test_mm_coloring_single_edge_forced_color():
    g = Graph.from_edges(2, [(1, 2)])
    domain, colors, mono, _ = _coloring_cert_stats(g, 1)
    assert domain == 1 and colors[1] == colors[2] == 1 and len(mono) == 1


def test_mm_coloring_path3():
    g = path_graph(3)
    domain, colors, mono, _ = _coloring_cert_stats(g, 1)
    assert domain == 2 * 2 - 1
    assert colors[1] == colors[2] != colors[3]
    assert mono == [(1, 2)]


def test_mm_coloring_triangle_exactly_one_mono_edge():
    _, _, mono, neighbors = _coloring_cert_stats(TRIANGLE, 1)
    assert len(mono) == 1
    assert max(neighbors.values()) <= 1


def test_mm_coloring_structural_invariants_random():
    for seed in range(25):
        g = bounded_degree_graph(20, 5, 30, seed)
        nu = oracle_max_matching(g)
        if nu == 0:
            continue
        k = max(1, nu - (seed % 2))
        domain, colors, mono, neighbors = _coloring_cert_stats(g, k)
        delta = g.max_degree()
        assert domain == max(1, 2 * delta - 1)
        assert max(colors[1:]) <= domain
        assert len(mono) >= k
        assert max(neighbors.values()) <= 1


def test_mm_coloring_not_certifiable():
    with pytest.raises(NotCertifiable):
        prove_mm_atleast_coloring(TRIANGLE, 2)


# -- Tutte-Berge witness ---------------------------------------------------------------

def test_mm_atmost_examples():
    cert = prove_mm_atmost(star_graph(4), 1)
    assert decode_blob(cert, "mm_atmost", 4, 1) == frozenset({1})
    cert = prove_mm_atmost(matching_graph(4), 2)
    assert decode_blob(cert, "mm_atmost", 4, 2) == frozenset()
    with pytest.raises(NotCertifiable):
        prove_mm_atmost(TRIANGLE, 0)


def test_gallai_edmonds_satisfies_matching_equality():
    for seed in range(20):
        g = gnp_random_graph(11, 0.3, seed)
        witness = gallai_edmonds_witness(g)
        odd = count_odd_components_excluding(g, witness)
        assert 2 * oracle_max_matching(g) == len(witness) - odd + g.n


# -- degeneracy -------------------------------------------------------------------------

def test_deg_atmost_examples():
    cert = prove_deg_atmost(path_graph(4), 1)
    pi = decode_blob(cert, "deg_atmost", 4, 1)
    adj = path_graph(4).adjacency()
    for v in range(1, 5):
        assert sum(1 for w in adj[v] if pi[w] > pi[v]) <= 1
    with pytest.raises(NotCertifiable):
        prove_deg_atmost(complete_graph(4), 2)
    cert = prove_deg_atmost(empty_graph(3), 0)
    assert decode_blob(cert, "deg_atmost", 3, 0) == [0, 1, 2, 3]


def test_deg_atmost_order_bound_random():
    for seed in range(15):
        g = gnp_random_graph(12, 0.35, seed)
        k = oracle_degeneracy(g)
        pi = decode_blob(prove_deg_atmost(g, k), "deg_atmost", g.n, k)
        adj = g.adjacency()
        assert max(
            sum(1 for w in adj[v] if pi[w] > pi[v]) for v in range(1, g.n + 1)
        ) <= k


def test_deg_atleast_examples():
    cert = prove_deg_atleast(complete_graph(4), 3)
    assert decode_blob(cert, "deg_atleast", 4, 3) == frozenset({1, 2, 3, 4})
    cert = prove_deg_atleast(cycle_graph(4), 2)
    assert decode_blob(cert, "deg_atleast", 4, 2) == frozenset({1, 2, 3, 4})
    with pytest.raises(NotCertifiable):
        prove_deg_atleast(path_graph(4), 2)


def test_deg_atleast_emits_k_core():
    g = Graph.from_edges(6, [(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6)])
    cert = prove_deg_atleast(g, 2)
    assert decode_blob(cert, "deg_atleast", 6, 2) == k_core(g, 2) == frozenset({1, 2, 3})


# -- diameter ---------------------------------------------------------------------------

def test_diam_examples():
    cert = prove_diam_atleast(path_graph(4), 3)
    assert decode_blob(cert, "diam_atleast", 4, 3) == [0, 0, 1, 2, 3]
    cert = prove_diam_atleast(path_graph(4), 2)
    assert decode_blob(cert, "diam_atleast", 4, 2) == [0, 0, 1, 2, 3]
    with pytest.raises(NotCertifiable):
        prove_diam_atleast(TRIANGLE, 2)


def test_diam_labels_structure():
    for g, k in [
        (cycle_graph(9), 4),
        (gnp_random_graph(10, 0.25, 4), 2),
        (matching_graph(6), 5),  # disconnected: anything goes
    ]:
        value = k if not math.isinf(k) else k
        cert = prove_diam_atleast(g, k)
        labels = decode_blob(cert, "diam_atleast", g.n, k)
        assert 0 in labels[1:]
        assert max(labels[1:]) >= k
        assert all(abs(labels[u] - labels[v]) <= 1 for u, v in g.edges)


# -- coloring ----------------------------------------------------------------------------

def test_coloring_examples():
    cert = prove_coloring_atmost(cycle_graph(5), 3)
    colors = decode_blob(cert, "coloring_atmost", 5, 3)
    assert all(colors[u] != colors[v] for u, v in cycle_graph(5).edges)
    cert = prove_coloring_atmost(path_graph(4), 2)
    colors = decode_blob(cert, "coloring_atmost", 4, 2)
    assert colors[1:] in ([1, 2, 1, 2], [2, 1, 2, 1])  # alternating bipartition
    with pytest.raises(NotCertifiable):
        prove_coloring_atmost(cycle_graph(5), 2)


# -- node sets ----------------------------------------------------------------------------

def test_set_cert_examples():
    cert = prove_set_cert(TRIANGLE, 3, "clique")
    assert decode_blob(cert, "clique_atleast", 3, 3) == (1, 2, 3)
    cert = prove_set_cert(path_graph(4), 2, "vc")
    cover = decode_blob(cert, "vc_atmost", 4, 2)
    assert len(cover) <= 2
    assert all(u in cover or v in cover for u, v in path_graph(4).edges)
    with pytest.raises(NotCertifiable):
        prove_set_cert(TRIANGLE, 2, "is")


def test_set_cert_is_truncated_to_k():
    cert = prove_set_cert(empty_graph(5), 3, "is")
    assert len(decode_blob(cert, "is_atleast", 5, 3)) == 3


# -- equality ---------------------------------------------------------------------------

def test_equality_provers():
    blob = prove_mm_equal(path_graph(4), 2)
    le, ge = decode_blob(blob, "mm_equal", 4, 2)
    assert le.scheme == "mm_atmost" and ge.scheme == "mm_atleast_list"
    with pytest.raises(NotCertifiable):
        prove_mm_equal(path_graph(4), 1)
    blob = prove_deg_equal(TRIANGLE, 2)
    le, ge = decode_blob(blob, "deg_equal", 3, 2)
    assert le.scheme == "deg_atmost" and ge.scheme == "deg_atleast"
    with pytest.raises(NotCertifiable):
        prove_deg_equal(TRIANGLE, 1)


# -- determinism --------------------------------------------------------------------------

def test_provers_are_deterministic():
    g = gnp_random_graph(10, 0.4, 11)
    from streamcert.schemes import SCHEMES, legal_thresholds

    for info in SCHEMES.values():
        value = {
            "matching": oracle_max_matching(g),
            "degeneracy": oracle_degeneracy(g),
        }.get(info.parameter)
        if value is None:
            from streamcert.oracles import parameter_value

            value = parameter_value(g, info.parameter)
        for k in legal_thresholds(info, value, g.n):
            first = info.prover(g, k)
            second = info.prover(g, k)
            assert first == second
