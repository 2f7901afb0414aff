"""Certificate constructors, one per scheme.

Provers are computationally unconstrained: they lean on the exact oracles and
refuse (NotCertifiable) whenever the instance does not satisfy the claimed
bound. All tie-breaks are by smallest node id / lexicographic edge order so
certificates are byte-reproducible across runs.
"""

from __future__ import annotations

from .certs import (
    CertificateBlob,
    encode_coloring,
    encode_core_subset,
    encode_distance_labels,
    encode_equality,
    encode_mm_coloring,
    encode_mm_list,
    encode_node_set,
    encode_peel_order,
    encode_tutte_berge,
)
from .graph import Graph
from .oracles import (
    NP_ORACLE_MAX_N,
    TooLarge,
    bfs_distances,
    count_odd_components_excluding,
    k_coloring,
    k_core,
    maximum_clique,
    maximum_independent_set,
    maximum_matching,
    minimum_vertex_cover,
    oracle_diameter,
    oracle_max_matching,
    peel_order,
)


class NotCertifiable(ValueError):
    """The instance does not satisfy the bound the scheme certifies."""


# -- maximum matching ----------------------------------------------------------

def lex_min_maximum_matching(g: Graph) -> list[tuple[int, int]]:
    """The lexicographically smallest maximum matching (as a sorted edge list).

    Greedy over edges in lex order, keeping an edge iff the partial choice
    still extends to a maximum matching of the whole graph.
    """
    target = oracle_max_matching(g)
    chosen: list[tuple[int, int]] = []
    used: set[int] = set()
    for u, v in sorted(g.edge_set):
        if len(chosen) == target:
            break
        if u in used or v in used:
            continue
        blocked = used | {u, v}
        rest = Graph.from_edges(
            g.n, (e for e in g.edges if e[0] not in blocked and e[1] not in blocked)
        )
        if oracle_max_matching(rest) == target - len(chosen) - 1:
            chosen.append((u, v))
            used.update((u, v))
    return chosen


def prove_mm_atleast_list(g: Graph, k: int) -> CertificateBlob:
    if oracle_max_matching(g) < k:
        raise NotCertifiable(f"maximum matching below {k}")
    return encode_mm_list(lex_min_maximum_matching(g)[:k], g.n)


def _matching_prefix(g: Graph, k: int) -> list[tuple[int, int]]:
    """First k edges (lex order) of the deterministic maximum matching."""
    mate = maximum_matching(g)
    edges = sorted((u, v) for u, v in mate.items() if u < v)
    if len(edges) < k:
        raise NotCertifiable(f"maximum matching below {k}")
    return edges[:k]


def prove_mm_atleast_coloring(g: Graph, k: int) -> CertificateBlob:
    """Vertex coloring on at most max(1, 2*max_degree - 1) colors in which the
    monochromatic edges are exactly a matching of size k."""
    matched = _matching_prefix(g, k)
    delta = g.max_degree()
    if delta <= 1:
        # the whole graph is a matching; one color satisfies the verifier
        return encode_mm_coloring({v: 1 for v in range(1, g.n + 1)}, 1, g.n)
    domain = 2 * delta - 1
    adj = g.adjacency()
    colors: dict[int, int] = {}
    for u, v in matched:
        banned = {
            colors[w] for w in adj[u] + adj[v] if w in colors and w != u and w != v
        }
        color = next(c for c in range(1, domain + 1) if c not in banned)
        colors[u] = colors[v] = color
    for v in range(1, g.n + 1):
        if v in colors:
            continue
        banned = {colors[w] for w in adj[v] if w in colors}
        colors[v] = next(c for c in range(1, domain + 1) if c not in banned)
    return encode_mm_coloring(colors, domain, g.n)


def gallai_edmonds_witness(g: Graph) -> frozenset[int]:
    """A minimizer U of (|U| - odd(V\\U) + |V|) / 2.

    U is the neighborhood (outside D) of D = the vertices missed by at least
    one maximum matching; D is found via nu(G - v) == nu(G).
    """
    nu = oracle_max_matching(g)
    missable = set()
    for v in range(1, g.n + 1):
        rest = Graph.from_edges(g.n, (e for e in g.edges if v not in e))
        if oracle_max_matching(rest) == nu:
            missable.add(v)
    adj = g.adjacency()
    witness = frozenset(
        w for v in missable for w in adj[v] if w not in missable
    )
    odd = count_odd_components_excluding(g, witness)
    assert 2 * nu == len(witness) - odd + g.n, "witness misses the matching bound"
    return witness


def prove_mm_atmost(g: Graph, k: int) -> CertificateBlob:
    if oracle_max_matching(g) > k:
        raise NotCertifiable(f"maximum matching above {k}")
    return encode_tutte_berge(gallai_edmonds_witness(g), g.n)


# -- degeneracy ------------------------------------------------------------------

def prove_deg_atmost(g: Graph, k: int) -> CertificateBlob:
    order, degeneracy = peel_order(g)
    if degeneracy > k:
        raise NotCertifiable(f"degeneracy above {k}")
    pi = {v: i for i, v in enumerate(order, start=1)}
    return encode_peel_order(pi, g.n)


def prove_deg_atleast(g: Graph, k: int) -> CertificateBlob:
    core = k_core(g, k)
    if k >= 1 and not core:
        raise NotCertifiable(f"degeneracy below {k}")
    return encode_core_subset(core, g.n)


# -- diameter --------------------------------------------------------------------

def prove_diam_atleast(g: Graph, k: int) -> CertificateBlob:
    if oracle_diameter(g) < k:
        raise NotCertifiable(f"diameter below {k}")
    adj = g.adjacency()
    source = None
    for u in range(1, g.n + 1):
        dist = bfs_distances(adj, u)
        if len(dist) < g.n or max(dist.values(), default=0) >= k:
            source = u
            break
    assert source is not None
    dist = bfs_distances(adj, source)
    labels = {
        v: min(dist.get(v, k + 1), k + 1) for v in range(1, g.n + 1)
    }
    return encode_distance_labels(labels, g.n, k)


# -- coloring --------------------------------------------------------------------

def prove_coloring_atmost(g: Graph, k: int) -> CertificateBlob:
    if g.n > NP_ORACLE_MAX_N:
        raise TooLarge(g.n, NP_ORACLE_MAX_N)
    coloring = k_coloring(g, k) if k >= 1 else None
    if coloring is None:
        raise NotCertifiable(f"chromatic number above {k}")
    return encode_coloring(coloring, g.n, k)


# -- vertex sets (IS / clique / VC) ------------------------------------------------

def prove_set_cert(g: Graph, k: int, which: str) -> CertificateBlob:
    if g.n > NP_ORACLE_MAX_N:
        raise TooLarge(g.n, NP_ORACLE_MAX_N)
    if which == "is":
        witness = maximum_independent_set(g)
        if len(witness) < k:
            raise NotCertifiable(f"independence number below {k}")
        return encode_node_set("is_atleast", sorted(witness)[:k], g.n)
    if which == "clique":
        witness = maximum_clique(g)
        if len(witness) < k:
            raise NotCertifiable(f"clique number below {k}")
        return encode_node_set("clique_atleast", sorted(witness)[:k], g.n)
    if which == "vc":
        cover = minimum_vertex_cover(g)
        if len(cover) > k:
            raise NotCertifiable(f"vertex cover above {k}")
        return encode_node_set("vc_atmost", cover, g.n)
    raise ValueError(f"unknown set certificate kind {which!r}")


def prove_is_atleast(g: Graph, k: int) -> CertificateBlob:
    return prove_set_cert(g, k, "is")


def prove_clique_atleast(g: Graph, k: int) -> CertificateBlob:
    return prove_set_cert(g, k, "clique")


def prove_vc_atmost(g: Graph, k: int) -> CertificateBlob:
    return prove_set_cert(g, k, "vc")


# -- equality combinator -------------------------------------------------------------

def prove_mm_equal(g: Graph, k: int) -> CertificateBlob:
    if oracle_max_matching(g) != k:
        raise NotCertifiable(f"maximum matching is not exactly {k}")
    return encode_equality("mm_equal", prove_mm_atmost(g, k), prove_mm_atleast_list(g, k))


def prove_deg_equal(g: Graph, k: int) -> CertificateBlob:
    from .oracles import oracle_degeneracy

    if oracle_degeneracy(g) != k:
        raise NotCertifiable(f"degeneracy is not exactly {k}")
    return encode_equality("deg_equal", prove_deg_atmost(g, k), prove_deg_atleast(g, k))
