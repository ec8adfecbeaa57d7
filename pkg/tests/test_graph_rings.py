from math import comb

from kslab.exterior import ExtElement, r_poly
from kslab.graph_rings import (
    GraphRingPresentation,
    cycle_relations,
    graded_structure,
    has_torsion,
    hedgehog_ring,
    structure_ranks,
    tensor_ranks,
)
from kslab.graphs import BiGraph, make_standard, quotient
from kslab.springer import hilbert_ranks


def join_with_edge(G0: BiGraph, G1: BiGraph, v0, v1) -> BiGraph:
    """G0 and a relabeled copy of G1 joined by a fresh edge v0 -- v1."""
    tag = max(G0.vertices) + 1 if all(isinstance(v, int) for v in G0.vertices) else 1000
    relabel = {v: (v + tag if isinstance(v, int) else v) for v in G1.vertices}
    vertices = G0.vertices + tuple(relabel[v] for v in G1.vertices)
    parity = dict(G0.parity)
    parity.update({relabel[v]: G1.parity[v] for v in G1.vertices})
    edges = set(G0.edges)
    edges |= {frozenset({relabel[u], relabel[v]}) for u, v in map(tuple, G1.edges)}
    edges.add(frozenset({v0, relabel[v1]}))
    return BiGraph(vertices, parity, frozenset(edges))


def theta_graph() -> BiGraph:
    """Two squares sharing an edge: 6 vertices, 7 edges, 3 cycle classes."""
    vertices = tuple(range(6))
    parity = {0: 0, 1: 1, 2: 0, 3: 1, 4: 0, 5: 1}
    edges = frozenset(frozenset(e) for e in
                      [(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 5), (5, 0)])
    return BiGraph(vertices, parity, edges)


def test_tree_has_no_relations():
    for G in (make_standard("L", 2), make_standard("B"), make_standard("C", 1)):
        assert cycle_relations(G).relations == []


def test_c2_relations_are_sigmas():
    pres = cycle_relations(make_standard("C", 2))
    degs = sorted(r.homogeneous_degree() for r in pres.relations)
    assert degs == [1, 1, 2, 2, 3, 3, 4, 4]  # both traversal directions


def test_theta_graph_cycle_classes():
    pres = cycle_relations(theta_graph())
    assert len({tuple(sorted(p)) for p in pres.provenance}) == 3


def test_s_of_cycle_equals_r():
    for n in range(1, 5):
        gs = graded_structure(make_standard("C", n))
        assert not has_torsion(gs)
        ranks = structure_ranks(gs)
        expect = hilbert_ranks(n)
        assert ranks[: len(expect)] == expect
        assert all(r == 0 for r in ranks[len(expect):])


def test_s_of_tree_is_binomial():
    for G, k in ((make_standard("L", 2), 4), (make_standard("B"), 1)):
        gs = graded_structure(G)
        assert structure_ranks(gs) == [comb(k, j) for j in range(k + 1)]
        assert not has_torsion(gs)


def test_tensor_decomposition_over_a_bridge():
    """S(G0 - edge - G1) = S(G0) (x) S(G1) (x) Z[x]/x^2 at the rank level."""
    cases = [
        (make_standard("C", 2), make_standard("B"), 0, 1),
        (make_standard("C", 2), make_standard("C", 2), 1, 0),
        (make_standard("L", 1), make_standard("C", 2), 2, 1),
    ]
    for G0, G1, v0, v1 in cases:
        G = join_with_edge(G0, G1, v0, v1)
        lhs = structure_ranks(graded_structure(G))
        r0 = structure_ranks(graded_structure(G0))
        r1 = structure_ranks(graded_structure(G1))
        rhs = tensor_ranks(tensor_ranks(r0, r1), [1, 1])
        assert lhs[: len(rhs)] == rhs
        assert all(r == 0 for r in lhs[len(rhs):])
        assert not has_torsion(graded_structure(G))


def test_leaf_attachment_convolves_with_1_1():
    base = make_standard("L", 1)  # path with 2 edges
    for v in base.vertices:
        leaf = join_with_edge(base, make_standard("B"), v, 0 if base.parity[v] else 1)
        # join_with_edge adds a whole extra edge graph: 2 extra edges; instead
        # verify the generic tensor identity which subsumes leaf attachment
        lhs = structure_ranks(graded_structure(leaf))
        rhs = tensor_ranks(structure_ranks(graded_structure(base)), [1, 2, 1])
        assert lhs[: len(rhs)] == rhs


def test_degenerate_cycles_add_nothing():
    """Appending the relations of a doubled traversal changes no structure."""
    G = make_standard("C", 2)
    pres = cycle_relations(G)
    m = len(pres.positive_edges)
    extra = []
    for cyc in {tuple(p) for p in pres.provenance}:
        idx = {e: i + 1 for i, e in enumerate(pres.positive_edges)}
        variables, signs = [], []
        walk = list(cyc)
        for a, b in zip(walk, walk[1:] + walk[:1]):
            positive = G.parity[a] == 0
            key = (a, b) if positive else (b, a)
            variables.append(idx[key])
            signs.append(1 if positive else -1)
        doubled = r_poly(variables * 2, m, signs=signs * 2)
        extra.extend(c for c in doubled[1:] if not c.is_zero())
    with_extra = graded_structure(pres, extra_relations=extra)
    assert with_extra == graded_structure(pres)


def test_hedgehog_ring_examples():
    r = hedgehog_ring(2, (1,))
    assert structure_ranks(r["expected"]) == [1, 2, 1]
    assert r["match"] and r["relation_image_ok"]
    r2 = hedgehog_ring(2, (1, 2, 3))
    assert structure_ranks(r2["expected"]) == [1, 1]
    assert r2["match"] and r2["relation_image_ok"]


def test_hedgehog_ring_all_pinches_n_le_3():
    for n in (1, 2, 3):
        for mask in range(1 << (2 * n - 1)):
            A = tuple(i + 1 for i in range(2 * n - 1) if mask >> i & 1)
            r = hedgehog_ring(n, A)
            assert r["match"], (n, A, r["expected"], r["direct"])
            assert r["relation_image_ok"], (n, A)


def test_theta_graph_structure_reported():
    gs = graded_structure(theta_graph())
    # exploratory instance for the open question: record shape, expect
    # a well-defined graded structure with rank 1 in degree 0
    assert gs[0] == (1, [])
    assert len(gs) == 8
