import random

import pytest

from kslab.combinatorics import enumerate_sparse
from kslab.flags import (
    chain_lemma_scan,
    cover_scan,
    enumerate_flags,
    flag_is_valid,
    in_xni,
    in_xnk,
    is_balanced,
    point_count_report,
    submodules,
    t_image,
    t_preimage,
    thin_invariants,
    tree_from_flag,
    unrolled_metric,
)
from kslab.fqlin import (
    all_vectors,
    contains,
    dim,
    intersect,
    member,
    nullspace,
    rref,
    subspace_sum,
)


def identity(m, q):
    return rref([tuple(1 if c == i else 0 for c in range(m)) for i in range(m)], q)


def test_rref_is_canonical_under_change_of_basis():
    rng = random.Random(20240817)
    for q in (2, 3, 5):
        for _ in range(50):
            ncols = rng.randint(2, 6)
            k = rng.randint(1, ncols)
            rows = [tuple(rng.randrange(q) for _ in range(ncols)) for _ in range(k)]
            W = rref(rows, q)
            # random invertible combinations of the rows span the same space
            mixed = []
            for _ in range(k + 2):
                coeffs = [rng.randrange(q) for _ in rows]
                mixed.append(tuple(sum(c * r[i] for c, r in zip(coeffs, rows)) % q
                                   for i in range(ncols)))
            assert rref(mixed + list(rows), q) == W


def test_sum_intersection_dimension_formula():
    rng = random.Random(7)
    for _ in range(60):
        q, ncols = rng.choice([(2, 6), (3, 4)])
        U = rref([tuple(rng.randrange(q) for _ in range(ncols))
                  for _ in range(rng.randint(1, 3))], q)
        W = rref([tuple(rng.randrange(q) for _ in range(ncols))
                  for _ in range(rng.randint(1, 3))], q)
        S = subspace_sum(U, W, q)
        X = intersect(U, W, ncols, q)
        assert dim(S) + dim(X) == dim(U) + dim(W)
        assert contains(U, X, q) and contains(W, X, q)
        assert contains(S, U, q) and contains(S, W, q)


def test_t_image_preimage_adjunction():
    for n, q in ((2, 2), (3, 2), (2, 3)):
        for W in submodules(n, q):
            up = t_preimage(W, n, q)
            assert contains(up, W, q)  # t W <= W for submodules
            assert t_image(up, n, q) == intersect(
                W, t_image(identity(2 * n, q), n, q), 2 * n, q)


def test_thin_invariant_examples():
    # A_1 + A_3 inside V(3): generators e_0 and t^2 e_1
    q, m = 2, 3
    gen = [(1, 0, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0), (0, 0, 0, 0, 1, 0),
           (0, 0, 0, 0, 0, 1)]
    ti = thin_invariants(rref(gen, q), (), m, q)
    assert (ti.eta, ti.beta, ti.delta, ti.dim) == (3, 1, 2, 4)
    # balanced A_d^2 has delta 0: take t^(m-d) V(m)
    for d in (1, 2):
        W = rref([tuple(1 if c == 2 * s + j else 0 for c in range(2 * m))
                  for s in range(m - d, m) for j in (0, 1)], q)
        assert is_balanced(W, (), m, q)
    # V(n) itself
    for n, q2 in ((2, 2), (3, 2), (2, 3)):
        ti = thin_invariants(identity(2 * n, q2), (), n, q2)
        assert (ti.eta, ti.beta, ti.delta, ti.dim) == (n, n, 0, 2 * n)


def test_thin_invariants_rejects_non_nested():
    with pytest.raises(ValueError):
        thin_invariants((), identity(4, 2), 2, 2)


def test_flag_counts():
    assert sum(1 for _ in enumerate_flags(1, 2)) == 3
    assert sum(1 for _ in enumerate_flags(1, 3)) == 4
    assert sum(1 for _ in enumerate_flags(2, 2)) == 15
    assert sum(1 for _ in enumerate_flags(2, 3)) == 28
    assert sum(1 for _ in enumerate_flags(3, 2)) == 87


def test_flags_are_valid_and_distinct():
    flags = list(enumerate_flags(2, 2))
    assert len(set(flags)) == len(flags)
    for F in flags:
        assert flag_is_valid(F, 2, 2)


def test_enumeration_cap():
    with pytest.raises(ValueError):
        list(enumerate_flags(12, 2, cap=1000))


def test_point_count_reports():
    # reported as data: the counts happen to match the Poincare values
    for n, q in ((2, 2), (3, 2), (2, 3)):
        assert point_count_report(n, q)["equal"]


def test_xni_equivalent_characterisations():
    # t W_{i+1} = W_{i-1} iff W_{i+1}/W_{i-1} is balanced
    for F in enumerate_flags(2, 2):
        for i in (1, 2, 3):
            assert in_xni(F, i, 2, 2) == is_balanced(F[i + 1], F[i - 1], 2, 2)


def test_x1k_is_everything():
    for F in enumerate_flags(1, 2):
        assert in_xnk(F, (1,), 1, 2)


def test_cover_scans():
    r = cover_scan(2, 2)
    assert r["covered"]
    assert r["xni_counts"] == {1: 9, 2: 9}
    assert set(r["xnk_counts"].values()) == {9}  # X(n,K) has (q+1)^n points
    r3 = cover_scan(3, 2)
    assert r3["covered"]
    assert r3["xni_counts"] == {1: 45, 2: 45, 3: 45}
    assert set(r3["xnk_counts"].values()) == {27}
    assert cover_scan(2, 3)["covered"]


def test_unrolled_metric_axioms_exhaustive_n2():
    for F in enumerate_flags(2, 2):
        rep = unrolled_metric(F, 2, 2)
        assert rep["pseudometric_ok"]
        assert rep["unit_steps"] and rep["wraparound_zero"]


def test_tree_from_flag_exhaustive_n2():
    edge_counts = {}
    for F in enumerate_flags(2, 2):
        T, rep = tree_from_flag(F, 2, 2)
        assert rep["is_tree"] and rep["path_metric_matches"]
        edge_counts[rep["edge_count"]] = edge_counts.get(rep["edge_count"], 0) + 1
    # data for the open question: the canonical tree need not have n edges
    assert edge_counts == {2: 12, 1: 3}


def test_tree_from_flag_n1():
    for F in enumerate_flags(1, 2):
        T, rep = tree_from_flag(F, 1, 2)
        assert rep["is_tree"] and rep["edge_count"] == 1


def test_submodule_counts():
    assert len(submodules(2, 2)) == 15
    assert len(submodules(3, 2)) == 37


def test_chain_lemma_scan_n2():
    r = chain_lemma_scan(2, 2)
    assert r["all_clear"]
    counts = {k: v["instances"] for k, v in r.items() if isinstance(v, dict)}
    assert counts == {"count_K": 4, "W_exponent": 72, "interval": 45,
                      "treelike": 1128, "triangle": 69, "gap": 118,
                      "one_step_a": 42, "one_step_b": 87}


def test_chain_lemma_scan_q3():
    assert chain_lemma_scan(2, 3)["all_clear"]


def test_all_vectors_and_nullspace():
    assert len(all_vectors(3, 2)) == 8
    N = nullspace([(1, 1, 0), (0, 1, 1)], 3, 2)
    assert N == ((1, 1, 1),)
    assert member((1, 1, 1), N, 2)
