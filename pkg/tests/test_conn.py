import random

import pytest

from rhocc import conn
from rhocc.families import EDGE_KIND, VERTEX_KIND, ExtremalParams, b_lambda, g_kappa
from rhocc.graphs import (
    GraphError,
    add_edges,
    complete,
    components,
    cycle,
    delete_vertices,
    disjoint_union,
    from_edges,
    is_connected,
    path,
)

from _corpus import random_connected_with_edge_cap


def test_kappa_cycle_examples():
    assert conn.kappa_h_r(cycle(5), 2, 0).value == 2
    res = conn.kappa_h_r(cycle(6), 2, 1)
    assert res.value == 2
    # lexicographically smallest antipodal pair
    assert res.certificate.cut.members == (0, 3)
    assert [len(c) for c in res.certificate.components] == [2, 2]


def test_kappa_complete_undefined():
    res = conn.kappa_h_r(complete(5), 2, 0)
    assert not res.defined and res.value is None and res.certificate is None


def test_kappa_of_family_member():
    p = ExtremalParams(8, 2, 1, 2, VERTEX_KIND, 2)
    g = g_kappa(p).graph
    assert conn.kappa_h_r(g, 2, 1).value == 2
    assert conn.kappa_oracle(g, 2, 1) == 2


def test_kappa_rejects_bad_queries():
    with pytest.raises(GraphError):
        conn.kappa_h_r(cycle(5), 1, 0)
    with pytest.raises(GraphError):
        conn.kappa_h_r(cycle(5), 2, -1)
    with pytest.raises(GraphError):
        conn.kappa_h_r(disjoint_union(complete(2), complete(3)), 2, 0)


def test_lambda_cycle():
    res = conn.lambda_h_r(cycle(6), 2, 1)
    assert res.value == 2
    assert conn.lambda_oracle(cycle(6), 2, 1) == 2
    assert len(res.certificate.cut) == 2


def test_lambda_bridge_graph():
    # K_4 with a pendant path of two vertices: the bridge is the cut
    g = add_edges(disjoint_union(complete(4), path(2)), [(3, 4)])
    res = conn.lambda_h_r(g, 2, 1)
    assert res.value == 1
    assert res.certificate.cut.pairs == ((3, 4),)
    sizes = sorted(len(c) for c in res.certificate.components)
    assert sizes == [2, 4]


def test_lambda_of_b_family():
    p = ExtremalParams(8, 2, 1, 1, EDGE_KIND, 1)
    g = b_lambda(p).graph
    assert conn.lambda_h_r(g, 2, 1).value == 1
    assert conn.lambda_oracle(g, 2, 1) == 1


def test_lambda_undefined_small():
    assert not conn.lambda_h_r(cycle(3), 2, 1).defined
    assert conn.lambda_oracle(cycle(3), 2, 1) is None


def test_classical_variants():
    res = conn.classical_kappa(complete(5))
    assert not res.defined and res.annotation == 4
    assert conn.classical_kappa(cycle(5)).value == 2
    bridge = add_edges(disjoint_union(complete(3), complete(3)), [(0, 3)])
    assert conn.classical_lambda(bridge).value == 1
    assert conn.classical_kappa(complete(5)).to_json_obj()["conventional_value"] == 4


def test_any_bridge_means_lambda_one():
    rng = random.Random(71)
    for _ in range(40):
        a = random_connected_with_edge_cap(rng, 2, 4, 6)
        b = random_connected_with_edge_cap(rng, 2, 4, 6)
        g = add_edges(disjoint_union(a, b), [(0, a.n)])
        assert conn.lambda_h_r(g, 2, 0).value == 1


def test_certificate_soundness():
    rng = random.Random(73)
    for _ in range(60):
        g = random_connected_with_edge_cap(rng, 4, 8, 18)
        for r, h in ((2, 0), (2, 1), (3, 0)):
            kres = conn.kappa_h_r(g, r, h)
            if kres.defined:
                cert = kres.certificate
                assert len(cert.cut) == kres.value
                sub, label_map = delete_vertices(g, cert.cut)
                comps = components(sub)
                assert len(comps) >= r
                assert all(len(c) >= h + 1 for c in comps)
                relabeled = sorted(
                    tuple(sorted(label_map[v] for v in c)) for c in comps
                )
                declared = sorted(tuple(c.members) for c in cert.components)
                assert relabeled == declared
            lres = conn.lambda_h_r(g, r, h)
            if lres.defined:
                cert = lres.certificate
                assert len(cert.cut) == lres.value
                from rhocc.graphs import remove_edges

                cut_graph = remove_edges(g, cert.cut)
                comps = components(cut_graph)
                assert len(comps) >= r
                assert all(len(c) >= h + 1 for c in comps)
                # the cut is exactly the set of cross-component edges
                for u, v in cert.cut:
                    cu = next(c for c in comps if u in c)
                    assert v not in cu


def test_cross_validation_small_corpus():
    rng = random.Random(79)
    for _ in range(60):
        g = random_connected_with_edge_cap(rng, 3, 9, 24)
        for r in (2, 3):
            for h in (0, 1):
                kres = conn.kappa_h_r(g, r, h)
                ko = conn.kappa_oracle(g, r, h)
                assert kres.defined == (ko is not None)
                if kres.defined:
                    assert kres.value == ko
                lres = conn.lambda_h_r(g, r, h)
                lo = conn.lambda_oracle(g, r, h)
                assert lres.defined == (lo is not None)
                if lres.defined:
                    assert lres.value == lo


def test_monotone_in_r_and_h():
    rng = random.Random(83)
    for _ in range(40):
        g = random_connected_with_edge_cap(rng, 4, 9, 24)
        grid = {}
        for r in (2, 3):
            for h in (0, 1):
                kres = conn.kappa_h_r(g, r, h)
                lres = conn.lambda_h_r(g, r, h)
                grid[r, h] = (kres, lres)
        for (r, h), (kres, lres) in grid.items():
            for rr, hh in ((r + 1, h), (r, h + 1)):
                if (rr, hh) not in grid:
                    continue
                kbig, lbig = grid[rr, hh]
                if kres.defined and kbig.defined:
                    assert kres.value <= kbig.value
                if lres.defined and lbig.defined:
                    assert lres.value <= lbig.value


def test_lambda_equals_matches_full_computation():
    rng = random.Random(89)
    for _ in range(80):
        g = random_connected_with_edge_cap(rng, 4, 8, 16)
        for r in (2, 3):
            for h in (0, 1):
                res = conn.lambda_h_r(g, r, h)
                for v in range(0, 5):
                    expect = res.defined and res.value == v
                    assert conn.lambda_equals(g, r, h, v) == expect


def test_kappa_equals_matches_full_computation():
    rng = random.Random(97)
    for _ in range(80):
        g = random_connected_with_edge_cap(rng, 4, 8, 16)
        for r in (2, 3):
            for h in (0, 1):
                res = conn.kappa_h_r(g, r, h)
                for v in range(1, 5):
                    expect = res.defined and res.value == v
                    assert conn.kappa_equals(g, r, h, v) == expect


def test_lambda_certificate_lexicographic_tiebreak():
    # two symmetric minimum cuts; the reported one must be lexicographically
    # smallest as a sorted edge list
    g = cycle(6)
    res = conn.lambda_h_r(g, 2, 1)
    assert res.value == 2
    assert res.certificate.cut.pairs == ((0, 1), (2, 3))


def test_json_shapes():
    kobj = conn.kappa_h_r(cycle(6), 2, 1).to_json_obj()
    assert kobj["kind"] == "kappa" and kobj["value"] == 2
    assert kobj["cut"] == [0, 3]
    lobj = conn.lambda_h_r(cycle(6), 2, 1).to_json_obj()
    assert lobj["kind"] == "lambda" and lobj["value"] == 2
    undef = conn.kappa_h_r(complete(4), 2, 0).to_json_obj()
    assert undef == {"kind": "kappa", "defined": False, "value": None}
