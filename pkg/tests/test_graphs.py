import json
import random

import pytest

from rhocc.graphs import (
    EdgeSet,
    Graph,
    GraphError,
    VertexSet,
    add_edges,
    are_isomorphic,
    complete,
    components,
    cycle,
    delete_vertices,
    disjoint_union,
    dot_export,
    empty_graph,
    from_edge_json_obj,
    from_edges,
    graph6_decode,
    graph6_encode,
    is_connected,
    join,
    min_degree,
    path,
    relabel,
    remove_edges,
    to_edge_json_obj,
)

from _corpus import random_graph, random_permutation


def test_complete_basics():
    k1 = complete(1)
    assert k1.n == 1 and k1.edge_count == 0
    k4 = complete(4)
    assert k4.edge_count == 6
    assert all(k4.degree(v) == 3 for v in range(4))
    assert min_degree(complete(7)) == 6


def test_complete_out_of_range():
    with pytest.raises(GraphError):
        complete(0)
    with pytest.raises(GraphError):
        complete(65)


def test_graph_invariants_rejected():
    with pytest.raises(GraphError):
        Graph(2, (1, 0))  # asymmetric
    with pytest.raises(GraphError):
        Graph(2, (1, 2))  # self-loop at 1? bit 1 of row 1
    with pytest.raises(GraphError):
        from_edges(3, [(0, 0)])


def test_disjoint_union():
    g = disjoint_union(complete(2), complete(2))
    assert g.n == 4 and g.edge_count == 2
    assert [len(c) for c in components(g)] == [2, 2]
    h = disjoint_union(complete(1), complete(1))
    assert h.edge_count == 0
    u = disjoint_union(complete(3), complete(2))
    assert u.edge_count == 4
    assert sorted(len(c) for c in components(u)) == [2, 3]


def test_join_examples():
    p3 = join(complete(1), disjoint_union(complete(1), complete(1)))
    assert are_isomorphic(p3, path(3))
    assert are_isomorphic(join(complete(2), complete(3)), complete(5))
    g = join(complete(2), disjoint_union(complete(4), complete(2)))
    assert g.edge_count == 1 + 6 + 1 + 12


def test_join_union_size_arithmetic():
    rng = random.Random(11)
    for _ in range(100):
        g = random_graph(rng, rng.randrange(1, 8), rng.random())
        h = random_graph(rng, rng.randrange(1, 8), rng.random())
        j = join(g, h)
        assert j.n == g.n + h.n
        assert j.edge_count == g.edge_count + h.edge_count + g.n * h.n
        u = disjoint_union(g, h)
        assert u.edge_count == g.edge_count + h.edge_count


def test_capacity_guard():
    with pytest.raises(GraphError):
        disjoint_union(complete(40), complete(30))
    with pytest.raises(GraphError):
        join(complete(40), complete(30))


def test_add_remove_edges():
    g = path(4)
    g2 = add_edges(g, [(0, 3)])
    assert g2.has_edge(0, 3) and not g.has_edge(0, 3)
    g3 = remove_edges(g2, [(0, 3)])
    assert g3.rows == g.rows
    with pytest.raises(GraphError):
        add_edges(g, [(0, 1)])  # already present
    with pytest.raises(GraphError):
        remove_edges(g, [(0, 2)])  # absent
    with pytest.raises(GraphError):
        add_edges(g, [(0, 0)])


def test_edgeset_validation():
    with pytest.raises(GraphError):
        EdgeSet.of([(0, 0)], 4)
    with pytest.raises(GraphError):
        EdgeSet.of([(0, 5)], 4)
    es = EdgeSet.of([(3, 1), (0, 2)], 4)
    assert es.pairs == ((0, 2), (1, 3))


def test_delete_vertices():
    g = cycle(6)
    sub, label_map = delete_vertices(g, [0, 3])
    assert sub.n == 4
    assert label_map == (1, 2, 4, 5)
    assert sorted(len(c) for c in components(sub)) == [2, 2]
    same, ident = delete_vertices(g, [])
    assert same.rows == g.rows and ident == tuple(range(6))
    with pytest.raises(GraphError):
        delete_vertices(g, range(6))


def test_components_examples():
    g, _ = delete_vertices(cycle(6), [0, 3])
    assert [len(c) for c in components(g)] == [2, 2]
    assert [len(c) for c in components(complete(5))] == [5]
    u = disjoint_union(disjoint_union(complete(3), complete(2)), complete(1))
    assert [len(c) for c in components(u)] == [3, 2, 1]


def test_components_partition_property():
    rng = random.Random(23)
    for _ in range(200):
        g = random_graph(rng, rng.randrange(2, 12), rng.random())
        comps = components(g)
        seen = 0
        for c in comps:
            assert c.mask != 0
            assert seen & c.mask == 0
            seen |= c.mask
            # induced subgraph on the component is connected
            members = list(c)
            if len(members) > 1:
                sub, _ = delete_vertices(g, [v for v in range(g.n) if v not in c])
                assert is_connected(sub)
            # no edges leave the component
            for v in members:
                assert g.rows[v] & ~c.mask == 0
        assert seen == g.vertex_mask
        # ordered by smallest member
        mins = [min(c) for c in comps]
        assert mins == sorted(mins)


def test_isomorphism_examples():
    c4 = cycle(4)
    k22 = from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    assert are_isomorphic(c4, k22)
    star = from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert not are_isomorphic(path(4), star)
    # same degree sequence, different graphs: K_{3,3} vs the triangular prism
    k33 = from_edges(6, [(i, j + 3) for i in range(3) for j in range(3)])
    prism = from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5),
                           (0, 3), (1, 4), (2, 5)])
    assert not are_isomorphic(k33, prism)


def test_isomorphism_relabel_invariance():
    rng = random.Random(5)
    for _ in range(1000):
        g = random_graph(rng, rng.randrange(2, 10), rng.random())
        img = relabel(g, random_permutation(rng, g.n))
        assert are_isomorphic(g, img)


def test_isomorphism_reflexive_symmetric():
    rng = random.Random(17)
    for _ in range(50):
        g = random_graph(rng, rng.randrange(2, 9), rng.random())
        h = random_graph(rng, g.n, rng.random())
        assert are_isomorphic(g, g)
        assert are_isomorphic(g, h) == are_isomorphic(h, g)


def test_isomorphism_order_cap():
    with pytest.raises(GraphError):
        are_isomorphic(complete(17), complete(17))


def test_graph6_fixed_values():
    assert graph6_encode(complete(3)) == "Bw"
    assert graph6_encode(empty_graph(2)) == "A?"
    assert graph6_encode(graph6_decode("Bw")) == "Bw"


def test_graph6_roundtrip_random():
    rng = random.Random(99)
    for _ in range(1000):
        g = random_graph(rng, rng.randrange(1, 21), rng.random())
        assert graph6_decode(graph6_encode(g)).rows == g.rows


def test_graph6_long_form():
    for n in (62, 63, 64):
        rng = random.Random(n)
        g = random_graph(rng, n, 0.1)
        enc = graph6_encode(g)
        assert graph6_decode(enc).rows == g.rows
        if n >= 63:
            assert enc.startswith("~")


def test_graph6_rejects_garbage():
    with pytest.raises(GraphError):
        graph6_decode("")
    with pytest.raises(GraphError):
        graph6_decode("B")  # truncated body
    with pytest.raises(GraphError):
        graph6_decode("\x01\x02")


def test_dot_export():
    g = path(3)
    assert dot_export(g) == "graph G {\n  0;\n  1;\n  2;\n  0 -- 1;\n  1 -- 2;\n}\n"


def test_edge_json_roundtrip():
    g = join(complete(2), complete(3))
    obj = to_edge_json_obj(g)
    assert obj["n"] == 5
    assert obj["edges"] == sorted(obj["edges"])
    assert all(u < v for u, v in obj["edges"])
    back = from_edge_json_obj(json.loads(json.dumps(obj)))
    assert back.rows == g.rows
    with pytest.raises(GraphError):
        from_edge_json_obj({"edges": []})


def test_vertexset_behaviour():
    vs = VertexSet.of([5, 1, 3], 8)
    assert vs.members == (1, 3, 5)
    assert len(vs) == 3 and 3 in vs and 0 not in vs
    with pytest.raises(GraphError):
        VertexSet.of([8], 8)
