import math
import random
from itertools import combinations

import pytest

from rhocc.families import ExtremalParams, VERTEX_KIND, g_kappa
from rhocc.graphs import (
    GraphError,
    add_edges,
    complete,
    cycle,
    disjoint_union,
    empty_graph,
    from_edges,
    is_connected,
    join,
    min_degree,
    path,
    remove_edges,
)
from rhocc.spectral import (
    DEFAULT_CONFIG,
    ConvergenceError,
    DisconnectedGraphError,
    NonEquitableError,
    SpectralConfig,
    binomial_shift_increases,
    equitable_quotient,
    hsf_bound,
    hsf_equality_class,
    kelmans_shift,
    perron,
    product_gap_holds,
    quotient_spectral_radius,
    refine_equitable,
)

from _corpus import random_connected

EPS = DEFAULT_CONFIG.comparison_epsilon


def test_perron_fixed_values():
    assert abs(perron(complete(5)).rho - 4) < 1e-9
    assert abs(perron(cycle(4)).rho - 2) < 1e-9
    star = join(complete(1), empty_graph(4))
    assert abs(perron(star).rho - 2) < 1e-9
    assert abs(perron(path(3)).rho - math.sqrt(2)) < 1e-9


def test_perron_singleton():
    pd = perron(complete(1))
    assert pd.rho == 0.0 and pd.vector == (1.0,)


def test_perron_rejects_disconnected():
    with pytest.raises(DisconnectedGraphError):
        perron(disjoint_union(complete(2), complete(2)))


def test_perron_contract():
    rng = random.Random(31)
    for _ in range(120):
        g = random_connected(rng, 2, 10)
        pd = perron(g)
        assert pd.residual <= DEFAULT_CONFIG.tolerance
        assert max(pd.vector) == 1.0
        assert all(x > 0 for x in pd.vector)
        assert min_degree(g) - 1e-9 <= pd.rho <= g.n - 1 + 1e-9


def test_perron_deterministic():
    rng = random.Random(7)
    for _ in range(30):
        g = random_connected(rng, 3, 12)
        a, b = perron(g), perron(g)
        assert a.rho == b.rho and a.vector == b.vector and a.iterations == b.iterations


def test_perron_iteration_budget():
    with pytest.raises(ConvergenceError):
        perron(path(30), SpectralConfig(max_iterations=3))


def test_perron_json_shape():
    obj = perron(path(3)).to_json_obj()
    assert set(obj) == {"rho", "vector", "residual", "iterations"}


def test_spectral_config_validation():
    with pytest.raises(ValueError):
        SpectralConfig(tolerance=1e-6, comparison_epsilon=1e-9)


def test_quotient_p3():
    p3 = path(3)  # 1 is the center
    q = equitable_quotient(p3, [[1], [0], [2]])
    assert abs(quotient_spectral_radius(q) - math.sqrt(2)) < 1e-9
    q2 = equitable_quotient(p3, [[1], [0, 2]])
    assert q2.cells == ((0, 2), (1, 0))
    assert abs(quotient_spectral_radius(q2) - math.sqrt(2)) < 1e-9


def test_quotient_single_part():
    for n in (2, 5, 9):
        q = equitable_quotient(complete(n), [range(n)])
        assert quotient_spectral_radius(q) == n - 1


def test_quotient_rejects_non_equitable():
    p4 = path(4)
    with pytest.raises(NonEquitableError) as exc:
        equitable_quotient(p4, [[0, 1], [2, 3]])
    assert exc.value.vertex in (0, 1, 2, 3)
    with pytest.raises(GraphError):
        equitable_quotient(p4, [[0, 1], [1, 2, 3]])
    with pytest.raises(GraphError):
        equitable_quotient(p4, [[0, 1]])


def test_quotient_matches_perron_on_family():
    p = ExtremalParams(8, 2, 1, 2, VERTEX_KIND, 2)
    fam = g_kappa(p)
    parts = refine_equitable(fam.graph, fam.nonempty_parts())
    q = equitable_quotient(fam.graph, parts)
    assert abs(quotient_spectral_radius(q) - perron(fam.graph).rho) < 1e-9


def test_refine_equitable_property():
    rng = random.Random(13)
    for _ in range(60):
        g = random_connected(rng, 3, 10)
        parts = refine_equitable(g, [range(g.n)])
        equitable_quotient(g, parts)  # must not raise


def test_kelmans_shift_p4():
    g = path(4)
    x = perron(g).vector
    assert x[1] >= x[2] - 1e-12  # symmetric interior entries
    shifted = kelmans_shift(g, 1, 2, [3])
    star = from_edges(4, [(0, 1), (1, 2), (1, 3)])
    assert shifted.rows == star.rows
    assert perron(shifted).rho > perron(g).rho + EPS


def test_kelmans_shift_preconditions():
    g = path(4)
    with pytest.raises(GraphError):
        kelmans_shift(g, 1, 2, [])
    # moved must avoid N(u): vertex 2 is adjacent to u=1
    with pytest.raises(GraphError):
        kelmans_shift(g, 1, 2, [2])
    k4 = complete(4)
    with pytest.raises(GraphError):
        kelmans_shift(k4, 0, 1, [2])  # 2 is a shared neighbour
    with pytest.raises(GraphError):
        kelmans_shift(g, 2, 2, [3])


def test_kelmans_shift_increases_rho():
    # rotation toward the larger Perron entry strictly increases rho
    rng = random.Random(41)
    done = 0
    while done < 150:
        g = random_connected(rng, 4, 9)
        pd = perron(g)
        u = rng.randrange(g.n)
        v = rng.randrange(g.n)
        if u == v:
            continue
        if pd.vector[u] < pd.vector[v]:
            u, v = v, u
        pool = [w for w in g.neighbors(v)
                if w not in (u,) and not g.has_edge(u, w) and w != u]
        pool = [w for w in pool if w != u]
        if not pool:
            continue
        moved = [w for w in pool if rng.random() < 0.6] or [pool[0]]
        shifted = kelmans_shift(g, u, v, moved)
        if not is_connected(shifted):
            continue
        assert perron(shifted).rho > pd.rho + EPS
        done += 1


def test_nested_neighborhood_orders_perron_entries():
    rng = random.Random(43)
    done = 0
    while done < 150:
        g = random_connected(rng, 4, 10)
        pairs = []
        for u in range(g.n):
            for v in range(g.n):
                if u == v:
                    continue
                nv = g.rows[v] & ~(1 << u)
                nu = g.rows[u] & ~(1 << v)
                if nv and nv | nu == nu and nv != nu:
                    pairs.append((u, v))
        if not pairs:
            continue
        u, v = pairs[rng.randrange(len(pairs))]
        x = perron(g).vector
        assert x[u] > x[v] + EPS
        done += 1


def test_closed_twins_equal_entries():
    rng = random.Random(47)
    for _ in range(150):
        g = random_connected(rng, 3, 9)
        v = rng.randrange(g.n)
        # duplicate v as an adjacent twin on a new vertex
        n = g.n + 1
        rows = list(g.rows) + [0]
        twin_mask = g.rows[v] | (1 << v)
        for u in range(g.n):
            if twin_mask >> u & 1:
                rows[u] |= 1 << g.n
        rows[g.n] = twin_mask
        from rhocc.graphs import Graph

        h = Graph(n, tuple(rows))
        x = perron(h).vector
        assert abs(x[v] - x[g.n]) <= 10 * DEFAULT_CONFIG.tolerance


def test_edge_removal_decreases_rho():
    rng = random.Random(53)
    done = 0
    while done < 150:
        g = random_connected(rng, 3, 10)
        edges = g.edges()
        u, v = edges[rng.randrange(len(edges))]
        h = remove_edges(g, [(u, v)])
        if not is_connected(h):
            continue
        assert perron(h).rho < perron(g).rho - EPS
        done += 1


def test_hsf_bound_fixed_values():
    assert abs(hsf_bound(5, 10, 4) - 4) < 1e-12
    assert abs(perron(complete(5)).rho - hsf_bound(5, 10, 4)) < 1e-9
    assert abs(hsf_bound(4, 3, 1) - math.sqrt(3)) < 1e-12
    star = join(complete(1), empty_graph(3))
    assert abs(perron(star).rho - hsf_bound(4, 3, 1)) < 1e-9
    assert abs(hsf_bound(6, 7, 1) - 3) < 1e-12


def test_hsf_bound_errors():
    with pytest.raises(ValueError):
        hsf_bound(6, 7, 0)
    with pytest.raises(ValueError):
        hsf_bound(10, 2, 3)  # negative radicand


def test_hsf_bound_all_connected_6_7_graphs():
    # every connected graph with n=6, m=7, delta=1 satisfies rho <= 3
    pairs = list(combinations(range(6), 2))
    count = 0
    for subset in combinations(range(len(pairs)), 7):
        g = from_edges(6, [pairs[i] for i in subset])
        if min_degree(g) != 1 or not is_connected(g):
            continue
        assert perron(g).rho <= 3 + 1e-9
        count += 1
    assert count > 0


def test_hsf_equality_class():
    assert hsf_equality_class(complete(5))
    assert hsf_equality_class(cycle(6))
    assert hsf_equality_class(join(complete(1), empty_graph(3)))
    assert not hsf_equality_class(path(4))
    # bidegreed but not {delta, n-1}: two triangles sharing a path
    g = from_edges(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)])
    assert not hsf_equality_class(g)


def test_product_gap_examples():
    assert product_gap_holds(2.5, 3.2, 2)
    assert product_gap_holds(3.0, 3.9, 2)
    with pytest.raises(ValueError):
        product_gap_holds(1, 1, 1)
    with pytest.raises(ValueError):
        product_gap_holds(2, 4, 1)


def test_product_gap_always_holds_under_pre():
    rng = random.Random(61)
    for _ in range(500):
        t = rng.uniform(1, 5)
        a = t + rng.uniform(1e-6, 3)
        b = a + rng.uniform(1e-9, 1 - 1e-9)
        if not (b > a > t >= 1 and abs(a - b) < 1):
            continue
        assert product_gap_holds(a, b, t)


def test_product_gap_identity():
    # a*b - (a+t)*(b-t) == a*t - b*t + t*t, exactly, over rationals
    from fractions import Fraction

    rng = random.Random(67)
    for _ in range(300):
        a = Fraction(rng.randrange(1, 400), rng.randrange(1, 40))
        b = Fraction(rng.randrange(1, 400), rng.randrange(1, 40))
        t = Fraction(rng.randrange(1, 400), rng.randrange(1, 40))
        assert a * b - (a + t) * (b - t) == a * t - b * t + t * t


def test_binomial_shift_examples():
    assert binomial_shift_increases(3, 3)  # 6 < 7
    assert binomial_shift_increases(5, 3)  # 13 < 16
    with pytest.raises(ValueError):
        binomial_shift_increases(2, 3)


def test_binomial_shift_grid():
    for b in range(3, 12):
        for a in range(b, 15):
            assert binomial_shift_increases(a, b)
            diff = (math.comb(a + 1, 2) + math.comb(b - 1, 2)
                    - math.comb(a, 2) - math.comb(b, 2))
            assert diff == a - b + 1
