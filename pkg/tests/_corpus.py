"""Seeded random graph corpora shared across test modules."""

import random

from rhocc.graphs import Graph, from_edges, is_connected


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [
        (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p
    ]
    return from_edges(n, edges)


def random_connected(rng: random.Random, n_lo: int, n_hi: int,
                     p_lo: float = 0.25, p_hi: float = 0.85) -> Graph:
    while True:
        n = rng.randrange(n_lo, n_hi + 1)
        g = random_graph(rng, n, rng.uniform(p_lo, p_hi))
        if is_connected(g):
            return g


def random_connected_with_edge_cap(rng: random.Random, n_lo: int, n_hi: int,
                                   m_cap: int) -> Graph:
    while True:
        n = rng.randrange(n_lo, n_hi + 1)
        pair_count = n * (n - 1) // 2
        m = rng.randrange(n - 1, min(m_cap, pair_count) + 1)
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        rng.shuffle(pairs)
        g = from_edges(n, pairs[:m])
        if is_connected(g):
            return g


def random_permutation(rng: random.Random, n: int) -> list[int]:
    perm = list(range(n))
    rng.shuffle(perm)
    return perm
