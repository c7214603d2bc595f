"""Immutable simple undirected graphs on at most 64 vertices.

Adjacency is stored as one bitmask row per vertex, so neighbourhood
operations, component searches and subset filters are single-word bit
twiddling. All surgery (adding/removing edges, deleting vertices) returns a
new value; graphs are freely shareable across threads and processes.

Serialization: graph6 (bit-exact to the standard format), DOT, and a small
edge-list JSON schema {"n": int, "edges": [[u, v], ...]} with u < v pairs
sorted lexicographically.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64


class GraphError(ValueError):
    """Raised on malformed graphs, out-of-range vertices or bad surgery."""


def _popcount(x: int) -> int:
    return x.bit_count()


def _bits(mask: int) -> Iterator[int]:
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


@dataclass(frozen=True)
class VertexSet:
    """Subset of {0..host_order-1} stored as a bitmask."""

    mask: int
    host_order: int

    def __post_init__(self):
        if not 1 <= self.host_order <= MAX_VERTICES:
            raise GraphError(f"host order {self.host_order} out of range")
        if self.mask < 0 or self.mask >> self.host_order:
            raise GraphError("vertex set exceeds host order")

    @classmethod
    def of(cls, vertices: Iterable[int], host_order: int) -> "VertexSet":
        mask = 0
        for v in vertices:
            if not 0 <= v < host_order:
                raise GraphError(f"vertex {v} out of range for order {host_order}")
            mask |= 1 << v
        return cls(mask, host_order)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(_bits(self.mask))

    def __len__(self) -> int:
        return _popcount(self.mask)

    def __iter__(self) -> Iterator[int]:
        return _bits(self.mask)

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.host_order and bool(self.mask >> v & 1)


@dataclass(frozen=True)
class EdgeSet:
    """Set of unordered vertex pairs with endpoints inside the host graph."""

    pairs: tuple[tuple[int, int], ...]
    host_order: int

    def __post_init__(self):
        seen = set()
        norm = []
        for u, v in self.pairs:
            if u == v:
                raise GraphError(f"self-loop ({u},{v}) not allowed")
            if not (0 <= u < self.host_order and 0 <= v < self.host_order):
                raise GraphError(f"edge ({u},{v}) out of range")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "pairs", tuple(sorted(norm)))

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]], host_order: int) -> "EdgeSet":
        return cls(tuple((u, v) for u, v in pairs), host_order)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; ``rows[v]`` is the neighbour bitmask of v."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise GraphError(f"order {self.n} out of range [1, {MAX_VERTICES}]")
        if len(self.rows) != self.n:
            raise GraphError("row count does not match order")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row < 0 or row & ~full:
                raise GraphError(f"row {v} references vertices outside range")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
        for u in range(self.n):
            for v in _bits(self.rows[u]):
                if not self.rows[v] >> u & 1:
                    raise GraphError(f"adjacency not symmetric at ({u},{v})")

    @cached_property
    def edge_count(self) -> int:
        return sum(_popcount(r) for r in self.rows) // 2

    @property
    def m(self) -> int:
        return self.edge_count

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return _popcount(self.rows[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(_bits(self.rows[v]))

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            row = self.rows[u] >> (u + 1) << (u + 1)
            for v in _bits(row):
                out.append((u, v))
        return out

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(_popcount(r) for r in self.rows))


# ---------------------------------------------------------------------------
# Constructors and combinators
# ---------------------------------------------------------------------------


def empty_graph(n: int) -> Graph:
    if not 1 <= n <= MAX_VERTICES:
        raise GraphError(f"order {n} out of range")
    return Graph(n, (0,) * n)


def complete(n: int) -> Graph:
    """K_n: every pair adjacent."""
    if not 1 <= n <= MAX_VERTICES:
        raise GraphError(f"order {n} out of range")
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs at least 1 vertex")
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    rows = [0] * n
    if not 1 <= n <= MAX_VERTICES:
        raise GraphError(f"order {n} out of range")
    for u, v in edges:
        if u == v:
            raise GraphError(f"self-loop ({u},{v})")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) out of range")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def from_rows(n: int, rows: Sequence[int]) -> Graph:
    return Graph(n, tuple(rows))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """G ∪ H with H's labels shifted past G's."""
    n = g.n + h.n
    if n > MAX_VERTICES:
        raise GraphError(f"union order {n} exceeds {MAX_VERTICES}")
    rows = list(g.rows) + [row << g.n for row in h.rows]
    return Graph(n, tuple(rows))


def join(g: Graph, h: Graph) -> Graph:
    """G ∨ H: disjoint union plus all |G|·|H| cross edges."""
    n = g.n + h.n
    if n > MAX_VERTICES:
        raise GraphError(f"join order {n} exceeds {MAX_VERTICES}")
    gmask = (1 << g.n) - 1
    hmask = ((1 << h.n) - 1) << g.n
    rows = [row | hmask for row in g.rows]
    rows += [(row << g.n) | gmask for row in h.rows]
    return Graph(n, tuple(rows))


def _as_pairs(edges: Iterable[tuple[int, int]] | EdgeSet) -> list[tuple[int, int]]:
    if isinstance(edges, EdgeSet):
        return list(edges.pairs)
    return [(u, v) for u, v in edges]


def add_edges(g: Graph, edges: Iterable[tuple[int, int]] | EdgeSet) -> Graph:
    rows = list(g.rows)
    for u, v in _as_pairs(edges):
        if u == v or not (0 <= u < g.n and 0 <= v < g.n):
            raise GraphError(f"bad edge ({u},{v})")
        if rows[u] >> v & 1:
            raise GraphError(f"edge ({u},{v}) already present")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(g.n, tuple(rows))


def remove_edges(g: Graph, edges: Iterable[tuple[int, int]] | EdgeSet) -> Graph:
    rows = list(g.rows)
    for u, v in _as_pairs(edges):
        if u == v or not (0 <= u < g.n and 0 <= v < g.n):
            raise GraphError(f"bad edge ({u},{v})")
        if not rows[u] >> v & 1:
            raise GraphError(f"edge ({u},{v}) not present")
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
    return Graph(g.n, tuple(rows))


def delete_vertices(g: Graph, s: VertexSet | Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on V \\ S plus the label map new -> old."""
    if isinstance(s, VertexSet):
        smask = s.mask
    else:
        smask = VertexSet.of(s, g.n).mask
    keep = [v for v in range(g.n) if not smask >> v & 1]
    if not keep:
        raise GraphError("cannot delete every vertex")
    pos = {old: new for new, old in enumerate(keep)}
    rows = []
    for old in keep:
        row = 0
        for w in _bits(g.rows[old] & ~smask):
            row |= 1 << pos[w]
        rows.append(row)
    return Graph(len(keep), tuple(rows)), tuple(keep)


# ---------------------------------------------------------------------------
# Components, degrees, connectivity
# ---------------------------------------------------------------------------


def component_masks(rows: Sequence[int], alive: int) -> list[int]:
    """Connected components of the subgraph induced on the ``alive`` bitmask."""
    comps = []
    remaining = alive
    while remaining:
        comp = remaining & -remaining
        frontier = comp
        while frontier:
            reach = 0
            for v in _bits(frontier):
                reach |= rows[v]
            frontier = reach & alive & ~comp
            comp |= frontier
        comps.append(comp)
        remaining &= ~comp
    return comps


def components(g: Graph) -> list[VertexSet]:
    """Partition of V into maximal connected sets, ordered by smallest member."""
    masks = component_masks(g.rows, g.vertex_mask)
    masks.sort(key=lambda m: (m & -m).bit_length())
    return [VertexSet(m, g.n) for m in masks]


def is_connected(g: Graph) -> bool:
    return is_connected_masks(g.rows, g.vertex_mask)


def is_connected_masks(rows: Sequence[int], alive: int) -> bool:
    if alive == 0:
        return False
    comp = alive & -alive
    frontier = comp
    while frontier:
        reach = 0
        for v in _bits(frontier):
            reach |= rows[v]
        frontier = reach & alive & ~comp
        comp |= frontier
    return comp == alive

def min_degree(g: Graph) -> int:
    return min(_popcount(r) for r in g.rows)


# ---------------------------------------------------------------------------
# Isomorphism (exact backtracking, small orders only)
# ---------------------------------------------------------------------------

ISO_MAX_ORDER = 16


def _neighbor_degree_profile(g: Graph) -> list[tuple[int, tuple[int, ...]]]:
    degs = [g.degree(v) for v in range(g.n)]
    return [
        (degs[v], tuple(sorted(degs[u] for u in _bits(g.rows[v]))))
        for v in range(g.n)
    ]


def are_isomorphic(g: Graph, h: Graph) -> bool:
    """Exact isomorphism test by backtracking with degree-profile pruning."""
    if g.n != h.n or g.edge_count != h.edge_count:
        return False
    if g.n > ISO_MAX_ORDER:
        raise GraphError(f"isomorphism search limited to order {ISO_MAX_ORDER}")
    pg = _neighbor_degree_profile(g)
    ph = _neighbor_degree_profile(h)
    if sorted(pg) != sorted(ph):
        return False
    n = g.n
    # Most-constrained-first: map vertices of g in order of profile rarity.
    rarity: dict[tuple, int] = {}
    for p in pg:
        rarity[p] = rarity.get(p, 0) + 1
    order = sorted(range(n), key=lambda v: (rarity[pg[v]], -pg[v][0], v))
    candidates = [[w for w in range(n) if ph[w] == pg[v]] for v in range(n)]

    mapping = [-1] * n
    used = 0

    def extend(idx: int) -> bool:
        nonlocal used
        if idx == n:
            return True
        v = order[idx]
        row_v = g.rows[v]
        for w in candidates[v]:
            if used >> w & 1:
                continue
            ok = True
            for j in range(idx):
                u = order[j]
                if bool(row_v >> u & 1) != bool(h.rows[w] >> mapping[u] & 1):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used |= 1 << w
                if extend(idx + 1):
                    return True
                used &= ~(1 << w)
                mapping[v] = -1
        return False

    return extend(0)


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Image of g under the vertex permutation v -> perm[v]."""
    if sorted(perm) != list(range(g.n)):
        raise GraphError("not a permutation")
    rows = [0] * g.n
    for v in range(g.n):
        row = 0
        for u in _bits(g.rows[v]):
            row |= 1 << perm[u]
        rows[perm[v]] = row
    return Graph(g.n, tuple(rows))


# ---------------------------------------------------------------------------
# graph6 encoding (bit-exact to the standard format)
# ---------------------------------------------------------------------------


def graph6_encode(g: Graph) -> str:
    """Encode as graph6: size bytes, then column-major upper-triangle bits,
    6 bits per byte (MSB first), each byte offset by 63."""
    n = g.n
    if n <= 62:
        head = [63 + n]
    else:
        # 63 <= n <= 258047: 126 then three 6-bit groups, big-endian.
        head = [126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)]
    bits = []
    for j in range(1, n):
        col = g.rows[j]
        for i in range(j):
            bits.append(col >> i & 1)
    body = []
    for k in range(0, len(bits), 6):
        chunk = bits[k:k + 6]
        chunk += [0] * (6 - len(chunk))
        val = 0
        for b in chunk:
            val = val << 1 | b
        body.append(63 + val)
    return bytes(head + body).decode("ascii")


def graph6_decode(data: str | bytes) -> Graph:
    if isinstance(data, str):
        raw = data.encode("ascii")
    else:
        raw = bytes(data)
    raw = raw.strip()
    if raw.startswith(b">>graph6<<"):
        raw = raw[10:]
    if not raw:
        raise GraphError("empty graph6 input")
    vals = [b - 63 for b in raw]
    if any(v < 0 or v > 63 for v in vals):
        raise GraphError("byte outside graph6 range")
    if vals[0] == 63:
        if len(vals) < 4:
            raise GraphError("truncated graph6 size")
        n = vals[1] << 12 | vals[2] << 6 | vals[3]
        body = vals[4:]
    else:
        n = vals[0]
        body = vals[1:]
    if not 1 <= n <= MAX_VERTICES:
        raise GraphError(f"graph6 order {n} unsupported")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise GraphError(f"graph6 body length {len(body)}, expected {need}")
    bits = []
    for val in body:
        for k in range(5, -1, -1):
            bits.append(val >> k & 1)
    rows = [0] * n
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            idx += 1
    return Graph(n, tuple(rows))


# ---------------------------------------------------------------------------
# DOT and JSON export
# ---------------------------------------------------------------------------


def dot_export(g: Graph) -> str:
    lines = ["graph G {"]
    for v in range(g.n):
        lines.append(f"  {v};")
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_edge_json_obj(g: Graph) -> dict:
    return {"n": g.n, "edges": [[u, v] for u, v in g.edges()]}


def from_edge_json_obj(obj: dict) -> Graph:
    try:
        n = int(obj["n"])
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed edge-list JSON: {exc}") from exc
    return from_edges(n, edges)
