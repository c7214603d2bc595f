"""Spectral radius machinery for small graphs.

The Perron root is computed by power iteration on A + I (primitive for every
connected graph, so bipartite inputs converge too) with an all-ones start
vector and a residual-certified stop: on return max|Ax - rho*x| <= tolerance.
Runs are bitwise deterministic.

For graphs assembled from cliques the quotient matrix of an equitable
partition shares the spectral radius, which gives an independent second route
to rho: the quotient eigenvalue is extracted from the characteristic
polynomial by sign-change bisection, with no general eigensolver involved.

Also here: the edge-rotation shift (Kelmans operation) that strictly
increases rho when moving edges toward a vertex with a larger Perron entry,
the Hong--Shu--Fang/Nikiforov degree bound with its equality class, and two
small arithmetic predicates used by the verification suites.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .graphs import Graph, GraphError, VertexSet, _bits, is_connected


class DisconnectedGraphError(GraphError):
    """Spectral routines here require connected input."""


class ConvergenceError(RuntimeError):
    """Power iteration failed to certify the residual within the budget."""


class NonEquitableError(GraphError):
    """Partition is not equitable; carries the violating (vertex, part)."""

    def __init__(self, vertex: int, part: int, message: str):
        super().__init__(message)
        self.vertex = vertex
        self.part = part


@dataclass(frozen=True)
class SpectralConfig:
    tolerance: float = 1e-12
    comparison_epsilon: float = 1e-9
    max_iterations: int = 10**6

    def __post_init__(self):
        if not 0 < self.tolerance < self.comparison_epsilon < 1:
            raise ValueError("need 0 < tolerance < comparison_epsilon < 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")


DEFAULT_CONFIG = SpectralConfig()


@dataclass(frozen=True)
class PerronData:
    rho: float
    vector: tuple[float, ...]
    residual: float
    iterations: int

    def to_json_obj(self) -> dict:
        return {
            "rho": self.rho,
            "vector": list(self.vector),
            "residual": self.residual,
            "iterations": self.iterations,
        }


def adjacency_matrix(g: Graph) -> np.ndarray:
    rows = np.array(g.rows, dtype=np.uint64)
    cols = np.arange(g.n, dtype=np.uint64)
    return ((rows[:, None] >> cols[None, :]) & 1).astype(np.float64)


def perron(g: Graph, cfg: SpectralConfig = DEFAULT_CONFIG) -> PerronData:
    """Spectral radius and Perron vector of a connected graph.

    Iterates on A + I from the all-ones vector, normalising to unit max
    entry; the returned residual max|Ax - rho*x| is certified <= tolerance.
    """
    if g.n == 1:
        return PerronData(0.0, (1.0,), 0.0, 0)
    if not is_connected(g):
        raise DisconnectedGraphError("perron requires a connected graph")
    a = adjacency_matrix(g)
    x = np.ones(g.n, dtype=np.float64)
    iterations = 0
    while iterations < cfg.max_iterations:
        y = a @ x
        iterations += 1
        mu = float(x @ y) / float(x @ x)
        resid = float(np.max(np.abs(y - mu * x)))
        if resid <= cfg.tolerance:
            x = x / float(np.max(x))
            return PerronData(mu, tuple(float(t) for t in x), resid, iterations)
        z = y + x  # (A + I) x
        x = z / float(np.max(z))
    raise ConvergenceError(
        f"no convergence within {cfg.max_iterations} iterations (residual {resid:.3e})"
    )


# ---------------------------------------------------------------------------
# Equitable partitions and quotient matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientMatrix:
    """cells[i][j] = number of neighbours in part j of any vertex of part i."""

    cells: tuple[tuple[int, ...], ...]
    part_sizes: tuple[int, ...]
    part_map: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.cells)


def _normalize_parts(g: Graph, parts: Iterable) -> list[int]:
    masks = []
    for p in parts:
        if isinstance(p, VertexSet):
            masks.append(p.mask)
        elif isinstance(p, int):
            masks.append(p)
        else:
            masks.append(VertexSet.of(p, g.n).mask)
    union = 0
    for m in masks:
        if m == 0:
            raise GraphError("empty part in partition")
        if m & union:
            raise GraphError("parts overlap")
        union |= m
    if union != g.vertex_mask:
        raise GraphError("parts do not cover the vertex set")
    return masks


def equitable_quotient(g: Graph, parts: Iterable) -> QuotientMatrix:
    """Quotient matrix of an equitable partition, verified cell by cell."""
    masks = _normalize_parts(g, parts)
    k = len(masks)
    part_of = [0] * g.n
    for i, m in enumerate(masks):
        for v in _bits(m):
            part_of[v] = i
    cells = [[0] * k for _ in range(k)]
    for i, m in enumerate(masks):
        first = (m & -m).bit_length() - 1
        for j in range(k):
            cells[i][j] = (g.rows[first] & masks[j]).bit_count()
        for v in _bits(m):
            for j in range(k):
                c = (g.rows[v] & masks[j]).bit_count()
                if c != cells[i][j]:
                    raise NonEquitableError(
                        v, j,
                        f"vertex {v} has {c} neighbours in part {j}, "
                        f"expected {cells[i][j]}",
                    )
    return QuotientMatrix(
        tuple(tuple(row) for row in cells),
        tuple(m.bit_count() for m in masks),
        tuple(part_of),
    )


def refine_equitable(g: Graph, parts: Iterable) -> list[VertexSet]:
    """Coarsest equitable partition refining ``parts`` (colour refinement)."""
    masks = _normalize_parts(g, parts)
    while True:
        color = {}
        for i, m in enumerate(masks):
            for v in _bits(m):
                color[v] = i
        sig = {}
        for v in range(g.n):
            counts = [0] * len(masks)
            for u in _bits(g.rows[v]):
                counts[color[u]] += 1
            sig[v] = (color[v], tuple(counts))
        buckets: dict[tuple, int] = {}
        new_masks = []
        for v in sorted(sig, key=lambda v: (sig[v], v)):
            b = buckets.setdefault(sig[v], len(new_masks))
            if b == len(new_masks):
                new_masks.append(0)
            new_masks[b] |= 1 << v
        if len(new_masks) == len(masks):
            return [VertexSet(m, g.n) for m in masks]
        masks = new_masks


def _det(mat: list[list[float]]) -> float:
    """Determinant by partial-pivot elimination; k <= 8 keeps this exact enough."""
    a = [row[:] for row in mat]
    k = len(a)
    det = 1.0
    for col in range(k):
        piv = max(range(col, k), key=lambda r: abs(a[r][col]))
        if abs(a[piv][col]) == 0.0:
            return 0.0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1.0 / a[col][col]
        for r in range(col + 1, k):
            f = a[r][col] * inv
            if f:
                for c in range(col, k):
                    a[r][c] -= f * a[col][c]
    return det


def quotient_spectral_radius(q: QuotientMatrix, tolerance: float = 1e-13) -> float:
    """Largest real eigenvalue of the quotient matrix.

    Bracket the Perron root of the (irreducible, nonnegative) quotient with a
    short power pass on B + I, guard the bracket by expanding until the
    characteristic polynomial changes sign, then bisect det(B - lambda*I).
    """
    k = q.k
    if k > 8:
        raise GraphError(f"quotient size {k} exceeds 8")
    n = sum(q.part_sizes)
    b = [[float(c) for c in row] for row in q.cells]
    if k == 1:
        return b[0][0]

    def charpoly(lam: float) -> float:
        # det(lambda*I - B): positive beyond the largest real root.
        mat = [[(lam if i == j else 0.0) - b[i][j] for j in range(k)] for i in range(k)]
        return _det(mat)

    # Rough localisation via power iteration on B + I.
    x = [1.0] * k
    est = 1.0
    for _ in range(400):
        y = [sum(b[i][j] * x[j] for j in range(k)) + x[i] for i in range(k)]
        top = max(y)
        est = top
        x = [t / top for t in y]
    est -= 1.0
    hi = min(float(n - 1), est) + 1e-6
    lo = max(0.0, est - 1e-6)
    # Deflation guard: widen until the bracket straddles the root.
    width = 1e-6
    while charpoly(hi) <= 0.0:
        width *= 4
        hi = min(hi + width, float(n - 1) + 1.0)
        if hi >= n:
            break
    width = 1e-6
    while charpoly(lo) >= 0.0 and lo > 0.0:
        width *= 4
        lo = max(lo - width, 0.0)
    flo = charpoly(lo)
    if flo > 0.0:
        # Root at (or numerically indistinguishable from) the lower end.
        return lo
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tolerance:
            break
        if charpoly(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# Edge rotation (Kelmans shift)
# ---------------------------------------------------------------------------


def kelmans_shift(g: Graph, u: int, v: int, moved: VertexSet | Iterable[int]) -> Graph:
    """Delete v--w and add u--w for every w in ``moved``.

    ``moved`` must be a nonempty subset of N(v) \\ N(u) avoiding u and v;
    when the Perron entry of u is at least that of v, the shift strictly
    increases the spectral radius of a connected graph.
    """
    if isinstance(moved, VertexSet):
        mmask = moved.mask
    else:
        mmask = VertexSet.of(moved, g.n).mask
    if u == v or not (0 <= u < g.n and 0 <= v < g.n):
        raise GraphError("u and v must be distinct vertices")
    if mmask == 0:
        raise GraphError("moved set is empty")
    if mmask >> u & 1 or mmask >> v & 1:
        raise GraphError("moved set may not contain u or v")
    allowed = g.rows[v] & ~g.rows[u]
    if mmask & ~allowed:
        raise GraphError("moved set must lie in N(v) minus N(u)")
    rows = list(g.rows)
    for w in _bits(mmask):
        rows[v] &= ~(1 << w)
        rows[w] &= ~(1 << v)
        rows[u] |= 1 << w
        rows[w] |= 1 << u
    return Graph(g.n, tuple(rows))


# ---------------------------------------------------------------------------
# Degree-based spectral bound and arithmetic predicates
# ---------------------------------------------------------------------------


def hsf_bound(n: int, m: int, delta: int) -> float:
    """Hong--Shu--Fang/Nikiforov bound (delta-1)/2 + sqrt(2m - n*delta + (delta+1)^2/4)."""
    if delta < 1:
        raise ValueError("bound requires minimum degree >= 1")
    radicand = 2 * m - n * delta + (delta + 1) ** 2 / 4.0
    if radicand < 0:
        raise ValueError(f"negative radicand {radicand}; need 2m >= n*delta - (delta+1)^2/4")
    return (delta - 1) / 2.0 + math.sqrt(radicand)


def hsf_equality_class(g: Graph) -> bool:
    """True iff G is delta-regular or bidegreed with degrees in {delta, n-1}."""
    degs = set(g.degree(v) for v in range(g.n))
    if len(degs) == 1:
        return True
    if len(degs) == 2:
        return degs == {min(degs), g.n - 1}
    return False


def product_gap_holds(a: float, b: float, t: float) -> bool:
    """Whether a*b > (a+t)*(b-t) for reals with b > a > t >= 1 and b - a < 1.

    Equivalent to t > b - a, so the predicate always holds under the
    precondition; it exists as a standalone test target.
    """
    if not (b > a > t >= 1):
        raise ValueError("need b > a > t >= 1")
    if not abs(a - b) < 1:
        raise ValueError("need |a - b| < 1")
    return a * b > (a + t) * (b - t)


def binomial_shift_increases(a: int, b: int) -> bool:
    """Whether C(a,2)+C(b,2) < C(a+1,2)+C(b-1,2); needs a >= b >= 3.

    The difference is a - b + 1 > 0, so this holds for every valid input.
    """
    if not (a >= b >= 3):
        raise ValueError("need a >= b >= 3")
    return math.comb(a, 2) + math.comb(b, 2) < math.comb(a + 1, 2) + math.comb(b - 1, 2)
