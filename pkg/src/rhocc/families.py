"""Constructors for the extremal graph families.

Every constructor lays vertices out deterministically: big clique first, then
the join block, then small blocks in declaration order, pendant vertex last.
Edge bundles of the form "add k edges between X and Y" always attach to the
lowest-indexed vertices of each block, so repeated construction is
bit-reproducible. Degenerate blocks (zero copies, empty bundles at small r)
are silently empty.

Constructed graphs self-check their declared parameters (order, minimum
degree, and the conditional connectivity recomputed exactly) unless the
caller opts out.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional, Sequence

from . import conn
from .graphs import Graph, GraphError, VertexSet, from_edges, min_degree


class ParameterError(ValueError):
    """Family parameters violate a stated feasibility inequality."""


class SelfCheckError(RuntimeError):
    """A constructed graph failed to realize its declared parameters."""


VERTEX_KIND = "vertex"
EDGE_KIND = "edge"


@dataclass(frozen=True)
class ExtremalParams:
    """(n, r, h, delta) plus the declared connectivity value of either kind."""

    n: int
    r: int
    h: int
    delta: int
    kind: str
    value: int

    def validate(self) -> None:
        if self.kind not in (VERTEX_KIND, EDGE_KIND):
            raise ParameterError(f"unknown kind {self.kind!r}")
        if self.r < 2:
            raise ParameterError("need r >= 2")
        if self.h < 1:
            raise ParameterError("need h >= 1")
        if self.delta < 1:
            raise ParameterError("need delta >= 1")
        if self.kind == VERTEX_KIND:
            if self.value < 1:
                raise ParameterError("need kappa >= 1")
            if self.n < self.value + self.r * (self.h + 1):
                raise ParameterError(
                    f"need n >= kappa + r(h+1) = {self.value + self.r * (self.h + 1)}"
                )
        else:
            if self.h < self.delta:
                raise ParameterError("edge kind needs h >= delta")
            if self.value < self.r - 1:
                raise ParameterError("need lambda >= r - 1")
            floor = (self.value + 1) * (self.h + 1) ** 2
            if self.n < floor:
                raise ParameterError(f"need n >= (lambda+1)(h+1)^2 = {floor}")

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "h": self.h,
            "delta": self.delta,
            "kind": self.kind,
            "value": self.value,
        }


@dataclass(frozen=True)
class LabeledFamily:
    graph: Graph
    blocks: tuple[tuple[str, VertexSet], ...]
    regime: str

    def block(self, name: str) -> VertexSet:
        for key, vs in self.blocks:
            if key == name:
                return vs
        raise KeyError(name)

    def block_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.blocks)

    def blocks_json_obj(self) -> dict:
        return {"blocks": {name: list(vs.members) for name, vs in self.blocks}}

    def nonempty_parts(self) -> list[VertexSet]:
        return [vs for _, vs in self.blocks if len(vs) > 0]


class _Layout:
    """Sequential block allocator producing clique edges and block map."""

    def __init__(self):
        self.blocks: list[tuple[str, list[int]]] = []
        self.edges: list[tuple[int, int]] = []
        self.cursor = 0

    def clique(self, name: str, size: int) -> list[int]:
        verts = list(range(self.cursor, self.cursor + size))
        self.cursor += size
        self.blocks.append((name, verts))
        self.edges.extend(combinations(verts, 2))
        return verts

    def join(self, a: Sequence[int], b: Sequence[int]) -> None:
        self.edges.extend((u, v) for u in a for v in b)

    def connect(self, pairs: Sequence[tuple[int, int]]) -> None:
        self.edges.extend(pairs)

    def build(self, regime: str) -> LabeledFamily:
        n = self.cursor
        g = from_edges(n, self.edges)
        blocks = tuple(
            (name, VertexSet.of(vs, n)) for name, vs in self.blocks
        )
        return LabeledFamily(g, blocks, regime)


def _self_check(fam: LabeledFamily, p: ExtremalParams) -> None:
    g = fam.graph
    if g.n != p.n:
        raise SelfCheckError(f"order {g.n} != declared {p.n}")
    d = min_degree(g)
    if d != p.delta:
        raise SelfCheckError(f"min degree {d} != declared {p.delta}")
    if p.kind == VERTEX_KIND:
        res = conn.kappa_h_r(g, p.r, p.h)
        got = res.value if res.defined else None
    else:
        res = conn.lambda_h_r(g, p.r, p.h)
        got = res.value if res.defined else None
    if got != p.value:
        raise SelfCheckError(
            f"{p.kind} connectivity {got} != declared {p.value}"
        )


# ---------------------------------------------------------------------------
# Vertex-kind family
# ---------------------------------------------------------------------------


def g_kappa_regime(p: ExtremalParams) -> str:
    """Which of the three construction regimes the parameters select."""
    if p.delta <= p.value:
        return "delta<=kappa"
    if p.delta < p.value + p.h:
        return "kappa<delta<kappa+h"
    return "delta>=kappa+h"


def g_kappa(p: ExtremalParams, check: bool = True) -> LabeledFamily:
    """Extremal graph for fixed vertex-kind parameters.

    Three regimes by how delta compares to kappa: the pendant vertex hangs
    off the join block and the K_h block (delta <= kappa), sits inside the
    join with extra edges into K_h (kappa < delta < kappa+h), or disappears
    entirely into r-1 equal small cliques (delta >= kappa+h).
    """
    if p.kind != VERTEX_KIND:
        raise ParameterError("g_kappa needs vertex-kind parameters")
    p.validate()
    kappa, r, h, delta, n = p.value, p.r, p.h, p.delta, p.n
    lay = _Layout()
    regime = g_kappa_regime(p)

    if regime == "delta>=kappa+h":
        small = delta - kappa + 1
        big_size = n - kappa - (r - 1) * small
        if big_size < 1:
            raise ParameterError(
                f"need n - kappa - (r-1)(delta-kappa+1) >= 1, got {big_size}"
            )
        big = lay.clique("big", big_size)
        jn = lay.clique("join", kappa)
        rest = list(big)
        for i in range(r - 1):
            rest += lay.clique(f"small{i}", small)
        lay.join(jn, rest)
    else:
        big_size = n - kappa - (r - 1) * (h + 1)
        big = lay.clique("big", big_size)
        jn = lay.clique("join", kappa)
        joined = list(big)
        for i in range(r - 2):
            joined += lay.clique(f"copy{i}", h + 1)
        kh = lay.clique("kh", h)
        joined += kh
        pend = lay.clique("pendant", 1)
        if regime == "delta<=kappa":
            # Pendant outside the join: delta-1 edges into the join block,
            # one edge into K_h.
            lay.join(jn, joined)
            lay.connect([(pend[0], jn[i]) for i in range(delta - 1)])
            lay.connect([(pend[0], kh[0])])
        else:
            # Pendant inside the join target, plus delta-kappa edges into K_h.
            joined += pend
            lay.join(jn, joined)
            lay.connect([(pend[0], kh[i]) for i in range(delta - kappa)])

    fam = lay.build(regime)
    if check:
        _self_check(fam, p)
    return fam


# ---------------------------------------------------------------------------
# Edge-kind family
# ---------------------------------------------------------------------------


def b_lambda(p: ExtremalParams, check: bool = True) -> LabeledFamily:
    """Extremal graph for fixed edge-kind parameters.

    One large component (big clique joined to a selector clique of
    lambda-r+2 vertices), r-2 copies of K_{h+1}, and a tail K_delta v
    K_{h-delta} carrying the pendant minimum-degree vertex. The selector
    block collects lambda-r+2 edges from one vertex of the first copy (of
    the tail when r = 2) and sends one edge to each remaining small block;
    bundles with non-positive prescribed counts stay empty.
    """
    if p.kind != EDGE_KIND:
        raise ParameterError("b_lambda needs edge-kind parameters")
    p.validate()
    lam, r, h, delta, n = p.value, p.r, p.h, p.delta, p.n
    sel_size = lam - r + 2
    big_size = n - (r - 1) * (h + 1) - sel_size
    if big_size < 1:
        raise ParameterError(
            f"need n - (r-1)(h+1) - (lambda-r+2) >= 1, got {big_size}"
        )
    lay = _Layout()
    big = lay.clique("big", big_size)
    sel = lay.clique("sel", sel_size)
    lay.join(big, sel)
    copies = [lay.clique(f"copy{i}", h + 1) for i in range(r - 2)]
    kdelta = lay.clique("kdelta", delta)
    khd = lay.clique("khd", h - delta)
    lay.join(kdelta, khd)
    pend = lay.clique("pendant", 1)

    lay.connect([(pend[0], v) for v in kdelta])
    # lambda-r+2 edges: one small-side vertex collects an edge from every
    # selector vertex; the first copy hosts it, or the tail when r = 2.
    collector = copies[0][0] if copies else kdelta[0]
    lay.connect([(collector, v) for v in sel])
    # r-2 single edges from the first selector vertex to each remaining copy
    # and to the tail.
    spurs = [c[0] for c in copies[1:]] + ([kdelta[0]] if copies else [])
    lay.connect([(sel[0], v) for v in spurs])

    fam = lay.build("edge")
    if check:
        _self_check(fam, p)
    return fam


# ---------------------------------------------------------------------------
# The wider family the edge proof optimises over
# ---------------------------------------------------------------------------

Target = tuple[str, int]
Attachment = tuple[tuple[int, Target], ...]


def k_family(
    p: ExtremalParams,
    t: int,
    extra: Attachment = (),
    check: bool = True,
) -> LabeledFamily:
    """Member of the clique-plus-small-blocks family containing b_lambda.

    Blocks: big clique K_{n-(r-1)(h+1)}, r-2 copies of K_{h+1}, K_h, and a
    pendant vertex with t edges into K_h (1 <= t <= delta) and delta-t edges
    from the big clique. One fixed big vertex sends a baseline edge to each
    small block; ``extra`` places the remaining lambda-r+1-delta+t edges as
    (big_index, (block, index)) pairs so that total cross edges equal lambda.
    """
    if p.kind != EDGE_KIND:
        raise ParameterError("k_family needs edge-kind parameters")
    p.validate()
    lam, r, h, delta, n = p.value, p.r, p.h, p.delta, p.n
    if not 1 <= t <= delta:
        raise ParameterError(f"need 1 <= t <= delta, got t={t}")
    spare = lam - r + 1 - delta + t
    if spare < 0:
        raise ParameterError(
            f"negative extra bundle lambda-r+1-delta+t = {spare}"
        )
    if len(extra) != spare:
        raise ParameterError(
            f"attachment places {len(extra)} edges, prescribed {spare}"
        )
    big_size = n - (r - 1) * (h + 1)
    lay = _Layout()
    big = lay.clique("big", big_size)
    copies = [lay.clique(f"copy{i}", h + 1) for i in range(r - 2)]
    kh = lay.clique("kh", h)
    pend = lay.clique("pendant", 1)

    lay.connect([(pend[0], kh[i]) for i in range(t)])
    lay.connect([(big[0], c[0]) for c in copies] + [(big[0], kh[0])])
    lay.connect([(big[i], pend[0]) for i in range(delta - t)])

    blocks = {f"copy{i}": c for i, c in enumerate(copies)}
    blocks["kh"] = kh
    blocks["pendant"] = pend
    seen = set()
    host_edges = set()
    for u, v in lay.edges:
        host_edges.add((u, v) if u < v else (v, u))
    for big_idx, (name, idx) in extra:
        if name not in blocks:
            raise ParameterError(f"unknown target block {name!r}")
        tgt_block = blocks[name]
        if not 0 <= big_idx < big_size or not 0 <= idx < len(tgt_block):
            raise ParameterError(f"attachment ({big_idx}, {name}.{idx}) out of range")
        u, v = big[big_idx], tgt_block[idx]
        e = (u, v) if u < v else (v, u)
        if e in host_edges or e in seen:
            raise ParameterError(f"attachment duplicates edge {e}")
        seen.add(e)
        lay.connect([e])

    fam = lay.build("k-family")
    if check:
        _self_check(fam, p)
    return fam


def k_family_members(p: ExtremalParams) -> Iterator[tuple[int, Attachment, LabeledFamily]]:
    """All labeled family members over t and attachment placements.

    Members whose free edges break the declared minimum degree or the
    declared edge-connectivity are filtered out (they fall outside the
    family by definition).
    """
    if p.kind != EDGE_KIND:
        raise ParameterError("k_family_members needs edge-kind parameters")
    p.validate()
    lam, r, h, delta = p.value, p.r, p.h, p.delta
    big_size = p.n - (r - 1) * (h + 1)
    targets: list[Target] = []
    for i in range(r - 2):
        targets += [(f"copy{i}", j) for j in range(h + 1)]
    targets += [("kh", j) for j in range(h)]
    targets += [("pendant", 0)]
    for t in range(1, delta + 1):
        spare = lam - r + 1 - delta + t
        if spare < 0:
            continue
        base = k_family(p, t, extra=(), check=False) if spare == 0 else None
        pool = [(bi, tgt) for bi in range(big_size) for tgt in targets]
        if spare > 0 and len(pool) ** spare > 200000:
            raise ParameterError("attachment enumeration too large")
        for combo in combinations(pool, spare):
            try:
                fam = k_family(p, t, extra=tuple(combo), check=False)
            except ParameterError:
                continue
            g = fam.graph
            if min_degree(g) != delta:
                continue
            if not conn.lambda_equals(g, r, h, lam):
                continue
            yield t, tuple(combo), fam


# ---------------------------------------------------------------------------
# Reference family for classical edge-connectivity
# ---------------------------------------------------------------------------


def f_lambda(n: int, delta: int, lam: int) -> Graph:
    """Two cliques K_{n-delta-1} and K_{delta+1} with lam edges from one
    vertex of the small clique to lam vertices of the big one."""
    if delta < 1:
        raise ParameterError("need delta >= 1")
    if n < delta + 2:
        raise ParameterError("need n >= delta + 2")
    if lam < 1:
        raise ParameterError("need lambda >= 1 (constructor output must be connected)")
    if lam > n - delta - 1:
        raise ParameterError("need lambda <= n - delta - 1")
    lay = _Layout()
    big = lay.clique("big", n - delta - 1)
    small = lay.clique("small", delta + 1)
    lay.connect([(small[0], big[i]) for i in range(lam)])
    return lay.build("f-lambda").graph
