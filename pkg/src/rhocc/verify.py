"""Extremality verification over conditional-connectivity graph classes.

A class is the set of labeled graphs on n vertices that are connected, have
minimum degree exactly delta, and realize a prescribed kappa_h_r or
lambda_h_r value. Exhaustive mode sweeps an edge-bitmask range in fixed-size
shards (vectorised popcount prefilters, then per-graph checks in the order
edge-count window, minimum degree, connectivity, conditional connectivity),
tracks the spectral-radius maximizers in an epsilon band, and keeps the best
value strictly below the band so the runner-up gap is exact. Shard results
merge associatively, so reports are byte-identical for any shard interleaving
or thread count (wall clock aside), and completed shards can be checkpointed
to JSON lines and resumed.

Randomized modes: uniform mask sampling, and a seeded in-class random walk
(single edge toggles, moves that leave the class rejected) that starts at the
constructed extremal graph and records any spectral-radius improvement. A
degree-based upper bound screens walk states that provably cannot improve on
the running maximum, so most states never need an eigenvalue iteration.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import conn
from .families import (
    EDGE_KIND,
    VERTEX_KIND,
    ExtremalParams,
    ParameterError,
    b_lambda,
    g_kappa,
    k_family_members,
)
from .graphs import (
    Graph,
    are_isomorphic,
    graph6_decode,
    graph6_encode,
    is_connected,
    min_degree,
)
from .spectral import DEFAULT_CONFIG, SpectralConfig, hsf_bound, perron

SHARD_BITS = 18
EXHAUSTIVE_MAX_N = 8
LONG_RUNNING_THRESHOLD = 1 << 24

REPORT_SCHEMA = "rhocc-verification-report/1"


def _graph_trusted(n: int, rows: tuple[int, ...]) -> Graph:
    """Bypass invariant validation; caller guarantees symmetric loop-free rows."""
    g = object.__new__(Graph)
    object.__setattr__(g, "n", n)
    object.__setattr__(g, "rows", rows)
    return g


@lru_cache(maxsize=None)
def _pair_layout(n: int) -> tuple[tuple[tuple[int, int], ...], tuple[int, ...]]:
    pairs = tuple((i, j) for i in range(n) for j in range(i + 1, n))
    inc = [0] * n
    for idx, (i, j) in enumerate(pairs):
        inc[i] |= 1 << idx
        inc[j] |= 1 << idx
    return pairs, tuple(inc)


def mask_to_rows(mask: int, n: int) -> tuple[int, ...]:
    pairs, _ = _pair_layout(n)
    rows = [0] * n
    while mask:
        b = mask & -mask
        u, v = pairs[b.bit_length() - 1]
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        mask ^= b
    return tuple(rows)


def rows_to_mask(rows: Sequence[int], n: int) -> int:
    pairs, _ = _pair_layout(n)
    mask = 0
    for idx, (u, v) in enumerate(pairs):
        if rows[u] >> v & 1:
            mask |= 1 << idx
    return mask


# ---------------------------------------------------------------------------
# Search space and filter statistics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SearchSpace:
    n: int
    lo: int
    hi: int
    kind: str
    r: int
    h: int
    value: int
    delta: int

    def __post_init__(self):
        if self.n > EXHAUSTIVE_MAX_N:
            raise ParameterError(
                f"exhaustive enumeration capped at n = {EXHAUSTIVE_MAX_N}"
            )
        span = 1 << (self.n * (self.n - 1) // 2)
        if not 0 <= self.lo <= self.hi <= span:
            raise ParameterError(f"mask range [{self.lo}, {self.hi}) out of bounds")

    @classmethod
    def full(cls, p: ExtremalParams) -> "SearchSpace":
        span = 1 << (p.n * (p.n - 1) // 2)
        return cls(p.n, 0, span, p.kind, p.r, p.h, p.value, p.delta)


@dataclass
class FilterStats:
    total: int = 0
    rejected_edge_window: int = 0
    rejected_min_degree: int = 0
    rejected_connectivity: int = 0
    rejected_conditional: int = 0
    examined: int = 0

    def __add__(self, other: "FilterStats") -> "FilterStats":
        return FilterStats(
            self.total + other.total,
            self.rejected_edge_window + other.rejected_edge_window,
            self.rejected_min_degree + other.rejected_min_degree,
            self.rejected_connectivity + other.rejected_connectivity,
            self.rejected_conditional + other.rejected_conditional,
            self.examined + other.examined,
        )

    def to_json_obj(self) -> dict:
        return {
            "total": self.total,
            "rejected_edge_window": self.rejected_edge_window,
            "rejected_min_degree": self.rejected_min_degree,
            "rejected_connectivity": self.rejected_connectivity,
            "rejected_conditional": self.rejected_conditional,
            "examined": self.examined,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "FilterStats":
        return cls(
            obj["total"],
            obj["rejected_edge_window"],
            obj["rejected_min_degree"],
            obj["rejected_connectivity"],
            obj["rejected_conditional"],
            obj["examined"],
        )


def _min_cross_pairs(total: int, parts: int, size: int) -> int:
    # Unbalanced allocation maximises the sum of squares, minimising cross pairs.
    big = total - (parts - 1) * size
    sq = big * big + (parts - 1) * size * size
    return (total * total - sq) // 2


def class_edge_window(space: SearchSpace) -> tuple[int, int]:
    """Sound [m_lo, m_hi] window every class member satisfies."""
    n, r, size = space.n, space.r, space.h + 1
    lo = max(n - 1, (n * space.delta + 1) // 2)
    cap = n * (n - 1) // 2
    if space.kind == VERTEX_KIND:
        hi = cap - _min_cross_pairs(n - space.value, r, size)
    else:
        big = n - (r - 1) * size
        intra = big * (big - 1) // 2 + (r - 1) * size * (size - 1) // 2
        hi = intra + space.value
    # One vertex pinned at degree delta caps the total as well.
    hi = min(hi, (space.delta + (n - 1) * (n - 1)) // 2, cap)
    return lo, hi


def _conditional_ok(g: Graph, kind: str, r: int, h: int, value: int) -> bool:
    if kind == VERTEX_KIND:
        return conn.kappa_equals(g, r, h, value)
    return conn.lambda_equals(g, r, h, value)


def enumerate_class(
    space: SearchSpace,
    visitor: Callable[[int, Graph], None],
    chunk: int = 1 << 16,
) -> FilterStats:
    """Visit every labeled class member in [lo, hi) exactly once.

    Filter order: edge-count window, minimum degree, connectivity,
    conditional connectivity. Rejection counts are reported per filter.
    """
    n = space.n
    _, inc = _pair_layout(n)
    mlo, mhi = class_edge_window(space)
    stats = FilterStats()
    inc_np = [np.uint64(m) for m in inc]
    for start in range(space.lo, space.hi, chunk):
        stop = min(start + chunk, space.hi)
        arr = np.arange(start, stop, dtype=np.uint64)
        stats.total += stop - start
        pc = np.bitwise_count(arr)
        window = (pc >= mlo) & (pc <= mhi)
        stats.rejected_edge_window += int((~window).sum())
        arr = arr[window]
        if arr.size == 0:
            continue
        degs = np.empty((n, arr.size), dtype=np.uint8)
        for v in range(n):
            degs[v] = np.bitwise_count(arr & inc_np[v])
        degree_ok = degs.min(axis=0) == space.delta
        stats.rejected_min_degree += int((~degree_ok).sum())
        for mask in arr[degree_ok].tolist():
            rows = mask_to_rows(mask, n)
            g = _graph_trusted(n, rows)
            if not is_connected(g):
                stats.rejected_connectivity += 1
                continue
            if not _conditional_ok(g, space.kind, space.r, space.h, space.value):
                stats.rejected_conditional += 1
                continue
            stats.examined += 1
            visitor(mask, g)
    return stats


# ---------------------------------------------------------------------------
# Maximizer tracking with an exact runner-up
# ---------------------------------------------------------------------------


class MaxTracker:
    """Streaming tracker of the rho maximizer band.

    Keeps every (rho, graph6) entry within 2*eps of the running maximum and
    the largest value ever dropped below that horizon. On finalisation the
    band is {rho >= max - eps} and the runner-up (largest value strictly
    below the band) is exact: dropped entries sit below final_max - 2*eps,
    so nothing that could be the runner-up is ever discarded.
    """

    def __init__(self, eps: float):
        self.eps = eps
        self.best: Optional[float] = None
        self.entries: list[tuple[float, str]] = []
        self.dropped: Optional[float] = None

    def add(self, rho: float, g6: str) -> None:
        if self.best is None or rho > self.best:
            self.best = rho
            self._trim()
        if rho >= self.best - 2 * self.eps:
            self.entries.append((rho, g6))
        else:
            if self.dropped is None or rho > self.dropped:
                self.dropped = rho

    def _trim(self) -> None:
        floor = self.best - 2 * self.eps
        keep = []
        for rho, g6 in self.entries:
            if rho >= floor:
                keep.append((rho, g6))
            elif self.dropped is None or rho > self.dropped:
                self.dropped = rho
        self.entries = keep

    def merge(self, other: "MaxTracker") -> None:
        if other.best is not None:
            if self.best is None or other.best > self.best:
                self.best = other.best
        if other.dropped is not None:
            if self.dropped is None or other.dropped > self.dropped:
                self.dropped = other.dropped
        self.entries.extend(other.entries)
        if self.best is not None:
            self._trim()

    def band(self) -> list[tuple[float, str]]:
        if self.best is None:
            return []
        floor = self.best - self.eps
        return sorted((e for e in self.entries if e[0] >= floor), key=lambda e: e[1])

    def runner_value(self) -> Optional[float]:
        if self.best is None:
            return None
        floor = self.best - self.eps
        below = [rho for rho, _ in self.entries if rho < floor]
        cands = below + ([self.dropped] if self.dropped is not None else [])
        return max(cands) if cands else None

    def to_json_obj(self) -> dict:
        return {
            "best": self.best,
            "entries": [[rho, g6] for rho, g6 in sorted(self.entries, key=lambda e: e[1])],
            "dropped": self.dropped,
        }

    @classmethod
    def from_json_obj(cls, obj: dict, eps: float) -> "MaxTracker":
        t = cls(eps)
        t.best = obj["best"]
        t.entries = [(rho, g6) for rho, g6 in obj["entries"]]
        t.dropped = obj["dropped"]
        return t


def _iso_representatives(g6_list: Iterable[str]) -> list[str]:
    """One lexicographically-smallest graph6 string per isomorphism class."""
    reps: list[tuple[Graph, tuple, str]] = []
    for g6 in sorted(set(g6_list)):
        g = graph6_decode(g6)
        inv = g.degree_sequence()
        hit = False
        for rep, rinv, _ in reps:
            if rinv == inv and are_isomorphic(g, rep):
                hit = True
                break
        if not hit:
            reps.append((g, inv, g6))
    return [g6 for _, _, g6 in reps]


# ---------------------------------------------------------------------------
# Verification report
# ---------------------------------------------------------------------------


@dataclass
class VerificationReport:
    target: str
    params: dict
    mode: str
    seed: object
    examined: int
    sampled: Optional[int]
    statistics: Optional[dict]
    rho_max: Optional[float]
    construction_graph6: str
    construction_rho: float
    maximizers: list[str]
    maximizer_count: int
    unique_up_to_iso: Optional[bool]
    matches_construction: bool
    runner_up_gap: Optional[float]
    counterexample_found: bool
    wall_clock: float
    schema: str = REPORT_SCHEMA

    def to_json_obj(self, include_wall_clock: bool = True) -> dict:
        obj = {
            "schema": self.schema,
            "target": self.target,
            "params": self.params,
            "mode": self.mode,
            "seed": self.seed,
            "examined": self.examined,
            "sampled": self.sampled,
            "statistics": self.statistics,
            "rho_max": self.rho_max,
            "construction_graph6": self.construction_graph6,
            "construction_rho": self.construction_rho,
            "maximizers": self.maximizers,
            "maximizer_count": self.maximizer_count,
            "unique_up_to_iso": self.unique_up_to_iso,
            "matches_construction": self.matches_construction,
            "runner_up_gap": self.runner_up_gap,
            "counterexample_found": self.counterexample_found,
        }
        if include_wall_clock:
            obj["wall_clock"] = self.wall_clock
        return obj

    def to_json(self, include_wall_clock: bool = True) -> str:
        return json.dumps(
            self.to_json_obj(include_wall_clock), sort_keys=True, indent=2
        )


def _band_summary(
    tracker: MaxTracker, construction: Graph, cfg: SpectralConfig
) -> tuple[Optional[float], list[str], int, Optional[bool], bool, Optional[float]]:
    """(rho_max, reps, band size, unique, matches, runner_gap) from a tracker."""
    band = tracker.band()
    if not band:
        return None, [], 0, None, False, None
    rho_max = max(rho for rho, _ in band)
    reps = _iso_representatives(g6 for _, g6 in band)
    unique = len(reps) == 1
    matches = all(
        are_isomorphic(graph6_decode(g6), construction) for g6 in reps
    )
    runner = tracker.runner_value()
    gap = None if runner is None else rho_max - runner
    return rho_max, reps, len(band), unique, matches, gap


# ---------------------------------------------------------------------------
# Exhaustive sharded enumeration
# ---------------------------------------------------------------------------


def _shard_record(space_args: tuple, eps_tol: tuple[float, float]) -> dict:
    """Run one shard; returns the checkpoint record for it."""
    n, lo, hi, kind, r, h, value, delta = space_args
    tolerance, eps = eps_tol
    cfg = SpectralConfig(tolerance=tolerance, comparison_epsilon=eps)
    space = SearchSpace(n, lo, hi, kind, r, h, value, delta)
    tracker = MaxTracker(eps)

    def visit(mask: int, g: Graph) -> None:
        rho = perron(g, cfg).rho
        tracker.add(rho, graph6_encode(g))

    stats = enumerate_class(space, visit)
    band = tracker.band()
    return {
        "range": [lo, hi],
        "examined": stats.examined,
        "local_max": tracker.best,
        "maximizers": [g6 for _, g6 in band],
        "tracker": tracker.to_json_obj(),
        "stats": stats.to_json_obj(),
    }


def _shard_grid(lo: int, hi: int) -> list[tuple[int, int]]:
    step = 1 << SHARD_BITS
    out = []
    start = lo
    while start < hi:
        out.append((start, min(start + step, hi)))
        start += step
    return out


def _load_checkpoint(path: Path) -> dict[tuple[int, int], dict]:
    done = {}
    if path.exists():
        for line in path.read_text().splitlines():
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            done[tuple(rec["range"])] = rec
    return done


def _run_shards(
    space: SearchSpace,
    cfg: SpectralConfig,
    threads: int,
    checkpoint: Optional[Path],
) -> tuple[MaxTracker, FilterStats]:
    grid = _shard_grid(space.lo, space.hi)
    done = _load_checkpoint(checkpoint) if checkpoint else {}
    pending = [rng for rng in grid if rng not in done]
    args = [
        ((space.n, lo, hi, space.kind, space.r, space.h, space.value, space.delta),
         (cfg.tolerance, cfg.comparison_epsilon))
        for lo, hi in pending
    ]
    records = dict(done)
    if threads > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for rec in pool.map(_shard_record_star, args):
                records[tuple(rec["range"])] = rec
                if checkpoint:
                    with checkpoint.open("a") as fh:
                        fh.write(json.dumps(rec, sort_keys=True) + "\n")
    else:
        for a in args:
            rec = _shard_record_star(a)
            records[tuple(rec["range"])] = rec
            if checkpoint:
                with checkpoint.open("a") as fh:
                    fh.write(json.dumps(rec, sort_keys=True) + "\n")
    tracker = MaxTracker(cfg.comparison_epsilon)
    stats = FilterStats()
    for rng in grid:
        rec = records[rng]
        tracker.merge(MaxTracker.from_json_obj(rec["tracker"], cfg.comparison_epsilon))
        stats = stats + FilterStats.from_json_obj(rec["stats"])
    return tracker, stats


def _shard_record_star(a):
    return _shard_record(*a)


# ---------------------------------------------------------------------------
# Vertex-kind verification
# ---------------------------------------------------------------------------


def verify_vertex_extremality(
    p: ExtremalParams,
    mode: str = "exhaustive",
    *,
    edit_distance: int = 2,
    threads: int = 1,
    checkpoint: Optional[Path] = None,
    long_running: bool = False,
    cfg: SpectralConfig = DEFAULT_CONFIG,
) -> VerificationReport:
    """Check that the constructed vertex-kind family maximizes rho in its class.

    Exhaustive mode sweeps every labeled graph; restricted mode only sweeps
    graphs within ``edit_distance`` edge toggles of the construction (useful
    where full exhaustion is out of reach).
    """
    if p.kind != VERTEX_KIND:
        raise ParameterError("vertex-kind parameters required")
    p.validate()
    t0 = time.perf_counter()
    fam = g_kappa(p)
    construction = fam.graph
    c_rho = perron(construction, cfg).rho
    c_g6 = graph6_encode(construction)

    if mode == "exhaustive":
        space = SearchSpace.full(p)
        if space.hi - space.lo > LONG_RUNNING_THRESHOLD and not long_running:
            raise ParameterError(
                "mask space exceeds 2^24; pass long_running to confirm"
            )
        tracker, stats = _run_shards(space, cfg, threads, checkpoint)
        sampled = space.hi - space.lo
        stats_obj = stats.to_json_obj()
        examined = stats.examined
    elif mode == "restricted":
        tracker = MaxTracker(cfg.comparison_epsilon)
        examined = 0
        sampled = 0
        for mask, g in _edit_ball(construction, edit_distance):
            sampled += 1
            if min_degree(g) != p.delta or not is_connected(g):
                continue
            if not _conditional_ok(g, p.kind, p.r, p.h, p.value):
                continue
            examined += 1
            tracker.add(perron(g, cfg).rho, graph6_encode(g))
        stats_obj = None
    else:
        raise ParameterError(f"unknown mode {mode!r}")

    rho_max, reps, count, unique, matches, gap = _band_summary(tracker, construction, cfg)
    counterexample = not matches or (
        rho_max is not None and rho_max > c_rho + cfg.comparison_epsilon
    )
    return VerificationReport(
        target="vertex-extremal",
        params=p.to_json_obj(),
        mode=mode if mode != "restricted" else f"restricted:{edit_distance}",
        seed=None,
        examined=examined,
        sampled=sampled,
        statistics=stats_obj,
        rho_max=rho_max,
        construction_graph6=c_g6,
        construction_rho=c_rho,
        maximizers=reps,
        maximizer_count=count,
        unique_up_to_iso=unique,
        matches_construction=matches,
        runner_up_gap=gap,
        counterexample_found=counterexample,
        wall_clock=time.perf_counter() - t0,
    )


def _edit_ball(g: Graph, radius: int):
    """All graphs within ``radius`` edge toggles of g (including g itself)."""
    from itertools import combinations

    n = g.n
    pairs, _ = _pair_layout(n)
    base = rows_to_mask(g.rows, n)
    seen = set()
    for k in range(0, radius + 1):
        for combo in combinations(range(len(pairs)), k):
            mask = base
            for idx in combo:
                mask ^= 1 << idx
            if mask in seen:
                continue
            seen.add(mask)
            yield mask, _graph_trusted(n, mask_to_rows(mask, n))


# ---------------------------------------------------------------------------
# Edge-kind verification
# ---------------------------------------------------------------------------


@dataclass
class AdversaryRecord:
    seed: int
    steps: int
    accepted: int
    evaluated: int
    best_rho: float
    best_graph6: str
    improved: bool

    def to_json_obj(self) -> dict:
        return {
            "seed": self.seed,
            "steps": self.steps,
            "accepted": self.accepted,
            "evaluated": self.evaluated,
            "best_rho": self.best_rho,
            "best_graph6": self.best_graph6,
            "improved": self.improved,
        }


def random_adversary(
    p: ExtremalParams,
    iterations: int,
    seed: int,
    *,
    cfg: SpectralConfig = DEFAULT_CONFIG,
    restart_every: int = 10_000,
) -> AdversaryRecord:
    """Seeded in-class random walk hunting for a spectral-radius improvement.

    Starts at the constructed extremal graph; each step toggles one random
    vertex pair and rejects the move if the result leaves the class. States
    whose degree-based rho bound cannot reach the running maximum are skipped
    without an eigenvalue solve; the reported maximum is still exact over all
    visited members.
    """
    p.validate()
    fam = g_kappa(p) if p.kind == VERTEX_KIND else b_lambda(p)
    start = fam.graph
    n = p.n
    rng = random.Random(seed)
    rows = list(start.rows)
    base_rho = perron(start, cfg).rho
    best_rho = base_rho
    best_g6 = graph6_encode(start)
    member_cache: dict[tuple[int, ...], bool] = {tuple(rows): True}
    rho_cache: dict[tuple[int, ...], float] = {tuple(rows): base_rho}
    accepted = 0
    evaluated = 1

    def in_class(rt: tuple[int, ...]) -> bool:
        hit = member_cache.get(rt)
        if hit is not None:
            return hit
        g = _graph_trusted(n, rt)
        ok = (
            min(r.bit_count() for r in rt) == p.delta
            and is_connected(g)
            and _conditional_ok(g, p.kind, p.r, p.h, p.value)
        )
        member_cache[rt] = ok
        return ok

    for step in range(iterations):
        if restart_every and step > 0 and step % restart_every == 0:
            rows = list(start.rows)
        u = rng.randrange(n)
        v = rng.randrange(n - 1)
        if v >= u:
            v += 1
        rows[u] ^= 1 << v
        rows[v] ^= 1 << u
        rt = tuple(rows)
        if not in_class(rt):
            rows[u] ^= 1 << v
            rows[v] ^= 1 << u
            continue
        accepted += 1
        rho = rho_cache.get(rt)
        if rho is None:
            m = sum(r.bit_count() for r in rt) // 2
            if hsf_bound(n, m, p.delta) < best_rho - cfg.comparison_epsilon:
                continue
            rho = perron(_graph_trusted(n, rt), cfg).rho
            rho_cache[rt] = rho
            evaluated += 1
        if rho > best_rho:
            best_rho = rho
            best_g6 = graph6_encode(_graph_trusted(n, rt))

    return AdversaryRecord(
        seed=seed,
        steps=iterations,
        accepted=accepted,
        evaluated=evaluated,
        best_rho=best_rho,
        best_graph6=best_g6,
        improved=best_rho > base_rho + cfg.comparison_epsilon,
    )


def _adversary_star(a):
    p_obj, iterations, seed, tol, eps = a
    p = ExtremalParams(**p_obj)
    return random_adversary(
        p, iterations, seed, cfg=SpectralConfig(tolerance=tol, comparison_epsilon=eps)
    )


def verify_edge_extremality(
    p: ExtremalParams,
    mode: str = "randomized",
    *,
    iterations: int = 100_000,
    seeds: Sequence[int] = (42,),
    threads: int = 1,
    checkpoint: Optional[Path] = None,
    long_running: bool = False,
    cfg: SpectralConfig = DEFAULT_CONFIG,
) -> VerificationReport:
    """Check that the constructed edge-kind family maximizes rho in its class.

    Modes: ``randomized`` (uniform mask sampling), ``adversary`` (seeded
    in-class random walks), ``exhaustive`` (full mask sweep; gated behind
    ``long_running`` above 2^24 masks).
    """
    if p.kind != EDGE_KIND:
        raise ParameterError("edge-kind parameters required")
    p.validate()
    t0 = time.perf_counter()
    fam = b_lambda(p)
    construction = fam.graph
    c_rho = perron(construction, cfg).rho
    c_g6 = graph6_encode(construction)
    stats_obj = None
    runner_gap = None

    if mode == "exhaustive":
        space = SearchSpace.full(p)
        if space.hi - space.lo > LONG_RUNNING_THRESHOLD and not long_running:
            raise ParameterError(
                "mask space exceeds 2^24; pass long_running to confirm"
            )
        tracker, stats = _run_shards(space, cfg, threads, checkpoint)
        rho_max, reps, count, unique, matches, runner_gap = _band_summary(
            tracker, construction, cfg
        )
        examined = stats.examined
        sampled = space.hi - space.lo
        stats_obj = stats.to_json_obj()
        seed_field = None
        counterexample = not matches or (
            rho_max is not None and rho_max > c_rho + cfg.comparison_epsilon
        )
    elif mode == "randomized":
        seed = seeds[0]
        rng = random.Random(seed)
        nbits = p.n * (p.n - 1) // 2
        space = SearchSpace.full(p)
        mlo, mhi = class_edge_window(space)
        tracker = MaxTracker(cfg.comparison_epsilon)
        tracker.add(c_rho, c_g6)
        examined = 0
        for _ in range(iterations):
            mask = rng.getrandbits(nbits)
            if not mlo <= mask.bit_count() <= mhi:
                continue
            rows = mask_to_rows(mask, p.n)
            g = _graph_trusted(p.n, rows)
            if min(r.bit_count() for r in rows) != p.delta:
                continue
            if not is_connected(g):
                continue
            if not _conditional_ok(g, p.kind, p.r, p.h, p.value):
                continue
            examined += 1
            tracker.add(perron(g, cfg).rho, graph6_encode(g))
        rho_max, reps, count, unique, matches, runner_gap = _band_summary(
            tracker, construction, cfg
        )
        sampled = iterations
        seed_field = seed
        counterexample = rho_max is not None and rho_max > c_rho + cfg.comparison_epsilon
    elif mode == "adversary":
        args = [
            (p.to_json_obj(), iterations, s, cfg.tolerance, cfg.comparison_epsilon)
            for s in seeds
        ]
        if threads > 1 and len(args) > 1:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                recs = list(pool.map(_adversary_star, args))
        else:
            recs = [_adversary_star(a) for a in args]
        tracker = MaxTracker(cfg.comparison_epsilon)
        for rec in recs:
            tracker.add(rec.best_rho, rec.best_graph6)
        rho_max, reps, count, unique, matches, _ = _band_summary(
            tracker, construction, cfg
        )
        examined = sum(rec.accepted for rec in recs)
        sampled = sum(rec.steps for rec in recs)
        stats_obj = {"chains": [rec.to_json_obj() for rec in recs]}
        seed_field = list(seeds)
        counterexample = any(rec.improved for rec in recs)
    else:
        raise ParameterError(f"unknown mode {mode!r}")

    return VerificationReport(
        target="edge-extremal",
        params=p.to_json_obj(),
        mode=mode,
        seed=seed_field,
        examined=examined,
        sampled=sampled,
        statistics=stats_obj,
        rho_max=rho_max,
        construction_graph6=c_g6,
        construction_rho=c_rho,
        maximizers=reps,
        maximizer_count=count,
        unique_up_to_iso=unique,
        matches_construction=matches,
        runner_up_gap=runner_gap,
        counterexample_found=counterexample,
        wall_clock=time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# Family-restricted maximum and bracket sweeps
# ---------------------------------------------------------------------------


def verify_family_maximum(
    p: ExtremalParams, *, cfg: SpectralConfig = DEFAULT_CONFIG
) -> VerificationReport:
    """Maximum rho over the clique-plus-small-blocks family must be attained
    exactly at the constructed extremal graph (up to isomorphism)."""
    if p.kind != EDGE_KIND:
        raise ParameterError("edge-kind parameters required")
    p.validate()
    if p.value < p.r:
        raise ParameterError("family-restricted maximum needs lambda >= r")
    t0 = time.perf_counter()
    fam = b_lambda(p)
    construction = fam.graph
    c_rho = perron(construction, cfg).rho
    c_g6 = graph6_encode(construction)
    tracker = MaxTracker(cfg.comparison_epsilon)
    examined = 0
    for _, _, member in k_family_members(p):
        examined += 1
        tracker.add(perron(member.graph, cfg).rho, graph6_encode(member.graph))
    rho_max, reps, count, unique, matches, gap = _band_summary(
        tracker, construction, cfg
    )
    counterexample = (
        not matches
        or rho_max is None
        or abs(rho_max - c_rho) > cfg.comparison_epsilon
    )
    return VerificationReport(
        target="family-max",
        params=p.to_json_obj(),
        mode="family-restricted",
        seed=None,
        examined=examined,
        sampled=examined,
        statistics=None,
        rho_max=rho_max,
        construction_graph6=c_g6,
        construction_rho=c_rho,
        maximizers=reps,
        maximizer_count=count,
        unique_up_to_iso=unique,
        matches_construction=matches,
        runner_up_gap=gap,
        counterexample_found=counterexample,
        wall_clock=time.perf_counter() - t0,
    )


def bracket_sweep(
    cases: Sequence[tuple[int, int, int, int]],
    *,
    cfg: SpectralConfig = DEFAULT_CONFIG,
) -> dict:
    """Assert the open spectral bracket n-(r-1)(h+1)-1 < rho < n-(r-1)(h+1)
    for every family member at each (lambda, h, r, n) case, margin eps."""
    eps = cfg.comparison_epsilon
    out = {"cases": [], "ok": True}
    for lam, h, r, n in cases:
        upper = n - (r - 1) * (h + 1)
        lower = upper - 1
        for delta in range(1, h + 1):
            p = ExtremalParams(n, r, h, delta, EDGE_KIND, lam)
            rhos = []
            for _, _, member in k_family_members(p):
                rhos.append(perron(member.graph, cfg).rho)
            ok = bool(rhos) and all(
                lower + eps < rho < upper - eps for rho in rhos
            )
            out["cases"].append(
                {
                    "lambda": lam,
                    "h": h,
                    "r": r,
                    "n": n,
                    "delta": delta,
                    "members": len(rhos),
                    "rho_min": min(rhos) if rhos else None,
                    "rho_max": max(rhos) if rhos else None,
                    "lower": lower,
                    "upper": upper,
                    "ok": ok,
                }
            )
            out["ok"] = out["ok"] and ok
    return out
