"""Uniform random regular graphs via the pairing model, and BFS exploration.

A d-regular multigraph is sampled by drawing a uniform perfect matching on
the n*d half-edge points {(v, slot)} and collapsing the d points below each
vertex.  Conditioning on the collapsed multigraph being simple gives the
uniform distribution on simple d-regular graphs, so ``sample_simple_regular``
rejects until simple; the asymptotic acceptance rate is exp(-(d^2-1)/4).

The exploration half of the module records, level by level, the ball sizes
|B(S, l)|, frontier sizes |dB(S, l)| and the number of frontier vertices
joined to the previous ball by exactly one edge (counting multiplicity) --
the quantity whose lower tail ``frontier_unique_bound`` controls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import MultiGraph, RegularGraph, bfs_distances
from .rand import as_rng

__all__ = [
    "Pairing",
    "sample_pairing",
    "collapse",
    "is_simple",
    "sample_simple_regular",
    "ExplorationTrace",
    "explore",
    "frontier_unique_bound",
    "frontier_unique_montecarlo",
    "default_max_rejects",
]

# point (v, slot) is encoded as the int v * d + slot


@dataclass(frozen=True)
class Pairing:
    """Perfect (or partial) matching on the point set [n] x [d]."""

    n: int
    d: int
    pairs: tuple[tuple[int, int], ...]  # (p, q) with p < q, points encoded

    def __post_init__(self):
        seen = set()
        for p, q in self.pairs:
            if not (0 <= p < q < self.n * self.d):
                raise ValueError(f"bad point pair ({p}, {q})")
            if p in seen or q in seen:
                raise ValueError("a point is matched twice")
            seen.add(p)
            seen.add(q)

    def is_perfect(self) -> bool:
        return 2 * len(self.pairs) == self.n * self.d

    def matched_points(self) -> frozenset:
        return frozenset(p for pair in self.pairs for p in pair)

    def touched_vertices(self) -> frozenset:
        return frozenset(p // self.d for pair in self.pairs for p in pair)


def sample_pairing(n: int, d: int, rng) -> Pairing:
    """Uniform perfect matching on [n] x [d]; deterministic given the seed.

    Any n >= 1 with n*d even is allowed here (n < d simply never collapses
    to a simple graph); the n >= d requirement lives on the graph sampler.
    """
    if n < 1 or d < 3:
        raise ValueError(f"need n >= 1 and d >= 3, got n={n}, d={d}")
    if (n * d) % 2:
        raise ValueError(f"n*d must be even, got n={n}, d={d}")
    rng = as_rng(rng)
    perm = rng.permutation(n * d)
    pairs = [
        (int(a), int(b)) if a < b else (int(b), int(a))
        for a, b in zip(perm[0::2], perm[1::2])
    ]
    return Pairing(n, d, tuple(sorted(pairs)))


def collapse(pairing: Pairing) -> MultiGraph:
    """Multigraph on [n] obtained by collapsing the d points below a vertex."""
    d = pairing.d
    return MultiGraph.from_edges(
        pairing.n, [(p // d, q // d) for p, q in pairing.pairs]
    )


def is_simple(m: MultiGraph) -> bool:
    return m.is_simple()


def default_max_rejects(d: int) -> int:
    """100x the expected number of rejections, exp((d^2-1)/4)."""
    return math.ceil(100.0 * math.exp((d * d - 1) / 4.0))


def sample_simple_regular(n: int, d: int, rng, max_rejects: int | None = None):
    """Uniform simple d-regular graph by rejection.

    Returns (graph, rejections).  Raises RuntimeError when ``max_rejects``
    straight pairings collapse to non-simple multigraphs (the caller sets the
    compute budget; the default is 100x the expected rejection count).
    """
    if n < d or d < 3:
        raise ValueError(f"need n >= d >= 3, got n={n}, d={d}")
    if (n * d) % 2:
        raise ValueError(f"n*d must be even, got n={n}, d={d}")
    rng = as_rng(rng)
    if max_rejects is None:
        max_rejects = default_max_rejects(d)
    rejections = 0
    while True:
        edges = _fast_simple_attempt(n, d, rng)
        if edges is not None:
            g = RegularGraph.from_edges(n, edges)
            return g, rejections
        rejections += 1
        if rejections > max_rejects:
            raise RuntimeError(
                f"rejection budget exhausted after {rejections} non-simple "
                f"pairings (n={n}, d={d}); raise max_rejects"
            )


def _fast_simple_attempt(n: int, d: int, rng):
    """One pairing draw; the collapsed edge list if simple, else None."""
    perm = rng.permutation(n * d)
    u = perm[0::2] // d
    v = perm[1::2] // d
    if np.any(u == v):  # self-loop; cheap reject before sorting
        return None
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    keys = np.sort(lo.astype(np.int64) * n + hi)
    if np.any(keys[1:] == keys[:-1]):  # parallel edge
        return None
    return list(zip((keys // n).tolist(), (keys % n).tolist()))


# -- BFS exploration -----------------------------------------------------------


@dataclass(frozen=True)
class ExplorationTrace:
    """Per-level record of a BFS exploration from a seed set.

    rows[l] = (level, ball_size, frontier_size, unique_size) where
    unique_size counts frontier vertices with exactly one edge, counting
    multiplicity, into the previous ball.
    """

    seed: tuple[int, ...]
    rows: tuple[tuple[int, int, int, int], ...]

    def ball_sizes(self):
        return [r[1] for r in self.rows]

    def frontier_sizes(self):
        return [r[2] for r in self.rows]

    def unique_sizes(self):
        return [r[3] for r in self.rows]


def explore(g, s, l_max: int) -> ExplorationTrace:
    """Exact exploration statistics of graph or multigraph ``g`` up to l_max."""
    s = sorted(set(s))
    if not s:
        raise ValueError("seed set must be nonempty")
    dd = bfs_distances(g, s)
    rows = []
    for level in range(l_max + 1):
        in_ball = [v for v in range(g.n) if dd[v] <= level]
        frontier = [v for v in range(g.n) if dd[v] == level]
        if level == 0:
            unique = 0
        else:
            unique = 0
            for v in frontier:
                back = sum(1 for w in g.neighbors(v) if dd[w] <= level - 1)
                if back == 1:
                    unique += 1
        rows.append((level, len(in_ball), len(frontier), unique))
    return ExplorationTrace(tuple(s), tuple(rows))


# -- lower tail of the one-step unique-frontier count ---------------------------


def frontier_unique_bound(theta: float, a_size: int, n: int, r_size: int) -> float:
    """Analytic lower bound on P[|unique frontier of R at level 1| >= theta*|A|].

    A is the set of free points below R in a partial matching covering R's
    matched points.  Returns max(0, 1 - ((2e/(1-theta)) * a/(n-2r))^(((1-theta)/2)*a)),
    clamped into [0, 1]; a vacuous base >= 1 clamps the bound to 0.
    """
    if not (0 < theta < 1):
        raise ValueError("theta must lie in (0, 1)")
    if a_size < 0 or r_size < 0:
        raise ValueError("sizes must be nonnegative")
    if 2 * r_size >= n:
        raise ValueError("need |R| < n/2")
    if a_size == 0:
        return 0.0
    base = (2.0 * math.e / (1.0 - theta)) * a_size / (n - 2 * r_size)
    if base >= 1.0:
        return 0.0
    return max(0.0, 1.0 - base ** (((1.0 - theta) / 2.0) * a_size))


def frontier_unique_montecarlo(
    n: int,
    d: int,
    r_set,
    prefix: Pairing,
    theta: float,
    trials: int,
    rng,
) -> dict:
    """Empirical frequency of |unique frontier| >= theta*|A| given the prefix.

    ``prefix`` is a partial matching whose touched vertices all lie in r_set;
    completions to a perfect matching are sampled uniformly.  Returns the
    frequency, the analytic bound, and the Monte Carlo standard error.
    """
    rng = as_rng(rng)
    r = sorted(set(r_set))
    if not r:
        raise ValueError("R must be nonempty")
    if 2 * len(r) >= n:
        raise ValueError("need |R| < n/2")
    if not prefix.touched_vertices() <= set(r):
        raise ValueError("prefix matching must only touch vertices of R")
    if not (0 < theta < 1):
        raise ValueError("theta must lie in (0, 1)")

    r_points = {v * d + k for v in r for k in range(d)}
    free_a = sorted(r_points - prefix.matched_points())
    a_size = len(free_a)
    all_free = sorted(set(range(n * d)) - prefix.matched_points())
    free_arr = np.array(all_free)
    threshold = theta * a_size

    hits = 0
    for _ in range(trials):
        perm = rng.permutation(len(free_arr))
        pts = free_arr[perm]
        pairs = list(prefix.pairs) + [
            (int(a), int(b)) if a < b else (int(b), int(a))
            for a, b in zip(pts[0::2], pts[1::2])
        ]
        mg = collapse(Pairing(n, d, tuple(sorted(pairs))))
        unique = _unique_frontier_size(mg, set(r))
        if unique >= threshold:
            hits += 1
    freq = hits / trials if trials else 0.0
    se = math.sqrt(max(freq * (1 - freq), 1e-12) / trials) if trials else 0.0
    return {
        "frequency": freq,
        "bound": frontier_unique_bound(theta, a_size, n, len(r)),
        "stderr": se,
        "trials": trials,
        "a_size": a_size,
    }


def _unique_frontier_size(mg: MultiGraph, r: set) -> int:
    """|{v outside r adjacent to r by exactly one edge, with multiplicity}|."""
    count = {}
    for u, v in mg.edges:
        if (u in r) != (v in r):
            out = v if u in r else u
            count[out] = count.get(out, 0) + 1
    return sum(1 for c in count.values() if c == 1)
