"""Long-range expansion: checking, falsifying, fitting, sufficient conditions.

The property Expan(alpha, eps, L) of a d-regular graph has two halves:

* growth (part A): every BFS ball obeys
  |B(S, l)| >= min(3n/4, alpha (d-1)^l |S|);
* congestion (part B): whenever alpha (d-1)^(l-1) |S| <= 3n/4, the set
  T of edges seen by >= L (d-1-eps)^l vertices of S within radius l-1
  leaves at least one v in S seeing <= L (d-1-eps)^l edges of T.

alpha and L are LogScalar because the typical parameterization at degree d
(alpha = d^(-1e11 ln d), L = 24/alpha) is far outside float range; every
threshold comparison is done on logs.  Exact checks are exhaustive subset
scans and are limited to n <= 20; the sampled checker can only falsify.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .constants import eval_constant
from .graphs import RegularGraph, ball, bfs_distances
from .logspace import LogScalar
from .rand import as_rng
from .spectral import CHEEGER_EXACT_LIMIT, cheeger_exact, eigen_summary

__all__ = [
    "EXACT_LIMIT",
    "ExpanParams",
    "ExpanVerdict",
    "ExpanPreconditionError",
    "growth_check_exact",
    "growth_check_sampled",
    "fit_growth_alpha",
    "congestion_check_instance",
    "congestion_check_exact",
    "spectral_sufficient_check",
    "popular_edge_bound_check",
    "cheeger_growth_check",
]

EXACT_LIMIT = 20
_LN_GUARD = 1e-12  # treat log-threshold ties as satisfied


def _ls(x) -> LogScalar:
    return x if isinstance(x, LogScalar) else LogScalar.from_float(float(x))


class ExpanPreconditionError(ValueError):
    """An instance query fell outside the property's precondition."""


@dataclass(frozen=True)
class ExpanParams:
    """Parameters (alpha, eps, L) of the long-range expansion property."""

    alpha: LogScalar
    eps: float
    L: LogScalar

    def __post_init__(self):
        object.__setattr__(self, "alpha", _ls(self.alpha))
        object.__setattr__(self, "L", _ls(self.L))
        if not (self.alpha.sign == 1 and self.alpha.ln <= 0):
            raise ValueError("alpha must lie in (0, 1]")
        if not (0 < self.eps <= 1):
            raise ValueError("eps must lie in (0, 1]")
        if not (self.L.sign == 1 and self.L.ln >= 0):
            raise ValueError("L must be >= 1")

    @staticmethod
    def paper(d: int) -> "ExpanParams":
        """The typical random-regular-graph parameterization at degree d."""
        alpha = eval_constant("alpha_d", d=d)
        return ExpanParams(alpha=alpha, eps=0.2, L=LogScalar.from_float(24.0) / alpha)


@dataclass(frozen=True)
class ExpanVerdict:
    part: str       # "A" | "B"
    mode: str       # "exact" | "sampled" | "sufficient"
    status: str     # "pass" | "fail" | "not_falsified" | "inconclusive"
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    @property
    def falsified(self) -> bool:
        return self.status == "fail"

    def __bool__(self):
        return self.status == "pass"


# -- part A: ball growth ---------------------------------------------------------


def _require_exact_size(g: RegularGraph, op: str):
    if g.n > EXACT_LIMIT:
        raise ValueError(
            f"{op} scans all 2^n subsets and is limited to n <= {EXACT_LIMIT} "
            f"(got n={g.n}); use the sampled mode"
        )


def _subset_ball_sizes(g: RegularGraph, radius: int, single_balls) -> np.ndarray:
    """|B(S, radius)| for every subset bitmask S (index = mask)."""
    n = g.n
    arr = np.zeros(1 << n, dtype=np.uint32)
    for v in range(n):
        lo = 1 << v
        arr[lo : 2 * lo] = arr[:lo] | np.uint32(single_balls[radius][v])
    return np.bitwise_count(arr).astype(np.int64)


def _single_ball_masks(g: RegularGraph) -> list[list[int]]:
    """single_balls[l][v] = bitmask of B({v}, l) for l in 0..n."""
    n = g.n
    out = []
    dists = [bfs_distances(g, [v]) for v in range(n)]
    for radius in range(n + 1):
        row = []
        for v in range(n):
            mask = 0
            dv = dists[v]
            for w in range(n):
                if dv[w] <= radius:
                    mask |= 1 << w
            row.append(mask)
        out.append(row)
    return out


def _growth_requirement(alpha: LogScalar, d: int, l: int, size: int, n: int):
    """Return ('cap', None) or ('value', required_ln)."""
    t = alpha.ln + l * math.log(d - 1) + math.log(size)
    cap_ln = math.log(0.75 * n)
    if t >= cap_ln:
        return "cap", None
    return "value", t


def growth_check_exact(g: RegularGraph, alpha) -> ExpanVerdict:
    """Exhaustive part-A check over every nonempty S and every l in [1, n].

    Balls saturate by l = n, which is why the scan stops there.  A failure
    carries the minimal witness (smallest l, then smallest subset bitmask).
    """
    alpha = _ls(alpha)
    _require_exact_size(g, "growth_check_exact")
    n, d = g.n, g.d
    single = _single_ball_masks(g)
    popc = np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.int64)
    for l in range(1, n + 1):
        sizes = _subset_ball_sizes(g, l, single)
        for s in range(1, n + 1):
            sel = np.nonzero(popc == s)[0]
            kind, t = _growth_requirement(alpha, d, l, s, n)
            if kind == "cap":
                bad = sel[4 * sizes[sel] < 3 * n]
            else:
                bad = sel[np.log(sizes[sel]) < t - _LN_GUARD]
            if len(bad):
                mask = int(bad.min())
                subset = tuple(v for v in range(n) if (mask >> v) & 1)
                return ExpanVerdict(
                    part="A",
                    mode="exact",
                    status="fail",
                    witness={
                        "S": subset,
                        "l": l,
                        "ball_size": int(sizes[mask]),
                        "required": "3n/4" if kind == "cap" else math.exp(t),
                    },
                )
    return ExpanVerdict(part="A", mode="exact", status="pass")


def fit_growth_alpha(g: RegularGraph) -> LogScalar:
    """Largest alpha for which growth_check_exact passes, capped at 1.

    Only pairs (S, l) whose ball stays below 3n/4 constrain alpha; the fit is
    the minimum of |B(S, l)| / ((d-1)^l |S|) over those pairs.
    """
    _require_exact_size(g, "fit_growth_alpha")
    n, d = g.n, g.d
    single = _single_ball_masks(g)
    popc = np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.float64)
    popc[0] = 1.0  # avoid log(0) for the empty mask; it is filtered below
    best = 0.0  # ln alpha bound; alpha <= 1 cap
    for l in range(1, n + 1):
        sizes = _subset_ball_sizes(g, l, single)
        sel = (4 * sizes < 3 * n) & (popc >= 1)
        sel[0] = False
        if not np.any(sel):
            continue
        bound = (
            np.log(sizes[sel].astype(np.float64))
            - l * math.log(d - 1)
            - np.log(popc[sel])
        )
        best = min(best, float(bound.min()))
    return LogScalar.from_ln(best)


def _sample_subset(g: RegularGraph, rng) -> frozenset:
    """Witness-hunting mix: 25% singletons, 25% BFS balls, 50% random subsets."""
    n = g.n
    mode = rng.random()
    if mode < 0.25:
        return frozenset({int(rng.integers(n))})
    if mode < 0.5:
        v = int(rng.integers(n))
        radius = int(rng.integers(0, max(2, n // 3)))
        return frozenset(ball(g, {v}, radius))
    size = int(rng.integers(1, n + 1))
    return frozenset(int(x) for x in rng.choice(n, size=size, replace=False))


def growth_check_sampled(g: RegularGraph, alpha, trials: int, rng) -> ExpanVerdict:
    """Sampled part-A falsifier.

    Any violation found is a definitive FAIL with a recheckable witness; no
    violation only means "not falsified", never "pass".
    """
    alpha = _ls(alpha)
    rng = as_rng(rng)
    n, d = g.n, g.d
    cap_ln = math.log(0.75 * n)
    for _ in range(trials):
        subset = _sample_subset(g, rng)
        dd = bfs_distances(g, subset)
        # cumulative ball sizes per radius
        counts = np.zeros(n + 1, dtype=np.int64)
        for x in dd:
            if x != float("inf") and x <= n:
                counts[int(x)] += 1
        sizes = np.cumsum(counts)
        for l in range(1, n + 1):
            kind, t = _growth_requirement(alpha, d, l, len(subset), n)
            bsize = int(sizes[l])
            ok = (4 * bsize >= 3 * n) if kind == "cap" else (
                math.log(bsize) >= t - _LN_GUARD
            )
            if not ok:
                return ExpanVerdict(
                    part="A",
                    mode="sampled",
                    status="fail",
                    witness={
                        "S": tuple(sorted(subset)),
                        "l": l,
                        "ball_size": bsize,
                        "required": "3n/4" if kind == "cap" else math.exp(t),
                    },
                )
    return ExpanVerdict(
        part="A", mode="sampled", status="not_falsified", details={"trials": trials}
    )


# -- part B: popular-edge congestion ----------------------------------------------


def _edge_radius_masks(g: RegularGraph, l: int):
    """Per edge: bitmask of vertices within distance l-1 of the edge."""
    masks = []
    for u, v in g.edges():
        dd = bfs_distances(g, [u, v])
        m = 0
        for w in range(g.n):
            if dd[w] <= l - 1:
                m |= 1 << w
        masks.append(m)
    return masks


def _threshold_ints(params: ExpanParams, d: int, l: int, max_count: int):
    """(ceil, floor) integer versions of L (d-1-eps)^l, clamped by max_count.

    ceil: smallest count that reaches the threshold (None if unreachable);
    floor: largest count that stays at or below it.
    """
    thr_ln = params.L.ln + l * math.log(d - 1 - params.eps)
    if thr_ln > math.log(max_count) + _LN_GUARD:
        return None, max_count  # unreachable; everything passes the <= side
    thr = math.exp(thr_ln)
    ceil_thr = math.ceil(thr - 1e-9)
    floor_thr = math.floor(thr + 1e-9)
    return max(ceil_thr, 1), floor_thr


def congestion_check_instance(
    g: RegularGraph, s, l: int, params: ExpanParams
) -> ExpanVerdict:
    """Part-B check for one (S, l) meeting the precondition.

    PASS carries the lowest-index admissible vertex; FAIL carries the full
    popular-edge set T with its visibility counts.
    """
    subset = sorted(set(s))
    if not subset:
        raise ValueError("S must be nonempty")
    if not (1 <= l):
        raise ValueError("l must be >= 1")
    n, d = g.n, g.d
    pre_ln = params.alpha.ln + (l - 1) * math.log(d - 1) + math.log(len(subset))
    if pre_ln > math.log(0.75 * n) + _LN_GUARD:
        raise ExpanPreconditionError(
            f"alpha (d-1)^(l-1) |S| exceeds 3n/4 at l={l}, |S|={len(subset)}"
        )
    edges = g.edges()
    ceil_thr, floor_thr = _threshold_ints(params, d, l, max_count=max(n, len(edges)))
    if ceil_thr is None or ceil_thr > len(subset):
        # T is empty: no edge can be seen by >= threshold vertices of S
        return ExpanVerdict(
            part="B",
            mode="exact",
            status="pass",
            witness={"v": subset[0], "T_size": 0, "l": l},
            details={"T": ()},
        )
    dists = {v: bfs_distances(g, [v]) for v in subset}
    t_edges = []
    for idx, (u, w) in enumerate(edges):
        cnt = sum(1 for v in subset if min(dists[v][u], dists[v][w]) <= l - 1)
        if cnt >= ceil_thr:
            t_edges.append(idx)
    for v in subset:
        dv = dists[v]
        deg = sum(
            1 for idx in t_edges if min(dv[edges[idx][0]], dv[edges[idx][1]]) <= l - 1
        )
        if deg <= floor_thr:
            return ExpanVerdict(
                part="B",
                mode="exact",
                status="pass",
                witness={"v": v, "T_size": len(t_edges), "l": l, "count": deg},
                details={"T": tuple(edges[i] for i in t_edges)},
            )
    return ExpanVerdict(
        part="B",
        mode="exact",
        status="fail",
        witness={"S": tuple(subset), "l": l},
        details={"T": tuple(edges[i] for i in t_edges)},
    )


def congestion_check_exact(g: RegularGraph, params: ExpanParams) -> ExpanVerdict:
    """Part-B check over every (S, l) meeting the precondition, l <= n.

    Two prunings keep the scan honest but feasible: a scale whose threshold
    exceeds n cannot put any edge into T (pass for every S), and subsets
    smaller than the threshold cannot either.
    """
    _require_exact_size(g, "congestion_check_exact")
    n, d = g.n, g.d
    edges = g.edges()
    popc = np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.int64)
    cap_ln = math.log(0.75 * n)
    scales = []
    for l in range(1, n + 1):
        ceil_thr, floor_thr = _threshold_ints(params, d, l, max_count=max(n, len(edges)))
        if ceil_thr is None or ceil_thr > n:
            scales.append({"l": l, "mode": "empty-T", "checked": "all S"})
            continue
        # sizes of S allowed by the precondition at this l
        max_s = None
        for s in range(1, n + 1):
            if params.alpha.ln + (l - 1) * math.log(d - 1) + math.log(s) <= cap_ln + _LN_GUARD:
                max_s = s
        if max_s is None:
            scales.append({"l": l, "mode": "precondition-empty", "checked": "no S"})
            continue
        edge_masks = _edge_radius_masks(g, l)
        vertex_edge_masks = []
        for v in range(n):
            m = 0
            for idx, em in enumerate(edge_masks):
                if (em >> v) & 1:
                    m |= 1 << idx
            vertex_edge_masks.append(m)
        lo_size = max(1, ceil_thr)
        candidates = np.nonzero((popc >= lo_size) & (popc <= max_s))[0]
        for mask in candidates:
            mask = int(mask)
            t_mask = 0
            for idx, em in enumerate(edge_masks):
                if (em & mask).bit_count() >= ceil_thr:
                    t_mask |= 1 << idx
            if t_mask == 0:
                continue
            ok = False
            rest = mask
            while rest:
                v = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                if (vertex_edge_masks[v] & t_mask).bit_count() <= floor_thr:
                    ok = True
                    break
            if not ok:
                subset = tuple(v for v in range(n) if (mask >> v) & 1)
                return ExpanVerdict(
                    part="B",
                    mode="exact",
                    status="fail",
                    witness={"S": subset, "l": l},
                    details={"scales": tuple(scales)},
                )
        scales.append({"l": l, "mode": "scanned", "checked": int(len(candidates))})
    return ExpanVerdict(
        part="B", mode="exact", status="pass", details={"scales": tuple(scales)}
    )


def spectral_sufficient_check(g: RegularGraph) -> ExpanVerdict:
    """Part-B sufficiency: d >= 6 and lam(G) <= 2.1 sqrt(d-1) imply part B at
    the typical parameterization (alpha(d), eps=0.2, L=24/alpha).

    Returns pass (mode "sufficient") or inconclusive with the reason; the
    condition gates on lam(G) while some growth statements gate on lambda2,
    so both numbers are reported.
    """
    summary = eigen_summary(g)
    threshold = 2.1 * math.sqrt(g.d - 1)
    details = {
        "lam": summary.lam,
        "lambda2": summary.lambda2,
        "threshold": threshold,
    }
    if g.d < 6:
        return ExpanVerdict(
            part="B",
            mode="sufficient",
            status="inconclusive",
            details={**details, "reason": "degree below 6"},
        )
    if summary.lam <= threshold:
        params = ExpanParams.paper(g.d)
        return ExpanVerdict(
            part="B",
            mode="sufficient",
            status="pass",
            details={
                **details,
                "alpha_ln": params.alpha.ln,
                "eps": params.eps,
                "L_ln": params.L.ln,
            },
        )
    return ExpanVerdict(
        part="B",
        mode="sufficient",
        status="inconclusive",
        details={**details, "reason": "spectral threshold exceeded"},
    )


def popular_edge_bound_check(
    g: RegularGraph, s, l: int, params: ExpanParams
) -> dict:
    """Double-counting bound |T| <= |S| d / (L (d-2)) ((d-1)/(d-1-eps))^l."""
    verdict = congestion_check_instance(g, s, l, params)
    t_size = len(verdict.details["T"])
    subset = sorted(set(s))
    bound_ln = (
        math.log(len(subset))
        + math.log(g.d)
        - params.L.ln
        - math.log(g.d - 2)
        + l * (math.log(g.d - 1) - math.log(g.d - 1 - params.eps))
    )
    lhs = LogScalar.from_float(float(t_size))
    rhs = LogScalar.from_ln(bound_ln)
    return {
        "T_size": t_size,
        "bound_ln": bound_ln,
        "ok": lhs <= rhs,
        "slack_ln": (bound_ln - lhs.ln) if t_size else float("inf"),
        "l": l,
    }


def cheeger_growth_check(
    g: RegularGraph, delta: float, rng=None, trials: int = 2000
) -> dict:
    """Ball growth from the Cheeger constant.

    Hypothesis: h(G) >= 0.0048 d (verified exactly, so n <= 24).  Conclusion:
    for every A with |A| >= delta n and every l >= 1,
    |B(A, l)| >= min(3n/4, gamma (d-1)^l |A|) where
    l* = ceil(log_1.0016(3/(4 delta))) and gamma = (1.0016/(d-1))^l*.
    Exhaustive over A for n <= 20, sampled beyond.
    """
    if not (0 < delta < 0.75):
        raise ValueError("delta must lie in (0, 3/4)")
    if g.n > CHEEGER_EXACT_LIMIT:
        raise ValueError(
            "hypothesis h(G) >= 0.0048 d needs the exact Cheeger constant "
            f"(n <= {CHEEGER_EXACT_LIMIT})"
        )
    n, d = g.n, g.d
    h = cheeger_exact(g)
    hypothesis_ok = h.value >= Fraction(3, 625) * d  # 0.0048 d exactly
    l_star = math.ceil(math.log(3.0 / (4.0 * delta)) / math.log(1.0016) - 1e-12)
    gamma = LogScalar.from_ln(l_star * (math.log(1.0016) - math.log(d - 1)))
    report = {
        "h": float(h.value),
        "hypothesis_ok": hypothesis_ok,
        "l_star": l_star,
        "gamma_ln": gamma.ln,
        "delta": delta,
        "conclusion_checked": False,
        "conclusion_ok": None,
    }
    if not hypothesis_ok:
        return report
    min_size = math.ceil(delta * n - 1e-9)

    def check_subset(subset_sizes, size):
        for l in range(1, n + 1):
            kind, t = (
                ("cap", None)
                if gamma.ln + l * math.log(d - 1) + math.log(size) >= math.log(0.75 * n)
                else ("value", gamma.ln + l * math.log(d - 1) + math.log(size))
            )
            bsize = int(subset_sizes[l])
            ok = (4 * bsize >= 3 * n) if kind == "cap" else (
                math.log(bsize) >= t - _LN_GUARD
            )
            if not ok:
                return l, bsize
        return None

    report["conclusion_checked"] = True
    if n <= EXACT_LIMIT:
        single = _single_ball_masks(g)
        popc = np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.int64)
        tables = {l: _subset_ball_sizes(g, l, single) for l in range(1, n + 1)}
        sel = np.nonzero(popc >= min_size)[0]
        for mask in sel:
            mask = int(mask)
            size = int(popc[mask])
            sizes = [0] + [int(tables[l][mask]) for l in range(1, n + 1)]
            bad = check_subset(sizes, size)
            if bad is not None:
                report["conclusion_ok"] = False
                report["witness"] = {
                    "A": tuple(v for v in range(n) if (mask >> v) & 1),
                    "l": bad[0],
                    "ball_size": bad[1],
                }
                return report
        report["mode"] = "exhaustive"
    else:
        rng = as_rng(rng if rng is not None else 0)
        for _ in range(trials):
            size = int(rng.integers(min_size, n + 1))
            subset = rng.choice(n, size=size, replace=False)
            dd = bfs_distances(g, subset)
            counts = np.zeros(n + 1, dtype=np.int64)
            for x in dd:
                if x != float("inf") and x <= n:
                    counts[int(x)] += 1
            sizes = np.cumsum(counts)
            bad = check_subset(sizes, size)
            if bad is not None:
                report["conclusion_ok"] = False
                report["witness"] = {
                    "A": tuple(sorted(int(x) for x in subset)),
                    "l": bad[0],
                    "ball_size": bad[1],
                }
                return report
        report["mode"] = f"sampled({trials})"
    report["conclusion_ok"] = True
    return report
