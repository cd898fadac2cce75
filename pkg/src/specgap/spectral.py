"""Adjacency spectra, Cheeger constants, and the spectral certificates.

The eigensolver contract: dense symmetric decomposition (LAPACK through
numpy) up to n = 4096, iterative extremal pairs (ARPACK through scipy) above,
with residual certification against ``tol``.  Cheeger constants are exact
rationals from a full subset scan up to n = 24; beyond that only heuristic
upper bounds are produced, never the lower inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .graphs import RegularGraph

__all__ = [
    "SpectralSummary",
    "adjacency_matrix",
    "eigen_summary",
    "CheegerResult",
    "cheeger_exact",
    "cheeger_upper",
    "cheeger_sandwich_check",
    "FriedmanReport",
    "friedman_check",
    "walk_sum_bound_check",
    "DENSE_LIMIT",
    "CHEEGER_EXACT_LIMIT",
]

DENSE_LIMIT = 4096
CHEEGER_EXACT_LIMIT = 24


def adjacency_matrix(g: RegularGraph, sparse: bool = False):
    if sparse:
        rows, cols = [], []
        for u in range(g.n):
            for v in g.adj[u]:
                rows.append(u)
                cols.append(v)
        data = np.ones(len(rows))
        return sp.csr_matrix((data, (rows, cols)), shape=(g.n, g.n))
    a = np.zeros((g.n, g.n))
    for u in range(g.n):
        a[u, list(g.adj[u])] = 1.0
    return a


@dataclass(frozen=True)
class SpectralSummary:
    """Sorted adjacency eigenvalues (dense mode) plus the derived scalars.

    lam is max(|lambda_2|, ..., |lambda_n|); lambda2 is the second largest
    eigenvalue by value (not magnitude).
    """

    n: int
    d: int
    mode: str  # "dense" | "iterative"
    lambda1: float
    lambda2: float
    lambda_min: float
    lam: float
    eigenvalues: tuple | None = None
    residual: float = 0.0

    @property
    def spectral_gap(self) -> float:
        return self.d - self.lambda2


def eigen_summary(g: RegularGraph, tol: float = 1e-8) -> SpectralSummary:
    """Eigenvalue summary; dense for n <= DENSE_LIMIT, else iterative extremes.

    Iterative mode certifies ||A v - lambda v||_2 <= tol for each reported
    extremal pair and raises RuntimeError when ARPACK cannot reach that.
    """
    if g.n <= DENSE_LIMIT:
        evals = np.linalg.eigvalsh(adjacency_matrix(g))
        lam2 = float(evals[-2])
        lam_min = float(evals[0])
        return SpectralSummary(
            n=g.n,
            d=g.d,
            mode="dense",
            lambda1=float(evals[-1]),
            lambda2=lam2,
            lambda_min=lam_min,
            lam=max(abs(lam2), abs(lam_min)),
            eigenvalues=tuple(float(x) for x in evals),
        )
    a = adjacency_matrix(g, sparse=True)
    try:
        top_vals, top_vecs = spla.eigsh(a, k=2, which="LA", tol=tol / 10)
        bot_vals, bot_vecs = spla.eigsh(a, k=1, which="SA", tol=tol / 10)
    except spla.ArpackNoConvergence as exc:
        raise RuntimeError(f"eigensolver did not converge: {exc}") from exc
    order = np.argsort(top_vals)
    top_vals, top_vecs = top_vals[order], top_vecs[:, order]
    residual = 0.0
    for vals, vecs in ((top_vals, top_vecs), (bot_vals, bot_vecs)):
        for i in range(len(vals)):
            v = vecs[:, i]
            residual = max(residual, float(np.linalg.norm(a @ v - vals[i] * v)))
    if residual > tol:
        raise RuntimeError(
            f"eigensolver residual {residual:.3e} exceeds tol {tol:.3e}"
        )
    lam2 = float(top_vals[0])
    lam_min = float(bot_vals[0])
    return SpectralSummary(
        n=g.n,
        d=g.d,
        mode="iterative",
        lambda1=float(top_vals[1]),
        lambda2=lam2,
        lambda_min=lam_min,
        lam=max(abs(lam2), abs(lam_min)),
        residual=residual,
    )


# -- Cheeger constant ----------------------------------------------------------


@dataclass(frozen=True)
class CheegerResult:
    value: Fraction
    witness: frozenset
    exact: bool


def cheeger_exact(g: RegularGraph) -> CheegerResult:
    """Exact expansion ratio min |boundary edges| / |S| over 1 <= |S| <= n/2.

    Full 2^n scan (vectorized over bitmasks); refuses n > CHEEGER_EXACT_LIMIT
    and points the caller at cheeger_upper.
    """
    n = g.n
    if n > CHEEGER_EXACT_LIMIT:
        raise ValueError(
            f"cheeger_exact is limited to n <= {CHEEGER_EXACT_LIMIT} "
            f"(got n={n}); use cheeger_upper for an upper bound"
        )
    edges = g.edges()
    best_cut, best_size, best_mask = None, None, None
    chunk = 1 << 20
    half = n // 2
    for start in range(1, 1 << n, chunk):
        stop = min(start + chunk, 1 << n)
        masks = np.arange(start, stop, dtype=np.uint32)
        sizes = np.bitwise_count(masks).astype(np.int64)
        ok = (sizes >= 1) & (sizes <= half)
        if not np.any(ok):
            continue
        masks = masks[ok]
        sizes = sizes[ok]
        cut = np.zeros(len(masks), dtype=np.int64)
        for u, v in edges:
            cut += ((masks >> np.uint32(u)) ^ (masks >> np.uint32(v))) & np.uint32(1)
        # integer cross-comparison keeps the minimization exact
        if best_cut is None:
            i = int(np.argmin(cut / sizes))
            best_cut, best_size, best_mask = int(cut[i]), int(sizes[i]), int(masks[i])
        i = int(np.argmin(cut / sizes))
        if int(cut[i]) * best_size < best_cut * int(sizes[i]):
            best_cut, best_size, best_mask = int(cut[i]), int(sizes[i]), int(masks[i])
    witness = frozenset(v for v in range(n) if (best_mask >> v) & 1)
    return CheegerResult(Fraction(best_cut, best_size), witness, exact=True)


def cheeger_upper(g: RegularGraph) -> CheegerResult:
    """Heuristic upper bound: best sweep cut of the second eigenvector,
    plus BFS balls around every vertex.  Upper bound only."""
    summary = eigen_summary(g)
    if summary.mode == "dense":
        a = adjacency_matrix(g)
        _, vecs = np.linalg.eigh(a)
        fiedler = vecs[:, -2]
    else:
        a = adjacency_matrix(g, sparse=True)
        _, vecs = spla.eigsh(a, k=2, which="LA")
        fiedler = vecs[:, 0]
    order = np.argsort(fiedler)
    best = None
    in_s = set()
    cut = 0
    for idx in order[: g.n - 1]:
        v = int(idx)
        cut += sum(1 if w not in in_s else -1 for w in g.adj[v])
        in_s.add(v)
        if len(in_s) <= g.n // 2:
            cand = (Fraction(cut, len(in_s)), frozenset(in_s))
            if best is None or cand[0] < best[0]:
                best = cand
    from .graphs import bfs_distances

    for v in range(min(g.n, 32)):  # ball seeds; heuristic, upper bound only
        dd = bfs_distances(g, [v])
        order_b = sorted(range(g.n), key=lambda w: (dd[w], w))
        in_s = set()
        cut = 0
        for w in order_b:
            if dd[w] == float("inf"):
                break
            cut += sum(1 if x not in in_s else -1 for x in g.adj[w])
            in_s.add(w)
            if len(in_s) > g.n // 2:
                break
            cand = (Fraction(cut, len(in_s)), frozenset(in_s))
            if cand[0] < best[0]:
                best = cand
    return CheegerResult(best[0], best[1], exact=False)


def cheeger_sandwich_check(g: RegularGraph) -> dict:
    """Verify (d - lambda2)/2 <= h(G) <= sqrt(2 d (d - lambda2)).

    With an exact h both inequalities are checked; with a heuristic upper
    bound only the upper inequality is claimed (h <= h_ub <= sqrt bound).
    """
    summary = eigen_summary(g)
    if g.n <= CHEEGER_EXACT_LIMIT:
        h = cheeger_exact(g)
    else:
        h = cheeger_upper(g)
    gap = g.d - summary.lambda2
    lower = gap / 2.0
    upper = math.sqrt(max(2.0 * g.d * gap, 0.0))
    h_val = float(h.value)
    report = {
        "h": h_val,
        "h_exact": h.exact,
        "lambda2": summary.lambda2,
        "lower": lower,
        "upper": upper,
        "upper_ok": h_val <= upper + 1e-9,
        "upper_slack": upper - h_val,
    }
    if h.exact:
        report["lower_ok"] = lower <= h_val + 1e-9
        report["lower_slack"] = h_val - lower
        report["ok"] = report["lower_ok"] and report["upper_ok"]
    else:
        report["ok"] = report["upper_ok"]
    return report


# -- spectral certificates -------------------------------------------------------


@dataclass(frozen=True)
class FriedmanReport:
    lam: float
    bound: float            # 2 sqrt(d-1) + slack
    passed: bool
    bound_21: float         # 2.1 sqrt(d-1), the sufficiency threshold
    passed_21: bool

    def __bool__(self):
        return self.passed


def friedman_check(g: RegularGraph, slack: float = 0.0) -> FriedmanReport:
    """lam(G) <= 2 sqrt(d-1) + slack, and the 2.1 sqrt(d-1) gate alongside."""
    lam = eigen_summary(g).lam
    bound = 2.0 * math.sqrt(g.d - 1) + slack
    bound21 = 2.1 * math.sqrt(g.d - 1)
    return FriedmanReport(
        lam=lam,
        bound=bound,
        passed=lam <= bound,
        bound_21=bound21,
        passed_21=lam <= bound21,
    )


def walk_sum_bound_check(g: RegularGraph, y, l: int) -> dict:
    """||sum_{k<=l} A^k y||^2 <= 4 (4.41 (d-1))^l for unit mean-zero y.

    Preconditions (checked): ||y||_2 = 1 to 1e-9, sum(y) = 0 to 1e-9, and
    lam(G) <= 2.1 sqrt(d-1).
    """
    y = np.asarray(y, dtype=float)
    if y.shape != (g.n,):
        raise ValueError(f"y must have shape ({g.n},)")
    if abs(np.linalg.norm(y) - 1.0) > 1e-9:
        raise ValueError("y must be a unit vector (1e-9 tolerance)")
    if abs(float(np.sum(y))) > 1e-9 * g.n:
        raise ValueError("y must have zero mean")
    summary = eigen_summary(g)
    if summary.lam > 2.1 * math.sqrt(g.d - 1) + 1e-12:
        raise ValueError(
            f"walk-sum bound needs lam(G) <= 2.1 sqrt(d-1); "
            f"got lam={summary.lam:.6f}"
        )
    if l < 1:
        raise ValueError("l must be >= 1")
    a = adjacency_matrix(g, sparse=g.n > 512)
    z = y.copy()
    acc = np.zeros_like(y)
    for _ in range(l):
        z = a @ z
        acc += z
    value = float(acc @ acc)
    bound = 4.0 * (4.41 * (g.d - 1)) ** l
    return {
        "value": value,
        "bound": bound,
        "ok": value <= bound * (1 + 1e-12),
        "l": l,
        "lam": summary.lam,
    }
