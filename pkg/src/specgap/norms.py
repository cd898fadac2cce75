"""Composable 1-unconditional norms and their cotype-type constants.

The norm family is a small expression tree: Lq(q) for q in [1, inf],
WeightedLq with positive weights, and BlockNorm composing an outer norm over
the values of inner norms on consecutive blocks.  Every member satisfies
||y|| = || |y| || and is monotone on the positive cone, which the rest of
the package leans on (binary encodings compare coordinatewise).

Rademacher expectations are exact full enumerations up to the stated
budgets; the Monte Carlo fallbacks are flagged estimates and are never used
by the acceptance suite.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .rand import as_rng

__all__ = [
    "UncondNorm",
    "Lq",
    "WeightedLq",
    "BlockNorm",
    "lift_l1",
    "norm_to_json",
    "norm_from_json",
    "sign_patterns",
    "cotype_constant_exact",
    "cotype_constant_mc",
    "restricted_cotype_check",
    "restricted_cotype_constant",
    "OverlapFamily",
    "almost_disjoint_lower_bound_check",
    "q_concavity_constant",
    "COTYPE_EXACT_LIMIT",
    "RESTRICTED_EXACT_LIMIT",
]

COTYPE_EXACT_LIMIT = 20
RESTRICTED_EXACT_LIMIT = 16


class UncondNorm:
    """Base class: a 1-unconditional norm on R^dim (dim may be None = any)."""

    dim: int | None = None

    def eval_many(self, ys: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, y) -> float:
        y = np.atleast_2d(np.asarray(y, dtype=float))
        if self.dim is not None and y.shape[1] != self.dim:
            raise ValueError(f"expected dimension {self.dim}, got {y.shape[1]}")
        return float(self.eval_many(y)[0])


@dataclass(frozen=True)
class Lq(UncondNorm):
    """The q-norm, q in [1, inf]; dim=None accepts any dimension."""

    q: float
    dim: int | None = None

    def __post_init__(self):
        if not (self.q >= 1):
            raise ValueError("q must be >= 1 (math.inf for the sup norm)")

    def eval_many(self, ys):
        ys = np.abs(np.asarray(ys, dtype=float))
        if math.isinf(self.q):
            return ys.max(axis=-1)
        if self.q == 1:
            return ys.sum(axis=-1)
        return (ys**self.q).sum(axis=-1) ** (1.0 / self.q)


@dataclass(frozen=True)
class WeightedLq(UncondNorm):
    """q-norm after positive coordinate weights: ||(w_j y_j)_j||_q."""

    q: float
    weights: tuple

    def __post_init__(self):
        if not (self.q >= 1):
            raise ValueError("q must be >= 1")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))

    @property
    def dim(self):
        return len(self.weights)

    def eval_many(self, ys):
        ys = np.abs(np.asarray(ys, dtype=float)) * np.asarray(self.weights)
        if math.isinf(self.q):
            return ys.max(axis=-1)
        if self.q == 1:
            return ys.sum(axis=-1)
        return (ys**self.q).sum(axis=-1) ** (1.0 / self.q)


@dataclass(frozen=True)
class BlockNorm(UncondNorm):
    """outer norm of the vector of inner-norm values on consecutive blocks."""

    outer: UncondNorm
    inner: tuple  # of (norm, block_dim) with norm.dim compatible

    def __post_init__(self):
        for nm, bd in self.inner:
            if nm.dim is not None and nm.dim != bd:
                raise ValueError("inner norm dimension mismatch")
        if self.outer.dim is not None and self.outer.dim != len(self.inner):
            raise ValueError("outer norm dimension mismatch")

    @property
    def dim(self):
        return sum(bd for _, bd in self.inner)

    def eval_many(self, ys):
        ys = np.asarray(ys, dtype=float)
        vals = np.empty(ys.shape[:-1] + (len(self.inner),))
        start = 0
        for i, (nm, bd) in enumerate(self.inner):
            vals[..., i] = nm.eval_many(ys[..., start : start + bd])
            start += bd
        if start != ys.shape[-1]:
            raise ValueError(f"expected dimension {start}, got {ys.shape[-1]}")
        return self.outer.eval_many(vals)


def lift_l1(base: UncondNorm, k: int, m: int) -> BlockNorm:
    """The lifted norm on R^(k*m): base norm of the blockwise l1 masses."""
    return BlockNorm(outer=base, inner=tuple((Lq(1.0, m), m) for _ in range(k)))


# -- JSON expression trees -------------------------------------------------------


def norm_to_json(nm: UncondNorm) -> dict:
    if isinstance(nm, WeightedLq):
        return {"type": "weighted_lq", "q": _q_out(nm.q), "weights": list(nm.weights)}
    if isinstance(nm, Lq):
        return {"type": "lq", "q": _q_out(nm.q), "dim": nm.dim}
    if isinstance(nm, BlockNorm):
        return {
            "type": "block",
            "outer": norm_to_json(nm.outer),
            "inner": [{"norm": norm_to_json(x), "dim": bd} for x, bd in nm.inner],
        }
    raise TypeError(f"cannot serialize {type(nm).__name__}")


def norm_from_json(obj) -> UncondNorm:
    if isinstance(obj, str):
        obj = json.loads(obj)
    t = obj.get("type")
    if t == "lq":
        return Lq(_q_in(obj["q"]), obj.get("dim"))
    if t == "weighted_lq":
        return WeightedLq(_q_in(obj["q"]), tuple(obj["weights"]))
    if t == "block":
        inner = tuple(
            (norm_from_json(x["norm"]), int(x["dim"])) for x in obj["inner"]
        )
        return BlockNorm(norm_from_json(obj["outer"]), inner)
    raise ValueError(f"unknown norm type {t!r}")


def _q_out(q):
    return "inf" if math.isinf(q) else q


def _q_in(q):
    return math.inf if q in ("inf", "Infinity", None) else float(q)


# -- Rademacher machinery --------------------------------------------------------


def sign_patterns(m: int) -> np.ndarray:
    """All 2^m sign rows in {-1, +1}^m, in bit order."""
    bits = (np.arange(1 << m)[:, None] >> np.arange(m)) & 1
    return (2 * bits - 1).astype(float)


def _as_matrix(vectors) -> np.ndarray:
    x = np.asarray(vectors, dtype=float)
    if x.ndim != 2:
        raise ValueError("vectors must form a 2-D array (m, k)")
    return x


def cotype_constant_exact(nm: UncondNorm, vectors, q: float) -> float:
    """Best constant C with E||sum r_i x_i||^q >= C^-q sum ||x_i||^q.

    Exact over all 2^m sign patterns; m <= COTYPE_EXACT_LIMIT.  The raw
    value may fall below 1; cap at 1 when using it as a certificate.
    """
    x = _as_matrix(vectors)
    m = x.shape[0]
    if m > COTYPE_EXACT_LIMIT:
        raise ValueError(
            f"exact sign enumeration is limited to m <= {COTYPE_EXACT_LIMIT} "
            f"(got m={m}); use cotype_constant_mc for a flagged estimate"
        )
    if q < 2:
        raise ValueError("cotype exponent q must be >= 2")
    sums = sign_patterns(m) @ x
    expectation = float(np.mean(nm.eval_many(sums) ** q))
    rhs = float(np.sum(nm.eval_many(x) ** q))
    if rhs == 0:
        raise ValueError("family of zero vectors has no cotype constant")
    return (rhs / expectation) ** (1.0 / q)


def cotype_constant_mc(nm: UncondNorm, vectors, q: float, trials: int, rng) -> dict:
    """Monte Carlo estimate of the cotype constant; flagged, never exact."""
    x = _as_matrix(vectors)
    rng = as_rng(rng)
    signs = rng.choice((-1.0, 1.0), size=(trials, x.shape[0]))
    vals = nm.eval_many(signs @ x) ** q
    rhs = float(np.sum(nm.eval_many(x) ** q))
    est = (rhs / float(np.mean(vals))) ** (1.0 / q)
    return {"estimate": est, "exact": False, "trials": trials}


def restricted_cotype_check(
    nm: UncondNorm,
    vectors,
    q: float,
    C: float,
    rng=None,
    sample_budget: int = 2000,
) -> dict:
    """Cotype inequality across every nonempty subfamily at the given C.

    Exact (all subsets x all signs) for |A| <= RESTRICTED_EXACT_LIMIT,
    sampled beyond; a FAIL carries the witness subset.
    """
    x = _as_matrix(vectors)
    m = x.shape[0]
    if q < 2:
        raise ValueError("q must be >= 2")
    if C < 1:
        raise ValueError("C must be >= 1")
    norms_q = nm.eval_many(x) ** q
    inv_cq = C ** (-q)

    def subset_ok(idx) -> tuple[bool, float]:
        sub = x[list(idx)]
        sums = sign_patterns(len(idx)) @ sub
        expectation = float(np.mean(nm.eval_many(sums) ** q))
        rhs = inv_cq * float(np.sum(norms_q[list(idx)]))
        return expectation >= rhs * (1 - 1e-12), expectation - rhs

    if m <= RESTRICTED_EXACT_LIMIT:
        worst = math.inf
        for mask in range(1, 1 << m):
            idx = [i for i in range(m) if (mask >> i) & 1]
            ok, slack = subset_ok(idx)
            worst = min(worst, slack)
            if not ok:
                return {
                    "ok": False,
                    "exact": True,
                    "witness": tuple(idx),
                    "slack": slack,
                }
        return {"ok": True, "exact": True, "witness": None, "slack": worst}
    rng = as_rng(rng if rng is not None else 0)
    worst = math.inf
    for _ in range(sample_budget):
        size = int(rng.integers(1, m + 1))
        idx = sorted(int(i) for i in rng.choice(m, size=size, replace=False))
        if size > RESTRICTED_EXACT_LIMIT:
            continue  # keep each expectation exact; subsets above the limit skipped
        ok, slack = subset_ok(idx)
        worst = min(worst, slack)
        if not ok:
            return {"ok": False, "exact": False, "witness": tuple(idx), "slack": slack}
    return {"ok": True, "exact": False, "witness": None, "slack": worst}


def restricted_cotype_constant(nm: UncondNorm, vectors, q: float) -> float:
    """Best C valid across all subfamilies (exact; |A| <= RESTRICTED_EXACT_LIMIT)."""
    x = _as_matrix(vectors)
    m = x.shape[0]
    if m > RESTRICTED_EXACT_LIMIT:
        raise ValueError(f"exact restricted constant needs m <= {RESTRICTED_EXACT_LIMIT}")
    best = 0.0
    for mask in range(1, 1 << m):
        idx = [i for i in range(m) if (mask >> i) & 1]
        best = max(best, cotype_constant_exact(nm, x[idx], q))
    return best


# -- almost-disjoint support families ---------------------------------------------


@dataclass(frozen=True)
class OverlapFamily:
    """A base vector x >= 0 with index sets J_i whose overlap is bounded:
    every coordinate lies in at most delta * m of the sets."""

    x: tuple
    index_sets: tuple  # of frozensets
    delta: float

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))
        object.__setattr__(
            self, "index_sets", tuple(frozenset(s) for s in self.index_sets)
        )
        if any(v < 0 for v in self.x):
            raise ValueError("base vector must be coordinatewise nonnegative")
        if not (0 < self.delta <= 1):
            raise ValueError("delta must lie in (0, 1]")
        k = len(self.x)
        m = len(self.index_sets)
        if m == 0:
            raise ValueError("need at least one index set")
        for s in self.index_sets:
            if any(not (0 <= j < k) for j in s):
                raise ValueError("index set out of range")
        for j in range(k):
            cover = sum(1 for s in self.index_sets if j in s)
            if cover > self.delta * m * (1 + 1e-12):
                raise ValueError(
                    f"coordinate {j} lies in {cover} sets, above delta*m = "
                    f"{self.delta * m:.3f}"
                )

    def projections(self) -> np.ndarray:
        k = len(self.x)
        out = np.zeros((len(self.index_sets), k))
        for i, s in enumerate(self.index_sets):
            for j in s:
                out[i, j] = self.x[j]
        return out


def almost_disjoint_lower_bound_check(
    nm: UncondNorm, fam: OverlapFamily, q: float, C: float, verify_cotype: bool = True
) -> dict:
    """||x||^q >= C^-q delta^-1 2^-(2q+5) for almost-disjoint support families.

    Preconditions are reported individually: every projection has norm >= 1,
    the overlap bound holds (checked at construction), and optionally the
    projection family has restricted cotype q with constant C.
    """
    if C < 1:
        raise ValueError("C must be >= 1")
    projections = fam.projections()
    proj_norms = nm.eval_many(projections)
    preconditions = {
        "projections_at_least_one": bool(np.all(proj_norms >= 1 - 1e-12)),
        "overlap_ok": True,  # enforced by OverlapFamily
    }
    if verify_cotype and len(fam.index_sets) <= RESTRICTED_EXACT_LIMIT:
        rc = restricted_cotype_check(nm, projections, q, C)
        preconditions["restricted_cotype_ok"] = rc["ok"]
    value = nm(np.asarray(fam.x)) ** q
    bound = (C ** (-q)) / fam.delta * 2.0 ** (-(2 * q + 5))
    return {
        "value_q": value,
        "bound": bound,
        "ok": value >= bound * (1 - 1e-12),
        "preconditions": preconditions,
        "delta": fam.delta,
        "m": len(fam.index_sets),
    }


# -- q-concavity -------------------------------------------------------------------


def q_concavity_constant(nm: UncondNorm, vectors, q: float) -> float:
    """Smallest M with ||(sum |x_i|^q)^(1/q)|| >= M^-1 (sum ||x_i||^q)^(1/q).

    q = inf is rejected; the coordinatewise power mean is computed exactly.
    """
    if math.isinf(q):
        raise ValueError("q-concavity needs finite q")
    if q < 1:
        raise ValueError("q must be >= 1")
    x = _as_matrix(vectors)
    mean_vec = (np.abs(x) ** q).sum(axis=0) ** (1.0 / q)
    lhs = nm(mean_vec)
    rhs = float(np.sum(nm.eval_many(x) ** q)) ** (1.0 / q)
    if lhs == 0:
        raise ValueError("family of zero vectors has no concavity constant")
    return max(rhs / lhs, 1.0)
