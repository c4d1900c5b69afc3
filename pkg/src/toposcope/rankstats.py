"""Rankings induced by centrality scores and their agreement measures.

Rank 1 is the highest score. Tied scores share the average of their
positional ranks (fractional ranks); the ordering permutation breaks ties
by ascending node id so that downstream consumers are deterministic.

Conventions for degenerate inputs: when either score vector is constant,
the full ranking carries no information and both rank-correlation
coefficients are reported as 0 (flagged where a table is produced).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .centrality import (
    KIND_ORDER,
    CentralityVector,
    IndexKind,
    compute_all,
    pagerank,
)
from .errors import ComputeError
from .graph import Topology


@dataclass
class Ranking:
    """Decreasing-score node order plus tie-aware fractional ranks."""

    order: np.ndarray  # permutation of [0, N)
    frac_rank: np.ndarray  # in [1, N], rank 1 = highest score

    @property
    def n(self) -> int:
        return len(self.order)

    @property
    def degenerate(self) -> bool:
        """True when every node is tied (constant scores)."""
        return bool(self.frac_rank.min() == self.frac_rank.max()) and self.n > 1


def rank(c: CentralityVector | np.ndarray) -> Ranking:
    """Rank nodes by decreasing score; ties average their positional ranks."""
    scores = c.scores if isinstance(c, CentralityVector) else np.asarray(c, dtype=float)
    n = len(scores)
    order = np.argsort(-scores, kind="stable")
    frac = np.empty(n)
    sorted_scores = scores[order]
    i = 0
    while i < n:
        j = i
        while j + 1 < n and sorted_scores[j + 1] == sorted_scores[i]:
            j += 1
        # positions i..j (0-based) share the average 1-based rank
        frac[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return Ranking(order, frac)


def spearman(r1: Ranking, r2: Ranking) -> float:
    """Rank-difference coefficient 1 - 6*sum(d^2) / (N(N^2-1)).

    Evaluated on fractional ranks; reduces to the classic closed form on
    tie-free data. Returns 0 when either ranking is fully tied.
    """
    n = _common_n(r1, r2)
    if r1.degenerate or r2.degenerate:
        return 0.0
    d = r1.frac_rank - r2.frac_rank
    return float(1.0 - 6.0 * (d @ d) / (n * (n * n - 1.0)))


def kendall(r1: Ranking, r2: Ranking) -> float:
    """Kendall tau-b via merge-sort inversion counting, O(N log N).

    Ties contribute to the tau-b denominator corrections; returns 0 when a
    side is fully tied.
    """
    n = _common_n(r1, r2)
    x = r1.frac_rank
    y = r2.frac_rank
    idx = np.lexsort((y, x))
    xs = x[idx]
    ys = y[idx]
    n0 = n * (n - 1) // 2
    tie_x = _tie_pair_count(xs)
    tie_xy = _joint_tie_pair_count(xs, ys)
    tie_y = _tie_pair_count(np.sort(y))
    disc = _count_inversions(ys.tolist())
    num = n0 - tie_x - tie_y + tie_xy - 2 * disc
    # single sqrt of the integer product keeps the tie-free cases exact
    den = float(np.sqrt(float((n0 - tie_x) * (n0 - tie_y))))
    if den == 0.0:
        return 0.0
    return float(num / den)


def _common_n(r1: Ranking, r2: Ranking) -> int:
    if r1.n != r2.n:
        raise ComputeError("rankings cover different node sets")
    if r1.n < 2:
        raise ComputeError("need at least 2 nodes")
    return r1.n


def _tie_pair_count(sorted_vals: np.ndarray) -> int:
    _, counts = np.unique(sorted_vals, return_counts=True)
    return int((counts * (counts - 1) // 2).sum())


def _joint_tie_pair_count(xs: np.ndarray, ys: np.ndarray) -> int:
    total = 0
    i = 0
    n = len(xs)
    while i < n:
        j = i
        while j + 1 < n and xs[j + 1] == xs[i] and ys[j + 1] == ys[i]:
            j += 1
        t = j - i + 1
        total += t * (t - 1) // 2
        i = j + 1
    return total


def _count_inversions(seq: list) -> int:
    """Pairs (i < j) with seq[i] > seq[j], by bottom-up merge counting."""
    n = len(seq)
    buf = seq[:]
    tmp = [0.0] * n
    inversions = 0
    width = 1
    while width < n:
        for lo in range(0, n - width, 2 * width):
            mid = lo + width
            hi = min(lo + 2 * width, n)
            i, j, k = lo, mid, lo
            while i < mid and j < hi:
                if buf[i] <= buf[j]:
                    tmp[k] = buf[i]
                    i += 1
                else:
                    tmp[k] = buf[j]
                    j += 1
                    inversions += mid - i
                k += 1
            while i < mid:
                tmp[k] = buf[i]
                i += 1
                k += 1
            while j < hi:
                tmp[k] = buf[j]
                j += 1
                k += 1
            buf[lo:hi] = tmp[lo:hi]
        width *= 2
    return inversions


def pearson(c1, c2) -> float:
    """Sample linear correlation of raw scores (not ranks)."""
    x = np.asarray(c1.scores if isinstance(c1, CentralityVector) else c1, dtype=float)
    y = np.asarray(c2.scores if isinstance(c2, CentralityVector) else c2, dtype=float)
    if len(x) != len(y):
        raise ComputeError("score vectors cover different node sets")
    xc = x - x.mean()
    yc = y - y.mean()
    sx = float(xc @ xc)
    sy = float(yc @ yc)
    if sx == 0.0 or sy == 0.0:
        raise ComputeError("degenerate: constant scores")
    return float((xc @ yc) / np.sqrt(sx * sy))


def top_k_overlap(r1: Ranking, r2: Ranking, k_fraction: float) -> float:
    """Percentage overlap of the two top-k sets, k = max(1, floor(f*N))."""
    if not (0.0 < k_fraction <= 1.0):
        raise ComputeError(f"k_fraction must lie in (0,1], got {k_fraction}")
    n = _common_n(r1, r2)
    k = max(1, int(np.floor(k_fraction * n)))
    top1 = set(r1.order[:k].tolist())
    top2 = set(r2.order[:k].tolist())
    return 100.0 * len(top1 & top2) / k


@dataclass
class CorrelationMatrix:
    """Pairwise agreement of several indices over one topology."""

    kinds: list[IndexKind]
    spearman: np.ndarray
    kendall: np.ndarray
    pearson: np.ndarray
    overlap: np.ndarray
    k_fraction: float

    def measure(self, name: str) -> np.ndarray:
        return getattr(self, name)


MEASURES = ["spearman", "kendall", "pearson", "overlap"]


def correlation_matrix(vectors, k_fraction: float = 0.05) -> CorrelationMatrix:
    """All four pairwise agreement matrices for the given index vectors.

    ``vectors`` maps IndexKind to CentralityVector over the same node set.
    Degenerate pairs (a constant vector) yield 0 in the rank and linear
    coefficients, matching the tie-handling convention.
    """
    kinds = [k for k in KIND_ORDER if k in vectors]
    if len(kinds) < 2:
        raise ComputeError("correlation matrix needs at least 2 index vectors")
    sizes = {vectors[k].n for k in kinds}
    if len(sizes) != 1:
        raise ComputeError("index vectors cover different node sets")
    rankings = {k: rank(vectors[k]) for k in kinds}
    m = len(kinds)
    mats = {name: np.eye(m) for name in MEASURES}
    mats["overlap"] = np.eye(m) * 100.0
    for i in range(m):
        for j in range(i + 1, m):
            ri, rj = rankings[kinds[i]], rankings[kinds[j]]
            try:
                pr = pearson(vectors[kinds[i]], vectors[kinds[j]])
            except ComputeError:
                pr = 0.0
            cells = {
                "spearman": spearman(ri, rj),
                "kendall": kendall(ri, rj),
                "pearson": pr,
                "overlap": top_k_overlap(ri, rj, k_fraction),
            }
            for name, val in cells.items():
                mats[name][i, j] = mats[name][j, i] = val
    return CorrelationMatrix(kinds, mats["spearman"], mats["kendall"],
                             mats["pearson"], mats["overlap"], k_fraction)


@dataclass
class AggregateMatrices:
    """Mean and (population) variance per cell over several topologies."""

    kinds: list[IndexKind]
    mean: dict[str, np.ndarray]
    variance: dict[str, np.ndarray]
    k_fraction: float
    count: int


def aggregate_matrices(matrices: list[CorrelationMatrix]) -> AggregateMatrices:
    """Cell-wise mean and variance across per-topology matrices."""
    if not matrices:
        raise ComputeError("no matrices to aggregate")
    kinds = matrices[0].kinds
    for m in matrices[1:]:
        if m.kinds != kinds:
            raise ComputeError("matrices cover different index sets")
    mean = {}
    var = {}
    for name in MEASURES:
        stack = np.stack([m.measure(name) for m in matrices])
        mean[name] = stack.mean(axis=0)
        var[name] = stack.var(axis=0)
    return AggregateMatrices(kinds, mean, var, matrices[0].k_fraction, len(matrices))


@dataclass
class DampingSweep:
    """Spearman correlation of PageRank against other indices, per damping value."""

    d_values: list[float]
    kinds: list[IndexKind]
    rho: np.ndarray  # shape (len(d_values), len(kinds))
    degenerate: np.ndarray  # bool, same shape


def damping_sweep(g: Topology, d_values, against) -> DampingSweep:
    """Recompute PageRank per damping value and correlate with fixed indices."""
    if g.capacitated:
        raise ComputeError("weighted PageRank out of scope")
    d_values = [float(d) for d in d_values]
    for d in d_values:
        if not (0.0 <= d < 1.0):
            raise ComputeError(f"damping factor must lie in [0,1), got {d}")
    kinds = [IndexKind(k) for k in against]
    base = compute_all(g, kinds=kinds)
    base_rankings = {k: rank(base[k]) for k in kinds}
    rho = np.zeros((len(d_values), len(kinds)))
    degen = np.zeros_like(rho, dtype=bool)
    for i, d in enumerate(d_values):
        pg_rank = rank(pagerank(g, d=d))
        for j, k in enumerate(kinds):
            rho[i, j] = spearman(pg_rank, base_rankings[k])
            degen[i, j] = pg_rank.degenerate or base_rankings[k].degenerate
    return DampingSweep(d_values, kinds, rho, degen)


@dataclass
class BottomRankDiagnostics:
    """Degree-one share versus DC/BC agreement for one topology."""

    fraction_dc_eq_1: float
    spearman: float
    top_k_overlap: float


def bottom_rank_diagnostics(
    g: Topology, r_dc: Ranking, r_bc: Ranking, k_fraction: float = 0.05
) -> BottomRankDiagnostics:
    """Quantify how much of the DC-BC agreement sits at the ranking bottom.

    Reports the fraction of degree-1 nodes alongside the full-rank Spearman
    coefficient and the top-k overlap of the two rankings.
    """
    if g.capacitated:
        raise ComputeError("degree-one diagnostics apply to binary graphs")
    frac = float((g.degrees == 1).sum() / g.n)
    return BottomRankDiagnostics(
        fraction_dc_eq_1=frac,
        spearman=spearman(r_dc, r_bc),
        top_k_overlap=top_k_overlap(r_dc, r_bc, k_fraction),
    )
