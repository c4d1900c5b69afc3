"""The seven node-centrality indices and graph-level aggregates.

All indices are normalized per their textbook definitions:

    DC(i)  = deg(i) / (N-1)                  (weighted: incident capacity sum / (N-1))
    BC(i)  = 2/((N-1)(N-2)) * sum over pairs {j,k} of sigma_jk(i)/sigma_jk
    CC(i)  = (N-1) / sum_j d(i,j)
    HC(i)  = 1/(N-1) * sum_j 1/d(i,j)        (unreachable j contributes 0)
    ECC(i) = 1 / max_j d(i,j)
    EC     = dominant eigenvector of the (weighted) adjacency matrix, 2-norm 1
    PG(i)  = (1-d)/N + d * sum over neighbors v of PG(v)/deg(v)

Capacitated graphs use weighted variants everywhere except PageRank, which
is only defined here on binary graphs. Geodesics on capacitated graphs use
edge length = 1/capacity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import scipy.sparse as sp

from .errors import ComputeError
from .graph import Topology, connected_components, sweep


class IndexKind(str, Enum):
    DC = "dc"
    BC = "bc"
    CC = "cc"
    HC = "hc"
    ECC = "ecc"
    EC = "ec"
    PG = "pg"

    def __str__(self) -> str:  # keep CSV/CLI output compact
        return self.value


#: Canonical display order used by reports and matrices.
KIND_ORDER = [IndexKind.DC, IndexKind.BC, IndexKind.CC, IndexKind.HC,
              IndexKind.ECC, IndexKind.EC, IndexKind.PG]


@dataclass
class CentralityVector:
    kind: IndexKind
    scores: np.ndarray
    params: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.scores)


@dataclass
class GraphCentralitySummary:
    """Whole-graph aggregates of one node-centrality vector."""

    integration: float  # sum of node scores
    unipolarity: float  # maximum node score
    centralization: float  # sum of differences from the minimum score


def _require_nodes(g: Topology, minimum: int) -> None:
    if g.n < minimum:
        raise ComputeError("degenerate graph: need at least "
                           f"{minimum} nodes, got {g.n}")


def degree_centrality(g: Topology) -> CentralityVector:
    """deg(i)/(N-1); on capacitated graphs the incident capacity sum / (N-1)."""
    _require_nodes(g, 2)
    if g.capacitated:
        scores = g.weighted_degrees() / (g.n - 1)
    else:
        scores = g.degrees.astype(np.float64) / (g.n - 1)
    return CentralityVector(IndexKind.DC, scores)


def _geodesic_pass(g: Topology, need_bc: bool):
    """One sweep over all sources feeding BC accumulation and row aggregates.

    Returns (bc_raw, dist_sum, inv_dist_sum, ecc, disconnected). bc_raw is
    the Brandes dependency total over ordered pairs.
    """
    n = g.n
    adj = g.adjacency_lists()
    kw = {"adj": adj}
    if g.capacitated:
        kw["lengths"] = g.edge_length_lists()
    bc_raw = np.zeros(n)
    dist_sum = np.zeros(n)
    inv_sum = np.zeros(n)
    ecc = np.zeros(n)
    disconnected = False
    for s in range(n):
        sw = sweep(g, s, **kw)
        finite = np.isfinite(sw.dist)
        if not finite.all():
            disconnected = True
        d = sw.dist[finite]
        dist_sum[s] = d.sum()
        ecc[s] = d.max() if len(d) else 0.0
        with np.errstate(divide="ignore"):
            inv = 1.0 / sw.dist[finite]
        inv[sw.dist[finite] == 0] = 0.0
        inv_sum[s] = inv.sum()
        if need_bc:
            delta = [0.0] * n
            sigma = sw.sigma.tolist()
            bc_local = bc_raw
            for w in reversed(sw.order):
                coeff = (1.0 + delta[w]) / sigma[w]
                for v in sw.preds[w]:
                    delta[v] += sigma[v] * coeff
                if w != s:
                    bc_local[w] += delta[w]
    return bc_raw, dist_sum, inv_sum, ecc, disconnected


def betweenness_centrality(g: Topology) -> CentralityVector:
    """Fraction of geodesics passing through each node (Brandes accumulation).

    Disconnected inputs are tolerated: pairs in different components simply
    never contribute, while the global normalization keeps a single scale.
    """
    _require_nodes(g, 3)
    bc_raw, _, _, _, _ = _geodesic_pass(g, need_bc=True)
    scores = bc_raw / ((g.n - 1) * (g.n - 2))
    return CentralityVector(IndexKind.BC, scores)


def closeness_centrality(g: Topology) -> CentralityVector:
    _require_nodes(g, 2)
    _, dist_sum, _, _, disconnected = _geodesic_pass(g, need_bc=False)
    if disconnected:
        raise ComputeError("closeness undefined across components")
    return CentralityVector(IndexKind.CC, (g.n - 1) / dist_sum)


def harmonic_centrality(g: Topology) -> CentralityVector:
    _require_nodes(g, 2)
    _, _, inv_sum, _, _ = _geodesic_pass(g, need_bc=False)
    return CentralityVector(IndexKind.HC, inv_sum / (g.n - 1))


def eccentricity_centrality(g: Topology) -> CentralityVector:
    _require_nodes(g, 2)
    _, _, _, ecc, disconnected = _geodesic_pass(g, need_bc=False)
    if disconnected:
        raise ComputeError("eccentricity undefined across components")
    return CentralityVector(IndexKind.ECC, 1.0 / ecc)


def _adjacency_matrix(g: Topology) -> sp.csr_matrix:
    data = g.capacities if g.capacitated else np.ones(len(g.indices))
    return sp.csr_matrix((data, g.indices, g.indptr), shape=(g.n, g.n))


def eigenvector_centrality(
    g: Topology, tol: float = 1e-10, max_iter: int = 100_000
) -> CentralityVector:
    """Dominant adjacency eigenvector by power iteration, Euclidean norm 1.

    Starts from the uniform vector; stops when the successive-iterate
    inf-norm delta drops below ``tol``. A period-2 stall (bipartite
    spectrum) is broken by averaging the last two iterates.
    """
    _require_nodes(g, 2)
    labeling = connected_components(g)
    if labeling.num_components != 1:
        raise ComputeError("eigenvector centrality requires a connected graph")
    a = _adjacency_matrix(g)
    x = np.full(g.n, 1.0 / np.sqrt(g.n))
    prev = None
    delta = np.inf
    for _ in range(max_iter):
        y = a @ x
        norm = np.linalg.norm(y)
        if norm == 0.0:
            raise ComputeError("eigenvector centrality: zero adjacency image")
        y /= norm
        delta = np.abs(y - x).max()
        if delta < tol:
            x = y
            break
        if prev is not None and np.abs(y - prev).max() < tol:
            y = x + y
            y /= np.linalg.norm(y)
        prev = x
        x = y
    else:
        lam = float(x @ (a @ x))
        residual = np.abs(a @ x - lam * x).max()
        raise ComputeError(
            f"power iteration did not converge in {max_iter} iterations "
            f"(last delta {delta:.3e}, residual {residual:.3e})")
    lam = float(x @ (a @ x))
    return CentralityVector(IndexKind.EC, x, params={"eigenvalue": lam})


def pagerank(
    g: Topology, d: float = 0.85, tol: float = 1e-12, max_iter: int = 100_000
) -> CentralityVector:
    """Fixed point of PG(i) = (1-d)/N + d * sum_{v~i} PG(v)/deg(v).

    Binary graphs only. Isolated nodes (possible on residual graphs during
    sequential attacks) keep just their jump share (1-d)/N.
    """
    _require_nodes(g, 2)
    if g.capacitated:
        raise ComputeError("weighted PageRank out of scope")
    if not (0.0 <= d < 1.0):
        raise ComputeError(f"damping factor must lie in [0,1), got {d}")
    a = _adjacency_matrix(g)
    deg = g.degrees.astype(np.float64)
    safe_deg = np.maximum(deg, 1.0)
    n = g.n
    x = np.full(n, 1.0 / n)
    base = (1.0 - d) / n
    for _ in range(max_iter):
        y = base + d * (a @ (x / safe_deg))
        if np.abs(y - x).sum() < tol:
            return CentralityVector(IndexKind.PG, y, params={"damping": d})
        x = y
    raise ComputeError(f"PageRank did not converge in {max_iter} iterations")


def compute_all(
    g: Topology, kinds=None, d: float = 0.85
) -> dict[IndexKind, CentralityVector]:
    """Batch computation; BC/CC/HC/ECC share one geodesic pass.

    ``kinds`` defaults to every index valid on the given topology (PG only
    on binary graphs). Requesting PG on a capacitated graph is an error.
    """
    if kinds is None:
        kinds = [k for k in KIND_ORDER if not (g.capacitated and k == IndexKind.PG)]
    kinds = [IndexKind(k) for k in kinds]
    if g.capacitated and IndexKind.PG in kinds:
        raise ComputeError("weighted PageRank out of scope")
    out: dict[IndexKind, CentralityVector] = {}
    geo_kinds = {IndexKind.BC, IndexKind.CC, IndexKind.HC, IndexKind.ECC} & set(kinds)
    if geo_kinds:
        _require_nodes(g, 3 if IndexKind.BC in geo_kinds else 2)
        bc_raw, dist_sum, inv_sum, ecc, disconnected = _geodesic_pass(
            g, need_bc=IndexKind.BC in geo_kinds)
        if disconnected and geo_kinds & {IndexKind.CC, IndexKind.ECC}:
            raise ComputeError("closeness undefined across components")
        if IndexKind.BC in geo_kinds:
            out[IndexKind.BC] = CentralityVector(
                IndexKind.BC, bc_raw / ((g.n - 1) * (g.n - 2)))
        if IndexKind.CC in geo_kinds:
            out[IndexKind.CC] = CentralityVector(IndexKind.CC, (g.n - 1) / dist_sum)
        if IndexKind.HC in geo_kinds:
            out[IndexKind.HC] = CentralityVector(IndexKind.HC, inv_sum / (g.n - 1))
        if IndexKind.ECC in geo_kinds:
            out[IndexKind.ECC] = CentralityVector(IndexKind.ECC, 1.0 / ecc)
    if IndexKind.DC in kinds:
        out[IndexKind.DC] = degree_centrality(g)
    if IndexKind.EC in kinds:
        out[IndexKind.EC] = eigenvector_centrality(g)
    if IndexKind.PG in kinds:
        out[IndexKind.PG] = pagerank(g, d=d)
    return {k: out[k] for k in kinds}


def graph_summary(c: CentralityVector) -> GraphCentralitySummary:
    """Integration (sum), unipolarity (max) and centralization (sum of
    differences from the minimum) of one centrality vector."""
    s = c.scores
    return GraphCentralitySummary(
        integration=float(s.sum()),
        unipolarity=float(s.max()),
        centralization=float((s - s.min()).sum()),
    )


def degree_distribution(g: Topology) -> dict[int, int]:
    """Exact degree histogram, suitable for log-log plotting."""
    values, counts = np.unique(g.degrees, return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}
