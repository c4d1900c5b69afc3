"""Centrality-driven node removal and its connectivity impact.

Simultaneous mode ranks the intact graph once and removes the top-k of
that fixed order at each step; sequential mode re-ranks the residual graph
after every single removal. Connectivity is tracked through the giant
component size, the number of components and the average shortest path
length over same-component pairs (hop counts).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import centrality as ct
from .errors import ComputeError
from .graph import Topology, connected_components, induced_subgraph
from .rankstats import rank


def default_steps(n: int, max_fraction: float = 0.05) -> list[int]:
    """Every integer removal count from 0 up to ceil(max_fraction * N)."""
    top = min(int(math.ceil(max_fraction * n)), n - 1)
    return list(range(top + 1))


@dataclass
class AttackPlan:
    driver: ct.IndexKind
    mode: str = "simultaneous"  # or "sequential"
    steps: list[int] | None = None  # None: default 5% grid for the target graph

    def resolve_steps(self, n: int) -> list[int]:
        steps = self.steps if self.steps is not None else default_steps(n)
        if not steps or steps[0] != 0:
            raise ComputeError("removal steps must start at 0")
        if any(b <= a for a, b in zip(steps, steps[1:])):
            raise ComputeError("removal steps must be strictly increasing")
        if steps[-1] > n - 1:
            raise ComputeError("cannot remove more than N-1 nodes")
        return list(steps)


@dataclass
class ConnectivitySnapshot:
    k: int
    gcc_size: int
    num_components: int
    avg_shortest_path: float
    avg_path_defined: bool = True  # False when no same-component pair exists


@dataclass
class AttackTrace:
    driver: ct.IndexKind
    mode: str
    snapshots: list[ConnectivitySnapshot] = field(default_factory=list)

    @property
    def steps(self) -> list[int]:
        return [s.k for s in self.snapshots]

    def metric_values(self, metric: str) -> list[float]:
        return [getattr(s, metric) for s in self.snapshots]


def connectivity_metrics(g: Topology, removed) -> ConnectivitySnapshot:
    """Connectivity metrics of the residual graph after deleting ``removed``."""
    removed = set(int(r) for r in removed)
    n = g.n
    if len(removed) >= n:
        raise ComputeError("empty residual graph")
    alive = [u for u in range(n) if u not in removed]
    adj_all = g.adjacency_lists()

    # Bit-parallel BFS closure: reach[u] accumulates the alive nodes within
    # distance d of u; popcount deltas per round give the distance histogram.
    bit = {u: 1 << i for i, u in enumerate(alive)}
    adj = {u: [v for v in adj_all[u] if v not in removed] for u in alive}
    reach = {u: bit[u] for u in alive}
    n_alive = len(alive)
    pairs_prev = n_alive  # distance-0 pairs (self)
    sum_dist = 0
    dist = 0
    while True:
        dist += 1
        changed = False
        new_reach = {}
        for u in alive:
            m = reach[u]
            for v in adj[u]:
                m |= reach[v]
            new_reach[u] = m
            if m != reach[u]:
                changed = True
        reach = new_reach
        if not changed:
            break
        pairs_now = sum(m.bit_count() for m in reach.values())
        sum_dist += dist * (pairs_now - pairs_prev)
        pairs_prev = pairs_now

    # closure masks identify components
    comp_sizes: dict[int, int] = {}
    for u in alive:
        m = reach[u]
        if m not in comp_sizes:
            comp_sizes[m] = m.bit_count()
    gcc_size = max(comp_sizes.values())
    num_components = len(comp_sizes)
    finite_ordered_pairs = pairs_prev - n_alive
    if finite_ordered_pairs > 0:
        avg = sum_dist / finite_ordered_pairs
        defined = True
    else:
        avg = 0.0
        defined = False
    return ConnectivitySnapshot(len(removed), gcc_size, num_components, avg, defined)


def residual_driver_scores(
    g: Topology, alive_ids: np.ndarray, kind: ct.IndexKind, d: float = 0.85
) -> np.ndarray:
    """Driver index on the residual graph, handling disconnection.

    CC and ECC are computed per component with component-local N; EC is
    computed on the residual giant component with other nodes scored 0; DC,
    BC, HC and PG apply their direct disconnected-graph generalizations.
    Returns scores aligned with ``alive_ids``.
    """
    sub, _ = induced_subgraph(g, alive_ids)
    n = sub.n
    if n == 0:
        raise ComputeError("empty residual graph")
    if kind == ct.IndexKind.DC:
        if n < 2:
            return np.zeros(n)
        return ct.degree_centrality(sub).scores
    if kind == ct.IndexKind.BC:
        if n < 3:
            return np.zeros(n)
        return ct.betweenness_centrality(sub).scores
    if kind == ct.IndexKind.HC:
        if n < 2:
            return np.zeros(n)
        return ct.harmonic_centrality(sub).scores
    if kind == ct.IndexKind.PG:
        if n < 2:
            return np.full(n, 1.0)
        return ct.pagerank(sub, d=d).scores

    labeling = connected_components(sub)
    scores = np.zeros(n)
    if kind in (ct.IndexKind.CC, ct.IndexKind.ECC):
        for cid in range(labeling.num_components):
            members = np.nonzero(labeling.component_id == cid)[0]
            if len(members) < 2:
                continue  # singleton: least central by convention
            comp, _ = induced_subgraph(sub, members)
            vec = (ct.closeness_centrality(comp) if kind == ct.IndexKind.CC
                   else ct.eccentricity_centrality(comp))
            scores[members] = vec.scores
        return scores
    if kind == ct.IndexKind.EC:
        members = labeling.gcc_nodes()
        if len(members) < 2:
            scores[members[0]] = 1.0
            return scores
        comp, _ = induced_subgraph(sub, members)
        scores[members] = ct.eigenvector_centrality(comp).scores
        return scores
    raise ComputeError(f"unknown driver index {kind}")


def intact_ranking_order(g: Topology, driver: ct.IndexKind, d: float = 0.85) -> np.ndarray:
    """Removal order on the intact graph: score descending, id ascending."""
    vec = ct.compute_all(g, kinds=[driver], d=d)[driver]
    return rank(vec).order


def run_attack(g: Topology, plan: AttackPlan, d: float = 0.85) -> AttackTrace:
    """Simulate the node-removal schedule of ``plan`` and record metrics."""
    driver = ct.IndexKind(plan.driver)
    if g.capacitated and driver == ct.IndexKind.PG:
        raise ComputeError("weighted PageRank out of scope")
    if connected_components(g).num_components != 1:
        raise ComputeError("attack simulation expects a connected graph")
    steps = plan.resolve_steps(g.n)
    trace = AttackTrace(driver, plan.mode)
    if plan.mode == "simultaneous":
        order = intact_ranking_order(g, driver, d)
        for k in steps:
            trace.snapshots.append(connectivity_metrics(g, order[:k]))
    elif plan.mode == "sequential":
        removed: list[int] = []
        alive = np.ones(g.n, dtype=bool)
        for k in steps:
            while len(removed) < k:
                alive_ids = np.nonzero(alive)[0]
                scores = residual_driver_scores(g, alive_ids, driver, d)
                # argmax returns the first maximum, i.e. the smallest
                # original id among tied scores
                target = int(alive_ids[int(np.argmax(scores))])
                removed.append(target)
                alive[target] = False
            trace.snapshots.append(connectivity_metrics(g, removed))
    else:
        raise ComputeError(f"unknown attack mode {plan.mode!r}")
    return trace


# Polarity of "most damaging" per metric: the best case (for the attacker)
# is the minimum giant component / aggregate flow but the maximum number of
# components. The non-monotone average path length uses max as best case.
_BEST_IS_MIN = {"gcc_size": True, "num_components": False,
                "avg_shortest_path": False, "agg_max_flow": True}

METRICS = list(_BEST_IS_MIN)


@dataclass
class EnvelopeReport:
    """Best/worst-case band of one metric across driver indices."""

    metric: str
    steps: list[int]
    drivers: list[ct.IndexKind]
    values: np.ndarray  # shape (len(drivers), len(steps))
    best: np.ndarray  # per step, most damaging value over drivers
    worst: np.ndarray  # per step, least damaging value over drivers
    max_min_ratio: np.ndarray  # plain max/min over drivers per step
    impact_factors: dict[ct.IndexKind, float | None]
    degenerate: bool  # True when the envelope is flat at every step k > 0

    @property
    def best_is(self) -> str:
        """Polarity marker recorded in output metadata: whether the
        most-damaging ("best case") value is the min or max over drivers."""
        return "min" if _BEST_IS_MIN[self.metric] else "max"


def envelope(traces, metric: str) -> EnvelopeReport:
    """Pointwise best/worst-case band over per-driver attack traces.

    Accepts connectivity traces (gcc_size, num_components,
    avg_shortest_path) or capacity traces (agg_max_flow).
    """
    if metric not in _BEST_IS_MIN:
        raise ComputeError(f"unknown envelope metric {metric!r}")
    if len(traces) < 2:
        raise ComputeError("envelope needs at least 2 traces")
    steps = traces[0].steps
    for t in traces[1:]:
        if t.steps != steps:
            raise ComputeError("traces disagree on removal steps")
        if t.mode != traces[0].mode:
            raise ComputeError("traces disagree on attack mode")
    drivers = [t.driver for t in traces]
    values = np.array([t.metric_values(metric) for t in traces], dtype=float)
    if _BEST_IS_MIN[metric]:
        best = values.min(axis=0)
        worst = values.max(axis=0)
    else:
        best = values.max(axis=0)
        worst = values.min(axis=0)
    hi = values.max(axis=0)
    lo = values.min(axis=0)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(hi == lo, 1.0, hi / lo)
    eligible = [i for i, k in enumerate(steps) if k > 0 and best[i] != worst[i]]
    degenerate = not eligible
    impact: dict[ct.IndexKind, float | None] = {}
    for di, drv in enumerate(drivers):
        if degenerate:
            impact[drv] = None
        else:
            per_step = [abs(values[di, i] - worst[i]) / abs(best[i] - worst[i])
                        for i in eligible]
            impact[drv] = float(np.mean(per_step))
    return EnvelopeReport(metric, steps, drivers, values, best, worst,
                          np.asarray(ratio), impact, degenerate)


def impact_factor(report: EnvelopeReport, c: ct.IndexKind) -> float:
    """Average normalized distance of driver ``c`` from the worst case."""
    c = ct.IndexKind(c)
    if c not in report.impact_factors:
        raise ComputeError(f"driver {c} not present in envelope")
    if report.degenerate:
        raise ComputeError("flat envelope")
    return report.impact_factors[c]


@dataclass
class ImpactPmf:
    bin_edges: np.ndarray
    mass: np.ndarray


def if_pmf(reports: list[EnvelopeReport], c: ct.IndexKind, bins: int = 10) -> ImpactPmf:
    """Empirical PMF of the per-topology impact factor of driver ``c``.

    Flat-envelope reports are skipped; the histogram uses equal-width bins
    on [0, 1] and sums to 1.
    """
    c = ct.IndexKind(c)
    vals = [r.impact_factors.get(c) for r in reports if not r.degenerate]
    vals = [v for v in vals if v is not None]
    if not vals:
        raise ComputeError("no non-degenerate envelope reports")
    counts, edges = np.histogram(vals, bins=bins, range=(0.0, 1.0))
    return ImpactPmf(edges, counts / counts.sum())
