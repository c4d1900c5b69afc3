"""Undirected topology representation and shortest-path primitives.

A :class:`Topology` is an immutable simple graph with dense integer node
ids, stored in CSR form (``indptr``/``indices``) with neighbor lists sorted
ascending. Capacitated graphs additionally carry one positive capacity per
edge; geodesic computations on them use edge length = 1/capacity.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .errors import ComputeError

# Two real-valued path lengths are considered equal iff
# |a - b| <= GEODESIC_RTOL * max(a, b).  A purely relative rule keeps the
# tie structure invariant under uniform capacity scaling (an absolute floor
# would merge everything on Gbps-scale links whose lengths are ~1e-9).
GEODESIC_RTOL = 1e-9


def lengths_equal(a: float, b: float) -> bool:
    """Tolerance-based equality for weighted path lengths."""
    if a == np.inf or b == np.inf:
        return False
    return abs(a - b) <= GEODESIC_RTOL * max(a, b)


@dataclass(eq=False)
class Topology:
    """Immutable undirected simple graph in CSR form.

    Attributes:
        indptr: int64 array of length N+1, row offsets into ``indices``.
        indices: int64 array of neighbor ids, sorted within each row.
        capacities: float64 array parallel to ``indices`` (both directions
            of an edge carry the same value), or None for binary graphs.
        labels: original node label per dense id.
    """

    indptr: np.ndarray
    indices: np.ndarray
    capacities: np.ndarray | None
    labels: tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def num_edges(self) -> int:
        return len(self.indices) // 2

    @property
    def capacitated(self) -> bool:
        return self.capacities is not None

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, u: int) -> np.ndarray:
        return self.indices[self.indptr[u] : self.indptr[u + 1]]

    def edge_capacities(self, u: int) -> np.ndarray:
        if self.capacities is None:
            raise ComputeError("binary topology carries no capacities")
        return self.capacities[self.indptr[u] : self.indptr[u + 1]]

    def weighted_degrees(self) -> np.ndarray:
        """Per-node sum of incident capacities."""
        if self.capacities is None:
            raise ComputeError("binary topology carries no capacities")
        csum = np.concatenate(([0.0], np.cumsum(self.capacities)))
        return csum[self.indptr[1:]] - csum[self.indptr[:-1]]

    def adjacency_lists(self) -> list[list[int]]:
        """Neighbor ids as plain Python lists (fast to iterate in loops)."""
        idx = self.indices.tolist()
        ptr = self.indptr.tolist()
        return [idx[ptr[u] : ptr[u + 1]] for u in range(self.n)]

    def edge_length_lists(self) -> list[list[float]]:
        """Per-neighbor geodesic lengths (1/capacity), aligned with adjacency_lists."""
        if self.capacities is None:
            raise ComputeError("binary topology carries no capacities")
        lengths = (1.0 / self.capacities).tolist()
        ptr = self.indptr.tolist()
        return [lengths[ptr[u] : ptr[u + 1]] for u in range(self.n)]

    def scaled(self, factor: float) -> "Topology":
        """Copy with all capacities multiplied by ``factor`` (> 0)."""
        if self.capacities is None or factor <= 0:
            raise ComputeError("scaled() needs a capacitated topology and factor > 0")
        return Topology(self.indptr, self.indices, self.capacities * factor, self.labels)

    @classmethod
    def from_edges(cls, n, edges, capacities=None, labels=None) -> "Topology":
        g, _ = build_topology(n, edges, capacities=capacities, labels=labels)
        return g


@dataclass
class BuildStats:
    multi_edges_collapsed: int = 0
    self_loops_dropped: int = 0


def build_topology(n, edges, capacities=None, labels=None) -> tuple[Topology, BuildStats]:
    """Build a Topology from an edge list, collapsing duplicates.

    ``edges`` is a sequence of (u, v) pairs with ids in [0, n). Self-loops
    are dropped and parallel edges collapsed (capacities summed), with
    counts reported in BuildStats. ``capacities`` is an optional parallel
    sequence of positive reals; None builds a binary graph.
    """
    if labels is None:
        labels = tuple(str(i) for i in range(n))
    else:
        labels = tuple(labels)
        if len(labels) != n:
            raise ValueError("labels length must equal node count")

    stats = BuildStats()
    merged: dict[tuple[int, int], float] = {}
    caps = list(capacities) if capacities is not None else None
    if caps is not None and len(caps) != len(edges):
        raise ValueError("capacities must parallel edges")

    for k, (u, v) in enumerate(edges):
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u},{v}) outside [0,{n})")
        if u == v:
            stats.self_loops_dropped += 1
            continue
        key = (u, v) if u < v else (v, u)
        c = float(caps[k]) if caps is not None else 1.0
        if caps is not None and not (np.isfinite(c) and c > 0):
            raise ValueError(f"edge ({u},{v}): capacity must be finite and > 0, got {c}")
        if key in merged:
            stats.multi_edges_collapsed += 1
            merged[key] += c
        else:
            merged[key] = c

    deg = np.zeros(n, dtype=np.int64)
    for (u, v) in merged:
        deg[u] += 1
        deg[v] += 1
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(deg, out=indptr[1:])
    indices = np.empty(indptr[-1], dtype=np.int64)
    data = np.empty(indptr[-1], dtype=np.float64) if caps is not None else None
    cursor = indptr[:-1].copy()
    for (u, v), c in sorted(merged.items()):
        for a, b in ((u, v), (v, u)):
            pos = cursor[a]
            indices[pos] = b
            if data is not None:
                data[pos] = c
            cursor[a] = pos + 1
    # rows are filled from a sorted edge iteration, but the (v, u) reverse
    # entries arrive out of order; sort each row once
    for u in range(n):
        lo, hi = indptr[u], indptr[u + 1]
        order = np.argsort(indices[lo:hi], kind="stable")
        indices[lo:hi] = indices[lo:hi][order]
        if data is not None:
            data[lo:hi] = data[lo:hi][order]

    return Topology(indptr, indices, data, labels), stats


@dataclass
class ComponentLabeling:
    """Partition of the node set into connected components.

    Component ids are assigned in order of each component's smallest node
    id; ``gcc_id`` is the id of a maximum-size component (ties resolved by
    that same ordering, i.e. by smallest contained node id).
    """

    component_id: np.ndarray
    component_sizes: list[int]
    gcc_id: int

    @property
    def num_components(self) -> int:
        return len(self.component_sizes)

    @property
    def gcc_size(self) -> int:
        return self.component_sizes[self.gcc_id] if self.component_sizes else 0

    def gcc_nodes(self) -> np.ndarray:
        return np.nonzero(self.component_id == self.gcc_id)[0]


def connected_components(g: Topology, alive: np.ndarray | None = None) -> ComponentLabeling:
    """Label connected components; ``alive`` optionally masks nodes out.

    Masked-out nodes get component id -1 and do not contribute to sizes.
    """
    n = g.n
    comp = [-1] * n
    sizes: list[int] = []
    adj = g.adjacency_lists()
    alive_l = alive.tolist() if alive is not None else None
    cid = 0
    for s in range(n):
        if comp[s] != -1 or (alive_l is not None and not alive_l[s]):
            continue
        stack = [s]
        comp[s] = cid
        size = 0
        while stack:
            u = stack.pop()
            size += 1
            for v in adj[u]:
                if comp[v] == -1 and (alive_l is None or alive_l[v]):
                    comp[v] = cid
                    stack.append(v)
        sizes.append(size)
        cid += 1
    gcc_id = int(np.argmax(sizes)) if sizes else 0
    return ComponentLabeling(np.asarray(comp, dtype=np.int64), sizes, gcc_id)


def induced_subgraph(g: Topology, keep: np.ndarray) -> tuple[Topology, np.ndarray]:
    """Induced subgraph on ``keep`` (sorted node ids), ids re-densified.

    Returns the subgraph and the kept original ids (new id i corresponds to
    ``keep[i]``); labels carry over.
    """
    keep = np.asarray(keep, dtype=np.int64)
    remap_arr = np.full(g.n, -1, dtype=np.int64)
    remap_arr[keep] = np.arange(len(keep))
    remap = remap_arr.tolist()
    indptr = g.indptr.tolist()
    indices = g.indices.tolist()
    caps_all = g.capacities.tolist() if g.capacitated else None
    edges = []
    caps = [] if g.capacitated else None
    for new_u, u in enumerate(keep.tolist()):
        for pos in range(indptr[u], indptr[u + 1]):
            nv = remap[indices[pos]]
            if nv > new_u:
                edges.append((new_u, nv))
                if caps is not None:
                    caps.append(caps_all[pos])
    labels = tuple(g.labels[i] for i in keep.tolist())
    sub, _ = build_topology(len(keep), edges, capacities=caps, labels=labels)
    return sub, keep


def extract_gcc(g: Topology) -> Topology:
    """Induced subgraph on the giant connected component.

    A connected input comes back as an identical copy. Size ties go to the
    component containing the smallest original node id.
    """
    if g.n == 0:
        raise ComputeError("empty topology")
    labeling = connected_components(g)
    if labeling.num_components == 1:
        return Topology(g.indptr, g.indices, g.capacities, g.labels)
    sub, _ = induced_subgraph(g, labeling.gcc_nodes())
    return sub


@dataclass
class DistanceRow:
    """Single-source geodesic distances and shortest-path counts."""

    source: int
    dist: np.ndarray  # float64; np.inf for unreachable nodes
    sigma: np.ndarray  # float64 counts; 0 for unreachable nodes


@dataclass
class SweepData:
    """Full single-source sweep state used for Brandes accumulation."""

    source: int
    order: list[int]  # nodes in nondecreasing distance from source
    preds: list[list[int]]  # geodesic predecessors per node
    dist: np.ndarray
    sigma: np.ndarray


def bfs_sweep(g: Topology, source: int, adj: list[list[int]] | None = None) -> SweepData:
    """Hop-count sweep: distances, path counts and geodesic predecessors."""
    n = g.n
    if adj is None:
        adj = g.adjacency_lists()
    dist = np.full(n, np.inf)
    sigma = np.zeros(n)
    preds: list[list[int]] = [[] for _ in range(n)]
    dist_l = [-1] * n
    dist_l[source] = 0
    sigma[source] = 1.0
    dist[source] = 0.0
    order = [source]
    head = 0
    while head < len(order):
        u = order[head]
        head += 1
        du1 = dist_l[u] + 1
        for v in adj[u]:
            if dist_l[v] < 0:
                dist_l[v] = du1
                dist[v] = du1
                order.append(v)
            if dist_l[v] == du1:
                sigma[v] += sigma[u]
                preds[v].append(u)
    return SweepData(source, order, preds, dist, sigma)


def dijkstra_sweep(
    g: Topology,
    source: int,
    adj: list[list[int]] | None = None,
    lengths: list[list[float]] | None = None,
) -> SweepData:
    """Weighted sweep over 1/capacity edge lengths with tolerance-based ties."""
    n = g.n
    if adj is None:
        adj = g.adjacency_lists()
    if lengths is None:
        lengths = g.edge_length_lists()
    dist = np.full(n, np.inf)
    sigma = np.zeros(n)
    preds: list[list[int]] = [[] for _ in range(n)]
    done = [False] * n
    dist[source] = 0.0
    sigma[source] = 1.0
    order: list[int] = []
    heap: list[tuple[float, int]] = [(0.0, source)]
    while heap:
        du, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        order.append(u)
        row = adj[u]
        lens = lengths[u]
        for i in range(len(row)):
            v = row[i]
            nd = du + lens[i]
            dv = dist[v]
            if nd < dv and not lengths_equal(nd, dv):
                dist[v] = nd
                sigma[v] = sigma[u]
                preds[v] = [u]
                heapq.heappush(heap, (nd, v))
            elif lengths_equal(nd, dv):
                sigma[v] += sigma[u]
                preds[v].append(u)
    return SweepData(source, order, preds, dist, sigma)


def bfs_row(g: Topology, source: int) -> DistanceRow:
    """Hop-count distances and shortest-path counts from ``source``."""
    if not (0 <= source < g.n):
        raise ComputeError(f"source {source} outside [0,{g.n})")
    sw = bfs_sweep(g, source)
    return DistanceRow(source, sw.dist, sw.sigma)


def dijkstra_row(g: Topology, source: int) -> DistanceRow:
    """Weighted geodesic distances (edge length = 1/capacity) from ``source``."""
    if not (0 <= source < g.n):
        raise ComputeError(f"source {source} outside [0,{g.n})")
    if not g.capacitated:
        raise ComputeError("weighted geodesics need a capacitated topology")
    sw = dijkstra_sweep(g, source)
    return DistanceRow(source, sw.dist, sw.sigma)


def sweep(g: Topology, source: int, **kw) -> SweepData:
    """Dispatch to the hop-count or weighted sweep based on the topology."""
    if g.capacitated:
        return dijkstra_sweep(g, source, **kw)
    return bfs_sweep(g, source, **kw)
