"""Seeded synthetic topologies for tests and demonstrations.

Real router-level measurement datasets are not redistributable, so the
package ships two small generators: a preferential-attachment model that
produces connected, heavy-tailed graphs, and the classic G(n, p) random
graph. Both are deterministic for a given seed.
"""

from __future__ import annotations

import numpy as np

from .errors import ComputeError
from .graph import Topology, build_topology, connected_components, extract_gcc


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def preferential_attachment(n: int, m: int = 2, seed=0) -> Topology:
    """Growing network: each new node links to m distinct existing nodes,
    chosen proportionally to current degree. Connected by construction."""
    if n < m + 1 or m < 1:
        raise ComputeError("need n >= m+1 and m >= 1")
    rng = _rng(seed)
    edges: list[tuple[int, int]] = []
    # repeated-endpoint pool makes degree-proportional sampling O(1)
    pool: list[int] = []
    for new in range(m, n):
        if new == m:
            targets = list(range(m))
        else:
            targets = set()
            while len(targets) < m:
                targets.add(int(pool[rng.integers(len(pool))]))
            targets = sorted(targets)
        for t in targets:
            edges.append((new, t))
            pool.append(new)
            pool.append(t)
    g, _ = build_topology(n, edges)
    return g


def gnp(n: int, p: float, seed=0) -> Topology:
    """Erdos-Renyi G(n, p); possibly disconnected."""
    rng = _rng(seed)
    iu = np.triu_indices(n, k=1)
    mask = rng.random(len(iu[0])) < p
    edges = list(zip(iu[0][mask].tolist(), iu[1][mask].tolist()))
    g, _ = build_topology(n, edges)
    return g


def random_connected_gnp(n: int, p: float, seed=0, max_tries: int = 200) -> Topology:
    """G(n, p) resampled until connected; falls back to the GCC."""
    rng = _rng(seed)
    g = None
    for _ in range(max_tries):
        g = gnp(n, p, rng)
        if g.num_edges and connected_components(g).num_components == 1:
            return g
    return extract_gcc(g)


def with_random_capacities(g: Topology, low: int = 1, high: int = 10, seed=0) -> Topology:
    """Copy of ``g`` with integer-valued capacities drawn per edge."""
    rng = _rng(seed)
    caps = np.zeros(len(g.indices))
    for u in range(g.n):
        lo, hi = g.indptr[u], g.indptr[u + 1]
        for pos in range(lo, hi):
            v = g.indices[pos]
            if v > u:
                caps[pos] = float(rng.integers(low, high + 1))
    # mirror each edge capacity onto the reverse direction
    out = Topology(g.indptr, g.indices, caps, g.labels)
    for u in range(g.n):
        lo, hi = g.indptr[u], g.indptr[u + 1]
        for pos in range(lo, hi):
            v = g.indices[pos]
            if v < u:
                row = g.indices[g.indptr[v] : g.indptr[v + 1]]
                mirror = g.indptr[v] + int(np.searchsorted(row, u))
                caps[pos] = caps[mirror]
    return out
