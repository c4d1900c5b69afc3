"""Shared graph fixtures built by hand."""

import sys
from pathlib import Path

from toposcope.graph import Topology

sys.path.insert(0, str(Path(__file__).parent))


def path3() -> Topology:
    return Topology.from_edges(3, [(0, 1), (1, 2)], labels=["a", "b", "c"])


def star4() -> Topology:
    """Hub is node 0."""
    return Topology.from_edges(4, [(0, 1), (0, 2), (0, 3)])


def cycle(n: int) -> Topology:
    return Topology.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Topology:
    return Topology.from_edges(
        n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_line6() -> Topology:
    """4-node star (hub 0, leaves 1-3) with a 2-node tail hung off leaf 1."""
    return Topology.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (4, 5)])


def path_n(n: int) -> Topology:
    return Topology.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def diamond() -> Topology:
    """s=0, t=3; two 2-hop routes with bottlenecks 3 and 4."""
    return Topology.from_edges(
        4, [(0, 1), (1, 3), (0, 2), (2, 3)], capacities=[3, 3, 4, 4])


def triangle(cap: float | None = None) -> Topology:
    edges = [(0, 1), (1, 2), (0, 2)]
    caps = [cap] * 3 if cap is not None else None
    return Topology.from_edges(3, edges, capacities=caps)


def barbell7() -> Topology:
    """Two triangles {0,1,2} and {4,5,6} joined through cut vertex 3."""
    edges = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 6)]
    return Topology.from_edges(7, edges, capacities=[2, 3, 4, 5, 5, 2, 3, 4])
