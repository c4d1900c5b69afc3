"""Seven views of node importance.

Walks through the seven centrality indices on a small synthetic
router-level topology: what each one measures, how the weighted variants
react to link capacities, and why two distance-based indices can disagree
about which node is the most central.
"""

import numpy as np

import toposcope as ts
from toposcope import synth

np.set_printoptions(precision=3, suppress=True)

# A 60-node preferential-attachment graph: heavy-tailed degrees, a few
# hub routers, many degree-2 leaves. Seeded, so reruns match.
g = synth.preferential_attachment(60, 2, seed=7)
print(f"synthetic topology: {g.n} nodes, {g.num_edges} links")

vectors = ts.compute_all(g, d=0.85)
print("\ntop-5 nodes per index:")
for kind, vec in vectors.items():
    top = ts.rank(vec).order[:5]
    print(f"  {kind.value:>3}: {top.tolist()}")

# Graph-level aggregates condense a vector into one number per notion:
# integration (sum), unipolarity (max) and centralization (spread).
print("\ngraph-level summaries:")
for kind, vec in vectors.items():
    s = ts.graph_summary(vec)
    print(f"  {kind.value:>3}: integration={s.integration:8.3f} "
          f"unipolarity={s.unipolarity:.3f} centralization={s.centralization:8.3f}")

# The degree histogram is the usual first look at a router-level graph;
# plotted log-log it reveals the heavy tail.
hist = ts.degree_distribution(g)
print("\ndegree histogram:", dict(sorted(hist.items())))

# Distance-based indices need not agree. Take a 4-node star and hang a
# 2-node tail off one leaf: closeness ties that leaf with the hub, while
# eccentricity strictly prefers the leaf.
counter = ts.Topology.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (4, 5)])
cc = ts.closeness_centrality(counter).scores
ecc = ts.eccentricity_centrality(counter).scores
print("\nstar-with-tail counterexample (node 0 = hub, node 1 = tail anchor):")
print(f"  closeness:    hub={cc[0]:.4f}  anchor={cc[1]:.4f}   (tied)")
print(f"  eccentricity: hub={ecc[0]:.4f}  anchor={ecc[1]:.4f}   (anchor wins)")

# Weighted variants: doubling every capacity rescales scores but never
# reorders nodes; uneven capacities do reorder them.
gw = synth.with_random_capacities(g, 1, 10, seed=8)
dc_binary = ts.rank(vectors[ts.IndexKind.DC]).order[:5]
dc_weighted = ts.rank(ts.degree_centrality(gw)).order[:5]
print("\ntop-5 by degree, binary vs capacity-weighted:")
print(f"  binary:   {dc_binary.tolist()}")
print(f"  weighted: {dc_weighted.tolist()}")
