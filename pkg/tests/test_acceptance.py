"""Acceptance suite: one test per release criterion.

Each test prints a single PASS line when its criterion holds at the stated
tolerance; run with ``pytest tests/test_acceptance.py -v -s``.
"""

import csv
import time

import numpy as np
import pytest

from conftest import diamond, star4, star_line6
from oracles import brute_centralities, brute_kendall, brute_min_cut, spearman_closed_form
from toposcope import synth
from toposcope.attacksim import (
    AttackPlan,
    AttackTrace,
    ConnectivitySnapshot,
    envelope,
    impact_factor,
    run_attack,
)
from toposcope.centrality import (
    IndexKind,
    _adjacency_matrix,
    compute_all,
    eigenvector_centrality,
    pagerank,
)
from toposcope.cli import main
from toposcope.flowcap import max_flow, run_capacity_attack
from toposcope.graph import Topology
from toposcope.ingest import IngestConfig, parse_edgelist, parse_graphml, write_edgelist
from toposcope.rankstats import damping_sweep, kendall, rank, spearman, top_k_overlap

from test_ingest import ZOO_SNIPPET

GEO_KINDS = [IndexKind.BC, IndexKind.CC, IndexKind.HC, IndexKind.ECC]


def _passed(num, name):
    print(f"ACCEPTANCE {num} ({name}): PASS")


def test_criterion_1_oracle_equivalence_centrality():
    start = time.monotonic()
    rng = np.random.default_rng(11)
    for _ in range(200):
        n = int(rng.integers(4, 9))
        g = synth.random_connected_gnp(n, float(rng.uniform(0.3, 0.7)), seed=rng)
        expected = brute_centralities(g)
        got = compute_all(g, kinds=GEO_KINDS)
        for kind, key in zip(GEO_KINDS, ("bc", "cc", "hc", "ecc")):
            err = np.abs(got[kind].scores - expected[key]).max()
            assert err < 1e-9, (kind, err)
    elapsed = time.monotonic() - start
    assert elapsed < 30, f"took {elapsed:.1f}s"
    _passed(1, f"oracle equivalence on 200 graphs in {elapsed:.1f}s")


def test_criterion_2_star_line_counterexample():
    g = star_line6()  # hub 0, leaves 1-3, tail 4-5 off leaf 1
    vectors = compute_all(g, kinds=[IndexKind.CC, IndexKind.ECC])
    cc = vectors[IndexKind.CC].scores
    ecc = vectors[IndexKind.ECC].scores
    assert cc[0] == 5 / 8 and cc[1] == 5 / 8
    assert ecc[1] == 1 / 2 and ecc[0] == 1 / 3
    assert ecc[1] > ecc[0]
    r_cc = rank(vectors[IndexKind.CC])
    r_ecc = rank(vectors[IndexKind.ECC])
    assert r_cc.frac_rank[0] == r_cc.frac_rank[1]  # tied closeness ranks
    assert r_ecc.frac_rank[1] < r_ecc.frac_rank[0]  # attachment leaf ahead
    _passed(2, "closeness/eccentricity counterexample on the 6-node build")


def test_criterion_3_spectral_correctness():
    rng = np.random.default_rng(31)
    sizes = np.linspace(50, 2000, 50).astype(int)
    for i, n in enumerate(sizes):
        if i % 2:
            g = synth.preferential_attachment(int(n), int(rng.integers(2, 4)), seed=rng)
        else:
            g = synth.random_connected_gnp(int(n), 4.0 / n, seed=rng)
        a = _adjacency_matrix(g)
        ec = eigenvector_centrality(g)
        lam = ec.params["eigenvalue"]
        assert np.abs(a @ ec.scores - lam * ec.scores).max() < 1e-8
        assert (ec.scores >= 0).all()
        d = 0.85
        pg = pagerank(g, d=d).scores
        deg = g.degrees.astype(float)
        recur = (1 - d) / g.n + d * (a @ (pg / deg))
        assert np.abs(pg - recur).max() < 1e-8
        assert abs(pg.sum() - 1.0) < 1e-8
    lam_star = eigenvector_centrality(star4()).params["eigenvalue"]
    assert abs(lam_star - np.sqrt(3)) < 1e-9
    _passed(3, "EC residual / PG recurrence on 50 graphs up to N=2000")


def test_criterion_4_rank_statistics_exactness():
    rng = np.random.default_rng(41)
    # closed form on tie-free data
    for _ in range(50):
        n = int(rng.integers(3, 200))
        r1 = rank(rng.permutation(n).astype(float))
        r2 = rank(rng.permutation(n).astype(float))
        assert spearman(r1, r2) == spearman_closed_form(r1.frac_rank, r2.frac_rank)
    # tau-b against the O(N^2) oracle, tied data included
    for _ in range(100):
        n = int(rng.integers(3, 201))
        x = rng.integers(0, max(2, n // 3), size=n).astype(float)
        y = rng.integers(0, max(2, n // 3), size=n).astype(float)
        rx, ry = rank(x), rank(y)
        assert kendall(rx, ry) == pytest.approx(
            brute_kendall(rx.frac_rank, ry.frac_rank), abs=1e-12)
    ident = rank(rng.permutation(40).astype(float))
    rev = rank(ident.frac_rank.astype(float))  # rank values as scores reverse it
    assert spearman(ident, ident) == 1.0 and kendall(ident, ident) == 1.0
    assert spearman(ident, rev) == -1.0 and kendall(ident, rev) == -1.0
    assert top_k_overlap(ident, ident, 0.05) == 100.0
    _passed(4, "Spearman closed form, tau-b vs brute force, edge cases")


def test_criterion_5_max_flow_min_cut():
    rng = np.random.default_rng(51)
    checked = 0
    for _ in range(100):
        n = int(rng.integers(3, 8))
        g = synth.gnp(n, float(rng.uniform(0.4, 0.8)), seed=rng)
        if g.num_edges == 0:
            g = Topology.from_edges(n, [(0, 1)])
        gw = synth.with_random_capacities(g, 1, 10, seed=rng)
        s, t = (int(v) for v in rng.choice(n, size=2, replace=False))
        flow = max_flow(gw, s, t)
        assert abs(flow - brute_min_cut(gw, s, t)) < 1e-9
        for c in (2.0, 0.5):
            assert max_flow(gw.scaled(c), s, t) == c * flow
        checked += 1
    assert checked == 100
    assert max_flow(diamond(), 0, 3) == 7.0
    _passed(5, "Edmonds-Karp equals min-cut enumeration on 100 graphs")


def test_criterion_6_attack_monotonicity():
    start = time.monotonic()
    drivers7 = list(IndexKind)
    drivers6 = [k for k in IndexKind if k != IndexKind.PG]
    for i in range(20):
        g = synth.preferential_attachment(300, 2, seed=600 + i)
        traces = [run_attack(g, AttackPlan(drv)) for drv in drivers7]
        for tr in traces:
            gcc = [s.gcc_size for s in tr.snapshots]
            assert all(a >= b for a, b in zip(gcc, gcc[1:])), tr.driver
        for metric in ("gcc_size", "num_components", "avg_shortest_path"):
            env = envelope(traces, metric)
            if not env.degenerate:
                for impact in env.impact_factors.values():
                    assert 0.0 <= impact <= 1.0
        gc = synth.with_random_capacities(g, 1, 10, seed=700 + i)
        ctraces = [run_capacity_attack(gc, AttackPlan(drv)) for drv in drivers6]
        for tr in ctraces:
            flows = tr.agg_max_flow
            assert all(a >= b for a, b in zip(flows, flows[1:])), tr.driver
        cenv = envelope(ctraces, "agg_max_flow")
        if not cenv.degenerate:
            for impact in cenv.impact_factors.values():
                assert 0.0 <= impact <= 1.0
    # a driver sitting on the best case at every step scores exactly 1,
    # one sitting on the worst case exactly 0
    dom = AttackTrace(IndexKind.DC, "simultaneous",
                      [ConnectivitySnapshot(k, 10 - 2 * k, 1, 1.0) for k in range(4)])
    mid = AttackTrace(IndexKind.BC, "simultaneous",
                      [ConnectivitySnapshot(k, 10 - k, 1, 1.0) for k in range(4)])
    weak = AttackTrace(IndexKind.CC, "simultaneous",
                       [ConnectivitySnapshot(k, 10, 1, 1.0) for k in range(4)])
    env = envelope([dom, mid, weak], "gcc_size")
    assert impact_factor(env, IndexKind.DC) == 1.0
    assert impact_factor(env, IndexKind.CC) == 0.0
    elapsed = time.monotonic() - start
    assert elapsed < 300, f"took {elapsed:.1f}s"
    _passed(6, f"monotone gcc/flow over 20 graphs x all drivers in {elapsed:.0f}s")


def test_criterion_7_damping_sweep_monotone_tendency():
    wins = 0
    for i in range(10):
        g = synth.preferential_attachment(500, 2, seed=7000 + i)
        sw = damping_sweep(g, [0.30, 0.95], against=[IndexKind.DC])
        if sw.rho[1, 0] > sw.rho[0, 0]:
            wins += 1
    assert wins >= 9, f"only {wins}/10 runs increased"
    _passed(7, f"rho(PG,DC) rises from d=0.30 to d=0.95 in {wins}/10 runs")


def test_criterion_8_table_reproduction_plumbing(tmp_path):
    for seed in (81, 82, 83):
        g = synth.preferential_attachment(40 + seed % 7, 2, seed=seed)
        (tmp_path / f"t{seed}.txt").write_text(write_edgelist(g))
    inputs = sorted(str(p) for p in tmp_path.glob("t*.txt"))
    out = tmp_path / "out"
    args = ["correlate", "--input", *inputs, "--topk", "0.05",
            "--aggregate", "--diagnostics", "-o", str(out)]
    assert main(args) == 0
    kinds = ["dc", "bc", "cc", "hc", "ecc", "ec", "pg"]
    for measure in ("spearman", "kendall", "pearson", "overlap"):
        with open(out / f"aggregate_{measure}.csv", newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == [""] + kinds
        for i, row in enumerate(rows[1:]):
            assert row[0] == kinds[i]
            assert row[i + 1] in ("1", "100")  # unit diagonal
            for j in range(i + 2, len(kinds) + 1):
                assert row[j] == ""  # upper triangle empty
            for j in range(1, i + 1):
                assert "±" in row[j]  # mean±variance cells
    with open(out / "diagnostics.csv", newline="") as fh:
        diag = list(csv.reader(fh))
    assert diag[0] == ["topology", "spearman_dc_bc", "top_0.05_overlap_pct",
                       "fraction_dc_eq_1"]
    assert len(diag) == 4
    snapshot = {p.name: p.read_bytes() for p in out.iterdir()}
    assert main(args) == 0
    for p in sorted(out.iterdir()):
        assert p.read_bytes() == snapshot[p.name], p.name
    _passed(8, "aggregate tables, diagnostics rows, byte-identical rerun")


def test_criterion_9_ingestion_fidelity():
    topologies = {}
    for policy in ("min", "max", "mean"):
        cfg = IngestConfig(format="graphml", range_policy=policy)
        g, _ = parse_graphml(ZOO_SNIPPET, cfg)
        key = tuple(np.round(g.capacities, 6))
        topologies[policy] = key
    assert len(set(topologies.values())) == 3  # three distinct snapshots
    rng = np.random.default_rng(91)
    for trial in range(50):
        g = synth.random_connected_gnp(int(rng.integers(5, 40)), 0.2, seed=rng)
        if trial % 2:
            g = synth.with_random_capacities(g, 1, 10, seed=rng)
        g2, _ = parse_edgelist(write_edgelist(g))
        relabel = {lab: i for i, lab in enumerate(g2.labels)}
        perm = np.array([relabel[lab] for lab in g.labels])
        assert g2.n == g.n and g2.num_edges == g.num_edges
        for u in range(g.n):
            assert sorted(perm[g.neighbors(u)].tolist()) == g2.neighbors(perm[u]).tolist()
            if g.capacitated:
                mine = sorted((int(perm[int(v)]), c) for v, c in
                              zip(g.neighbors(u), g.edge_capacities(u)))
                theirs = sorted((int(v), c) for v, c in
                                zip(g2.neighbors(perm[u]), g2.edge_capacities(perm[u])))
                assert mine == theirs
    _passed(9, "min/max/mean snapshots distinct; 50 round-trips isomorphic")
