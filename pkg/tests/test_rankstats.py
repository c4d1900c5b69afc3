import numpy as np
import pytest

from conftest import cycle, star4
from oracles import brute_kendall, spearman_closed_form
from toposcope import synth
from toposcope.centrality import IndexKind, compute_all
from toposcope.errors import ComputeError
from toposcope.rankstats import (
    aggregate_matrices,
    bottom_rank_diagnostics,
    correlation_matrix,
    damping_sweep,
    kendall,
    pearson,
    rank,
    spearman,
    top_k_overlap,
)


def test_rank_simple():
    r = rank(np.array([0.9, 0.1, 0.5]))
    assert r.frac_rank.tolist() == [1, 3, 2]
    assert r.order.tolist() == [0, 2, 1]


def test_rank_ties_average():
    r = rank(np.array([0.5, 0.5, 0.1]))
    assert r.frac_rank.tolist() == [1.5, 1.5, 3]
    assert r.order.tolist() == [0, 1, 2]  # tie broken by node id


def test_rank_all_equal():
    r = rank(np.array([1.0] * 4))
    assert r.frac_rank.tolist() == [2.5] * 4
    assert r.degenerate


def test_rank_sum_invariant():
    rng = np.random.default_rng(0)
    for _ in range(20):
        scores = rng.integers(0, 5, size=17).astype(float)
        r = rank(scores)
        assert r.frac_rank.sum() == pytest.approx(17 * 18 / 2)
        assert sorted(r.order.tolist()) == list(range(17))


def test_spearman_identical():
    r = rank(np.array([3.0, 1.0, 2.0]))
    assert spearman(r, r) == 1.0


def test_spearman_reversed():
    r1 = rank(np.array([4.0, 3.0, 2.0, 1.0]))
    r2 = rank(np.array([1.0, 2.0, 3.0, 4.0]))
    assert spearman(r1, r2) == -1.0


def test_spearman_constant_side_is_zero():
    r1 = rank(np.array([1.0, 1.0, 1.0]))
    r2 = rank(np.array([3.0, 2.0, 1.0]))
    assert spearman(r1, r2) == 0.0


def test_spearman_closed_form_tie_free():
    rng = np.random.default_rng(5)
    for _ in range(25):
        a = rng.permutation(30).astype(float)
        b = rng.permutation(30).astype(float)
        ra, rb = rank(a), rank(b)
        assert spearman(ra, rb) == pytest.approx(
            spearman_closed_form(ra.frac_rank, rb.frac_rank), abs=1e-12)


def test_spearman_invariant_under_monotone_transform():
    rng = np.random.default_rng(6)
    x = rng.random(40)
    y = rng.random(40)
    base_s = spearman(rank(x), rank(y))
    base_k = kendall(rank(x), rank(y))
    fx = np.exp(3 * x) + 7
    fy = np.log1p(9 * y)
    assert spearman(rank(fx), rank(fy)) == pytest.approx(base_s, abs=1e-12)
    assert kendall(rank(fx), rank(fy)) == pytest.approx(base_k, abs=1e-12)


def test_kendall_basics():
    r1 = rank(np.array([4.0, 3.0, 2.0, 1.0]))
    assert kendall(r1, r1) == 1.0
    r2 = rank(np.array([1.0, 2.0, 3.0, 4.0]))
    assert kendall(r1, r2) == -1.0


def test_kendall_one_swap():
    r1 = rank(np.array([4.0, 3.0, 2.0, 1.0]))
    r2 = rank(np.array([4.0, 3.0, 1.0, 2.0]))
    assert kendall(r1, r2) == pytest.approx(2 / 3)


@pytest.mark.parametrize("seed", range(15))
def test_kendall_matches_bruteforce_with_ties(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 60))
    x = rng.integers(0, 8, size=n).astype(float)
    y = rng.integers(0, 8, size=n).astype(float)
    rx, ry = rank(x), rank(y)
    assert kendall(rx, ry) == pytest.approx(
        brute_kendall(rx.frac_rank, ry.frac_rank), abs=1e-12)


def test_pearson_affine():
    x = np.array([1.0, 2.0, 5.0])
    assert pearson(x, 2 * x + 3) == pytest.approx(1.0)
    assert pearson(x, -x) == pytest.approx(-1.0)


def test_pearson_half():
    assert pearson(np.array([1.0, 2, 3]), np.array([1.0, 3, 2])) == pytest.approx(0.5)


def test_pearson_constant_errors():
    with pytest.raises(ComputeError, match="constant"):
        pearson(np.array([1.0, 1.0]), np.array([1.0, 2.0]))


def test_overlap_identical_and_disjoint():
    r = rank(np.arange(10).astype(float))
    assert top_k_overlap(r, r, 0.05) == 100.0
    r1 = rank(np.array([4.0, 3.0, 1.0, 0.0]))
    r2 = rank(np.array([0.0, 1.0, 3.0, 4.0]))
    assert top_k_overlap(r1, r2, 0.5) == 0.0


def test_overlap_symmetric_and_bounded():
    rng = np.random.default_rng(9)
    for _ in range(10):
        a = rank(rng.random(37))
        b = rank(rng.random(37))
        o1 = top_k_overlap(a, b, 0.1)
        assert o1 == top_k_overlap(b, a, 0.1)
        assert 0.0 <= o1 <= 100.0


def test_overlap_k_floor_minimum_one():
    r = rank(np.arange(10).astype(float))
    assert top_k_overlap(r, r, 0.01) == 100.0  # k = max(1, floor(0.1))


def test_correlation_matrix_identical_vectors():
    g = synth.preferential_attachment(30, 2, seed=3)
    vectors = compute_all(g, kinds=[IndexKind.DC, IndexKind.BC])
    vectors[IndexKind.BC] = vectors[IndexKind.DC]
    m = correlation_matrix(
        {IndexKind.DC: vectors[IndexKind.DC], IndexKind.BC: vectors[IndexKind.DC]})
    assert m.spearman[0, 1] == 1.0
    assert m.overlap[0, 1] == 100.0


def test_correlation_matrix_seven_kinds_shape():
    g = synth.preferential_attachment(40, 2, seed=4)
    m = correlation_matrix(compute_all(g), k_fraction=0.05)
    assert m.spearman.shape == (7, 7)
    for mat in (m.spearman, m.kendall, m.pearson):
        assert np.allclose(mat, mat.T)
        assert np.allclose(np.diag(mat), 1.0)
        assert (np.abs(mat) <= 1 + 1e-12).all()
    assert np.allclose(np.diag(m.overlap), 100.0)


def test_correlation_matrix_mismatched_sets():
    a = compute_all(star4(), kinds=[IndexKind.DC])[IndexKind.DC]
    b = compute_all(cycle(6), kinds=[IndexKind.BC])[IndexKind.BC]
    with pytest.raises(ComputeError, match="different node sets"):
        correlation_matrix({IndexKind.DC: a, IndexKind.BC: b})


def test_aggregate_matrices_mean_variance():
    g1 = synth.preferential_attachment(30, 2, seed=5)
    g2 = synth.preferential_attachment(35, 2, seed=6)
    m1 = correlation_matrix(compute_all(g1))
    m2 = correlation_matrix(compute_all(g2))
    agg = aggregate_matrices([m1, m2])
    assert agg.count == 2
    expect = (m1.spearman + m2.spearman) / 2
    assert np.allclose(agg.mean["spearman"], expect)
    assert np.allclose(agg.variance["spearman"],
                       ((m1.spearman - expect) ** 2 + (m2.spearman - expect) ** 2) / 2)


def test_damping_sweep_d0_degenerate():
    g = synth.preferential_attachment(25, 2, seed=7)
    sw = damping_sweep(g, [0.0, 0.5], against=[IndexKind.DC])
    assert sw.rho[0, 0] == 0.0  # uniform PG at d=0: all ranks tied
    assert sw.degenerate[0, 0]
    assert not sw.degenerate[1, 0]


def test_damping_sweep_regular_graph_flagged():
    sw = damping_sweep(cycle(8), [0.3, 0.85], against=[IndexKind.BC])
    assert sw.degenerate.all()
    assert (sw.rho == 0).all()


def test_damping_sweep_monotone_tendency():
    g = synth.preferential_attachment(500, 2, seed=8)
    sw = damping_sweep(g, [0.30, 0.95], against=[IndexKind.DC])
    assert sw.rho[1, 0] > sw.rho[0, 0]


def test_bottom_rank_diagnostics_star():
    g = star4()
    vecs = compute_all(g, kinds=[IndexKind.DC, IndexKind.BC])
    diag = bottom_rank_diagnostics(g, rank(vecs[IndexKind.DC]),
                                   rank(vecs[IndexKind.BC]))
    assert diag.fraction_dc_eq_1 == pytest.approx(3 / 4)
    bc = vecs[IndexKind.BC].scores
    assert all(bc[i] == 0 for i in range(1, 4))


def test_bottom_rank_diagnostics_cycle_fraction_zero():
    g = cycle(6)
    vecs = compute_all(g, kinds=[IndexKind.DC, IndexKind.BC])
    diag = bottom_rank_diagnostics(g, rank(vecs[IndexKind.DC]),
                                   rank(vecs[IndexKind.BC]))
    assert diag.fraction_dc_eq_1 == 0.0
