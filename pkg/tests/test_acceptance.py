"""Acceptance gate: one test per criterion, summarized as PASS/FAIL lines.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary ends with a
section listing every criterion and its outcome.
"""

import csv
import math
import time
from itertools import combinations

import numpy as np
import pytest

from commqual.compare import bcubed_precision, fb3, onmi
from commqual.cover import Cover
from commqual.datasets import planted_partition
from commqual.detect import cnm_greedy, k_core_communities, label_propagation, louvain
from commqual.graph import Graph, connected_components
from commqual.pipeline import read_config, run_pipeline
from commqual.quality import (METRICS, QUALITY_FUNCTIONS, SamplingPlan, approx_diameter,
                              hoeffding_sample_size, modularity, sampled_vertex_average,
                              vertex_scores)
from commqual.ranking import spearman
from oracles import (adjacency_matrix, apsp_diameter, connected_labeled_graphs, fb3_pairs,
                     modularity_double_sum, prufer_to_edges, set_partitions)

criterion = pytest.mark.criterion


def _barbell():
    return Graph.from_edges([(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)])


def _two_football_config(tmp_path, seed=7):
    p = tmp_path / "run.cfg"
    p.write_text(f"[run]\nseed = {seed}\n[graph:football_a]\ndataset = football\n"
                 "[graph:football_b]\ndataset = football\n")
    return read_config(p)


def _read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


@criterion(1, "barbell oracle suite, ten quality functions within 1e-9 in under 1 s")
def test_barbell_oracles():
    expected = {
        "modularity": 5 / 14,
        "conductance": 6 / 7,
        "cut_ratio": 8 / 9,
        "compactness": 6.0,
        "permanence": 8 / 9,
        "clustering_coefficient": 1.0,
        "flake_odf": 1.0,
        "fomd": 0.0,
        "significance": 6 * math.log(15 / 7),
        "surprise": (6 / 7) * math.log((6 / 7) / 0.4) + (1 / 7) * math.log((1 / 7) / 0.6),
    }
    start = time.perf_counter()
    g = _barbell()
    cover = Cover([[0, 1, 2], [3, 4, 5]], 6)
    got = {m: QUALITY_FUNCTIONS[m](g, cover).value for m in METRICS}
    elapsed = time.perf_counter() - start
    assert set(got) == set(expected)
    for m in METRICS:
        assert abs(got[m] - expected[m]) <= 1e-9, m
    assert elapsed < 1.0


@criterion(2, "exhaustive n <= 5: modularity and fb3 match brute-force oracles within 1e-12 in under 60 s")
def test_brute_force_equivalence():
    start = time.perf_counter()
    checked = 0
    for n in range(1, 6):
        partitions = [[sorted(b) for b in p] for p in set_partitions(range(n))]
        covers = [Cover(p, n) for p in partitions]
        # fb3 depends on the node set only
        for c in covers:
            for l in covers:
                p, r, f = fb3_pairs(c.cluster_sets, l.cluster_sets, n)
                res = fb3(c, l)
                assert abs(res.precision - p) <= 1e-12
                assert abs(res.recall - r) <= 1e-12
                assert abs(res.value - f) <= 1e-12
        for edges in connected_labeled_graphs(n):
            if not edges:
                continue  # modularity needs an edge
            g = Graph.from_edges(edges, n=n)
            a = adjacency_matrix(g)
            for c in covers:
                q = modularity(g, c).value
                assert abs(q - modularity_double_sum(a, c.labels())) <= 1e-12
                assert -0.5 <= q < 1
                checked += 1
    assert checked > 30000
    assert time.perf_counter() - start < 60


@criterion(3, "onmi(X,X) = fb3(X,X) = 1 on 100 random covers; recall(C,L) == precision(L,C)")
def test_identity_extremes():
    rng = np.random.default_rng(2024)
    for i in range(100):
        n = int(rng.integers(2, 40))
        k = int(rng.integers(1, 8))
        clusters = [rng.choice(n, size=int(rng.integers(1, n + 1)), replace=False) for _ in range(k)]
        x = Cover(clusters, n)
        y = Cover.from_labels(rng.integers(0, 4, size=n))
        assert onmi(x, x).value == 1.0
        assert fb3(x, x).value == 1.0
        assert fb3(x, y).recall == bcubed_precision(y, x)
        assert fb3(y, x).recall == bcubed_precision(x, y)


@criterion(4, "5000 samples suffice for eps 0.02, p 0.05; 20 seeded trials on 20,000 nodes within 0.02")
def test_hoeffding_sampling():
    assert hoeffding_sample_size(0.02, 0.05) <= 5000
    g, truth = planted_partition(200, 100, 0.1, 0.0002, seed=1)
    assert g.n == 20000
    for metric in ("clustering_coefficient", "permanence"):
        exact = float(vertex_scores(g, truth, metric).mean())
        for seed in range(20):
            s = sampled_vertex_average(g, truth, metric, SamplingPlan(5000, 0.02, 0.05, seed))
            assert s.mode == "sampled"
            assert abs(s.value - exact) <= 0.02, (metric, seed)


@criterion(5, "football pipeline under 10 s; ground truth gold is 1.0; own column identically 1")
def test_football_end_to_end(tmp_path):
    config = _two_football_config(tmp_path)
    start = time.perf_counter()
    bundle = run_pipeline(config, output_dir=tmp_path / "out")
    elapsed = time.perf_counter() - start
    assert elapsed < 10
    assert not bundle.skipped
    for rep in bundle.reports:
        assert (rep.n, rep.m) == (115, 613)
        assert rep.clustering_ids == ["louvain-s7", "cnm", "label_propagation-s7", "k_core-k3", "ground_truth"]
        for metric in ("onmi", "fb3"):
            assert rep.gold[metric]["ground_truth"] == 1.0
    rows = _read_csv(tmp_path / "out" / "quality_correlations.csv")
    assert len(rows) == 4
    for row in rows:
        assert float(row[row["comparison_metric"]]) == 1.0


@criterion(6, "spearman examples exact; invariant under monotone transforms on 1000 random pairs")
def test_spearman():
    assert spearman([3, 1, 2], [3, 1, 2]) == 1.0
    assert spearman([1, 2, 3], [3, 2, 1]) == -1.0
    assert spearman([1, 2, 3], [2, 1, 3]) == 0.5
    rng = np.random.default_rng(99)
    transforms = [np.exp, np.arctan, lambda v: v ** 3, lambda v: 7.5 * v - 2, lambda v: np.log1p(np.exp(v))]
    done = 0
    while done < 1000:
        n = int(rng.integers(3, 25))
        a = rng.normal(size=n) if done % 2 else rng.integers(-3, 4, size=n).astype(float)
        b = rng.normal(size=n)
        if len(set(a)) < 2:
            continue
        base = spearman(a, b)
        fa = transforms[done % len(transforms)]
        fb = transforms[(done + 2) % len(transforms)]
        assert abs(spearman(fa(a), fb(b)) - base) <= 1e-12
        done += 1


@criterion(7, "context matrix symmetric, unit diagonal, in [-1,1]; identical graphs correlate 1.00")
def test_context_matrix_structure(tmp_path):
    bundle = run_pipeline(_two_football_config(tmp_path))
    assert set(bundle.contexts) == {"onmi", "fb3"}
    for cm in bundle.contexts.values():
        v = cm.values
        assert np.array_equal(v, v.T)
        assert np.all(np.diag(v) == 1.0)
        assert np.all((v >= -1) & (v <= 1))
        assert v[0, 1] == 1.0


@criterion(8, "two full runs with the same config produce byte-identical CSV files")
def test_determinism(tmp_path):
    config = _two_football_config(tmp_path, seed=3)
    run_pipeline(config, output_dir=tmp_path / "a")
    run_pipeline(config, output_dir=tmp_path / "b")
    names = sorted(p.name for p in (tmp_path / "a").glob("*.csv"))
    assert len(names) == 5
    for name in names:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


@criterion(9, "double-sweep diameter exact on trees up to 64 nodes, never above APSP on 200 random graphs")
def test_diameter_approximation():
    rng = np.random.default_rng(5)
    trees = []
    # every labeled tree up to 7 nodes, then random ones up to 64
    for n in range(2, 8):
        for seq in np.ndindex(*([n] * (n - 2))):
            trees.append((n, prufer_to_edges(list(seq), n)))
    for n in range(8, 65):
        for _ in range(10):
            trees.append((n, prufer_to_edges(rng.integers(0, n, size=n - 2).tolist(), n)))
    for n, edges in trees:
        g = Graph.from_edges(edges, n=n)
        assert approx_diameter(g, Cover.whole(n), 0) == apsp_diameter(g)
    graphs = 0
    while graphs < 200:
        n = int(rng.integers(2, 13))
        p = rng.uniform(0.15, 0.8)
        edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
        g = Graph.from_edges(edges, n=n)
        if len(connected_components(g)) != 1:
            continue
        true = apsp_diameter(g)
        est = approx_diameter(g, Cover.whole(n), 0)
        assert math.ceil(true / 2) <= est <= true
        graphs += 1


@criterion(10, "louvain and cnm find the barbell triangles; 3-core gives singletons; LP splits two triangles")
def test_detection_sanity():
    g = _barbell()
    triangles = Cover([[0, 1, 2], [3, 4, 5]], 6)
    # exhaustive search confirms the triangles are the unique modularity optimum
    a = adjacency_matrix(g)
    scored = sorted(((modularity_double_sum(a, Cover(p, 6).labels()), Cover(p, 6))
                     for p in set_partitions(range(6))), key=lambda t: -t[0])
    assert scored[0][1] == triangles and scored[0][0] > scored[1][0]
    for seed in range(5):
        assert louvain(g, seed=seed) == triangles
    assert cnm_greedy(g) == triangles
    assert k_core_communities(g, 3) == Cover.singletons(6)
    two = Graph.from_edges([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    for seed in range(5):
        assert label_propagation(two, seed=seed) == triangles
