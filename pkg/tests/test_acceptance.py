"""End-to-end acceptance checks.

Each test records a single machine-greppable line
``[ACCEPTANCE] <criterion>: PASS|FAIL`` that the conftest terminal-summary
hook echoes after the run, so the log carries one verdict per criterion.
"""

import math
import os
import time
import warnings
from contextlib import contextmanager

import numpy as np
import pytest

from hellrank import (
    DistanceMode,
    NullModelParams,
    PageRankConfig,
    RankVector,
    Side,
    bipartite_closeness,
    bipartite_betweenness,
    bipartite_degree,
    distance_matrix,
    expected_distance_moments,
    hellrank,
    kendall_tau,
    load_builtin,
    load_edge_list,
    monte_carlo_distance,
    node_distance,
    normalize_scores,
    opsahl_path_counts,
    pagerank,
    poisson_hellinger_sq,
    spearman_rho,
    threshold_graph,
    top_k_vector,
)
from hellrank.hellinger import DegenerateDistancesWarning

import conftest
from oracles import (
    brute_hellrank,
    brute_kendall_tau_a,
    enumerate_4paths,
    poisson_hellinger_sq_series,
    random_bipartite,
)


def _record(line: str) -> None:
    conftest.ACCEPTANCE_VERDICTS.append(line)
    print(line)


@contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        _record(f"[ACCEPTANCE] {name}: FAIL")
        raise
    else:
        _record(f"[ACCEPTANCE] {name}: PASS")


def corpus(count: int, max_side: int, seed: int, p_low: float = 0.05, p_high: float = 0.9):
    rng = np.random.default_rng(seed)
    graphs = []
    for _ in range(count):
        n1 = int(rng.integers(2, max_side + 1))
        n2 = int(rng.integers(2, max_side + 1))
        p = float(rng.uniform(p_low, p_high))
        graphs.append(random_bipartite(rng, n1, n2, p))
    return graphs


def components(graph):
    seen: set[str] = set()
    out = []
    for start in graph.nodes:
        if start in seen:
            continue
        comp, stack = set(), [start]
        while stack:
            v = stack.pop()
            if v in comp:
                continue
            comp.add(v)
            stack.extend(graph.neighbors(v))
        seen |= comp
        out.append(comp)
    return sorted(out, key=len, reverse=True)


def test_criterion_1_worked_matrix(fig1):
    with criterion("1 worked-matrix reproduction"):
        start = time.perf_counter()
        m = distance_matrix(fig1, Side.LEFT, DistanceMode.NORMALIZED)
        expected = {
            ("A", "B"): 0.42,
            ("A", "C"): 0.54,
            ("A", "D"): 1.00,
            ("B", "C"): 0.12,
            ("B", "D"): 0.86,
            ("C", "D"): 0.82,
        }
        for (x, y), want in expected.items():
            assert m[x, y] == pytest.approx(want, abs=0.01)
            assert m[y, x] == m[x, y]
        assert time.perf_counter() - start < 1.0


def test_criterion_2_hellrank_reproduction(fig1):
    with criterion("2 normalized HellRank reproduction"):
        start = time.perf_counter()
        scores = normalize_scores(hellrank(fig1, Side.LEFT))
        for label, want in zip("ABCD", (0.71, 1.0, 0.94, 0.52)):
            assert scores[label] == pytest.approx(want, abs=0.01)
        assert scores.ranked()[0][0] == "B"
        assert time.perf_counter() - start < 1.0


def test_criterion_3_baseline_goldens(fig1):
    with criterion("3 baseline golden values (closeness, betweenness A/B/D, PageRank)"):
        closeness = bipartite_closeness(fig1, Side.LEFT)
        for label, want in zip("ABCD", (0.35, 0.61, 0.52, 0.68)):
            assert closeness[label] == pytest.approx(want, abs=0.01)
        betweenness = bipartite_betweenness(fig1, Side.LEFT)
        for label, want in (("A", 0.0), ("B", 0.45), ("D", 0.71)):
            assert betweenness[label] == pytest.approx(want, abs=0.01)
        # published values correspond to the lazy-walk fixed point at 0.85
        pr = pagerank(fig1, PageRankConfig(damping=0.85, lazy=True), Side.LEFT)
        for label, want in zip("ABCD", (0.05, 0.11, 0.08, 0.21)):
            assert pr[label] == pytest.approx(want, abs=0.01)


@pytest.mark.xfail(
    strict=True,
    reason="published betweenness for node C (0.71) is a dropped-zero typo of "
    "0.0714: C lies on strictly fewer shortest paths than B (0.45) under every "
    "normalization, so 0.71 is unattainable",
)
def test_criterion_3_betweenness_node_c(fig1):
    with criterion("3b betweenness node C printed value"):
        assert bipartite_betweenness(fig1, Side.LEFT)["C"] == pytest.approx(0.71, abs=0.01)


def test_criterion_4_bound_suite():
    with criterion("4 degree-bound suite (1000 random graphs)"):
        start = time.perf_counter()
        for g in corpus(1000, 40, seed=41):
            m = distance_matrix(g, Side.LEFT, DistanceMode.RAW)
            k = np.array([g.degree(x, Side.LEFT) for x in m.labels], dtype=float)
            sq = np.sqrt(k)
            lower = np.abs(sq[:, None] - sq[None, :])
            upper = np.sqrt(k[:, None] + k[None, :])
            off = ~np.eye(len(k), dtype=bool)
            assert np.all(m.values[off] >= lower[off] - 1e-9)
            assert np.all(m.values[off] <= upper[off] + 1e-9)
        assert time.perf_counter() - start < 30.0


def test_criterion_5_metric_axioms():
    with criterion("5 metric-axiom suite (both modes)"):
        graphs = [g for g in corpus(1000, 40, seed=41) if g.n1 <= 15]
        assert graphs, "corpus must contain small-side graphs"
        for g in graphs:
            for mode in (DistanceMode.NORMALIZED, DistanceMode.RAW):
                d = distance_matrix(g, Side.LEFT, mode).values
                assert np.array_equal(d, d.T)  # symmetry, exact
                assert np.all(d >= 0.0)  # nonnegativity, exact
                for k in range(d.shape[0]):  # triangle inequality
                    assert np.all(d <= d[:, k : k + 1] + d[k : k + 1, :] + 1e-9)


def test_criterion_6_null_model_consistency():
    with criterion("6 null-model closed form vs series and Monte Carlo"):
        start = time.perf_counter()
        grid = [0.5, 1.0, 2.0, 5.0, 10.0, 20.0]
        for k1 in grid:
            for lam1 in grid:
                for k2 in grid:
                    for lam2 in grid:
                        closed = poisson_hellinger_sq(k1, lam1, k2, lam2)
                        series = poisson_hellinger_sq_series(k1, lam1, k2, lam2)
                        assert abs(closed - series) <= 1e-8

        from scipy.stats import poisson

        samples = 100_000
        passes = total = 0
        for lam in (10, 12, 14):
            for n2 in (2000, 5000):
                for k in (lam - 1, lam + 1):
                    total += 1
                    params = NullModelParams(n1=50, n2=n2, p=lam / n2, k=k)
                    moments = expected_distance_moments(params)
                    mc = monte_carlo_distance(params, samples, seed=11, method="model")
                    # fourth moment of the limit distance, for the SE of m2
                    i = np.arange(1, n2 + 1, dtype=float)
                    pmf = poisson.pmf(i, n2 * params.p)
                    d2 = np.maximum(k + i - 2.0 * np.sqrt(k * i), 0.0)
                    m4 = float(np.sum(pmf * d2 * d2))
                    se_mean = math.sqrt(moments.variance / samples)
                    se_m2 = math.sqrt(max(m4 - moments.second_moment**2, 0.0) / samples)
                    if (
                        abs(mc.mean - moments.mean) <= 3 * se_mean
                        and abs(mc.second_moment - moments.second_moment) <= 3 * se_m2
                    ):
                        passes += 1
        assert passes >= math.ceil(0.95 * total), f"{passes}/{total} grid points within 3 SE"
        assert time.perf_counter() - start < 120.0


def test_criterion_7_davis_qualitative(davis):
    with criterion("7 Davis qualitative results"):
        start = time.perf_counter()
        ranked = [x for x, _ in hellrank(davis, Side.LEFT).ranked()]
        assert set(ranked[:5]) == {"Brenda", "Evelyn", "Nora", "Ruth", "Theresa"}
        assert {"Dorothy", "Olivia", "Flora"} <= set(ranked[-3:])
        tg = threshold_graph(distance_matrix(davis, Side.LEFT), 0.5)
        comps = components(tg)
        main = comps[0]
        assert "Flora" not in main and "Olivia" not in main
        assert time.perf_counter() - start < 1.0


def test_criterion_8_table_soft_targets(davis):
    degree = RankVector.from_scores(bipartite_degree(davis, Side.LEFT))
    closeness = RankVector.from_scores(bipartite_closeness(davis, Side.LEFT))
    results = {}
    for mode in (DistanceMode.NORMALIZED, DistanceMode.RAW):
        hr = hellrank(davis, Side.LEFT, mode)
        hr_rv = RankVector.from_scores(hr)
        results[mode] = (
            kendall_tau(hr_rv, degree),
            spearman_rho(
                top_k_vector(hr, 5), top_k_vector(bipartite_degree(davis, Side.LEFT), 5)
            ),
            kendall_tau(hr_rv, closeness),
        )
    targets = (0.70, 0.72, 0.74)
    gap = {
        mode: max(abs(got - want) for got, want in zip(vals, targets))
        for mode, vals in results.items()
    }
    closer = min(gap, key=gap.get)
    _record(
        f"[ACCEPTANCE] 8 note: {closer.value} mode lands closer to the published "
        f"correlations (max gap {gap[closer]:.3f} vs "
        f"{gap[max(gap, key=gap.get)]:.3f})"
    )
    with criterion("8 Davis correlation soft targets"):
        tau_deg, rho5, tau_clo = results[DistanceMode.NORMALIZED]
        assert tau_deg == pytest.approx(0.70, abs=0.10)
        assert rho5 == pytest.approx(0.72, abs=0.10)
        assert tau_clo == pytest.approx(0.74, abs=0.10)
        assert closer is DistanceMode.NORMALIZED


def test_criterion_9_parallel_determinism():
    with criterion("9 streaming scale surrogate: byte-identical parallel scores"):
        rng = np.random.default_rng(9)
        g = random_bipartite(rng, 3000, 2000, 0.004)
        outputs = []
        for threads in (1, 8):
            scores = hellrank(g, Side.LEFT, threads=threads)
            import io

            buf = io.StringIO()
            scores.to_csv(buf)
            outputs.append(buf.getvalue())
        assert outputs[0] == outputs[1]


@pytest.mark.skipif(
    not os.environ.get("HELLRANK_CONDMAT"),
    reason="set HELLRANK_CONDMAT to the condensed-matter edge-list path to run "
    "the full-scale benchmark",
)
def test_criterion_9_condmat_scale():
    with criterion("9 full-scale benchmark (user-supplied dataset)"):
        start = time.perf_counter()
        with open(os.environ["HELLRANK_CONDMAT"], encoding="utf-8") as fh:
            g = load_edge_list(fh)
        outputs = []
        for threads in (1, 8):
            import io

            buf = io.StringIO()
            hellrank(g, Side.LEFT, threads=threads).to_csv(buf)
            outputs.append(buf.getvalue())
        assert outputs[0] == outputs[1]
        assert time.perf_counter() - start < 1800.0


def test_criterion_10_oracle_equivalence():
    with criterion("10 oracle equivalence on 500 seeded small graphs"):
        graphs = corpus(500, 8, seed=10, p_low=0.1, p_high=0.7)
        rng = np.random.default_rng(1010)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", DegenerateDistancesWarning)
            for g in graphs:
                # HellRank scores (hence rankings) against the dense oracle
                for mode in (DistanceMode.NORMALIZED, DistanceMode.RAW):
                    got = hellrank(g, Side.LEFT, mode)
                    want = brute_hellrank(g, Side.LEFT, mode is DistanceMode.NORMALIZED)
                    for x in g.left_nodes:
                        assert abs(got[x] - want[x]) <= 1e-9
                # 4-path census against exhaustive enumeration
                assert opsahl_path_counts(g) == enumerate_4paths(g)
                # Kendall tau against the O(n^2) pair counter
                n = g.n1
                x = rng.integers(0, 5, size=n).astype(float)
                y = rng.integers(0, 5, size=n).astype(float)
                labels = tuple(g.left_nodes)
                got_tau = kendall_tau(RankVector(labels, x), RankVector(labels, y))
                assert got_tau == brute_kendall_tau_a(x, y)
