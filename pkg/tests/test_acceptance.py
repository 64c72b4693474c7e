"""Exit criteria for the simulator and schedulers, at their stated tolerances.

Each test records one PASS/FAIL line, repeated in the terminal summary.
"""
import itertools
import time

import numpy as np
import pytest

from conftest import make_ues, record
from inifair import build_allocation, empirical_cdf, estimate_sir, make_numerology, max_cdf_distance, preset, run_case, run_cdf_experiment
from inifair.scheduler import schedule_algo1, schedule_algo2

TRIALS = 1000


@pytest.fixture(scope="module")
def cases():
    cfg = preset("fig3", trials=TRIALS, seed=0)
    return {i: run_case(cfg, i)[0].per_ue_sir_db for i in (1, 2, 3, 4)}


@pytest.fixture(scope="module")
def fig4(tmp_path_factory):
    out = tmp_path_factory.mktemp("fig4")
    start = time.perf_counter()
    res = run_cdf_experiment(preset("fig4"), out / "w1", workers=1)
    return res, time.perf_counter() - start, out


@pytest.fixture(scope="module")
def fig5(tmp_path_factory):
    out = tmp_path_factory.mktemp("fig5")
    return {
        name: run_cdf_experiment(preset(name, algorithms=("algo1", "algo2")), out / name)
        for name in ("fig5a", "fig5b")
    }, out


def test_criterion_1_orthogonality_floor():
    start = time.perf_counter()
    num1 = make_numerology(0, 15.0, 4096, 1 / 16)
    num2 = make_numerology(1, 15.0, 4096, 1 / 16)
    worst = np.inf
    for ues1, ues2 in ((make_ues(1, [0, 3, 6]), []), ([], make_ues(2, [0, 3, 6]))):
        report = estimate_sir(build_allocation(num1, num2, ues1, ues2), trials=20, seed=0)
        worst = min(worst, *(np.min(report.per_bin_sir_db[w], initial=np.inf) for w in (1, 2)))
    elapsed = time.perf_counter() - start
    ok = worst >= 100 and elapsed < 1
    record(1, ok, f"min per-bin SIR {worst} dB (>= 100), {elapsed:.2f} s (< 1 s)")
    assert ok


def test_criterion_2_case1_edge_penalty():
    start = time.perf_counter()
    sir = run_case(preset("fig3", trials=TRIALS), 1)[0].per_ue_sir_db
    elapsed = time.perf_counter() - start
    gap1 = min(sir["1-1"], sir["1-2"]) - sir["1-3"]
    gap2 = min(sir["2-2"], sir["2-3"]) - sir["2-1"]
    ok = min(gap1, gap2) >= 5.5 and elapsed <= 120
    record(2, ok, f"edge-vs-inner gap NUM-1 {gap1:.2f} dB, NUM-2 {gap2:.2f} dB (>= 5.5; paper >= 7), {elapsed:.1f} s")
    assert ok


def test_criterion_3_case3_vs_case2(cases):
    edge = "1-3"
    dec2 = cases[1][edge] - cases[2][edge]
    dec3 = cases[1][edge] - cases[3][edge]
    ordered = dec3 < dec2
    close = abs(dec3 - 2.8) <= 1.5
    record(
        3,
        ordered and close,
        f"NUM-1 edge decrement case 3 {dec3:.2f} dB < case 2 {dec2:.2f} dB: {ordered}; "
        f"case 3 within 2.8 +/- 1.5 dB: {close}",
    )
    assert ordered
    assert close


def test_criterion_4_case2_inner_gap(cases):
    sir = cases[2]
    gap = min(sir["1-1"], sir["1-2"]) - sir["1-3"]
    ok = gap > 10
    record(4, ok, f"case 2 NUM-1 edge vs inner gap {gap:.2f} dB (> 10)")
    assert ok


def _random_instances(n, seed):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        yield rng.uniform(0, 10, 3), rng.uniform(0, 10, 3)


def test_criterion_5_algo1_optimality():
    start = time.perf_counter()
    agree = 0
    for p1, p2 in _random_instances(10_000, 5):
        d = schedule_algo1(make_ues(1, p1), make_ues(2, p2))
        agree += d.edge_pair.po_db == min(abs(a - b) for a, b in itertools.product(p1, p2))
    elapsed = time.perf_counter() - start
    ok = agree == 10_000
    record(5, ok, f"{agree}/10000 instances at the exhaustive minimum PO ({elapsed:.2f} s)")
    assert ok


def test_criterion_6_algo2_contract():
    agree = 0
    for p1, p2 in _random_instances(10_000, 6):
        d = schedule_algo2(make_ues(1, p1), make_ues(2, p2), r=2)
        pairs = list(itertools.product(range(3), range(3)))
        po_min = min(abs(p1[s] - p2[t]) for s, t in pairs)
        inside = [(s, t) for s, t in pairs if abs(p1[s] - p2[t]) <= 2 * po_min]
        best_pl = min((p1[s] + p2[t]) / 2 for s, t in inside)
        s, t = d.edge_pair.s - 1, d.edge_pair.t - 1
        agree += (s, t) in inside and (p1[s] + p2[t]) / 2 == best_pl
    ok = agree == 10_000
    record(6, ok, f"{agree}/10000 instances satisfy PO <= 2 PO_min with minimum dB-average power")
    assert ok


def test_criterion_7_fairness_variance(fig4):
    res, elapsed, _ = fig4
    lines, ok = [], elapsed <= 15 * 60
    for which in (1, 2):
        var = {a: np.var(res.values(a, "edge", which), ddof=1) for a in ("random", "algo1", "algo2")}
        iqr = {a: empirical_cdf(res.values(a, "edge", which)).iqr() for a in var}
        ok &= var["algo1"] < var["algo2"] < var["random"]
        ok &= max(iqr["algo1"], iqr["algo2"]) <= 0.6 * iqr["random"]
        lines.append(
            f"NUM-{which} var a1/a2/rand {var['algo1']:.2f}/{var['algo2']:.2f}/{var['random']:.2f}, "
            f"IQR ratio a1 {iqr['algo1'] / iqr['random']:.2f} a2 {iqr['algo2'] / iqr['random']:.2f}"
        )
    record(7, ok, "; ".join(lines) + f"; {elapsed:.0f} s")
    assert ok


def test_criterion_8_wideband_convergence(fig5):
    results, _ = fig5
    dist = {
        name: max_cdf_distance(
            empirical_cdf(res.values("algo1", "inner")), empirical_cdf(res.values("algo2", "inner"))
        )
        for name, res in results.items()
    }
    ok = dist["fig5b"] < dist["fig5a"]
    record(8, ok, f"max CDF distance alg1 vs alg2 inner UEs: 672/336 {dist['fig5b']:.4f} vs 168/84 {dist['fig5a']:.4f}")
    assert ok


def test_criterion_9_determinism(fig4, fig5, tmp_path):
    res, _, out = fig4
    same = []
    # CDF presets: rerun with a different worker count
    run_cdf_experiment(preset("fig4"), tmp_path / "fig4", workers=2)
    same.append((out / "w1" / "fig4_cdf.csv").read_bytes() == (tmp_path / "fig4" / "fig4_cdf.csv").read_bytes())
    results, out5 = fig5
    for name in results:
        run_cdf_experiment(preset(name, algorithms=("algo1", "algo2")), tmp_path / name, workers=2)
        first = (out5 / name / f"{name}_cdf.csv").read_bytes()
        same.append(first == (tmp_path / name / f"{name}_cdf.csv").read_bytes())
    # case preset
    cfg = preset("fig3", trials=TRIALS)
    for i in (1, 2, 3, 4):
        run_case(cfg, i, tmp_path / "c1")
        run_case(cfg, i, tmp_path / "c2")
        for kind in ("bins", "ues"):
            same.append((tmp_path / "c1" / f"case{i}_{kind}.csv").read_bytes() == (tmp_path / "c2" / f"case{i}_{kind}.csv").read_bytes())
    ok = all(same)
    record(9, ok, f"{sum(same)}/{len(same)} CSV pairs byte-identical (fig4/fig5a/fig5b at 1 vs 2 workers, fig3 cases)")
    assert ok
