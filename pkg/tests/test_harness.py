import math
import statistics

import numpy as np
import pytest
from scipy import stats

from lomax import harness
from lomax.errors import GenerationError

SMALL = """
# two tiny families
gen = er:n=24,p=0.2
gen = ba:n=24,m0=3,m=2
instances = 3
tables = 1,2,3,4,ga
iters = 6
seed = 17
"""


def test_parse_config_fields():
    cfg = harness.parse_config(SMALL, env={})
    assert [s.label for s in cfg.generators] == ["er:n=24,p=0.2", "ba:n=24,m0=3,m=2"]
    assert cfg.instances == 3 and cfg.seed == 17 and cfg.iters == 6
    assert cfg.tables == ("1", "2", "3", "4", "ga")


def test_seed_env_override():
    cfg = harness.parse_config(SMALL, env={"LOMAX_SEED": "99"})
    assert cfg.seed == 99


@pytest.mark.parametrize(
    "text",
    [
        "instances = 3\n",
        "gen = er:n=10,p=0.1\nbogus = 1\n",
        "gen = er:n=10,p=0.1\ninstances = x\n",
        "gen = er:n=10,p=0.1\ninstances = -1\n",
        "gen = er:n=10,p=0.1\ntables = 9\n",
        "gen = er:n=10,q=0.1\n",
        "gen = er:n=10,p=0.1\njust words\n",
    ],
)
def test_invalid_configs(text):
    with pytest.raises(harness.ConfigError):
        harness.parse_config(text, env={})


def test_bad_seed_env():
    with pytest.raises(harness.ConfigError):
        harness.parse_config(SMALL, env={"LOMAX_SEED": "abc"})


def test_instance_seeds_are_distinct_and_stable():
    cfg = harness.parse_config(SMALL, env={})
    seeds = {cfg.instance_seed(f, i) for f in range(2) for i in range(3)}
    assert len(seeds) == 6
    assert cfg.instance_seed(1, 2) == harness.parse_config(SMALL, env={}).instance_seed(1, 2)


def test_zero_instances_gives_empty_result(tmp_path):
    cfg = harness.parse_config("gen = er:n=20,p=0.2\ninstances = 0\ntables = 1,2,ga\n", env={})
    res = harness.run_experiment(cfg)
    assert res.rows == [] and res.curves == {}
    res.write(tmp_path)
    assert harness.read_csv(tmp_path / "instances.csv") == []


def test_generation_failure_names_instance():
    cfg = harness.parse_config("gen = er:n=20,p=0.0\ninstances = 1\n", env={})
    with pytest.raises(GenerationError, match="#0"):
        harness.run_experiment(cfg)


@pytest.fixture(scope="module")
def small_result():
    return harness.run_experiment(harness.parse_config(SMALL, env={}))


def test_rows_sorted_and_complete(small_result):
    keys = [(r["family"], r["index"]) for r in small_result.rows]
    assert keys == [("er:n=24,p=0.2", i) for i in range(3)] + [("ba:n=24,m0=3,m=2", i) for i in range(3)]
    for r in small_result.rows:
        assert r["best_pct"] == pytest.approx(100 * r["best_effect"] / r["original_load"])
        assert r["positive_count"] + r["negative_count"] <= r["n"] - 1
        assert r["eliminated_unsound"] == 0
        assert r["dc_effect"] <= r["best_effect"]


def test_aggregates_recompute_from_csv(small_result, tmp_path):
    small_result.write(tmp_path)
    rows = harness.read_csv(tmp_path / "instances.csv")
    for table in small_result.config.tables:
        emitted = harness.read_csv(tmp_path / (f"table{table}.csv" if table != "ga" else "ga_final.csv"))
        recomputed = harness.aggregate(rows, harness.TABLE_COLUMNS[table])
        assert len(emitted) == len(recomputed)
        for e, r in zip(emitted, recomputed):
            for col in ("min", "median", "mean", "max"):
                assert float(e[col]) == r[col] or (math.isnan(r[col]) and e[col] == "nan")


def test_serial_and_parallel_identical(small_result, tmp_path):
    cfg = harness.parse_config(SMALL + "workers = 2\n", env={})
    par = harness.run_experiment(cfg)
    a = small_result.write(tmp_path / "a", stamp="x")
    b = par.write(tmp_path / "b", stamp="x")
    for pa, pb in zip(a, b):
        if pa.suffix == ".csv":
            assert pa.read_bytes() == pb.read_bytes()


def test_ga_curves(small_result):
    curve = small_result.curves["er:n=24,p=0.2"]
    assert len(curve) == 7
    rows = small_result.family_rows("er:n=24,p=0.2")
    assert curve[-1]["mean_ga"] == pytest.approx(statistics.fmean(r["ga_best"] for r in rows))
    assert harness.first_reaching(curve, curve[0]["mean_ga"]) == 0
    assert harness.first_reaching(curve, 10**9) is None


def test_paired_curve_bonferroni():
    rng = np.random.default_rng(0)
    a = rng.integers(0, 20, size=(8, 5)).cumsum(axis=1)
    b = rng.integers(0, 20, size=(8, 5)).cumsum(axis=1)
    curve = harness.paired_curve(a.tolist(), b.tolist())
    d = (a - b)[:, 3]
    q = stats.t.ppf(1 - 0.05 / (2 * 5), 7)
    assert curve[3]["mean_diff"] == pytest.approx(d.mean())
    assert curve[3]["half_width"] == pytest.approx(q * d.std(ddof=1) / math.sqrt(8))


def test_table_wrappers_select_one_table():
    cfg = harness.parse_config("gen = er:n=20,p=0.25\ninstances = 2\nseed = 3\n", env={})
    assert list(harness.run_table1(cfg).aggregates) == ["1"]
    assert list(harness.run_table2(cfg).aggregates) == ["2"]
    r4 = harness.run_table4(cfg)
    assert list(r4.aggregates) == ["4"] and "dc_effect" in r4.rows[0]


def test_zero_load_excluded_from_percentages():
    rows = [
        {"family": "f", "zero_load": 1, "best_pct": math.nan, "original_load": 0},
        {"family": "f", "zero_load": 0, "best_pct": 5.0, "original_load": 10},
    ]
    (entry,) = harness.aggregate(rows, ["best_pct"])
    assert entry["count"] == 1 and entry["mean"] == 5.0
