"""Seeded experiment corpora and the table-shaped statistics built from them.

A config names generator specs, an instance count per spec, the tables to
produce and the solver parameters.  Every instance is an independent job
keyed by ``(family index, instance index)``; its graph seed is derived from
the master seed and that key, so results do not depend on worker count or
scheduling order.

Config files are plain ``key = value`` lines; ``gen`` may repeat::

    gen = er:n=100,p=0.1
    gen = ws:n=100,k=2,p=0.1
    instances = 30
    tables = 1,2,4,ga
    seed = 20240601
    output = results
"""

from __future__ import annotations

import csv
import datetime as _dt
import io
import json
import math
import os
import platform
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
from scipy import stats

from lomax import ga
from lomax.centrality import select_key_vertex
from lomax.errors import GenerationError, InvalidArgumentError
from lomax.generators import GeneratorSpec, generate, parse_spec
from lomax.single import brute_force, divide_and_conquer, eliminate_by_theorems

TABLES = ("1", "2", "3", "4", "ga")
NEAR_OPTIMAL = 0.75
SEED_ENV = "LOMAX_SEED"

_INT_KEYS = {
    "instances": 1,
    "seed": 0,
    "workers": 1,
    "subset_size": 5,
    "top": 2,
    "max_cut": 5,
    "pool": 20,
    "max_size": 6,
    "iters": 300,
}


class ConfigError(InvalidArgumentError):
    pass


@dataclass
class ExperimentConfig:
    generators: list[GeneratorSpec]
    instances: int = 30
    tables: tuple[str, ...] = ("1", "2")
    seed: int = 0
    output: str | None = None
    workers: int = 1
    subset_size: int = 5
    top: int = 2
    max_cut: int = 5
    pool: int = 20
    max_size: int = 6
    iters: int = 300

    def __post_init__(self):
        if self.instances < 0:
            raise ConfigError("instances must be >= 0")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        unknown = set(self.tables) - set(TABLES)
        if unknown:
            raise ConfigError(f"unknown tables {sorted(unknown)}; choose from {', '.join(TABLES)}")
        if self.subset_size < 2 or self.top < 1 or self.max_cut < 1:
            raise ConfigError("need subset_size >= 2, top >= 1, max_cut >= 1")
        if self.pool < 2 or self.max_size < 1 or self.iters < 1:
            raise ConfigError("need pool >= 2, max_size >= 1, iters >= 1")

    def instance_seed(self, family: int, index: int) -> int:
        ss = np.random.SeedSequence([self.seed, family, index])
        return int(ss.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))

    def echo(self) -> dict:
        out = asdict(self)
        out["generators"] = [s.label for s in self.generators]
        out["tables"] = list(self.tables)
        return out


def parse_config(text: str, env: dict | None = None) -> ExperimentConfig:
    """Build a config from ``key = value`` text; ``LOMAX_SEED`` in ``env`` overrides ``seed``."""
    env = os.environ if env is None else env
    gens: list[GeneratorSpec] = []
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, value = (part.strip() for part in line.partition("="))
        if not eq or not value:
            raise ConfigError(f"line {lineno}: expected key = value")
        try:
            if key == "gen":
                gens.append(parse_spec(value))
            elif key in _INT_KEYS:
                values[key] = int(value)
            elif key == "tables":
                values[key] = tuple(t.strip() for t in value.split(",") if t.strip())
            elif key == "output":
                values[key] = value
            else:
                raise ConfigError(f"unknown key {key!r}")
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from None
    if not gens:
        raise ConfigError("config needs at least one gen = <spec> line")
    if env.get(SEED_ENV):
        try:
            values["seed"] = int(env[SEED_ENV])
        except ValueError:
            raise ConfigError(f"{SEED_ENV} must be an integer") from None
    return ExperimentConfig(generators=gens, **values)


def load_config(path: str | os.PathLike, env: dict | None = None) -> ExperimentConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    return parse_config(text, env)


# -- per-instance work --------------------------------------------------


def _pct(effect: float, base: int) -> float:
    return 100.0 * effect / base if base else math.nan


def solve_instance(config: ExperimentConfig, family: int, index: int) -> dict:
    """Everything the selected tables need from one corpus instance."""
    spec = config.generators[family]
    seed = config.instance_seed(family, index)
    started = time.perf_counter()
    try:
        g = generate(spec.with_seed(seed))
    except GenerationError as exc:
        raise GenerationError(f"instance {spec.label} #{index}: {exc}") from None
    k = select_key_vertex(g)
    row: dict = {"family": spec.label, "index": index, "seed": seed, "n": g.n, "key": k}
    tables = set(config.tables)

    bf = brute_force(g, k)
    effects = np.array([bf.effects[v] for v in sorted(bf.effects)], dtype=np.int64)
    best = int(effects.max())
    base = bf.base_load
    row.update(
        original_load=base,
        zero_load=int(base == 0),
        best_effect=best,
        best_vertex=bf.best[0],
        best_pct=_pct(best, base),
        average_pct=_pct(float(effects.mean()), base),
        positive_count=int((effects > 0).sum()),
        negative_count=int((effects < 0).sum()),
        near_optimal_count=int((effects >= NEAR_OPTIMAL * best).sum()) if best > 0 else 0,
        evaluations=bf.evaluations,
    )
    if "3" in tables:
        pruned = eliminate_by_theorems(g, k, config.max_cut)
        row["eliminated"] = len(pruned)
        row["eliminated_unsound"] = sum(1 for v in pruned if bf.effects[v] > 0)
    if "4" in tables:
        dc = divide_and_conquer(g, k, config.subset_size, config.top, seed=seed)
        found = dc.best[1]
        row["dc_effect"] = found
        row["dc_pct_of_optimum"] = 100.0 * found / best if best > 0 else math.nan
        row["dc_negative"] = int(found < 0)
        row["dc_evaluations"] = dc.evaluations
    curves = None
    if "ga" in tables:
        cfg = ga.GAConfig(config.pool, config.max_size, config.iters, None, seed)
        init = ga.init_pool(g, k, config.pool, config.max_size, seed, single_effects=bf.effects)
        rs = ga.random_search(g, k, cfg, init)
        gs = ga.run(g, k, cfg, init)
        row["ga_best"] = gs.best_ever.fitness
        row["rs_best"] = rs.best_ever.fitness
        curves = (gs.history, rs.history)
    return {"row": row, "curves": curves, "seconds": time.perf_counter() - started}


def _job(args):
    return solve_instance(*args)


# -- aggregation --------------------------------------------------------

TABLE_COLUMNS = {
    "1": ("original_load", "average_pct", "best_pct"),
    "2": ("positive_count", "near_optimal_count"),
    "3": ("eliminated", "negative_count", "eliminated_unsound"),
    "4": ("dc_effect", "best_effect", "dc_pct_of_optimum", "dc_negative", "dc_evaluations"),
    "ga": ("ga_best", "rs_best"),
}
_PCT_COLUMNS = {"average_pct", "best_pct"}


def aggregate(rows: list[dict], columns) -> list[dict]:
    """min/median/mean/max of each column per family; NaN entries are skipped.

    Percent columns also skip instances whose key vertex had zero load.
    """
    out = []
    families = sorted({r["family"] for r in rows}, key=[r["family"] for r in rows].index)
    for fam in families:
        mine = [r for r in rows if r["family"] == fam]
        for col in columns:
            vals = [
                float(r[col])
                for r in mine
                if not math.isnan(float(r[col])) and not (col in _PCT_COLUMNS and int(r["zero_load"]))
            ]
            entry = {"family": fam, "column": col, "count": len(vals)}
            if vals:
                entry.update(
                    min=min(vals), median=statistics.median(vals), mean=statistics.fmean(vals), max=max(vals)
                )
            else:
                entry.update(min=math.nan, median=math.nan, mean=math.nan, max=math.nan)
            out.append(entry)
    return out


def paired_curve(ga_hist: list[list[int]], rs_hist: list[list[int]], alpha: float = 0.05) -> list[dict]:
    """Per-iteration mean GA, mean RS and mean paired difference with Bonferroni half-widths.

    The family-wise level ``alpha`` is split evenly over every iteration reported.
    """
    a = np.asarray(ga_hist, dtype=float)
    b = np.asarray(rs_hist, dtype=float)
    diff = a - b
    m, iters = diff.shape
    if m > 1:
        q = stats.t.ppf(1 - alpha / (2 * iters), m - 1)
        half = q * diff.std(axis=0, ddof=1) / math.sqrt(m)
    else:
        half = np.full(iters, math.nan)
    return [
        {
            "iteration": it,
            "mean_ga": float(a[:, it].mean()),
            "mean_rs": float(b[:, it].mean()),
            "mean_diff": float(diff[:, it].mean()),
            "half_width": float(half[it]),
        }
        for it in range(iters)
    ]


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    rows: list[dict] = field(default_factory=list)
    aggregates: dict[str, list[dict]] = field(default_factory=dict)
    curves: dict[str, list[dict]] = field(default_factory=dict)
    histories: list[dict] = field(default_factory=list)
    seconds: dict[str, float] = field(default_factory=dict)

    def family_rows(self, label: str) -> list[dict]:
        return [r for r in self.rows if r["family"] == label]

    def stat(self, table: str, label: str, column: str, which: str = "mean") -> float:
        for entry in self.aggregates[table]:
            if entry["family"] == label and entry["column"] == column:
                return entry[which]
        raise KeyError((table, label, column))

    def write(self, directory: str | os.PathLike, stamp: str | None = None) -> list[Path]:
        """CSV files (first line a timestamp comment) plus ``manifest.json``."""
        out = Path(directory)
        out.mkdir(parents=True, exist_ok=True)
        stamp = stamp or _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        written = [out / "instances.csv"]
        written[0].write_text(to_csv(self.rows, stamp))
        for table, entries in self.aggregates.items():
            path = out / f"table{table}.csv" if table != "ga" else out / "ga_final.csv"
            path.write_text(to_csv(entries, stamp))
            written.append(path)
        if self.curves:
            rows = [dict(family=fam, **point) for fam, pts in self.curves.items() for point in pts]
            path = out / "ga_comparison.csv"
            path.write_text(to_csv(rows, stamp))
            written.append(path)
            path = out / "ga_history.csv"
            path.write_text(to_csv(self.histories, stamp))
            written.append(path)
        manifest = {
            "generated": stamp,
            "config": self.config.echo(),
            "instances": [
                {"family": r["family"], "index": r["index"], "seed": r["seed"]} for r in self.rows
            ],
            "seconds": self.seconds,
            "versions": _versions(),
        }
        path = out / "manifest.json"
        path.write_text(json.dumps(manifest, indent=2) + "\n")
        written.append(path)
        return written


def _versions() -> dict:
    import numba
    import scipy

    from lomax import __version__

    return {
        "lomax": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "numba": numba.__version__,
    }


def _fmt(value) -> str:
    if isinstance(value, float):
        return "nan" if math.isnan(value) else repr(value)
    return str(value)


def to_csv(rows: list[dict], stamp: str) -> str:
    buf = io.StringIO()
    buf.write(f"# generated {stamp}\n")
    if rows:
        cols = list(rows[0])
        for r in rows[1:]:
            cols += [c for c in r if c not in cols]
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        for r in rows:
            writer.writerow([_fmt(r.get(c, "")) for c in cols])
    return buf.getvalue()


def read_csv(path: str | os.PathLike) -> list[dict]:
    """Rows of a CSV written by :func:`to_csv` (comment line skipped, values left as strings)."""
    with open(path, newline="") as fh:
        lines = [line for line in fh if not line.startswith("#")]
    return list(csv.DictReader(lines))


# -- drivers ------------------------------------------------------------


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Solve every instance (serially or on ``workers`` processes) and aggregate the selected tables."""
    jobs = [(config, f, i) for f in range(len(config.generators)) for i in range(config.instances)]
    started = time.perf_counter()
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            done = list(pool.map(_job, jobs))
    else:
        done = [_job(j) for j in jobs]
    # pool.map already preserves order; sort anyway so emission never depends on scheduling
    order = sorted(range(len(done)), key=lambda j: (jobs[j][1], jobs[j][2]))
    done = [done[j] for j in order]

    result = ExperimentResult(config)
    result.rows = [d["row"] for d in done]
    for table in config.tables:
        result.aggregates[table] = aggregate(result.rows, TABLE_COLUMNS[table])
    if "ga" in config.tables:
        for spec in config.generators:
            mine = [d for d in done if d["row"]["family"] == spec.label]
            if not mine:
                continue
            ga_hist = [d["curves"][0] for d in mine]
            rs_hist = [d["curves"][1] for d in mine]
            result.curves[spec.label] = paired_curve(ga_hist, rs_hist)
            for d in mine:
                for it, (x, y) in enumerate(zip(*d["curves"])):
                    result.histories.append(
                        {"family": spec.label, "index": d["row"]["index"], "iteration": it,
                         "ga_best": x, "rs_best": y, "diff": x - y}
                    )
    result.seconds = {
        "total": time.perf_counter() - started,
        **{f"{d['row']['family']}#{d['row']['index']}": d["seconds"] for d in done},
    }
    return result


def _with_tables(config: ExperimentConfig, tables) -> ExperimentConfig:
    fields = config.echo()
    fields.update(generators=config.generators, tables=tuple(tables))
    return ExperimentConfig(**fields)


def run_table1(config: ExperimentConfig) -> ExperimentResult:
    return run_experiment(_with_tables(config, ["1"]))


def run_table2(config: ExperimentConfig) -> ExperimentResult:
    return run_experiment(_with_tables(config, ["2"]))


def run_table3(config: ExperimentConfig) -> ExperimentResult:
    return run_experiment(_with_tables(config, ["3"]))


def run_table4(config: ExperimentConfig) -> ExperimentResult:
    return run_experiment(_with_tables(config, ["4"]))


def run_ga_comparison(config: ExperimentConfig) -> ExperimentResult:
    return run_experiment(_with_tables(config, ["ga"]))


def first_reaching(curve: list[dict], target: float) -> int | None:
    """First iteration whose mean GA best is at least ``target``."""
    for point in curve:
        if point["mean_ga"] >= target:
            return point["iteration"]
    return None
