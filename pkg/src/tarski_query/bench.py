"""Batch runs of solvers over instance sets, one CSV row per (solver, instance)."""
from __future__ import annotations

import csv
import io
import time
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np

from .adversary import sample_hidden_point
from .lattice import GridShape, all_points_array, format_point
from .oracle import HiddenPointOracle, Oracle
from .solver import SOLVERS

CSV_HEADER = ["solver", "n", "k", "instance", "queries", "correct", "wall_ns"]


@dataclass
class BenchRecord:
    solver: str
    n: int
    k: int
    instance: str
    queries: int
    correct: bool
    wall_ns: int


@dataclass
class InstanceSpec:
    """An oracle plus the id it is reported under."""

    id: str
    oracle: Oracle


def hidden_point_instances(
    shape: GridShape,
    points: Sequence[Sequence[int]] | None = None,
    all_a: bool = False,
    trials: int | None = None,
    seed: int | None = None,
    override: bool = False,
) -> list[InstanceSpec]:
    if all_a:
        shape.check_budget(override)
        pts = [tuple(int(c) for c in p) for p in all_points_array(shape, override)]
        return [InstanceSpec(format_point(a), HiddenPointOracle.of(shape.n, a)) for a in pts]
    if trials is not None:
        if seed is None:
            raise ValueError("sampled instances need a seed")
        out = []
        for t in range(trials):
            a = sample_hidden_point(shape, seed, t)
            out.append(InstanceSpec(f"seed={seed}+{t}", HiddenPointOracle.of(shape.n, a)))
        return out
    return [InstanceSpec(format_point(a), HiddenPointOracle.of(shape.n, a)) for a in points or []]


def run_bench(solvers: Sequence[str], instances: Iterable[InstanceSpec], timing: bool = True) -> list[BenchRecord]:
    """Rows ordered by solver, then instance. A solver that raises gets queries = -1, correct = False."""
    if not solvers:
        raise ValueError("no solvers given")
    instances = list(instances)
    records = []
    for name in solvers:
        fn = SOLVERS[name]
        for spec in instances:
            oracle = spec.oracle
            t0 = time.perf_counter_ns()
            try:
                out = fn(oracle)
            except Exception:
                queries, correct = -1, False
            else:
                queries = out.queries
                correct = tuple(oracle(out.point)) == tuple(out.point)
            wall = time.perf_counter_ns() - t0 if timing else 0
            records.append(BenchRecord(name, oracle.shape.n, oracle.shape.k, spec.id, queries, correct, wall))
    return records


def summarize(records: Sequence[BenchRecord]) -> list[dict]:
    out = []
    for name in dict.fromkeys(r.solver for r in records):
        rows = [r for r in records if r.solver == name]
        ok = [r.queries for r in rows if r.queries >= 0]
        out.append(
            {
                "solver": name,
                "instances": len(rows),
                "mean_queries": float(np.mean(ok)) if ok else None,
                "max_queries": max(ok) if ok else None,
                "failures": sum(not r.correct for r in rows),
            }
        )
    return out


def records_to_csv(records: Sequence[BenchRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        d = asdict(r)
        d["correct"] = "true" if r.correct else "false"
        w.writerow([d[c] for c in CSV_HEADER])
    return buf.getvalue()
