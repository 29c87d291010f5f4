"""Command-line front end.

    tarski-query solve --algo kleene --n 7 --k 2 --a 2,4
    tarski-query bench --algo kleene --algo family --n 2 --k 2 --all-a --out runs.csv
    tarski-query adversary --k 32 --strategy uniform-random --trials 1000 --seed 1
    tarski-query verify --family --n 5 --k 3 --all-a

Exit codes: 0 success, 1 verification or correctness failure, 2 usage error.
Sampled instance t (and adversary trial t) uses numpy ``default_rng(seed + t)``.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import adversary, bench
from .lattice import BudgetExceeded, GridShape, LatticeError, format_point, parse_point
from .oracle import HiddenPointOracle, InstanceFormatError, load_instance
from .solver import SOLVERS, NonMonotoneOracle, NotFamilyOracle
from .verify import check_monotone, check_tarski_lattice, fixed_points_bruteforce

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class ExperimentConfig:
    command: str
    n: int | None = None
    k: int | None = None
    solvers: list[str] = field(default_factory=list)
    a: tuple[int, ...] | None = None
    all_a: bool = False
    instance_file: str | None = None
    trials: int | None = None
    seed: int | None = None
    strategy: str = "uniform-random"
    out: str | None = None
    trace: bool = False
    budget_override: bool = False
    timing: bool = True
    max_c: int = 8
    family: bool = False

    @property
    def shape(self) -> GridShape:
        if self.n is None or self.k is None:
            raise UsageError("--n and --k are required")
        return GridShape(self.n, self.k)

    def validate(self) -> None:
        if self.trials is not None:
            if self.trials < 1:
                raise UsageError("--trials must be at least 1")
            if self.seed is None:
                raise UsageError("sampled mode needs --seed")
        if self.all_a and self.command != "adversary":
            self.shape.check_budget(self.budget_override)
        if self.a is not None and self.k is not None and len(self.a) != self.k:
            raise UsageError(f"--a has {len(self.a)} coordinates but --k is {self.k}")


def _point_arg(text: str):
    try:
        return parse_point(text)
    except LatticeError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tarski-query", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def shape_args(sp, k_required=False):
        sp.add_argument("--n", type=int)
        sp.add_argument("--k", type=int, required=k_required)
        sp.add_argument("--a", type=_point_arg, help="hidden point, e.g. 2,4")
        sp.add_argument("--budget-override", action="store_true")

    sp = sub.add_parser("solve", help="solve one instance")
    shape_args(sp)
    sp.add_argument("--algo", choices=sorted(SOLVERS), default="kleene")
    sp.add_argument("--instance", "--table", dest="instance_file")
    sp.add_argument("--trace", action="store_true")

    sp = sub.add_parser("bench", help="run solvers over an instance set, write CSV")
    shape_args(sp)
    sp.add_argument("--algo", action="append", default=[], help="repeatable, or comma-separated")
    sp.add_argument("--all-a", action="store_true")
    sp.add_argument("--instance", "--table", dest="instance_file")
    sp.add_argument("--trials", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--out")
    sp.add_argument("--no-timing", action="store_true", help="write wall_ns = 0 for byte-stable output")

    sp = sub.add_parser("adversary", help="knowledge-set simulation on the hypercube")
    shape_args(sp, k_required=True)
    sp.add_argument("--strategy", default="uniform-random")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.add_argument("--max-c", type=int, default=8)

    sp = sub.add_parser("verify", help="brute-force monotonicity and fixed-point checks")
    shape_args(sp)
    sp.add_argument("--family", action="store_true")
    sp.add_argument("--all-a", action="store_true")
    sp.add_argument("--instance", "--table", dest="instance_file")
    sp.add_argument("--out", help="write the monotonicity report(s) as JSON")
    return p


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    algos = []
    raw = getattr(args, "algo", None)
    for item in raw if isinstance(raw, list) else [raw] if raw else []:
        algos.extend(s for s in item.split(",") if s)
    for a in algos:
        if a not in SOLVERS:
            raise UsageError(f"unknown solver {a!r}; choose from {', '.join(sorted(SOLVERS))}")
    cfg = ExperimentConfig(
        command=args.command,
        n=args.n,
        k=args.k,
        solvers=algos,
        a=args.a,
        all_a=getattr(args, "all_a", False),
        instance_file=getattr(args, "instance_file", None),
        trials=getattr(args, "trials", None),
        seed=getattr(args, "seed", None),
        strategy=getattr(args, "strategy", "uniform-random"),
        out=getattr(args, "out", None),
        trace=getattr(args, "trace", False),
        budget_override=args.budget_override,
        timing=not getattr(args, "no_timing", False),
        max_c=getattr(args, "max_c", 8),
        family=getattr(args, "family", False),
    )
    if cfg.a is not None and cfg.k is None:
        cfg.k = len(cfg.a)
    cfg.validate()
    return cfg


def _single_oracle(cfg: ExperimentConfig):
    if cfg.instance_file:
        return load_instance(cfg.instance_file)
    if cfg.a is None:
        raise UsageError("give --a or --instance")
    if cfg.n is None:
        raise UsageError("--n is required")
    return HiddenPointOracle.of(cfg.n, cfg.a)


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="\n")


# ---------------------------------------------------------------------------


def cmd_solve(cfg: ExperimentConfig, out=sys.stdout) -> int:
    oracle = _single_oracle(cfg)
    name = cfg.solvers[0] if cfg.solvers else "kleene"
    try:
        res = SOLVERS[name](oracle, trace=cfg.trace)
    except (NonMonotoneOracle, NotFamilyOracle) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if cfg.trace:
        for v, fv in res.trace:
            print(f"query {format_point(v)} -> {format_point(fv)}", file=out)
    print(f"point {format_point(res.point)}", file=out)
    print(f"queries {res.queries}", file=out)
    print(f"confirmed {'true' if res.confirmed else 'false'}", file=out)
    return EXIT_OK if res.confirmed else EXIT_FAIL


def cmd_bench(cfg: ExperimentConfig, out=sys.stdout) -> int:
    if not cfg.solvers:
        raise UsageError("bench needs at least one --algo")
    if cfg.instance_file:
        instances = [bench.InstanceSpec(Path(cfg.instance_file).name, load_instance(cfg.instance_file))]
    else:
        if not (cfg.all_a or cfg.trials or cfg.a):
            raise UsageError("bench needs --all-a, --trials/--seed, --a or --instance")
        instances = bench.hidden_point_instances(
            cfg.shape,
            points=[cfg.a] if cfg.a else None,
            all_a=cfg.all_a,
            trials=cfg.trials,
            seed=cfg.seed,
            override=cfg.budget_override,
        )
    records = bench.run_bench(cfg.solvers, instances, timing=cfg.timing)
    summary = bench.summarize(records)
    if cfg.out:
        _write(cfg.out, bench.records_to_csv(records))
        _write(cfg.out + ".summary.json", json.dumps(summary, indent=2) + "\n")
    else:
        out.write(bench.records_to_csv(records))
    for s in summary:
        print(
            f"summary {s['solver']}: instances={s['instances']} mean_queries={s['mean_queries']:.4f} "
            f"max_queries={s['max_queries']} failures={s['failures']}",
            file=out,
        )
    return EXIT_FAIL if any(s["failures"] for s in summary) else EXIT_OK


def _strategy(name: str):
    if name.startswith("replay:"):
        path = name.split(":", 1)[1]
        lines = Path(path).read_text(encoding="utf-8").split("\n")
        return adversary.replay([parse_point(ln) for ln in lines if ln.strip() and not ln.startswith("#")])
    if name not in adversary.STRATEGIES:
        raise UsageError(f"unknown strategy {name!r}")
    return adversary.STRATEGIES[name]


def cmd_adversary(cfg: ExperimentConfig, out=sys.stdout) -> int:
    if cfg.n is not None and cfg.n != 2:
        raise UsageError("adversary tracking is hypercube-specific (n must be 2)")
    if cfg.trials is None or cfg.trials < 1:
        raise UsageError("--trials must be at least 1")
    strategy = _strategy(cfg.strategy)
    stats = adversary.simulate_info_gain(strategy, cfg.k, cfg.trials, cfg.seed or 0, hidden=cfg.a)
    if cfg.out:
        _write(cfg.out, stats.to_csv())
    print(f"mean_gain {stats.mean_gain:.4f} (bound 4)", file=out)
    print(f"max_gain {stats.max_gain}", file=out)
    print(f"steps {len(stats.records)} incomplete_trials {stats.incomplete_trials}", file=out)
    print("C,freq,bound,se", file=out)
    for row in stats.tail_table(cfg.max_c):
        print(f"{row['C']},{row['freq']:.6f},{row['bound']:.6f},{row['se']:.6f}", file=out)
    return EXIT_OK


def cmd_verify(cfg: ExperimentConfig, out=sys.stdout) -> int:
    if cfg.family:
        shape = cfg.shape
        shape.check_budget(cfg.budget_override)
        if cfg.all_a:
            bench_inst = bench.hidden_point_instances(shape, all_a=True, override=cfg.budget_override)
        elif cfg.a is not None:
            bench_inst = bench.hidden_point_instances(shape, points=[cfg.a])
        else:
            raise UsageError("--family needs --a or --all-a")
        targets = [(s.id, s.oracle, s.oracle.a) for s in bench_inst]
    else:
        oracle = _single_oracle(cfg)
        oracle.shape.check_budget(cfg.budget_override)
        targets = [(cfg.instance_file or format_point(cfg.a), oracle, getattr(oracle, "a", None))]

    checks = ["monotone", "fixed-points", "tarski-lattice"] + (["unique-a"] if cfg.family else [])
    fails = {c: [] for c in checks}
    reports = []
    for ident, oracle, a in targets:
        rep = check_monotone(oracle, override=cfg.budget_override)
        reports.append({"instance": ident, **rep.to_json()})
        fps = fixed_points_bruteforce(oracle, override=cfg.budget_override)
        if not rep.monotone:
            u, v = rep.witness
            fails["monotone"].append(f"{ident}: witness u={format_point(u)} v={format_point(v)}")
        if not fps:
            fails["fixed-points"].append(f"{ident}: no fixed point")
        if not check_tarski_lattice(fps):
            fails["tarski-lattice"].append(f"{ident}: fixed points do not form a lattice")
        if "unique-a" in fails and fps != {tuple(a)}:
            fails["unique-a"].append(f"{ident}: fixed points {sorted(fps)}")
        if len(targets) == 1:
            print("fixed-points " + " ".join("{" + format_point(p) + "}" for p in sorted(fps)), file=out)
    for c in checks:
        status = "PASS" if not fails[c] else "FAIL"
        print(f"{c}: {status} ({len(targets) - len(fails[c])}/{len(targets)})", file=out)
        for msg in fails[c][:20]:
            print(f"  {msg}", file=out)
    if cfg.out:
        _write(cfg.out, json.dumps(reports[0] if len(reports) == 1 else reports) + "\n")
    return EXIT_FAIL if any(fails.values()) else EXIT_OK


COMMANDS = {"solve": cmd_solve, "bench": cmd_bench, "adversary": cmd_adversary, "verify": cmd_verify}


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(args)
        return COMMANDS[cfg.command](cfg, out=out)
    except (UsageError, BudgetExceeded, LatticeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InstanceFormatError, OSError) as exc:
        print(f"bad instance: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
