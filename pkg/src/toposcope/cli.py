"""Command-line front end.

Subcommands: ``centrality`` (index scores, graph summaries, degree
distribution), ``correlate`` (pairwise agreement matrices, dataset
aggregates, damping sweep, degree-one diagnostics), ``attack``
(connectivity under centrality-driven removals) and ``capacity``
(aggregate max-flow under removals).

Exit codes: 0 success, 2 input/parse error, 3 computation error, 4 bad
arguments. Every output directory receives the run manifest; reruns with
identical arguments produce byte-identical files.
"""

from __future__ import annotations

import argparse
import csv
import functools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, attacksim, flowcap, rankstats
from . import centrality as ct
from .errors import ComputeError, IngestError, ToposcopeError
from .ingest import RANGE_POLICIES, IngestConfig, load_topology

METRIC_ALIASES = {"gcc": "gcc_size", "components": "num_components",
                  "path": "avg_shortest_path", "flow": "agg_max_flow"}


def _fmt(x) -> str:
    """Fixed 12-significant-digit rendering for all numeric CSV cells."""
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.12g}"
    return str(x)


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(c) for c in row])


def _write_json(path: Path, payload: dict) -> None:
    def default(o):
        if isinstance(o, (np.integer,)):
            return int(o)
        if isinstance(o, (np.floating,)):
            return float(o)
        if isinstance(o, np.ndarray):
            return o.tolist()
        raise TypeError(f"not JSON serializable: {type(o)}")

    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, default=default)
        fh.write("\n")


@dataclass
class RunManifest:
    """Arguments of one invocation, reproduced verbatim in the outputs."""

    command: str
    inputs: list[str]
    ingest: dict
    output_dir: str
    version: str = __version__
    indices: str | None = None
    drivers: str | None = None
    damping: float = 0.85
    k_fraction: float = 0.05
    mode: str = "simultaneous"
    max_fraction: float = 0.05
    steps: list[int] | None = None
    sweep_damping: list[float] | None = None
    against: list[str] = field(default_factory=list)
    pmf_of: str | None = None
    metric: str | None = None
    bins: int = 10
    aggregate: bool = False
    diagnostics: bool = False
    degree_dist: bool = False
    seed: int | None = None
    threads: int = 1

    def write(self, outdir: Path) -> None:
        _write_json(outdir / "manifest.json", {"manifest": asdict(self)})


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(4)


def _add_common(p: _Parser, multi_input: bool) -> None:
    if multi_input:
        p.add_argument("--input", nargs="+", required=True, metavar="FILE")
    else:
        p.add_argument("--input", required=True, metavar="FILE")
    p.add_argument("--format", choices=["auto", "edgelist", "graphml"], default="auto")
    p.add_argument("--capacity-key", default="LinkSpeed")
    p.add_argument("--unit-key", default="LinkSpeedUnits")
    p.add_argument("--range-policy", choices=list(RANGE_POLICIES), default="mean")
    p.add_argument("--default-capacity", type=float, default=1.0)
    p.add_argument("--no-gcc", action="store_true",
                   help="skip giant-component extraction at ingestion")
    p.add_argument("-o", "--output-dir", default="toposcope_out")
    p.add_argument("--threads", type=int, default=None,
                   help="worker processes (default: TOPOSCOPE_THREADS or CPU count)")
    p.add_argument("--seed", type=int, default=None,
                   help="recorded in the manifest for seeded synthetic runs")


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("TOPOSCOPE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ComputeError(f"TOPOSCOPE_THREADS must be an integer, got {env!r}")
    return os.cpu_count() or 1


def _pool_map(fn, items, threads: int):
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _ingest_config(args, path: str) -> IngestConfig:
    fmt = args.format
    if fmt == "auto":
        fmt = "graphml" if path.lower().endswith(".graphml") else "edgelist"
    return IngestConfig(format=fmt, capacity_key=args.capacity_key,
                        unit_key=args.unit_key, range_policy=args.range_policy,
                        default_capacity=args.default_capacity,
                        extract_gcc=not args.no_gcc)


def _load(args, path: str):
    return load_topology(path, _ingest_config(args, path))


def _parse_kinds(spec: str, capacitated: bool) -> list[ct.IndexKind]:
    if spec == "all":
        return [k for k in ct.KIND_ORDER if not (capacitated and k == ct.IndexKind.PG)]
    try:
        return [ct.IndexKind(tok.strip().lower()) for tok in spec.split(",") if tok.strip()]
    except ValueError as exc:
        raise ComputeError(f"unknown centrality index in {spec!r}") from exc


def _outdir(args) -> Path:
    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _stem_names(paths: list[str]) -> list[str]:
    names = []
    seen: dict[str, int] = {}
    for p in paths:
        stem = Path(p).stem or "topology"
        seen[stem] = seen.get(stem, 0) + 1
        names.append(stem if seen[stem] == 1 else f"{stem}_{seen[stem]}")
    return names


# ---------------------------------------------------------------- centrality

def cmd_centrality(args) -> int:
    out = _outdir(args)
    g, report = _load(args, args.input)
    kinds = _parse_kinds(args.indices, g.capacitated)
    vectors = ct.compute_all(g, kinds=kinds, d=args.damping)
    summaries = {}
    for kind, vec in vectors.items():
        _write_csv(out / f"centrality_{kind.value}.csv",
                   ["node_label", "score"],
                   zip(g.labels, vec.scores.tolist()))
        summ = ct.graph_summary(vec)
        summaries[kind.value] = {**asdict(summ), "params": vec.params}
    if args.degree_dist:
        hist = ct.degree_distribution(g)
        with open(out / "degree_distribution.dat", "w", encoding="utf-8") as fh:
            fh.write("# degree count\n")
            for deg, count in sorted(hist.items()):
                fh.write(f"{deg} {count}\n")
    manifest = _manifest_for(args, "centrality")
    manifest.write(out)
    _write_json(out / "summary.json", {
        "manifest": asdict(manifest),
        "ingest_report": report.to_dict(),
        "nodes": g.n,
        "edges": g.num_edges,
        "capacitated": g.capacitated,
        "labels": list(g.labels),
        "scores": {kind.value: vec.scores for kind, vec in vectors.items()},
        "graph_summaries": summaries,
    })
    return 0


# ----------------------------------------------------------------- correlate

def _matrix_rows(kinds, matrix):
    header = [""] + [k.value for k in kinds]
    rows = []
    for i, k in enumerate(kinds):
        rows.append([k.value] + [matrix[i, j] for j in range(len(kinds))])
    return header, rows


def _aggregate_rows(kinds, mean, var, diag: str):
    """Lower-triangular mean±variance layout with a unit diagonal."""
    header = [""] + [k.value for k in kinds]
    rows = []
    for i, k in enumerate(kinds):
        cells = []
        for j in range(len(kinds)):
            if j > i:
                cells.append("")
            elif j == i:
                cells.append(diag)
            else:
                cells.append(f"{mean[i, j]:.2f}±{var[i, j]:.2f}")
        rows.append([k.value] + cells)
    return header, rows


def _correlate_worker(g, damping: float, topk: float, want_diag: bool):
    vectors = ct.compute_all(g, d=damping)
    mat = rankstats.correlation_matrix(vectors, k_fraction=topk)
    diag = None
    if want_diag and not g.capacitated:
        r_dc = rankstats.rank(vectors[ct.IndexKind.DC])
        r_bc = rankstats.rank(vectors[ct.IndexKind.BC])
        diag = rankstats.bottom_rank_diagnostics(g, r_dc, r_bc, topk)
    return mat, diag


def cmd_correlate(args) -> int:
    out = _outdir(args)
    inputs = list(args.input)
    if args.aggregate and len(inputs) < 2:
        raise ComputeError("--aggregate needs at least two input topologies")
    names = _stem_names(inputs)
    manifest = _manifest_for(args, "correlate")
    loaded = [_load(args, p) for p in inputs]
    worker = functools.partial(_correlate_worker, damping=args.damping,
                               topk=args.topk, want_diag=args.diagnostics)
    results = _pool_map(worker, [g for g, _ in loaded], _threads(args))
    matrices = []
    diagnostics = []
    reports = {}
    matrices_payload = {}
    for (g, report), name, (mat, diag) in zip(loaded, names, results):
        reports[name] = report.to_dict()
        matrices.append(mat)
        for measure in rankstats.MEASURES:
            header, rows = _matrix_rows(mat.kinds, mat.measure(measure))
            _write_csv(out / f"{name}__{measure}.csv", header, rows)
        matrices_payload[name] = {
            "kinds": [k.value for k in mat.kinds],
            **{m: mat.measure(m) for m in rankstats.MEASURES},
        }
        if diag is not None:
            diagnostics.append([name, diag.spearman, diag.top_k_overlap,
                                diag.fraction_dc_eq_1])
    if args.diagnostics:
        _write_csv(out / "diagnostics.csv",
                   ["topology", "spearman_dc_bc", f"top_{args.topk:g}_overlap_pct",
                    "fraction_dc_eq_1"],
                   diagnostics)
    agg_payload = None
    if args.aggregate:
        agg = rankstats.aggregate_matrices(matrices)
        for measure in rankstats.MEASURES:
            diag = "100" if measure == "overlap" else "1"
            header, rows = _aggregate_rows(agg.kinds, agg.mean[measure],
                                           agg.variance[measure], diag)
            _write_csv(out / f"aggregate_{measure}.csv", header, rows)
        agg_payload = {
            "kinds": [k.value for k in agg.kinds],
            "count": agg.count,
            "mean": {m: agg.mean[m] for m in rankstats.MEASURES},
            "variance": {m: agg.variance[m] for m in rankstats.MEASURES},
        }
    if args.sweep_damping:
        g0, _ = loaded[0]
        against = _parse_kinds(",".join(args.against) if args.against else "dc,bc",
                               g0.capacitated)
        sweep = rankstats.damping_sweep(g0, args.sweep_damping, against)
        with open(out / "damping_sweep.dat", "w", encoding="utf-8") as fh:
            fh.write("# d " + " ".join(f"rho_{k.value}" for k in sweep.kinds) + "\n")
            for i, d in enumerate(sweep.d_values):
                cells = " ".join(_fmt(sweep.rho[i, j]) for j in range(len(sweep.kinds)))
                fh.write(f"{_fmt(d)} {cells}\n")
    manifest.write(out)
    _write_json(out / "correlate_report.json", {
        "manifest": asdict(manifest),
        "ingest_reports": reports,
        "matrices": matrices_payload,
        "aggregate": agg_payload,
    })
    return 0


# -------------------------------------------------------------------- attack

def _resolve_steps(args, n: int) -> list[int]:
    if args.steps:
        return args.steps
    return attacksim.default_steps(n, args.max_frac)


def _env_payload(env) -> dict:
    return {
        "metric": env.metric,
        "best_is": env.best_is,  # polarity: most damaging = min or max
        "steps": env.steps,
        "drivers": [d.value for d in env.drivers],
        "values": env.values,
        "best": env.best,
        "worst": env.worst,
        "max_min_ratio": [r if np.isfinite(r) else None
                          for r in env.max_min_ratio.tolist()],
        "impact_factors": {d.value: env.impact_factors[d] for d in env.drivers},
        "degenerate": env.degenerate,
    }


def _attack_worker(driver, g, mode, steps, d):
    return attacksim.run_attack(g, attacksim.AttackPlan(driver, mode, steps), d=d)


def _capacity_worker(driver, g, mode, steps, d):
    return flowcap.run_capacity_attack(g, attacksim.AttackPlan(driver, mode, steps), d=d)


def cmd_attack(args) -> int:
    out = _outdir(args)
    inputs = list(args.input)
    names = _stem_names(inputs)
    manifest = _manifest_for(args, "attack")
    pmf_reports = []
    reports = {}
    traces_payload = {}
    envelopes_payload = {}
    for path, name in zip(inputs, names):
        g, report = _load(args, path)
        reports[name] = report.to_dict()
        drivers = _parse_kinds(args.drivers, g.capacitated)
        prefix = f"{name}__" if len(inputs) > 1 else ""
        steps = _resolve_steps(args, g.n)
        worker = functools.partial(_attack_worker, g=g, mode=args.mode,
                                   steps=steps, d=args.damping)
        traces = _pool_map(worker, drivers, _threads(args))
        for drv, trace in zip(drivers, traces):
            _write_csv(out / f"{prefix}attack_{drv.value}.csv",
                       ["k", "gcc_size", "num_components", "avg_shortest_path",
                        "avg_path_defined"],
                       [(s.k, s.gcc_size, s.num_components, s.avg_shortest_path,
                         s.avg_path_defined) for s in trace.snapshots])
            traces_payload[f"{name}/{drv.value}"] = {
                "driver": drv.value, "mode": trace.mode,
                "snapshots": [asdict(s) for s in trace.snapshots]}
        if_rows = []
        for metric in ("gcc_size", "num_components", "avg_shortest_path"):
            if len(traces) < 2:
                continue
            env = attacksim.envelope(traces, metric)
            _write_envelope(out / f"{prefix}envelope_{metric}.csv", env)
            envelopes_payload[f"{name}/{metric}"] = _env_payload(env)
            for drv in env.drivers:
                if_rows.append([metric, drv.value,
                                "" if env.impact_factors[drv] is None
                                else env.impact_factors[drv]])
            if args.pmf_of and metric == args.metric:
                pmf_reports.append(env)
        if if_rows:
            _write_csv(out / f"{prefix}impact_factors.csv",
                       ["metric", "driver", "impact_factor"], if_rows)
    if args.pmf_of:
        pmf = attacksim.if_pmf(pmf_reports, ct.IndexKind(args.pmf_of), args.bins)
        _write_pmf(out / f"pmf_{args.pmf_of}_{args.metric}.csv", pmf)
    manifest.write(out)
    _write_json(out / "attack_report.json",
                {"manifest": asdict(manifest), "ingest_reports": reports,
                 "traces": traces_payload, "envelopes": envelopes_payload})
    return 0


def _write_envelope(path: Path, env) -> None:
    header = (["k", "best", "worst", "max_min_ratio"]
              + [f"m_{d.value}" for d in env.drivers])
    rows = []
    for i, k in enumerate(env.steps):
        ratio = env.max_min_ratio[i]
        rows.append([k, env.best[i], env.worst[i],
                     ratio if np.isfinite(ratio) else "inf",
                     *[env.values[j, i] for j in range(len(env.drivers))]])
    _write_csv(path, header, rows)


def _write_pmf(path: Path, pmf) -> None:
    rows = [[pmf.bin_edges[i], pmf.bin_edges[i + 1], pmf.mass[i]]
            for i in range(len(pmf.mass))]
    _write_csv(path, ["bin_lo", "bin_hi", "mass"], rows)


# ------------------------------------------------------------------ capacity

def cmd_capacity(args) -> int:
    out = _outdir(args)
    inputs = list(args.input)
    names = _stem_names(inputs)
    manifest = _manifest_for(args, "capacity")
    pmf_reports = []
    reports = {}
    traces_payload = {}
    envelopes_payload = {}
    for path, name in zip(inputs, names):
        g, report = _load(args, path)
        reports[name] = report.to_dict()
        if not g.capacitated:
            raise ComputeError(f"{path}: capacity analysis needs a capacitated topology")
        drivers = _parse_kinds(args.drivers, capacitated=True)
        prefix = f"{name}__" if len(inputs) > 1 else ""
        steps = _resolve_steps(args, g.n)
        worker = functools.partial(_capacity_worker, g=g, mode=args.mode,
                                   steps=steps, d=args.damping)
        traces = _pool_map(worker, drivers, _threads(args))
        for drv, trace in zip(drivers, traces):
            _write_csv(out / f"{prefix}capacity_{drv.value}.csv",
                       ["k", "agg_max_flow"],
                       zip(trace.removal_steps, trace.agg_max_flow))
            traces_payload[f"{name}/{drv.value}"] = {
                "driver": drv.value, "mode": trace.mode,
                "steps": trace.removal_steps,
                "agg_max_flow": trace.agg_max_flow}
        if len(traces) >= 2:
            env = attacksim.envelope(traces, "agg_max_flow")
            _write_envelope(out / f"{prefix}envelope_agg_max_flow.csv", env)
            envelopes_payload[name] = _env_payload(env)
            _write_csv(out / f"{prefix}impact_factors.csv",
                       ["metric", "driver", "impact_factor"],
                       [["agg_max_flow", d.value,
                         "" if env.impact_factors[d] is None
                         else env.impact_factors[d]] for d in env.drivers])
            pmf_reports.append(env)
    if args.pmf_of:
        pmf = attacksim.if_pmf(pmf_reports, ct.IndexKind(args.pmf_of), args.bins)
        _write_pmf(out / f"pmf_{args.pmf_of}_agg_max_flow.csv", pmf)
    manifest.write(out)
    _write_json(out / "capacity_report.json",
                {"manifest": asdict(manifest), "ingest_reports": reports,
                 "traces": traces_payload, "envelopes": envelopes_payload})
    return 0


# ----------------------------------------------------------------- plumbing

def _manifest_for(args, command: str) -> RunManifest:
    inputs = args.input if isinstance(args.input, list) else [args.input]
    cfg = _ingest_config(args, inputs[0])
    return RunManifest(
        command=command,
        inputs=[str(p) for p in inputs],
        ingest=cfg.to_dict(),
        output_dir=str(args.output_dir),
        indices=getattr(args, "indices", None),
        drivers=getattr(args, "drivers", None),
        damping=getattr(args, "damping", 0.85),
        k_fraction=getattr(args, "topk", 0.05),
        mode=getattr(args, "mode", "simultaneous"),
        max_fraction=getattr(args, "max_frac", 0.05),
        steps=getattr(args, "steps", None),
        sweep_damping=getattr(args, "sweep_damping", None),
        against=list(getattr(args, "against", []) or []),
        pmf_of=getattr(args, "pmf_of", None),
        metric=getattr(args, "metric", None),
        bins=getattr(args, "bins", 10),
        aggregate=bool(getattr(args, "aggregate", False)),
        diagnostics=bool(getattr(args, "diagnostics", False)),
        degree_dist=bool(getattr(args, "degree_dist", False)),
        seed=args.seed,
        threads=_threads(args),
    )


def _parse_sweep(spec: str) -> list[float]:
    try:
        start, stop, step = (float(tok) for tok in spec.split(":"))
    except ValueError:
        raise ComputeError(f"--sweep-damping expects start:stop:step, got {spec!r}")
    if step <= 0 or stop < start:
        raise ComputeError("--sweep-damping needs step > 0 and stop >= start")
    values = []
    d = start
    while d <= stop + 1e-12:
        values.append(round(d, 12))
        d += step
    return values


def _steps_list(spec: str) -> list[int]:
    return [int(tok) for tok in spec.split(",") if tok.strip()]


def build_parser() -> _Parser:
    parser = _Parser(prog="toposcope",
                     description="Topology centrality and vulnerability toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("centrality", help="compute node centrality indices")
    _add_common(p, multi_input=False)
    p.add_argument("--indices", default="all")
    p.add_argument("--damping", type=float, default=0.85)
    p.add_argument("--degree-dist", action="store_true")
    p.set_defaults(func=cmd_centrality)

    p = sub.add_parser("correlate", help="rank-agreement study")
    _add_common(p, multi_input=True)
    p.add_argument("--topk", type=float, default=0.05)
    p.add_argument("--damping", type=float, default=0.85)
    p.add_argument("--aggregate", action="store_true")
    p.add_argument("--diagnostics", action="store_true")
    p.add_argument("--sweep-damping", type=_parse_sweep, default=None,
                   metavar="START:STOP:STEP")
    p.add_argument("--against", type=lambda s: s.split(","), default=None)
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("attack", help="connectivity under node removals")
    _add_common(p, multi_input=True)
    p.add_argument("--drivers", default="all")
    p.add_argument("--mode", choices=["simultaneous", "sequential"],
                   default="simultaneous")
    p.add_argument("--max-frac", type=float, default=0.05)
    p.add_argument("--steps", type=_steps_list, default=None)
    p.add_argument("--damping", type=float, default=0.85)
    p.add_argument("--pmf-of", default=None)
    p.add_argument("--metric", choices=list(METRIC_ALIASES), default="gcc")
    p.add_argument("--bins", type=int, default=10)
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("capacity", help="aggregate max flow under node removals")
    _add_common(p, multi_input=True)
    p.add_argument("--drivers", default="all")
    p.add_argument("--mode", choices=["simultaneous", "sequential"],
                   default="simultaneous")
    p.add_argument("--max-frac", type=float, default=0.05)
    p.add_argument("--steps", type=_steps_list, default=None)
    p.add_argument("--damping", type=float, default=0.85)
    p.add_argument("--pmf-of", default=None)
    p.add_argument("--bins", type=int, default=10)
    p.set_defaults(func=cmd_capacity)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 4
    if getattr(args, "metric", None):
        args.metric = METRIC_ALIASES[args.metric]
    try:
        return args.func(args)
    except (IngestError, FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        print(f"toposcope: input error: {exc}", file=sys.stderr)
        return 2
    except ComputeError as exc:
        print(f"toposcope: computation error: {exc}", file=sys.stderr)
        return 3
    except ToposcopeError as exc:  # pragma: no cover - safety net
        print(f"toposcope: error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
