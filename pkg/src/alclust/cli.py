"""Batch command-line front end.

Subcommands: generate, cluster, bootstrap, evaluate, bench, noise, mst,
and rerun.  Every command that writes files also writes a manifest
(<output stem>.manifest.json) holding the fully resolved parameters, so
`alclust rerun` can reproduce the outputs; label and data outputs are
byte-identical across reruns.  Report commands (bootstrap, bench, noise,
mst) render a companion PNG next to their CSV unless --no-plot is given.

Exit codes: 0 success, 2 input or parse error, 3 constraint violation,
4 internal invariant failure.  ALCLUST_SEED overrides the default seed
when --seed is not given.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__, bootstrap, engine, evaluation, fileio
from .errors import AlclustError, InputError
from .synthetic import GeneratorSpec, estimate_correlation, gen_correlated, gen_white_noise

SEED_ENV_VAR = "ALCLUST_SEED"
SCHEMA_VERSION = 1

# Params that hold output paths, per command; rerun redirects these.
OUTPUT_PATH_KEYS = {
    "generate": ["out", "labels_out"],
    "cluster": ["out", "labels_out"],
    "bootstrap": ["out", "labels_out", "trajectory_out", "figure_out"],
    "evaluate": ["out"],
    "bench": ["out", "summary_out", "figure_out"],
    "noise": ["out", "histogram_out", "summary_out", "figure_out"],
    "mst": ["out", "figure_out"],
}


def _resolve_seed(value: int | None) -> int:
    if value is not None:
        return int(value)
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"{SEED_ENV_VAR}={env!r} is not an integer") from None
    return 0


def _derived(out: str, suffix: str) -> str:
    path = Path(out)
    return str(path.with_name(path.stem + suffix))


def _manifest_path(out: str) -> str:
    return _derived(out, ".manifest.json")


def _write_manifest(command: str, params: dict, outputs: dict, elapsed: float) -> None:
    payload = {
        "schema_version": SCHEMA_VERSION,
        "tool": "alclust",
        "version": __version__,
        "command": command,
        "params": params,
        "outputs": outputs,
        "elapsed_seconds": elapsed,
        "created_utc": datetime.now(timezone.utc).isoformat(),
    }
    fileio.write_json(fileio.ensure_parent(_manifest_path(params["out"])), payload)


def _parse_sizes(text: str) -> list[int]:
    text = text.strip()
    try:
        if "x" in text:
            size, count = text.split("x")
            return [int(size)] * int(count)
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise InputError(
            f"--sizes must be SIZExCOUNT or a comma list of integers, got {text!r}"
        ) from None


def _parse_couplings(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise InputError(f"--g must be a number or comma list, got {text!r}") from None


def _load_correlation(params: dict) -> tuple[np.ndarray, np.ndarray | None]:
    """Correlation matrix from either a series file or a matrix file."""
    series = params.get("series")
    corr = params.get("corr")
    if (series is None) == (corr is None):
        raise InputError("supply exactly one of --series or --corr")
    if series is not None:
        data = fileio.read_matrix_csv(series)
        if params.get("log_returns"):
            if np.any(data <= 0):
                raise InputError(
                    f"{series}: log-return transform needs strictly positive prices"
                )
            data = np.diff(np.log(data), axis=1)
        return estimate_correlation(data), data
    matrix = fileio.read_matrix_csv(corr)
    from .likelihood import validate_correlation_matrix

    return validate_correlation_matrix(matrix), None


# ---------------------------------------------------------------------------
# executors: take a fully resolved JSON-safe params dict, write outputs


def _exec_generate(params: dict) -> None:
    started = time.perf_counter()
    out = str(fileio.ensure_parent(params["out"]))
    outputs = {"data": out}
    if params["mode"] == "white":
        data = gen_white_noise(
            params["n_series"], params["length"], params["df"], params["seed"]
        )
    else:
        couplings = params["couplings"]
        if len(couplings) == 1:
            couplings = couplings[0]
        spec = GeneratorSpec(
            params["sizes"], couplings, params["length"],
            df=params["df"], seed=params["seed"],
        )
        data, labels = gen_correlated(spec)
        labels_out = str(fileio.ensure_parent(params["labels_out"]))
        fileio.write_labels_csv(labels_out, labels)
        outputs["labels"] = labels_out
    fileio.write_matrix_csv(out, data)
    _write_manifest("generate", params, outputs, time.perf_counter() - started)
    print(f"wrote {data.shape[0]}x{data.shape[1]} data matrix to {out}")


def _exec_cluster(params: dict) -> None:
    started = time.perf_counter()
    corr, _ = _load_correlation(params)
    cfg = engine.EngineConfig(
        seed=params["seed"],
        deterministic_order=params["deterministic"],
        epsilon_merge=params["epsilon"],
    )
    result = engine.run(corr, cfg, validate=False)
    out = str(fileio.ensure_parent(params["out"]))
    labels_out = str(fileio.ensure_parent(params["labels_out"]))
    fileio.write_labels_csv(labels_out, result.labels)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "cluster",
        "n_objects": int(result.labels.size),
        "n_clusters": result.n_clusters,
        "labels": [int(v) for v in result.labels],
        "clusters": {str(k): list(v) for k, v in result.clusters.items()},
        "likelihood": result.likelihood,
        "merges": result.merges,
        "warnings": list(result.warnings),
        "elapsed_seconds": result.elapsed,
        "seed": params["seed"],
    }
    fileio.write_json(out, payload)
    _write_manifest(
        "cluster", params, {"result": out, "labels": labels_out},
        time.perf_counter() - started,
    )
    print(
        f"{result.n_clusters} clusters, likelihood {result.likelihood:.6f}, "
        f"{result.merges} merges -> {out}"
    )


def _exec_bootstrap(params: dict) -> None:
    started = time.perf_counter()
    corr, data = _load_correlation(params)
    truth = None
    if params.get("truth"):
        truth = fileio.read_labelfile_array(params["truth"], n_objects=corr.shape[0])
    cfg = bootstrap.BootstrapConfig(
        sample_quality=params["q"],
        sample_size=params["n"],
        omega=params["omega"],
        max_iterations=params["max_iter"],
        seed=params["seed"],
        ground_truth=truth,
        ari_stop=params["ari_stop"],
        record_every=params["record_every"],
        plateau_stop=params["plateau"],
    )
    result = bootstrap.run_bootstrap(data, cfg, corr=corr if data is None else None)
    out = str(fileio.ensure_parent(params["out"]))
    labels_out = str(fileio.ensure_parent(params["labels_out"]))
    trajectory_out = str(fileio.ensure_parent(params["trajectory_out"]))
    fileio.write_labels_csv(labels_out, result.labels)
    fileio.write_rows_csv(
        trajectory_out,
        ["iteration", "ari", "edge_count", "cluster_count"],
        [
            (p.iteration, "" if p.ari is None else repr(p.ari), p.edge_count, p.cluster_count)
            for p in result.trajectory
        ],
    )
    evidence = result.state.co_sampled > 0
    probs = result.probabilities[evidence]
    final = result.trajectory[-1]
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "bootstrap",
        "n_objects": int(corr.shape[0]),
        "sample_size": result.sample_size,
        "omega": params["omega"],
        "iterations_done": result.state.iterations_done,
        "stop_reason": result.stop_reason,
        "n_clusters": int(result.labels.max()) + 1,
        "labels": [int(v) for v in result.labels],
        "final_ari": final.ari,
        "probability_summary": {
            "pairs_with_evidence": int(evidence.sum()) // 2,
            "mean": float(probs.mean()) if probs.size else 0.0,
            "max": float(probs.max()) if probs.size else 0.0,
            "fraction_above_omega": float((probs > params["omega"]).mean()) if probs.size else 0.0,
        },
        "seed": params["seed"],
    }
    fileio.write_json(out, payload)
    outputs = {"result": out, "labels": labels_out, "trajectory": trajectory_out}
    if params["plot"]:
        from . import plotting

        figure_out = str(fileio.ensure_parent(params["figure_out"]))
        plotting.save_trajectory_figure(result.trajectory, figure_out, params["omega"])
        outputs["figure"] = figure_out
    _write_manifest("bootstrap", params, outputs, time.perf_counter() - started)
    ari_text = "" if final.ari is None else f", ARI {final.ari:.3f}"
    print(
        f"bootstrap stopped after {result.state.iterations_done} iterations "
        f"({result.stop_reason}): {payload['n_clusters']} clusters{ari_text}"
    )


def _exec_evaluate(params: dict) -> None:
    started = time.perf_counter()
    a = fileio.read_labelfile_array(params["labels_a"])
    b = fileio.read_labelfile_array(params["labels_b"], n_objects=a.size)
    report = evaluation.adjusted_rand_index(a, b)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "command": "evaluate",
        "ari": report.ari,
        "pair_counts": {
            "together_together": report.together_together,
            "together_apart": report.together_apart,
            "apart_together": report.apart_together,
            "apart_apart": report.apart_apart,
        },
        "files": [params["labels_a"], params["labels_b"]],
    }
    if params.get("out"):
        out = str(fileio.ensure_parent(params["out"]))
        fileio.write_json(out, payload)
        _write_manifest("evaluate", params, {"report": out}, time.perf_counter() - started)
    print(f"ARI {report.ari:.6f}")


def _exec_bench(params: dict) -> None:
    started = time.perf_counter()
    report = evaluation.benchmark_scaling(
        params["sizes"], clusters=params["clusters"], length=params["length"],
        reps=params["reps"], coupling=params["g"], df=params["df"],
        seed=params["seed"],
    )
    out = str(fileio.ensure_parent(params["out"]))
    header = ["size", "median_seconds"] + [f"rep{r + 1}" for r in range(report.reps)]
    rows = [
        (size, med, *reps)
        for size, med, reps in zip(report.sizes, report.median_seconds, report.rep_seconds)
    ]
    fileio.write_rows_csv(out, header, rows)
    summary_out = str(fileio.ensure_parent(params["summary_out"]))
    fileio.write_json(summary_out, {
        "schema_version": SCHEMA_VERSION,
        "command": "bench",
        "fitted_exponent": report.fitted_exponent,
        "intercept": report.intercept,
        "consistent_repetitions": report.consistent,
        "sizes": list(report.sizes),
        "median_seconds": list(report.median_seconds),
        "clusters": report.clusters,
        "length": report.length,
        "coupling": report.coupling,
        "seed": report.seed,
    })
    outputs = {"scaling": out, "summary": summary_out}
    if params["plot"]:
        from . import plotting

        figure_out = str(fileio.ensure_parent(params["figure_out"]))
        plotting.save_scaling_figure(
            report.sizes, report.median_seconds, report.fitted_exponent,
            report.intercept, figure_out,
        )
        outputs["figure"] = figure_out
    _write_manifest("bench", params, outputs, time.perf_counter() - started)
    print(f"fitted runtime exponent {report.fitted_exponent:.3f} -> {out}")


def _exec_noise(params: dict) -> None:
    started = time.perf_counter()
    rows = []
    partitions: dict[int, list[np.ndarray]] = {}
    for size in params["sizes"]:
        partitions[size] = []
        for run_idx in range(params["runs"]):
            data_seed = int(
                np.random.SeedSequence([params["seed"], size, run_idx]).generate_state(1)[0]
            )
            data = gen_white_noise(size, params["length"], params["df"], data_seed)
            corr = estimate_correlation(data)
            result = engine.run(
                corr, engine.EngineConfig(seed=data_seed), validate=False
            )
            partitions[size].append(result.labels)
            rows.append(
                (size, run_idx, result.n_clusters, result.n_clusters / size)
            )
    report = evaluation.noise_statistics(partitions)
    out = str(fileio.ensure_parent(params["out"]))
    fileio.write_rows_csv(out, ["size", "run", "clusters", "normalized"], rows)
    histogram_out = str(fileio.ensure_parent(params["histogram_out"]))
    fileio.write_rows_csv(
        histogram_out, ["cluster_size", "count"],
        sorted(report.histogram.items()),
    )
    summary_out = str(fileio.ensure_parent(params["summary_out"]))
    fileio.write_json(summary_out, {
        "schema_version": SCHEMA_VERSION,
        "command": "noise",
        "sizes": list(report.sizes),
        "mean_clusters": list(report.mean_clusters),
        "mean_normalized": list(report.mean_normalized),
        "mode_cluster_size": report.mode_size,
        "spearman_normalized_vs_size": report.spearman_normalized,
        "decreasing_trend": bool(report.spearman_normalized <= -0.9),
    })
    outputs = {"runs": out, "histogram": histogram_out, "summary": summary_out}
    if params["plot"]:
        from . import plotting

        figure_out = str(fileio.ensure_parent(params["figure_out"]))
        plotting.save_noise_figure(report, figure_out)
        outputs["figure"] = figure_out
    _write_manifest("noise", params, outputs, time.perf_counter() - started)
    print(
        f"noise sweep over {len(report.sizes)} sizes: mode cluster size "
        f"{report.mode_size}, trend {report.spearman_normalized:.3f}"
    )


def _exec_mst(params: dict) -> None:
    started = time.perf_counter()
    corr, _ = _load_correlation(params)
    edges = evaluation.mst_edges(corr)
    out = str(fileio.ensure_parent(params["out"]))
    fileio.write_rows_csv(out, ["i", "j", "distance"], edges)
    outputs = {"edges": out}
    if params["plot"]:
        labels = None
        if params.get("truth"):
            labels = fileio.read_labelfile_array(params["truth"], n_objects=corr.shape[0])
        from . import plotting

        figure_out = str(fileio.ensure_parent(params["figure_out"]))
        plotting.save_mst_figure(edges, corr.shape[0], figure_out, labels)
        outputs["figure"] = figure_out
    _write_manifest("mst", params, outputs, time.perf_counter() - started)
    print(f"wrote {len(edges)} spanning-tree edges to {out}")


EXECUTORS = {
    "generate": _exec_generate,
    "cluster": _exec_cluster,
    "bootstrap": _exec_bootstrap,
    "evaluate": _exec_evaluate,
    "bench": _exec_bench,
    "noise": _exec_noise,
    "mst": _exec_mst,
}


def _exec_rerun(manifest_path: str, out_dir: str | None) -> None:
    manifest = fileio.read_json(manifest_path)
    command = manifest.get("command")
    params = manifest.get("params")
    if command not in EXECUTORS or not isinstance(params, dict):
        raise InputError(f"{manifest_path}: not a usable manifest")
    params = dict(params)
    if out_dir:
        directory = Path(out_dir)
        directory.mkdir(parents=True, exist_ok=True)
        for key in OUTPUT_PATH_KEYS[command]:
            if params.get(key):
                params[key] = str(directory / Path(params[key]).name)
    EXECUTORS[command](params)


# ---------------------------------------------------------------------------
# argument parsing


def _add_input_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--series", help="CSV of series, one object per row")
    parser.add_argument("--corr", help="CSV holding a precomputed correlation matrix")


def _add_seed_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--seed", type=int, default=None,
        help=f"random seed (default: ${SEED_ENV_VAR} or 0)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alclust",
        description="Likelihood-based agglomerative clustering of correlated time series.",
    )
    parser.add_argument("--version", action="version", version=f"alclust {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic data set")
    p.add_argument("--sizes", help="cluster sizes: SIZExCOUNT (300x10) or comma list")
    p.add_argument("--g", help="per-cluster coupling: number or comma list")
    p.add_argument("--length", type=int, help="series length (features per object)")
    p.add_argument("--df", type=float, default=None,
                   help="student-t degrees of freedom (default: normal innovations)")
    p.add_argument("--white-noise", action="store_true",
                   help="generate uncorrelated noise instead of planted clusters")
    p.add_argument("--n", dest="n_series", type=int, help="series count (white-noise mode)")
    _add_seed_option(p)
    p.add_argument("--out", required=True, help="output data CSV")
    p.add_argument("--labels-out", default=None,
                   help="ground-truth labels CSV (default: <out>_labels.csv)")
    p.set_defaults(handler=_handle_generate)

    p = sub.add_parser("cluster", help="cluster one data set")
    _add_input_options(p)
    p.add_argument("--log-returns", action="store_true",
                   help="difference the log of --series columns (price input)")
    _add_seed_option(p)
    p.add_argument("--deterministic", action="store_true",
                   help="take initiators in ascending label order")
    p.add_argument("--epsilon", type=float, default=1e-12,
                   help="strict merge-gain threshold")
    p.add_argument("--out", required=True, help="result JSON")
    p.add_argument("--labels-out", default=None,
                   help="labels CSV (default: <out>_labels.csv)")
    p.set_defaults(handler=_handle_cluster)

    p = sub.add_parser("bootstrap", help="bootstrap noise filtering")
    _add_input_options(p)
    p.add_argument("--log-returns", action="store_true")
    p.add_argument("--q", type=float, default=None,
                   help="target quality ratio D/n; sample size becomes round(D/q)")
    p.add_argument("--n", type=int, default=None, help="explicit subsample size")
    p.add_argument("--omega", type=float, default=0.75, help="co-clustering threshold")
    p.add_argument("--max-iter", type=int, default=2200, help="iteration budget")
    p.add_argument("--truth", default=None, help="ground-truth labels CSV (enables ARI)")
    p.add_argument("--ari-stop", type=float, default=None,
                   help="stop once ARI reaches this (default 0.9 with --truth; >1 disables)")
    p.add_argument("--record-every", type=int, default=50, help="checkpoint stride")
    p.add_argument("--plateau", action="store_true",
                   help="also stop when the thresholded edge count stabilizes")
    _add_seed_option(p)
    p.add_argument("--out", required=True, help="result JSON")
    p.add_argument("--labels-out", default=None)
    p.add_argument("--trajectory-out", default=None,
                   help="trajectory CSV (default: <out>_trajectory.csv)")
    p.add_argument("--no-plot", dest="plot", action="store_false",
                   help="skip the trajectory figure")
    p.add_argument("--figure-out", default=None)
    p.set_defaults(handler=_handle_bootstrap)

    p = sub.add_parser("evaluate", help="ARI between two label files")
    p.add_argument("labels_a")
    p.add_argument("labels_b")
    p.add_argument("--out", default=None, help="also write the report JSON here")
    p.set_defaults(handler=_handle_evaluate)

    p = sub.add_parser("bench", help="runtime scaling benchmark")
    p.add_argument("--sizes", default="100,200,400,800,1600,3200",
                   help="comma list of data-set sizes")
    p.add_argument("--clusters", type=int, default=10)
    p.add_argument("--length", type=int, default=250)
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--g", type=float, default=1.0, help="planted coupling")
    p.add_argument("--df", type=float, default=None)
    _add_seed_option(p)
    p.add_argument("--out", required=True, help="scaling CSV")
    p.add_argument("--summary-out", default=None)
    p.add_argument("--no-plot", dest="plot", action="store_false")
    p.add_argument("--figure-out", default=None)
    p.set_defaults(handler=_handle_bench)

    p = sub.add_parser("noise", help="white-noise cluster statistics sweep")
    p.add_argument("--sizes", default="100,200,300,400,500,600,700,800,900,1000")
    p.add_argument("--length", type=int, default=100)
    p.add_argument("--df", type=float, default=3.0)
    p.add_argument("--runs", type=int, default=10, help="data sets per size")
    _add_seed_option(p)
    p.add_argument("--out", required=True, help="per-run CSV")
    p.add_argument("--histogram-out", default=None)
    p.add_argument("--summary-out", default=None)
    p.add_argument("--no-plot", dest="plot", action="store_false")
    p.add_argument("--figure-out", default=None)
    p.set_defaults(handler=_handle_noise)

    p = sub.add_parser("mst", help="minimum spanning tree of 1 - correlation")
    _add_input_options(p)
    p.add_argument("--log-returns", action="store_true")
    p.add_argument("--truth", default=None, help="labels CSV for node coloring")
    p.add_argument("--out", required=True, help="edge-list CSV")
    p.add_argument("--no-plot", dest="plot", action="store_false")
    p.add_argument("--figure-out", default=None)
    p.set_defaults(handler=_handle_mst)

    p = sub.add_parser("rerun", help="re-execute a command from its manifest")
    p.add_argument("manifest")
    p.add_argument("--out-dir", default=None,
                   help="redirect outputs into this directory")
    p.set_defaults(handler=_handle_rerun)

    return parser


# ---------------------------------------------------------------------------
# handlers: resolve argparse namespaces into executor params


def _handle_generate(args) -> None:
    if args.white_noise:
        if args.sizes or args.g:
            raise InputError("--white-noise conflicts with --sizes/--g")
        if args.n_series is None or args.length is None:
            raise InputError("--white-noise needs --n and --length")
        params = {
            "mode": "white",
            "n_series": args.n_series,
            "sizes": None,
            "couplings": None,
            "length": args.length,
            "df": args.df,
            "seed": _resolve_seed(args.seed),
            "out": args.out,
            "labels_out": None,
        }
    else:
        if args.sizes is None or args.g is None or args.length is None:
            raise InputError("planted mode needs --sizes, --g and --length")
        params = {
            "mode": "planted",
            "n_series": None,
            "sizes": _parse_sizes(args.sizes),
            "couplings": _parse_couplings(args.g),
            "length": args.length,
            "df": args.df,
            "seed": _resolve_seed(args.seed),
            "out": args.out,
            "labels_out": args.labels_out or _derived(args.out, "_labels.csv"),
        }
    _exec_generate(params)


def _handle_cluster(args) -> None:
    params = {
        "series": args.series,
        "corr": args.corr,
        "log_returns": args.log_returns,
        "seed": _resolve_seed(args.seed),
        "deterministic": args.deterministic,
        "epsilon": args.epsilon,
        "out": args.out,
        "labels_out": args.labels_out or _derived(args.out, "_labels.csv"),
    }
    _exec_cluster(params)


def _handle_bootstrap(args) -> None:
    params = {
        "series": args.series,
        "corr": args.corr,
        "log_returns": args.log_returns,
        "q": args.q,
        "n": args.n,
        "omega": args.omega,
        "max_iter": args.max_iter,
        "truth": args.truth,
        "ari_stop": args.ari_stop,
        "record_every": args.record_every,
        "plateau": args.plateau,
        "seed": _resolve_seed(args.seed),
        "out": args.out,
        "labels_out": args.labels_out or _derived(args.out, "_labels.csv"),
        "trajectory_out": args.trajectory_out or _derived(args.out, "_trajectory.csv"),
        "plot": args.plot,
        "figure_out": args.figure_out or _derived(args.out, ".png"),
    }
    _exec_bootstrap(params)


def _handle_evaluate(args) -> None:
    params = {"labels_a": args.labels_a, "labels_b": args.labels_b, "out": args.out}
    _exec_evaluate(params)


def _handle_bench(args) -> None:
    params = {
        "sizes": _parse_sizes(args.sizes),
        "clusters": args.clusters,
        "length": args.length,
        "reps": args.reps,
        "g": args.g,
        "df": args.df,
        "seed": _resolve_seed(args.seed),
        "out": args.out,
        "summary_out": args.summary_out or _derived(args.out, "_summary.json"),
        "plot": args.plot,
        "figure_out": args.figure_out or _derived(args.out, ".png"),
    }
    _exec_bench(params)


def _handle_noise(args) -> None:
    params = {
        "sizes": _parse_sizes(args.sizes),
        "length": args.length,
        "df": args.df,
        "runs": args.runs,
        "seed": _resolve_seed(args.seed),
        "out": args.out,
        "histogram_out": args.histogram_out or _derived(args.out, "_histogram.csv"),
        "summary_out": args.summary_out or _derived(args.out, "_summary.json"),
        "plot": args.plot,
        "figure_out": args.figure_out or _derived(args.out, ".png"),
    }
    _exec_noise(params)


def _handle_mst(args) -> None:
    params = {
        "series": args.series,
        "corr": args.corr,
        "log_returns": args.log_returns,
        "truth": args.truth,
        "out": args.out,
        "plot": args.plot,
        "figure_out": args.figure_out or _derived(args.out, ".png"),
    }
    _exec_mst(params)


def _handle_rerun(args) -> None:
    _exec_rerun(args.manifest, args.out_dir)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.handler(args)
    except AlclustError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
