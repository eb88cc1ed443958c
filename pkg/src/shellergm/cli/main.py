"""Command-line interface for shellergm (shell-distribution ERGM toolkit)."""

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from shellergm import __version__
from shellergm.config.schema import LoggingConfig, ShellERGMConfig, load_config
from shellergm.data_ingestion.datasets import load_sampson
from shellergm.domain.graph import Graph
from shellergm.domain.params import ModelParams, SmoothingAlpha
from shellergm.domain.shells import ShellDistribution
from shellergm.errors import (
    DistributionParseError,
    EdgeListParseError,
    EnumerationCapError,
    EstimatorError,
    InfeasibleDistributionError,
)
from shellergm.io.edge_list import read_edge_list
from shellergm.metrics.cores import degeneracy, shell_decomposition
from shellergm.metrics.realizability import require_realizable
from shellergm.model.ergm import empirical_estimate, exact_distribution, exact_log_partition
from shellergm.reports.discovery import discover_fiber
from shellergm.reports.gof import gof_compare
from shellergm.reports.manifest import RunManifest
from shellergm.sampling.enumeration import enumerate_fiber, statistic_histogram
from shellergm.sampling.mcmc import chain_seeds, default_initial_graph, generate_seed, run_chains

OUTPUT_DIR_ENV = "SHELLERGM_OUTPUT_DIR"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_INFEASIBLE = 3
EXIT_ESTIMATOR = 4
EXIT_CAP = 5

logger = logging.getLogger(__name__)


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point.

    Returns:
        Exit code (0 for success, non-zero for error)
    """
    parser = create_argument_parser()
    args = parser.parse_args(argv)

    handler = COMMANDS.get(getattr(args, "command", None) or "")
    if handler is None:
        parser.print_help()
        return EXIT_ERROR

    try:
        config = load_config(args.config)
        config = _apply_overrides(config, args)
        return handler(args, config)
    except (EdgeListParseError, DistributionParseError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except InfeasibleDistributionError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except EstimatorError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ESTIMATOR
    except EnumerationCapError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_CAP
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR


def create_argument_parser() -> argparse.ArgumentParser:
    """Create the command-line argument parser.

    Returns:
        Configured ArgumentParser instance
    """
    parser = argparse.ArgumentParser(
        prog="shellergm",
        description=(
            "Shell-distribution ERGM toolkit - core decomposition, fiber sampling, "
            "exact enumeration and MCMC simulation"
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config",
        type=Path,
        default=None,
        help="Path to configuration file (default: packaged default.yml)",
    )
    common.add_argument(
        "--out",
        dest="output",
        type=Path,
        default=None,
        help=f"Output directory (default: ${OUTPUT_DIR_ENV}, then output.directory)",
    )
    common.add_argument(
        "--format",
        dest="output_format",
        choices=["json", "csv"],
        help="Override the configured output format",
    )
    common.add_argument("--log-level", dest="log_level", help="Override the logging level")

    graph_source = argparse.ArgumentParser(add_help=False)
    graph_source.add_argument(
        "graph", nargs="?", type=Path, default=None, help="Edge-list file of the graph"
    )
    graph_source.add_argument(
        "--sampson", action="store_true", help="Use the bundled Sampson monastery network"
    )
    graph_source.add_argument(
        "--string-labels",
        dest="string_labels",
        action="store_true",
        help="Treat vertex labels as names instead of 0-based integers",
    )

    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument("--seed", type=int, help="64-bit seed (generated and recorded when omitted)")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    subparsers.add_parser(
        "cores",
        parents=[common, graph_source],
        help="Shell sequence and shell distribution of a graph",
    )

    fiber_parser = subparsers.add_parser(
        "sample-fiber",
        parents=[common, seeded],
        help="Sample graphs with a given shell distribution and report fiber discovery",
    )
    fiber_parser.add_argument("distribution", help='Shell distribution, e.g. "0,2,1,4,0,0,0"')
    fiber_parser.add_argument("--count", type=int, help="Number of sampler runs")
    fiber_parser.add_argument(
        "--labeled",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="Randomly relabel each output (use --no-labeled to keep construction order)",
    )

    simulate_parser = subparsers.add_parser(
        "simulate",
        parents=[common, graph_source, seeded],
        help="Estimate theta from a graph, simulate the model and compare fit",
    )
    simulate_parser.add_argument("--steps", type=int, help="Chain length")
    simulate_parser.add_argument("--k", type=int, help="Dyads toggled per proposal")
    simulate_parser.add_argument("--burn-in", dest="burn_in", type=int, help="Burn-in steps")
    simulate_parser.add_argument("--thin", type=int, help="Thinning interval")
    simulate_parser.add_argument(
        "--alpha", help="Smoothing pseudo-count: a scalar or one comma-separated value per shell"
    )
    simulate_parser.add_argument(
        "--correction",
        choices=["paper", "hastings"],
        help="Acceptance rule: paper (symmetric Metropolis) or hastings (proposal-corrected)",
    )
    simulate_parser.add_argument("--chains", type=int, default=1, help="Independent chains")
    simulate_parser.add_argument(
        "--workers", type=int, default=None, help="Worker processes for multiple chains"
    )

    enumerate_parser = subparsers.add_parser(
        "enumerate",
        parents=[common],
        help="Exact statistic tables and brute-force fibers for small n",
    )
    target = enumerate_parser.add_mutually_exclusive_group(required=True)
    target.add_argument("--n", type=int, help="Tabulate every labeled graph on n vertices")
    target.add_argument("--distribution", help="Enumerate the fiber of one shell distribution")
    enumerate_parser.add_argument(
        "--theta",
        help="With --n: n-1 comma-separated parameters; adds the exact partition function and law",
    )

    return parser


def _parse_floats(text: str, flag: str) -> List[float]:
    tokens = [tok for tok in text.replace(",", " ").split() if tok]
    if not tokens:
        raise ValueError(f"{flag} needs a value")
    try:
        return [float(tok) for tok in tokens]
    except ValueError:
        raise ValueError(f"{flag} expects numbers, got '{text}'") from None


def _parse_alpha(text: str) -> Union[float, List[float]]:
    values = _parse_floats(text, "--alpha")
    return values[0] if len(values) == 1 else values


def _collect_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    names = ["seed", "steps", "k", "burn_in", "thin", "alpha", "correction", "count", "output_format", "log_level"]
    return {
        name: getattr(args, name)
        for name in names
        if getattr(args, name, None) is not None
    }


def _apply_overrides(config: ShellERGMConfig, args: argparse.Namespace) -> ShellERGMConfig:
    """Apply CLI overrides to the loaded configuration."""

    updated = config.model_copy(deep=True)

    if getattr(args, "output_format", None):
        updated.output.format = args.output_format
    if getattr(args, "log_level", None):
        updated.logging.level = args.log_level

    chain = updated.chain
    if getattr(args, "steps", None) is not None:
        chain.steps = args.steps
    if getattr(args, "k", None) is not None:
        chain.k = args.k
    if getattr(args, "burn_in", None) is not None:
        chain.burn_in = args.burn_in
    if getattr(args, "thin", None) is not None:
        chain.thin = args.thin
    if getattr(args, "seed", None) is not None:
        chain.seed = args.seed
    if getattr(args, "correction", None):
        chain.correction = args.correction

    if getattr(args, "alpha", None) is not None:
        updated.estimator.alpha = _parse_alpha(args.alpha)
    if getattr(args, "count", None) is not None:
        updated.fiber.count = args.count

    return updated


def resolve_output_dir(args: argparse.Namespace, config: ShellERGMConfig, required: bool) -> Optional[Path]:
    """``--out``, then ``$SHELLERGM_OUTPUT_DIR``, then ``output.directory`` when ``required``."""
    if getattr(args, "output", None) is not None:
        return Path(args.output)
    env_dir = os.environ.get(OUTPUT_DIR_ENV)
    if env_dir:
        return Path(env_dir)
    return Path(config.output.directory) if required else None


def setup_logging(logging_config: LoggingConfig, output_dir: Optional[Path]) -> Optional[Path]:
    """Configure logging; messages are also persisted to a file inside ``output_dir``."""

    try:
        level_value = getattr(logging, logging_config.level.upper())
        if not isinstance(level_value, int):  # pragma: no cover - defensive
            raise AttributeError
    except AttributeError:  # pragma: no cover - invalid level fallback
        level_value = logging.INFO

    handlers: List[logging.Handler] = [logging.StreamHandler()]
    log_path: Optional[Path] = None

    if output_dir is not None:
        output_dir.mkdir(parents=True, exist_ok=True)
        log_file = logging_config.file or "shellergm.log"
        configured_path = Path(log_file)
        log_path = configured_path if configured_path.is_absolute() else output_dir / configured_path
        log_path.parent.mkdir(parents=True, exist_ok=True)
        handlers.insert(0, logging.FileHandler(log_path, encoding="utf-8"))

    logging.basicConfig(
        level=level_value,
        format=logging_config.format,
        handlers=handlers,
        force=True,
    )

    return log_path


def _load_graph(args: argparse.Namespace) -> Tuple[Graph, str]:
    if getattr(args, "sampson", False):
        if args.graph is not None:
            raise ValueError("give either a graph file or --sampson, not both")
        return load_sampson(), "sampson"
    if args.graph is None:
        raise ValueError("a graph file (or --sampson) is required")
    return read_edge_list(args.graph, string_labels=args.string_labels), str(args.graph)


def _write_json(data: Any, path: Path) -> Path:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, default=str)
        f.write("\n")
    return path


def _write_manifest(
    args: argparse.Namespace,
    config: ShellERGMConfig,
    output_dir: Path,
    inputs: List[str],
    seed: Optional[int],
    outputs: List[Path],
) -> Path:
    manifest = RunManifest(
        subcommand=args.command,
        version=__version__,
        inputs=inputs,
        seed=seed,
        overrides=_collect_overrides(args),
        output_directory=str(output_dir),
        outputs=sorted(p.name for p in outputs),
        config=config.model_dump(mode="json"),
    )
    return manifest.write(output_dir)


def _law_rows(law: Dict[Tuple[int, ...], float]) -> List[Dict[str, Any]]:
    return [
        {"truncated_distribution": list(key), "probability": p}
        for key, p in sorted(law.items(), key=lambda item: (-item[1], item[0]))
    ]


def _emit(document: Dict[str, Any]) -> None:
    print(json.dumps(document, indent=2, default=str))


def cmd_cores(args: argparse.Namespace, config: ShellERGMConfig) -> int:
    """Print shell sequence and distribution; write ``cores.json`` when an output directory is set."""
    output_dir = resolve_output_dir(args, config, required=False)
    setup_logging(config.logging, output_dir)

    graph, source = _load_graph(args)
    decomposition = shell_decomposition(graph)
    distribution = decomposition.sequence.distribution()
    document: Dict[str, Any] = {
        "source": source,
        "n": graph.n,
        "edges": graph.num_edges,
        "shell_sequence": list(decomposition.sequence.indices),
        "shell_distribution": list(distribution.counts),
        "truncated_distribution": list(distribution.truncated()),
        "largest_shell_index": degeneracy(distribution) if graph.n else 0,
        "peel_order": list(decomposition.peel_order),
    }
    if graph.labels is not None:
        document["labels"] = list(graph.labels)
    _emit(document)

    if output_dir is not None:
        written = [_write_json(document, output_dir / "cores.json")]
        _write_manifest(args, config, output_dir, [source], None, written)
    return EXIT_OK


def cmd_sample_fiber(args: argparse.Namespace, config: ShellERGMConfig) -> int:
    """Sample the fiber of a shell distribution and report discovery."""
    output_dir = resolve_output_dir(args, config, required=True)
    setup_logging(config.logging, output_dir)

    distribution = ShellDistribution.parse(args.distribution)
    seed = config.chain.seed if config.chain.seed is not None else generate_seed()
    report = discover_fiber(
        distribution,
        runs=config.fiber.count,
        seed=seed,
        labeled=args.labeled,
        iso_class_cap=config.fiber.iso_class_cap,
        keep_graphs=True,
    )

    written = [report.write_graphs(output_dir / "graphs.jsonl")]
    if config.output.format == "csv":
        written.append(report.export_to_csv(output_dir / "discovery.csv"))
    written.append(report.write_json(output_dir / "discovery.json"))
    _write_manifest(args, config, output_dir, [str(distribution)], seed, written)

    summary = report.to_dict()
    summary.pop("classes", None)
    summary["output_directory"] = str(output_dir)
    _emit(summary)
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace, config: ShellERGMConfig) -> int:
    """Estimate theta, run the chain(s) and write trace, summary and GOF outputs."""
    if config.chain.recorded_steps == 0:
        raise ValueError(
            f"--steps ({config.chain.steps}) must exceed --burn-in ({config.chain.burn_in}) "
            f"by at least --thin ({config.chain.thin}); nothing would be recorded"
        )
    output_dir = resolve_output_dir(args, config, required=True)
    setup_logging(config.logging, output_dir)

    graph, source = _load_graph(args)
    alpha = SmoothingAlpha.broadcast(config.estimator.alpha, graph.n)
    params = empirical_estimate(graph, alpha)

    seed = config.chain.seed if config.chain.seed is not None else generate_seed()
    chain_config = config.chain.model_copy(update={"seed": seed})
    init = default_initial_graph(graph, seed)
    trace = run_chains(
        params,
        init,
        chain_config,
        chain_seeds(seed, args.chains),
        max_workers=args.workers,
        centrality_measures=config.gof.centrality_measures,
    )
    report = gof_compare(graph, trace, config.gof)

    written = [_write_json(params.to_dict(), output_dir / "params.json")]
    trace_path = output_dir / "trace.csv"
    trace.to_frame().to_csv(trace_path, index=False, encoding="utf-8")
    written.append(trace_path)
    summary = trace.summary(max_lag=config.gof.max_lag, top=config.gof.modal_top)
    if graph.n <= config.enumeration.partition_max_n:
        exact = exact_distribution(params, max_n=config.enumeration.partition_max_n)
        frequencies = trace.statistic_frequencies()
        summary["exact_distribution"] = _law_rows(exact)
        summary["total_variation"] = 0.5 * sum(
            abs(frequencies.get(key, 0.0) - exact.get(key, 0.0))
            for key in set(exact) | set(frequencies)
        )
        logger.info("Total variation to the exact law: %.4f", summary["total_variation"])
    written.append(_write_json(summary, output_dir / "summary.json"))
    if config.output.format == "csv":
        written.extend(report.write_csvs(output_dir))
    written.append(report.write_json(output_dir / "gof.json"))
    _write_manifest(args, config, output_dir, [source], seed, written)

    _emit(
        {
            "source": source,
            "n": graph.n,
            "theta": list(params.theta),
            "seed": seed,
            "recorded": trace.recorded,
            "acceptance_rate": trace.acceptance_rate,
            "observed_truncated_distribution": list(report.observed_truncated),
            "modal_distributions": summary["modal_distributions"],
            "edges_position": report.statistics["edges"].position,
            "output_directory": str(output_dir),
        }
    )
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace, config: ShellERGMConfig) -> int:
    """Exact truncated-statistic table for ``--n`` or brute-force fiber for ``--distribution``."""
    output_dir = resolve_output_dir(args, config, required=False)
    setup_logging(config.logging, output_dir)

    if args.theta is not None and args.n is None:
        raise ValueError("--theta needs --n")

    if args.n is not None:
        if args.n > config.enumeration.fiber_max_n:
            raise EnumerationCapError(
                f"enumeration is limited to n <= {config.enumeration.fiber_max_n}, got n={args.n}"
            )
        law: Optional[Dict[Tuple[int, ...], float]] = None
        extra: Dict[str, Any] = {}
        if args.theta is not None:
            params = ModelParams(args.n, tuple(_parse_floats(args.theta, "--theta")))
            max_n = config.enumeration.partition_max_n
            extra["theta"] = list(params.theta)
            extra["log_partition"] = exact_log_partition(params, max_n=max_n)
            law = exact_distribution(params, max_n=max_n)
        histogram = statistic_histogram(args.n)
        rows = [
            {"truncated_distribution": list(key), "multiplicity": count}
            for key, count in histogram.items()
        ]
        if law is not None:
            for row in rows:
                row["probability"] = law[tuple(row["truncated_distribution"])]
        document: Dict[str, Any] = {"n": args.n, "labeled_graphs": sum(histogram.values()), **extra}
        document["statistics"] = rows
        target = f"n={args.n}"
    else:
        distribution = ShellDistribution.parse(args.distribution)
        require_realizable(distribution)
        fiber = enumerate_fiber(distribution, max_n=config.enumeration.fiber_max_n)
        document = {
            "distribution": list(distribution.counts),
            "labeled_count": fiber.labeled_count,
            "iso_classes": fiber.num_classes,
            "classes": [
                {
                    "certificate": cert.mask,
                    "labeled_graphs": size,
                    "edges": [list(e) for e in cert.to_graph().sorted_edges()],
                }
                for cert, size in zip(fiber.iso_classes, fiber.class_sizes)
            ],
        }
        target = str(distribution)
    _emit(document)

    if output_dir is not None:
        written = [_write_json(document, output_dir / "enumeration.json")]
        _write_manifest(args, config, output_dir, [target], None, written)
    return EXIT_OK


COMMANDS = {
    "cores": cmd_cores,
    "sample-fiber": cmd_sample_fiber,
    "simulate": cmd_simulate,
    "enumerate": cmd_enumerate,
}


if __name__ == "__main__":
    sys.exit(main())
