"""
intersecting-lab command line

Commands: enumerate, star-property, max-intersecting, graph-star-property,
compress, verify and weighted-pair. Every command builds a RunConfig, and run() validates it,
executes it and renders the report.

Exit codes:
    0  success, or every suite claim verified
    1  usage, format, domain or guard error ({"error": {...}} with --format json)
    2  a theorem suite was falsified (the report carries the witness)
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

import typer

from .commands import (
    TARGETS,
    compress_report,
    enumerate_report,
    error_document,
    graph_star_property_report,
    max_intersecting_report,
    read_family_document,
    read_graph_document,
    read_weights_document,
    resolve_weights,
    star_property_report,
    suites_report,
    verify_report,
    weighted_pair_report,
)
from .config import SearchGuards, json_errors_enabled, load_lab_config, log_level_value
from .exceptions import LabError, UsageError
from .reports import REPORT_FORMATS, Report, render
from .search.suites import SUITES, SuiteOptions
from .utils.logging_config import log_dict, setup_file_logging

logger = logging.getLogger(__name__)

COMMANDS = (
    "enumerate",
    "star-property",
    "max-intersecting",
    "graph-star-property",
    "compress",
    "verify",
    "weighted-pair",
)
MAX_SEED = (1 << 64) - 1


@dataclass
class RunConfig:
    """One validated command invocation."""

    command: str
    guards: SearchGuards
    n: int | None = None
    r: int | None = None
    k: int | None = None
    n_max: int | None = None
    target: str | None = None
    suite: str | None = None
    list_suites: bool = False
    output_format: str = "json"
    query: str | None = None
    seed: int = 0
    trials: int = 0
    samples: int | None = None
    max_members: int | None = None
    in_path: Path | None = None
    out: Path | None = None
    order: str | None = None
    mode: str = "exhaustive"
    a: str | None = None
    b: str | None = None
    proof_r: int | None = None
    weights_path: Path | None = None
    trace: bool = False
    check_reduction: bool = False

    def validate(self) -> None:
        """
        Reject invalid flag values and combinations.

        Raises:
            UsageError: Naming the offending flag
        """
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        self.output_format = self.output_format.lower()
        if self.output_format not in REPORT_FORMATS:
            raise UsageError(f"must be one of {', '.join(REPORT_FORMATS)}", flag="--format")
        if self.query is not None and self.output_format not in ("json", "yaml"):
            raise UsageError("only applies to json or yaml output", flag="--query")
        for flag, value in (("--n", self.n), ("--r", self.r), ("--k", self.k)):
            if value is not None and value < 0:
                raise UsageError("must be non-negative", flag=flag)
        if self.n_max is not None and self.n_max < 1:
            raise UsageError("must be at least 1", flag="--n-max")
        if not 0 <= self.seed <= MAX_SEED:
            raise UsageError("must be a 64-bit unsigned integer", flag="--seed")
        if self.trials < 0:
            raise UsageError("must be non-negative", flag="--trials")
        if self.samples is not None and self.samples < 1:
            raise UsageError("must be at least 1", flag="--samples")
        if self.max_members is not None and self.max_members < 1:
            raise UsageError("must be at least 1", flag="--max-members")
        if self.target is not None and self.target not in TARGETS:
            raise UsageError(f"must be one of {', '.join(TARGETS)}", flag="--target")

        if self.command in ("enumerate", "star-property") and self.target is None:
            raise UsageError(f"required by {self.command}", flag="--target")
        if self.command == "max-intersecting":
            if (self.target is None) == (self.in_path is None):
                raise UsageError("give exactly one of --target and --in", flag="--in")
            if self.in_path is not None and any(v is not None for v in (self.n, self.r, self.k)):
                raise UsageError("--n/--r/--k only apply with --target", flag="--in")
        if self.command == "compress" and self.in_path is None:
            raise UsageError("required by compress", flag="--in")
        if self.command == "graph-star-property":
            if self.in_path is None:
                raise UsageError("required by graph-star-property", flag="--in")
            if self.r is None:
                raise UsageError("required by graph-star-property", flag="--r")
        if self.command == "verify":
            if self.list_suites == (self.suite is not None):
                raise UsageError("give exactly one of --suite and --list", flag="--suite")
            if self.suite is not None and self.suite not in SUITES:
                raise UsageError(f"must be one of {', '.join(SUITES)}", flag="--suite")
        if self.command == "weighted-pair":
            if self.weights_path is not None and any(
                v is not None for v in (self.a, self.b, self.proof_r)
            ):
                raise UsageError("cannot be combined with --a, --b or --proof-r", flag="--weights")
            if self.n is None and self.weights_path is None:
                raise UsageError("required by weighted-pair unless --weights is given", flag="--n")
            if self.mode not in ("exhaustive", "sampled"):
                raise UsageError("must be exhaustive or sampled", flag="--mode")


def _read_input(path: Path, flag: str = "--in") -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}", flag=flag) from e


def _parse_order(text: str) -> list[tuple[int, int]]:
    """"1,2;1,3;2,2" -> [(1, 2), (1, 3), (2, 2)]"""
    factors = []
    for chunk in text.split(";"):
        parts = chunk.strip().split(",")
        if len(parts) != 2 or not all(part.strip().isdigit() for part in parts):
            raise UsageError(f"malformed factor {chunk!r}, expected i,j", flag="--order")
        factors.append((int(parts[0]), int(parts[1])))
    return factors


def _split_weights(text: str | None) -> list[str] | None:
    return None if text is None else [part.strip() for part in text.split(",")]


def build_report(config: RunConfig) -> Report:
    """Execute a validated RunConfig."""
    command = config.command
    if command == "enumerate":
        return enumerate_report(config.target, config.n, config.r, config.k, config.guards)
    if command == "star-property":
        return star_property_report(
            config.target, config.n, config.r, config.k, config.guards, config.max_members
        )
    if command == "max-intersecting":
        if config.in_path is not None:
            family, layout = read_family_document(_read_input(config.in_path))
            return max_intersecting_report(family, layout, config.max_members)
        # --target reuses the star-property pipeline and its closed forms
        report = star_property_report(
            config.target, config.n, config.r, config.k, config.guards, config.max_members
        )
        report.kind = "max-intersecting"
        return report
    if command == "graph-star-property":
        graph = read_graph_document(_read_input(config.in_path))
        return graph_star_property_report(graph, config.r, config.guards, config.max_members)
    if command == "compress":
        order = None if config.order is None else _parse_order(config.order)
        return compress_report(_read_input(config.in_path), order=order)
    if command == "verify":
        if config.list_suites:
            return suites_report()
        options = SuiteOptions(
            n_max=config.n_max,
            seed=config.seed,
            trials=config.trials,
            max_members=config.max_members or config.guards["max_members"],
        )
        if config.samples is not None:
            options.samples = config.samples
        return verify_report(config.suite, options)

    if config.weights_path is not None:
        a, b = read_weights_document(_read_input(config.weights_path, flag="--weights"))
        if config.n is not None and config.n != a.n:
            raise UsageError(f"weights file is for n={a.n}", flag="--n")
        n = a.n
    else:
        a, b = resolve_weights(
            config.n, _split_weights(config.a), _split_weights(config.b), config.proof_r
        )
        n = config.n
    return weighted_pair_report(
        n,
        a,
        b,
        mode=config.mode,
        seed=config.seed if config.mode == "sampled" else None,
        trials=config.trials,
        trace=config.trace,
        check_reduction=config.check_reduction,
    )


def run(config: RunConfig) -> int:
    """
    Validate, execute and print one command.

    Returns:
        The process exit code
    """
    logger.info(f"run {config.command}: format={config.output_format}")
    try:
        config.validate()
        report = build_report(config)
        output = render(report, config.output_format, config.query)
    except LabError as e:
        logger.error(f"{config.command} failed: {type(e).__name__}: {e}")
        if config.output_format == "json" or json_errors_enabled():
            typer.echo(json.dumps(error_document(e), indent=2))
        else:
            typer.echo(f"error: {e}", err=True)
        return 1

    if config.out is not None:
        config.out.parent.mkdir(parents=True, exist_ok=True)
        config.out.write_text(output, encoding="utf-8")
    typer.echo(output, nl=False)

    if not report.passed:
        logger.error(f"{config.command}: report falsified")
        return 2
    return 0


app = typer.Typer(
    help="Exact search and proof replay for intersecting set families.",
    no_args_is_help=True,
    add_completion=False,
)

FormatOption = typer.Option("json", "--format", help="json, csv, text or yaml")
QueryOption = typer.Option(None, "--query", help="JMESPath filter (json/yaml only)")
OutOption = typer.Option(None, "--out", help="Also write the report to this path")
TargetOption = typer.Option(None, "--target", help="knr, lnk, itn or powerset")
MaxMembersOption = typer.Option(None, "--max-members", help="Search guard override")


@app.callback()
def main() -> None:
    """Configure file logging before any command runs."""
    lab_config = load_lab_config()
    setup_file_logging(lab_config["log_file"], level=log_level_value(lab_config))
    log_dict(logger, "Lab configuration:", dict(lab_config), level=logging.DEBUG)


def _config(
    command: str, seed: int | None = None, trials: int | None = None, **flags: Any
) -> RunConfig:
    """A RunConfig with configuration defaults behind the command-line flags."""
    lab_config = load_lab_config()
    return RunConfig(
        command=command,
        guards=lab_config["guards"],
        seed=lab_config["default_seed"] if seed is None else seed,
        trials=lab_config["default_trials"] if trials is None else trials,
        **flags,
    )


@app.command("enumerate")
def enumerate_command(
    target: Optional[str] = TargetOption,
    n: Optional[int] = typer.Option(None, "--n"),
    r: Optional[int] = typer.Option(None, "--r"),
    k: Optional[int] = typer.Option(None, "--k"),
    output_format: str = FormatOption,
    query: Optional[str] = QueryOption,
    out: Optional[Path] = OutOption,
) -> None:
    """Enumerate a family; --format text gives a loadable family file."""
    config = _config(
        "enumerate",
        target=target,
        n=n,
        r=r,
        k=k,
        output_format=output_format,
        query=query,
        out=out,
    )
    raise typer.Exit(code=run(config))


@app.command("star-property")
def star_property_command(
    target: Optional[str] = TargetOption,
    n: Optional[int] = typer.Option(None, "--n"),
    r: Optional[int] = typer.Option(None, "--r"),
    k: Optional[int] = typer.Option(None, "--k"),
    max_members: Optional[int] = MaxMembersOption,
    output_format: str = FormatOption,
    query: Optional[str] = QueryOption,
    out: Optional[Path] = OutOption,
) -> None:
    """Decide the star property of a family by exact search."""
    config = _config(
        "star-property",
        target=target,
        n=n,
        r=r,
        k=k,
        max_members=max_members,
        output_format=output_format,
        query=query,
        out=out,
    )
    raise typer.Exit(code=run(config))


@app.command("max-intersecting")
def max_intersecting_command(
    target: Optional[str] = TargetOption,
    n: Optional[int] = typer.Option(None, "--n"),
    r: Optional[int] = typer.Option(None, "--r"),
    k: Optional[int] = typer.Option(None, "--k"),
    in_path: Optional[Path] = typer.Option(None, "--in", help="Family file"),
    max_members: Optional[int] = MaxMembersOption,
    output_format: str = FormatOption,
    query: Optional[str] = QueryOption,
    out: Optional[Path] = OutOption,
) -> None:
    """Largest intersecting subfamily of an enumerated or loaded family."""
    config = _config(
        "max-intersecting",
        target=target,
        n=n,
        r=r,
        k=k,
        in_path=in_path,
        max_members=max_members,
        output_format=output_format,
        query=query,
        out=out,
    )
    raise typer.Exit(code=run(config))


@app.command("graph-star-property")
def graph_star_property_command(
    in_path: Optional[Path] = typer.Option(None, "--in", help="Graph file (vertices=<m>)"),
    r: Optional[int] = typer.Option(None, "--r"),
    max_members: Optional[int] = MaxMembersOption,
    output_format: str = FormatOption,
    query: Optional[str] = QueryOption,
    out: Optional[Path] = OutOption,
) -> None:
    """Star property of the r-element independent sets of a graph, next to mu(G)."""
    config = _config(
        "graph-star-property",
        in_path=in_path,
        r=r,
        max_members=max_members,
        output_format=output_format,
        query=query,
        out=out,
    )
    raise typer.Exit(code=run(config))


@app.command("compress")
def compress_command(
    in_path: Optional[Path] = typer.Option(None, "--in", help="Labeled or claw family file"),
    order: Optional[str] = typer.Option(None, "--order", help='Delta factors, e.g. "1,2;2,2"'),
    output_format: str = FormatOption,
    query: Optional[str] = QueryOption,
    out: Optional[Path] = OutOption,
) -> None:
    """Compress a labeled family with every Delta_{i,j}, or a claw family with Gamma."""
    config = _config(
        "compress",
        in_path=in_path,
        order=order,
        output_format=output_format,
        query=query,
        out=out,
    )
    raise typer.Exit(code=run(config))


@app.command("verify")
def verify_command(
    suite: Optional[str] = typer.Option(None, "--suite"),
    list_suites: bool = typer.Option(False, "--list", help="List the suites"),
    n_max: Optional[int] = typer.Option(None, "--n-max"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    trials: Optional[int] = typer.Option(None, "--trials"),
    samples: Optional[int] = typer.Option(None, "--samples"),
    max_members: Optional[int] = MaxMembersOption,
    output_format: str = FormatOption,
    query: Optional[str] = QueryOption,
    out: Optional[Path] = OutOption,
) -> None:
    """Run a theorem suite; exit 2 when one of its claims is falsified."""
    config = _config(
        "verify",
        seed=seed,
        trials=trials,
        suite=suite,
        list_suites=list_suites,
        n_max=n_max,
        samples=samples,
        max_members=max_members,
        output_format=output_format,
        query=query,
        out=out,
    )
    raise typer.Exit(code=run(config))


@app.command("weighted-pair")
def weighted_pair_command(
    n: Optional[int] = typer.Option(None, "--n"),
    a: Optional[str] = typer.Option(None, "--a", help='a_0..a_n, e.g. "3,2,1,0"'),
    b: Optional[str] = typer.Option(None, "--b", help='b_0..b_n, e.g. "0,1,0,0"'),
    proof_r: Optional[int] = typer.Option(None, "--proof-r"),
    weights_path: Optional[Path] = typer.Option(
        None, "--weights", help="Weight pair file (JSON mirror or two text vectors)"
    ),
    mode: str = typer.Option("exhaustive", "--mode", help="exhaustive or sampled"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    trials: Optional[int] = typer.Option(None, "--trials"),
    trace: bool = typer.Option(False, "--trace", help="Replay the proof on sampled pairs"),
    check_reduction: bool = typer.Option(False, "--check-reduction"),
    output_format: str = FormatOption,
    query: Optional[str] = QueryOption,
    out: Optional[Path] = OutOption,
) -> None:
    """Best weighted cross-intersecting pair, against the star value."""
    config = _config(
        "weighted-pair",
        seed=seed,
        trials=trials,
        n=n,
        a=a,
        b=b,
        proof_r=proof_r,
        weights_path=weights_path,
        mode=mode,
        trace=trace,
        check_reduction=check_reduction,
        output_format=output_format,
        query=query,
        out=out,
    )
    raise typer.Exit(code=run(config))


if __name__ == "__main__":
    app()
