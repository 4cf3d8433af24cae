#!/usr/bin/env python3
"""
Run pgraph operations from the command line.

Usage:
    uv run pgraph <command> [--graph FILE | --model NAME --radius N] [options]

Commands:
    apply        - Hf on the interior, edge fluxes, Green's formula against phi
    energy       - h(f) with its per-edge breakdown
    gsr          - ground state representation: both sides and simplified energies
    picone       - Picone residual h(u phi) - <Hu, u|phi|^p>
    capacity     - variational capacity at the root
    null-seq     - capacity trends over a model exhaustion (--check selects the test)
    harnack      - local Harnack constant on K, verified against u
    hardy        - Hardy weight of a positive superharmonic u
    liouville    - Liouville comparison against the scaled graph
    ineq-scan    - scalar inequalities: grid scans, constants, pointwise checks
    model-check  - window invariants of a model family
    ops          - list library operations by subcommand

Reports are printed as sorted-key JSON (or label,value CSV with --format csv).
Exit status: 0 ok, 1 verification failure, 2 usage error.
"""

from pathlib import Path
from typing import Any, Callable, Optional, get_args

import click
from pydantic import ValidationError

from common.logging import setup_logging
from pgraph import __version__
from pgraph.domain.model.config import CHECKS, COMMANDS, INEQ_KERNELS, ModelFamily, RunConfig
from pgraph.runner import run

HELP = {
    "apply": "Evaluate Hf on the interior, the edge fluxes and Green's formula.",
    "energy": "Evaluate the energy functional h(f).",
    "gsr": "Check the ground state representation for u and phi.",
    "picone": "Check Picone's inequality for u and phi.",
    "capacity": "Compute the variational capacity at the root.",
    "null-seq": "Search null sequences over a model exhaustion.",
    "harnack": "Compute (and verify) the local Harnack constant on K.",
    "hardy": "Build and test the Hardy weight of u.",
    "liouville": "Run the Liouville comparison against b~ = scale * b.",
    "ineq-scan": "Scan or check the scalar inequalities.",
    "model-check": "Check window invariants of a model family.",
    "ops": "List library operations and the subcommand exposing each.",
}


def _split(cast: Callable[[str], Any]) -> Callable[[click.Context, click.Parameter, Optional[str]], Any]:
    """Callback turning "a,b,c" into a list."""

    def parse(ctx: click.Context, param: click.Parameter, value: Optional[str]):
        if value is None:
            return None
        try:
            return [cast(item.strip()) for item in value.split(",") if item.strip()]
        except ValueError as e:
            raise click.BadParameter(str(e)) from e

    return parse


SHARED_OPTIONS = [
    click.option("--graph", type=click.Path(exists=True, dir_okay=False, path_type=Path), help="Graph file (json or tsv)"),
    click.option("--vertices", type=click.Path(exists=True, dir_okay=False, path_type=Path), help="Sidecar vertex file"),
    click.option(
        "--model",
        type=click.Choice(get_args(ModelFamily)),
        help="Built-in model family",
    ),
    click.option("--radius", type=int, help="Model window radius"),
    click.option("--weights", callback=_split(float), help="Comma separated weighted_line weights"),
    click.option("--potential", type=float, help="Uniform model potential c"),
    click.option("--p", "p", type=float, help="Exponent p"),
    click.option("--root", help="Root / pinned vertex label"),
    click.option("--subset", callback=_split(str), help="Comma separated labels of V or K"),
    click.option("--u", "u", type=click.Choice(["hardy", "const", "file"]), help="Choice of u"),
    click.option("--u-file", type=click.Path(exists=True, dir_okay=False, path_type=Path), help="label,value file"),
    click.option("--u-const", type=float, help="Value of u for --u const"),
    click.option("--phi", type=click.Choice(["random", "file"]), help="Choice of phi"),
    click.option("--phi-file", type=click.Path(exists=True, dir_okay=False, path_type=Path), help="label,value file"),
    click.option("--seed", type=int, help="Seed for random phi, batteries and restarts"),
    click.option("--tol", type=float, help="Verification tolerance"),
    click.option("--radii", callback=_split(int), help="Comma separated exhaustion radii"),
    click.option("--alpha", type=float, help="Null-sequence scale or Liouville constant alpha"),
    click.option("--beta", type=float, help="Liouville constant beta"),
    click.option("--tilde-scale", type=float, help="Comparison weights b~ = scale * b"),
    click.option("--f-const", type=float, help="Constant f in Hu >= f u^{p-1}"),
    click.option("--kernel", type=click.Choice(INEQ_KERNELS), help="Inequality kernel"),
    click.option("--point", callback=_split(float), help="Single point x,y for a pointwise check"),
    click.option("--constant", type=float, help="Constant C for the ineq1 kernel"),
    click.option(
        "--check",
        type=click.Choice(sorted({c for checks in CHECKS.values() for c in checks})),
        help="Test to run (null-seq, harnack, ineq-scan)",
    ),
    click.option("--samples", type=int, help="Random test functions in the Hardy battery"),
    click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write the report here"),
    click.option("--format", "format", type=click.Choice(["json", "csv"]), help="Report format"),
]


def shared_options(command: Callable) -> Callable:
    for option in reversed(SHARED_OPTIONS):
        command = option(command)
    return command


def _validation_message(error: ValidationError) -> str:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first["loc"])
    return f"{location}: {first['msg']}" if location else first["msg"]


def _invoke(ctx: click.Context, command: str, options: dict[str, Any]) -> None:
    try:
        config = RunConfig(command=command, **{key: value for key, value in options.items() if value is not None})
    except ValidationError as e:
        raise click.UsageError(_validation_message(e), ctx=ctx) from e

    status, text = run(config)
    if config.out is not None:
        config.out.write_text(text)
    else:
        click.echo(text, nl=False)
    ctx.exit(status)


@click.group()
@click.version_option(version=__version__)
@click.option("--log-level", default=None, help="DEBUG, INFO, WARNING, ERROR (default PGRAPH_LOG_LEVEL)")
@click.option("--log-format", type=click.Choice(["json", "text"]), default=None, help="Log record format")
def cli(log_level: Optional[str], log_format: Optional[str]):
    """p-Schrödinger operators on weighted graphs."""
    setup_logging(log_level, log_format)


def _register(name: str) -> None:
    @cli.command(name=name, help=HELP[name])
    @shared_options
    @click.pass_context
    def command(ctx: click.Context, **options: Any):
        _invoke(ctx, name, options)


for _name in COMMANDS:
    _register(_name)


if __name__ == "__main__":
    cli()
