"""Run one subcommand from a RunConfig and render its report."""

import json
from typing import Any, Callable, Mapping, Optional

from pydantic import ValidationError

from common.logging import get_logger
from pgraph import __version__
from pgraph.actions import (
    apply,
    capacity,
    energy,
    gsr,
    hardy,
    harnack,
    ineq_scan,
    liouville,
    model_check,
    null_seq,
    ops,
    picone,
)
from pgraph.actions.inputs import finite_or_none
from pgraph.adapter.persistence.graph_files import vertex_values_csv
from pgraph.domain.model.config import RunConfig
from pgraph.exceptions import ConfigError, ExponentError, PGraphError

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2

COMMAND_DISPATCH: dict[str, Callable[[RunConfig], Mapping[str, Any]]] = {
    "apply": apply.handle,
    "energy": energy.handle,
    "gsr": gsr.handle,
    "picone": picone.handle,
    "capacity": capacity.handle,
    "null-seq": null_seq.handle,
    "harnack": harnack.handle,
    "hardy": hardy.handle,
    "liouville": liouville.handle,
    "ineq-scan": ineq_scan.handle,
    "model-check": model_check.handle,
    "ops": ops.handle,
}


def render(report: Mapping[str, Any]) -> str:
    """Sorted-key JSON; the same report always renders to the same bytes."""
    return json.dumps(report, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _report(config: RunConfig, result: Any, verified: Optional[bool], failure: Optional[dict] = None) -> dict:
    report = {
        "command": config.command,
        "config": config.model_dump(mode="json"),
        "version": __version__,
        "result": result,
        "verified": verified,
    }
    if failure is not None:
        report["failure"] = failure
    return report


def _failure(error: Exception) -> dict[str, str]:
    return {"error": type(error).__name__, "message": str(error)}


def run(config: RunConfig) -> tuple[int, str]:
    """Run the subcommand named by config.

    Returns:
        (exit status, artifact text): 0 on success, 1 on a verification failure
        or a failed library hypothesis, 2 on a usage error. The artifact is the
        JSON report, or the vertex-value CSV for --format csv.
    """
    action = COMMAND_DISPATCH[config.command]
    logger.info("Running subcommand", extra={"command": config.command, "p": config.p})
    try:
        outcome = action(config)
    except (ConfigError, ExponentError, OSError, ValidationError) as e:
        logger.warning("Invalid invocation", extra={"command": config.command, "error": str(e)})
        return EXIT_USAGE, render(_report(config, None, None, _failure(e)))
    except PGraphError as e:
        logger.warning("Library check failed", extra={"command": config.command, "error": str(e)})
        return EXIT_VERIFICATION_FAILED, render(_report(config, None, False, _failure(e)))

    verified = outcome.get("verified")
    status = EXIT_VERIFICATION_FAILED if verified is False else EXIT_OK
    if verified is False:
        logger.warning("Verification failed", extra={"command": config.command})

    if config.format == "csv":
        if "vertex_values" not in outcome:
            error = ConfigError(f"{config.command} produces no per-vertex values for csv output")
            return EXIT_USAGE, render(_report(config, None, None, _failure(error)))
        labels, values = outcome["vertex_values"]
        return status, vertex_values_csv(labels, values)

    return status, render(_report(config, finite_or_none(outcome["result"]), verified))
