"""Ops action - list the library operations and the subcommand that exposes each."""

from typing import Any, Mapping

from pgraph.domain.model.config import RunConfig
from pgraph.registry import OP_REGISTRY


def handle(config: RunConfig) -> Mapping[str, Any]:
    by_command: dict[str, list[str]] = {}
    for op, command in sorted(OP_REGISTRY.items()):
        by_command.setdefault(command, []).append(op)
    return {"result": {"ops": dict(sorted(OP_REGISTRY.items())), "by_command": by_command}, "verified": None}
