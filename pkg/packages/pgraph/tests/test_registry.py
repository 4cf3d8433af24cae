import importlib

import pytest

from pgraph.domain.model.config import COMMANDS
from pgraph.registry import OP_REGISTRY


class TestRegistry:
    @pytest.mark.parametrize("path", sorted(OP_REGISTRY))
    def test_path_resolves_to_a_callable(self, path):
        module_name, _, attribute = path.rpartition(".")

        assert callable(getattr(importlib.import_module(module_name), attribute))

    def test_every_op_maps_to_a_subcommand(self):
        assert set(OP_REGISTRY.values()) <= set(COMMANDS)

    def test_every_graph_command_exposes_an_op(self):
        assert set(COMMANDS) - set(OP_REGISTRY.values()) <= {"ops"}
