"""Action modules for the pgraph subcommands.

Each module exports a `handle(config)` function that runs one subcommand and
returns a mapping with the `result` payload, the `verified` flag (None when
the subcommand only reports) and, where the subcommand produces per-vertex
data, `vertex_values` as a (labels, values) pair for CSV output.
"""
