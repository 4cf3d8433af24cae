"""Command-line entry points for pgraph."""
