"""Logging and environment settings shared by the pgraph library and CLI."""
