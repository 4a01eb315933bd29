"""Subcommands, one module per command group."""
