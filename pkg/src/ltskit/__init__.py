"""Exact verification engine for rank-2 exceptional symmetric space geometry."""

__version__ = "0.1.0"
