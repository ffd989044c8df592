"""Exact arithmetic, configuration, parallel execution and reports."""
