"""Observability adapters."""
