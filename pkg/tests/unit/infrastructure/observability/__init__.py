"""Unit tests for observability infrastructure."""
