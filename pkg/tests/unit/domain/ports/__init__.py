"""Unit tests for domain ports."""
