"""Presentation layer - command line and HTTP surfaces."""
