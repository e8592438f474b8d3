"""Integration tests for fluctwell."""
