"""CLI package for fluctwell."""
