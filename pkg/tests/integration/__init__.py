# tests/integration - Integration tests
"""Integration tests for mellinkit."""
