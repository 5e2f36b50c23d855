# tests/unit - Unit tests
"""Unit tests for mellinkit modules."""
