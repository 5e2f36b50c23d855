# tests/unit/core - Core module unit tests
"""Unit tests for mellinkit core modules."""
