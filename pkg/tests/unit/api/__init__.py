# tests/unit/api/__init__.py
"""API tests package."""
