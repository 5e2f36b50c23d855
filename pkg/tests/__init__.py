# tests - mellinkit test suite
"""Test suite for the mellinkit symbol calculus and operator lab."""
