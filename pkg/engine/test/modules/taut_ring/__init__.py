"""Tautological ring module tests."""
