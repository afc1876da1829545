"""Operator module tests."""
