"""Verification module tests."""
