"""Fock space module tests."""
