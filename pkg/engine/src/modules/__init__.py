"""Package initializer for engine modules.

Each subpackage pairs a ``*_model.py`` (value types) with one or more
``*_service.py`` files (operations). Dependencies only point downwards:
taut_ring ← fock ← operators ← verify.
"""
