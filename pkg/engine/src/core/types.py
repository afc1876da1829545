from fractions import Fraction
from typing import Annotated

from pydantic import BeforeValidator


def _to_fraction(value: object) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int | str):
        return Fraction(value)
    raise ValueError(f"{value!r} is not an exact rational (use an int or 'p/q')")


Rational = Annotated[Fraction, BeforeValidator(_to_fraction)]
"""Exact rational, accepted as an int, a Fraction or a ``"p/q"`` string."""
