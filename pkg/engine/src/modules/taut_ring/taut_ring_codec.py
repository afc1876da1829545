"""Parser for the textual form of surface classes.

Grammar (indices and divisor numbers are 1-based)::

    class   := "0" | ["-"] term (("+" | "-") term)*
    term    := factor ("*" factor)*
    factor  := INT ["/" INT] | "c_" IDX | "a" DIV "_" IDX | "D(" IDX "," IDX ")"

Examples: ``3/2*D(1,2)*c_3 - a1_2*c_1``, ``1``, ``-c_1 + c_2``. Inputs need not be
canonical; factors are multiplied in the ring so the result always is.
`SurfaceClass.to_text` produces the canonical spelling.
"""

import re
from fractions import Fraction

from src.core.exceptions import BadRequestException

from .taut_ring_model import SurfaceClass, divisor_label
from .taut_ring_service import TautologicalRing

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<number>\d+(?:/\d+)?)"
    r"|D\(\s*(?P<d1>\d+)\s*,\s*(?P<d2>\d+)\s*\)"
    r"|c_(?P<point>\d+)"
    r"|a(?P<div>\d+)_(?P<divat>\d+)"
    r"|(?P<op>[+\-*])"
    r")"
)


class ClassParseException(BadRequestException):
    """Raised when a surface-class string does not follow the grammar."""

    def __init__(self, text: str, position: int, reason: str):
        super().__init__(f"cannot parse {text!r} at offset {position}: {reason}")


def _tokenize(text: str) -> list[re.Match[str]]:
    tokens: list[re.Match[str]] = []
    position = 0
    stripped = text.rstrip()
    while position < len(stripped):
        match = _TOKEN.match(stripped, position)
        if match is None or match.end() == position:
            raise ClassParseException(text, position, "unexpected character")
        tokens.append(match)
        position = match.end()
    return tokens


def _max_index(tokens: list[re.Match[str]]) -> int:
    indices = [0]
    for token in tokens:
        for group in ("d1", "d2", "point", "divat"):
            if token.group(group):
                indices.append(int(token.group(group)))
    return max(indices)


def parse_class(ring: TautologicalRing, text: str, arity: int | None = None) -> SurfaceClass:
    """Parse ``text`` into a canonical class of the given arity.

    Args:
        ring: Ring whose lattice resolves divisor numbers.
        text: Class in the documented grammar.
        arity: Target arity; defaults to the largest index mentioned.

    Raises:
        ClassParseException: On a grammar violation or an index beyond ``arity``.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ClassParseException(text, 0, "empty input")
    k = _max_index(tokens) if arity is None else arity
    if _max_index(tokens) > k:
        raise ClassParseException(text, 0, f"index exceeds arity {k}")

    total = ring.zero(k)
    current: SurfaceClass | None = None
    sign = 1
    expect_factor = True
    for token in tokens:
        op = token.group("op")
        if op in ("+", "-"):
            if current is not None:
                if expect_factor:
                    raise ClassParseException(text, token.start(), "dangling '*'")
                total = total + current.scale(sign)
            elif not expect_factor or total.terms:
                raise ClassParseException(text, token.start(), "missing term")
            current, sign, expect_factor = None, (-1 if op == "-" else 1), True
            continue
        if op == "*":
            if expect_factor:
                raise ClassParseException(text, token.start(), "unexpected '*'")
            expect_factor = True
            continue
        if not expect_factor:
            raise ClassParseException(text, token.start(), "missing '*' between factors")
        factor = _factor(ring, token, k, text)
        current = factor if current is None else ring.mul(current, factor)
        expect_factor = False
    if current is None or expect_factor:
        raise ClassParseException(text, len(text), "unexpected end of input")
    return total + current.scale(sign)


def _factor(ring: TautologicalRing, token: re.Match[str], k: int, text: str) -> SurfaceClass:
    def index(group: str) -> int:
        value = int(token.group(group))
        if value < 1:
            raise ClassParseException(text, token.start(), "indices are 1-based")
        return value - 1

    if token.group("number") is not None:
        return ring.one(k).scale(Fraction(token.group("number")))
    if token.group("d1") is not None:
        return ring.diagonal(index("d1"), index("d2"), k)
    if token.group("point") is not None:
        return ring.point(index("point"), k)
    return ring.label(divisor_label(index("div")), index("divat"), k)
