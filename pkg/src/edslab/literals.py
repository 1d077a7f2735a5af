"""Parsing and formatting of curve and point literals.

Curve literal: ``[a1,a2,a3,a4,a6]`` with decimal integers.
Point literal: ``(x,y)`` with integers or ``num/den`` rationals, or ``O``.
"""

from fractions import Fraction

from .curves import IDENTITY, Point, WeierstrassCurve
from .errors import PreconditionError


class LiteralError(PreconditionError):
    def __init__(self, text, position, message):
        super().__init__(f"{message} in {text!r} at position {position}")
        self.position = position


def parse_curve(text, allow_singular=False):
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise LiteralError(text, 0, "curve literal must be bracketed")
    parts = s[1:-1].split(",")
    if len(parts) != 5:
        raise LiteralError(text, 1, "curve literal needs 5 coefficients")
    coeffs = []
    pos = 1
    for part in parts:
        try:
            coeffs.append(int(part.strip()))
        except ValueError:
            raise LiteralError(text, pos, f"bad integer {part.strip()!r}") from None
        pos += len(part) + 1
    return WeierstrassCurve(*coeffs, allow_singular=allow_singular)


def parse_point(text):
    s = text.strip()
    if s == "O":
        return IDENTITY
    if not (s.startswith("(") and s.endswith(")")):
        raise LiteralError(text, 0, "point literal must be parenthesized or 'O'")
    parts = s[1:-1].split(",")
    if len(parts) != 2:
        raise LiteralError(text, 1, "point literal needs 2 coordinates")
    coords = []
    pos = 1
    for part in parts:
        try:
            coords.append(Fraction(part.strip()))
        except (ValueError, ZeroDivisionError):
            raise LiteralError(text, pos, f"bad rational {part.strip()!r}") from None
        pos += len(part) + 1
    return Point(*coords)


def format_curve(curve):
    return "[" + ",".join(str(a) for a in curve.coefficients()) + "]"


def format_point(P):
    if P.is_identity:
        return "O"
    return f"({P.x},{P.y})"
