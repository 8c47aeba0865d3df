"""Exact rationals.

``fractions.Fraction`` already keeps values reduced with a positive
denominator, so it is the value type everywhere.  The helpers here add the
floor / fractional-part conventions the sums rely on and the two output
renderings (plain text and JSON).
"""

from fractions import Fraction

from .errors import InvalidInput

Rational = Fraction

__all__ = [
    "Rational",
    "rat_make",
    "rat_arith",
    "rat_floor",
    "rat_frac",
    "render",
    "to_json",
    "from_json",
]


def rat_make(num: int, den: int = 1) -> Fraction:
    if den == 0:
        raise InvalidInput("zero denominator")
    return Fraction(num, den)


def rat_arith(op: str, x: Fraction, y: Fraction) -> Fraction:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if y == 0:
            raise InvalidInput("division by zero")
        return x / y
    raise InvalidInput(f"unknown operation {op!r}")


def rat_floor(x) -> int:
    # Fraction.__floor__ is a true floor (floor(-1/2) == -1), not truncation.
    if isinstance(x, int):
        return x
    return x.numerator // x.denominator


def rat_frac(x) -> Fraction:
    """Fractional part ``x - floor(x)``, always in ``[0, 1)``."""
    x = Fraction(x)
    return Fraction(x.numerator % x.denominator, x.denominator)


def render(x) -> str:
    """Canonical text form: ``10/7``, ``-1/14``, ``0``."""
    if isinstance(x, tuple):
        return "[" + " ".join(render(v) for v in x) + "]"
    return str(Fraction(x))


def to_json(x):
    """JSON form with decimal-string components (values outgrow 64 bits)."""
    if isinstance(x, tuple):
        return [to_json(v) for v in x]
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def from_json(obj) -> Fraction:
    if isinstance(obj, list):
        return tuple(from_json(v) for v in obj)
    if not isinstance(obj, dict) or set(obj) != {"num", "den"}:
        raise InvalidInput(f"not a rational: {obj!r}")
    return rat_make(int(obj["num"]), int(obj["den"]))

