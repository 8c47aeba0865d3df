"""Definitions and brute-force oracles.

Everything here is O(q) and deliberately naive: it is the ground truth the
recursive and closed-form evaluators are checked against.  The inner loops
run on plain integers; a single ``Fraction`` is built at the end.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import NamedTuple

from .errors import InvalidInput, NotApplicable
from .exact import rat_frac

__all__ = [
    "CoprimePair",
    "EuclidSplit",
    "coprime_pair",
    "sawtooth_B1",
    "numerator_N",
    "naive_S",
    "naive_s",
    "residue_split",
]


class CoprimePair(NamedTuple):
    p: int
    q: int


class EuclidSplit(NamedTuple):
    """``q == a*p + b`` with ``1 <= b <= p - 1``."""

    a: int
    b: int


def coprime_pair(p, q=None) -> CoprimePair:
    """Validate and wrap ``(p, q)``.  Values are stored unreduced."""
    if q is None:
        p, q = p
    if isinstance(p, bool) or isinstance(q, bool):
        raise InvalidInput("p and q must be integers")
    if not isinstance(p, int) or not isinstance(q, int):
        raise InvalidInput("p and q must be integers")
    if p < 1 or q < 1:
        raise InvalidInput("p and q must be positive")
    if gcd(p, q) != 1:
        raise InvalidInput("p and q must be coprime")
    return CoprimePair(p, q)


def sawtooth_B1(x) -> Fraction:
    # Zero at integers; the sums never evaluate it there.
    f = rat_frac(x)
    if f == 0:
        return Fraction(0)
    return f - Fraction(1, 2)


def numerator_N(p, q=None) -> int:
    """``N = sum r * (r*p mod q)`` for ``r = 1..q-1``, so that ``S(p, q) = N / q**2``."""
    p, q = coprime_pair(p, q)
    p %= q
    return sum(r * (r * p % q) for r in range(1, q))


def naive_S(p, q=None) -> Fraction:
    p, q = coprime_pair(p, q)
    return Fraction(numerator_N(p, q), q * q)


def naive_s(p, q=None) -> Fraction:
    """Classical sum ``sum B1(r/q) B1(rp/q)``, accumulated over integers.

    With ``u = r`` and ``v = rp mod q`` both in ``1..q-1`` the summand is
    ``(2u - q)(2v - q) / (4 q**2)``.
    """
    p, q = coprime_pair(p, q)
    p %= q
    total = sum((2 * r - q) * (2 * (r * p % q) - q) for r in range(1, q))
    return Fraction(total, 4 * q * q)


def residue_split(p, q=None) -> EuclidSplit:
    p, q = coprime_pair(p, q)
    if p < 2 or p >= q:
        raise NotApplicable("Euclidean split needs 2 <= p < q")
    a, b = divmod(q, p)
    return EuclidSplit(a, b)
