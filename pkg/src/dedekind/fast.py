"""Logarithmic-time evaluation through the reciprocity law.

``S(p, q) + S(q, p)`` is a known rational in ``p`` and ``q``, and
``S(q, p) == S(q mod p, p)``, so walking the Euclidean remainder chain of
``(p, q)`` reduces any pair to ``S(1, q')`` in O(log min(p, q)) steps.
The walk is a loop with an alternating sign, never a recursion.
"""

from __future__ import annotations

from fractions import Fraction

from .core import coprime_pair
from .errors import InvalidInput

__all__ = ["reciprocity_rhs", "s_reciprocity_rhs", "S_one", "fast_S", "fast_S_traced", "fast_s"]

_THREE_QUARTERS = Fraction(3, 4)


def reciprocity_rhs(p, q=None) -> Fraction:
    """``(p^2 + q^2 + 1)/(12pq) + (p + q)/4 - 3/4``."""
    p, q = coprime_pair(p, q)
    return Fraction(p * p + q * q + 1, 12 * p * q) + Fraction(p + q, 4) - _THREE_QUARTERS


def s_reciprocity_rhs(p, q=None) -> Fraction:
    p, q = coprime_pair(p, q)
    return Fraction(p * p + q * q - 3 * p * q + 1, 12 * p * q)


def S_one(q: int) -> Fraction:
    """``S(1, q) = (q-1)(2q-1)/(6q)``."""
    if q < 1:
        raise InvalidInput("q must be positive")
    return Fraction((q - 1) * (2 * q - 1), 6 * q)


def fast_S_traced(p, q=None, *, base: str = "p1") -> tuple[Fraction, int]:
    """Return ``(S(p, q), depth)`` where depth counts the loop iterations.

    ``base="p1"`` stops at a pair ``(1, q')`` and closes with ``S_one``;
    ``base="q1"`` keeps applying reciprocity until the modulus is 1, where
    the sum is empty.
    """
    p, q = coprime_pair(p, q)
    if base not in ("p1", "q1"):
        raise ValueError(f"unknown base case {base!r}")
    p %= q
    acc = Fraction(0)
    sign = 1
    depth = 0
    while q > 1:
        depth += 1
        if p == 1 and base == "p1":
            return acc + sign * S_one(q), depth
        acc += sign * (Fraction(p * p + q * q + 1, 12 * p * q) + Fraction(p + q, 4) - _THREE_QUARTERS)
        sign = -sign
        p, q = q % p, p
    return acc, depth


def fast_S(p, q=None) -> Fraction:
    return fast_S_traced(p, q)[0]


def fast_s(p, q=None) -> Fraction:
    p, q = coprime_pair(p, q)
    return fast_S(p, q) - Fraction(q - 1, 4)
