"""Residue-class closed forms for ``S(p, q)``.

Rules are keyed by ``b = q mod p``.  ``b`` in ``{1, 2, 3, 4}`` gives
``S(p, q)`` directly; ``b`` in ``{p-1, ..., p-4}`` gives ``S(q-p, q)``,
which the dispatcher turns back into ``S(p, q)`` with the complement
identity.  The Corollary-1 family ships in two variants: ``printed`` as
typeset in the source (known to be wrong, kept so the harness can show it)
and ``corrected``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Callable, Optional

from .core import coprime_pair
from .errors import InvalidInput, NotApplicable
from .exact import rat_frac
from .fast import S_one

__all__ = [
    "Rule",
    "ClosedFormRule",
    "RULES",
    "S_one",
    "complement_S",
    "small_modulus_S",
    "small_numerator_S",
    "theorem2_S",
    "corollary1_S",
    "closed_form_rule",
    "closed_form_S",
]

F = Fraction


class Rule(str, Enum):
    S1Q = "S1Q"
    MOD1 = "MOD1"
    MOD2 = "MOD2"
    MOD3 = "MOD3"
    MOD4 = "MOD4"
    MODP1 = "MODP1"
    MODP2 = "MODP2"
    MODP3 = "MODP3"
    MODP4 = "MODP4"
    SMALLQ2 = "SMALLQ2"
    SMALLQ3 = "SMALLQ3"
    SMALLQ4 = "SMALLQ4"
    NUM2 = "NUM2"
    NUM3 = "NUM3"
    NUM4 = "NUM4"
    COMPLEMENT = "COMPLEMENT"


def complement_S(p, q, known_S) -> Fraction:
    """``S(q - p, q)`` from ``S(p, q)``."""
    p, q = coprime_pair(p, q)
    if p >= q:
        raise NotApplicable("complement needs p < q")
    return F(q - 1, 2) - F(known_S)


def _check_small(m: int, other: int) -> None:
    if m not in (2, 3, 4):
        raise InvalidInput("small modulus must be 2, 3 or 4")
    if other < 1 or gcd(m, other) != 1:
        raise InvalidInput(f"{other} must be a positive integer coprime to {m}")


def small_modulus_S(p: int, m: int) -> Fraction:
    """``S(p, m)`` for ``m`` in ``{2, 3, 4}``."""
    _check_small(m, p)
    if m == 2:
        return F(1, 4)
    if m == 3:
        return F(1, 3) * (2 - rat_frac(F(p, 3)))
    return 1 - F(1, 2) * rat_frac(F(p, 4))


def small_numerator_S(m: int, p: int) -> Fraction:
    """``S(m, p)`` for ``m`` in ``{2, 3, 4}`` and any ``p`` coprime to ``m``."""
    _check_small(m, p)
    if m == 2:
        return F(7 * p, 24) + F(5, 24 * p) - F(1, 2)
    if m == 3:
        return F(5 * p, 18) + F(5, 18 * p) + F(1, 3) * rat_frac(F(p, 3)) - F(2, 3)
    return F(13 * p, 48) + F(17, 48 * p) + F(1, 2) * rat_frac(F(p, 4)) - F(3, 4)


def _split(p, q) -> tuple[int, int, int]:
    p, q = coprime_pair(p, q)
    if p < 2 or p >= q:
        raise NotApplicable("residue-class formulas need 2 <= p < q")
    return p, q, q % p


def _core(p: int, q: int) -> Fraction:
    return F(p * p + q * q + 1, 12 * p * q)


def theorem2_S(p, q) -> Fraction:
    """``S(p, q)`` when ``q mod p`` is 1, 2, 3 or 4."""
    p, q, b = _split(p, q)
    x = _core(p, q) + F(q, 4)
    if b == 1:
        return x - F(p, 12) - F(1, 6 * p) - F(1, 4)
    if b == 2:
        return x - F(p, 24) - F(5, 24 * p) - F(1, 4)
    if b == 3:
        return x - F(p, 36) - F(5, 18 * p) - F(1, 3) * rat_frac(F(p, 3)) - F(1, 12)
    if b == 4:
        return x - F(p, 48) - F(17, 48 * p) - F(1, 2) * rat_frac(F(p, 4))
    raise NotApplicable(f"q mod p = {b} is not in 1..4")


def _corollary1_printed(p: int, q: int, k: int) -> Fraction:
    x = F(q, 4) - _core(p, q)
    if k == 1:
        return x + F(p, 12) + F(1, 6 * p) - F(1, 4)
    if k == 2:
        return x + F(p, 24) + F(5, 24 * p) - F(1, 4)
    if k == 3:
        return x + F(p, 36) + F(5, 18 * p) + F(1, 3) * rat_frac(F(p, 3)) - F(5, 12)
    return x + F(p, 48) + F(17, 48 * p) + F(1, 2) * rat_frac(F(p, 4)) - F(1, 2)


def _corollary1_corrected(p: int, q: int, k: int) -> Fraction:
    x = F(q, 4) - _core(p, q)
    if k == 1:
        return x - F(p, 12) - F(1, 6 * p) + F(1, 4)
    if k == 2:
        return x - F(p, 24) - F(5, 24 * p) + F(1, 4)
    if k == 3:
        return x - F(p, 36) - F(5, 18 * p) - F(1, 3) * rat_frac(F(p, 3)) + F(5, 12)
    return x - F(p, 48) - F(17, 48 * p) - F(1, 2) * rat_frac(F(p, 4)) + F(1, 2)


def corollary1_S(p, q, variant: str = "corrected") -> Fraction:
    """``S(q - p, q)`` when ``q mod p`` is ``p-1``, ``p-2``, ``p-3`` or ``p-4``.

    Note the left-hand side: the value returned is the sum at ``q - p``,
    not at ``p``.
    """
    p, q, b = _split(p, q)
    k = p - b
    if k not in (1, 2, 3, 4):
        raise NotApplicable(f"q mod p = {b} is not in p-4..p-1")
    if variant == "printed":
        return _corollary1_printed(p, q, k)
    if variant == "corrected":
        return _corollary1_corrected(p, q, k)
    raise InvalidInput(f"unknown variant {variant!r}")


@dataclass(frozen=True)
class ClosedFormRule:
    rule: Rule
    applies: Callable[[int, int], bool]
    evaluate: Callable[[int, int], Fraction]
    variant: Optional[str] = None


def _modp(k: int) -> ClosedFormRule:
    return ClosedFormRule(
        Rule(f"MODP{k}"),
        lambda p, q: 2 <= p < q and q % p == p - k,
        lambda p, q: complement_S(q - p, q, corollary1_S(p, q, "corrected")),
        "corrected",
    )


def _mod(k: int) -> ClosedFormRule:
    return ClosedFormRule(
        Rule(f"MOD{k}"),
        lambda p, q: 2 <= p < q and q % p == k,
        theorem2_S,
    )


def _smallq(m: int) -> ClosedFormRule:
    return ClosedFormRule(Rule(f"SMALLQ{m}"), lambda p, q: q == m, small_modulus_S)


# Dispatch order; the first applicable rule wins.  Pairs arrive with p
# already reduced mod q.
RULES: tuple[ClosedFormRule, ...] = (
    ClosedFormRule(Rule.S1Q, lambda p, q: p == 1 or q == 1, lambda p, q: S_one(q)),
    *(_smallq(m) for m in (2, 3, 4)),
    *(_mod(k) for k in (1, 2, 3, 4)),
    *(_modp(k) for k in (1, 2, 3, 4)),
)


def closed_form_rule(p, q=None) -> Optional[tuple[Rule, Fraction]]:
    """First matching ``(rule, value)`` for ``S(p, q)``, or ``None``."""
    p, q = coprime_pair(p, q)
    p %= q
    for rule in RULES:
        if rule.applies(p, q):
            return rule.rule, rule.evaluate(p, q)
    return None


def closed_form_S(p, q=None) -> Optional[Fraction]:
    hit = closed_form_rule(p, q)
    return None if hit is None else hit[1]
