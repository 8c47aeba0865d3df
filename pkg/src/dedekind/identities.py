"""Exact checks of the identities behind the reciprocity law and the closed forms.

Each identity is a pair of independent evaluators.  The left side is
computed by direct summation (literal loops, or the brute-force oracles in
``core``); the right side from the closed expression, using ``fast`` and
``closed`` for any Dedekind sum it mentions.  Neither side may borrow from
the other's module, so a shared bug cannot certify itself.

A handful of checks compare tuples instead of single rationals: the two
evaluations of ``sum B1(rp/q)^2``, the probe-constancy of the Corollary-3
polynomial, and its interpolated coefficients.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Iterator, Optional, Sequence

from . import closed, fast
from .core import coprime_pair, naive_S, naive_s
from .exact import render, to_json

F = Fraction

__all__ = [
    "IdentityId",
    "CheckResult",
    "CheckReport",
    "DEFAULT_IDENTITIES",
    "PRINTED_ERRATA",
    "check_identity",
    "equa0_rhs",
    "poly_coeffs",
    "sweep",
    "parse_identities",
]


class IdentityId(str, Enum):
    SUM1 = "SUM1"
    SUM2 = "SUM2"
    B1_ZERO_SUM = "B1_ZERO_SUM"
    LEMMA1 = "LEMMA1"
    LEMMA2_9 = "LEMMA2_9"
    LEMMA2_10 = "LEMMA2_10"
    LEMMA2_11 = "LEMMA2_11"
    LEMMA2_12 = "LEMMA2_12"
    COR2_S1Q = "COR2_S1Q"
    COR2_SHIFT = "COR2_SHIFT"
    LEMMA3 = "LEMMA3"
    PROP1_B1 = "PROP1_B1"
    PROP1_BGE2 = "PROP1_BGE2"
    LEMMA4_16 = "LEMMA4_16"
    LEMMA4_17 = "LEMMA4_17"
    LEMMA4_18 = "LEMMA4_18"
    COR3_EQUA0 = "COR3_EQUA0"
    POLY_COLLAPSE = "POLY_COLLAPSE"
    THM1 = "THM1"
    S_RECIP = "S_RECIP"
    THM2_B1 = "THM2_B1"
    THM2_B2 = "THM2_B2"
    THM2_B3 = "THM2_B3"
    THM2_B4 = "THM2_B4"
    COR1_PRINTED_B1 = "COR1_PRINTED_B1"
    COR1_PRINTED_B2 = "COR1_PRINTED_B2"
    COR1_PRINTED_B3 = "COR1_PRINTED_B3"
    COR1_PRINTED_B4 = "COR1_PRINTED_B4"
    COR1_CORRECTED_B1 = "COR1_CORRECTED_B1"
    COR1_CORRECTED_B2 = "COR1_CORRECTED_B2"
    COR1_CORRECTED_B3 = "COR1_CORRECTED_B3"
    COR1_CORRECTED_B4 = "COR1_CORRECTED_B4"
    LEMMA5_23 = "LEMMA5_23"
    LEMMA5_24 = "LEMMA5_24"
    LEMMA5_25 = "LEMMA5_25"
    COR4_26 = "COR4_26"
    COR4_27 = "COR4_27"
    COR4_28 = "COR4_28"
    SEC2_B1SQ = "SEC2_B1SQ"


PRINTED_ERRATA = frozenset(
    IdentityId[f"COR1_PRINTED_B{k}"] for k in (1, 2, 3, 4)
)
# "all" on the command line: everything that is expected to hold.
DEFAULT_IDENTITIES = tuple(i for i in IdentityId if i not in PRINTED_ERRATA)
_ORDER = {ident: n for n, ident in enumerate(IdentityId)}


def parse_identities(spec: str) -> tuple[IdentityId, ...]:
    """``"all"`` or a comma-separated list of tag names."""
    if spec.strip().lower() == "all":
        return DEFAULT_IDENTITIES
    out = []
    for name in spec.split(","):
        name = name.strip().upper()
        if not name:
            continue
        try:
            out.append(IdentityId[name])
        except KeyError:
            raise ValueError(f"unknown identity {name!r}") from None
    if not out:
        raise ValueError("no identities given")
    return tuple(dict.fromkeys(out))


# -- literal summations (left-hand sides) -------------------------------------


def _count_below(num: int, den: int) -> int:
    """How many positive integers t satisfy t < num/den (den > 0)."""
    if num <= 0:
        return 0
    return -(-num // den) - 1


def _tri(n: int) -> int:
    return sum(range(1, n + 1))


def _double_t_sum(p: int, q: int) -> int:
    """sum_{r=1}^{q-1} sum_{1 <= t < rp/q} t, summed term by term."""
    return sum(_tri(_count_below(r * p, q)) for r in range(1, q))


def _b1_sq_sum(p: int, q: int) -> Fraction:
    # B1(v/q) = (2v - q) / (2q) for v = rp mod q in 1..q-1
    return F(sum((2 * (r * p % q) - q) ** 2 for r in range(1, q)), 4 * q * q)


def _frac_sum(p: int, q: int, power: int) -> Fraction:
    return F(sum((r * p % q) ** power for r in range(1, q)), q**power)


def _floor_sum(p: int, q: int, power: int) -> int:
    return sum((r * p // q) ** power for r in range(1, q))


def _prop1_first(p: int, q: int, a: int, b: int) -> int:
    return sum((a * n + t) * (t * p - n * b) for n in range(p) for t in range(1, a + 1))


def _prop1_middle(p: int, a: int, b: int) -> int:
    return sum(
        a * n + t for n in range(p) for t in range(1, _count_below(n * b, p) + 1)
    )


def _prop1_last(p: int, q: int, a: int, b: int) -> int:
    return sum((a * p + t) * (q + p * t - p * b) for t in range(1, b))


# -- printed right-hand sides ---------------------------------------------------


def equa0_rhs(p: int, q: int, b: int) -> Fraction:
    """Corollary-3 expression for ``S(p,q) + S(q,p)`` with ``b`` a free argument.

    Every term is brought over the common denominator ``12 p q^2``.
    """
    num = (
        -2 * b * (q - b) ** 2 * (p - 1) * (2 * p - 1)
        + 3 * (q - b) * (q + p - b) * (q - 2 * b) * (p - 1)
        + 2 * (q - b) * (q + p - b) * (2 * q + p - 2 * b)
        + 12 * p * (q - b) * (q - p * b) * (b - 1)
        + 6 * p * b * (q * p + q - 2 * p * b) * (b - 1)
        + 2 * p * p * b * (b - 1) * (2 * b - 1)
        + q * (p - 1) * (2 * p - 1) * (2 * q * b - b * b + 1)
        + 3 * p * q * (p - 1) * (b - 1)
    )
    return F(num, 12 * p * q * q)


def _solve(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gauss-Jordan elimination over the rationals (square, nonsingular)."""
    n = len(rhs)
    m = [list(map(F, row)) + [F(v)] for row, v in zip(matrix, rhs)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[pivot] = m[pivot], m[col]
        lead = m[col][col]
        m[col] = [v / lead for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return [row[n] for row in m]


_PROBES = (1, 2, 3, 4)


def poly_coeffs(p, q=None) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Coefficients ``(a0, a1, a2, a3)`` of ``P(b) = a0 b^3 + a1 b^2 + a2 b + a3``.

    ``P`` is the Corollary-3 expression with ``p, q`` held fixed; the cubic
    is recovered by exact interpolation at ``b = 1, 2, 3, 4``.
    """
    p, q = coprime_pair(p, q)
    if p < 2 or q <= p:
        raise ValueError("poly_coeffs needs 2 <= p < q")
    vander = [[b**3, b**2, b, 1] for b in _PROBES]
    values = [equa0_rhs(p, q, b) for b in _PROBES]
    return tuple(_solve(vander, values))


def _lemma4_16(p: int, q: int, b: int) -> Fraction:
    return (
        -F((q - b) ** 2 * b * (p - 1) * (2 * p - 1), 6 * p)
        + F((q - 2 * b) * (q - b) * (p - 1) * (p + q - b), 4 * p)
        + F((q - b) * (p + q - b) * (2 * q + p - 2 * b), 6 * p)
    )


def _lemma4_17(p: int, q: int, b: int) -> Fraction:
    return (
        F((p - 1) * (2 * p - 1) * (2 * q * b - b * b + 1), 12 * p)
        + F((p - 1) * (b - 1), 4)
        - q * fast.fast_S(q, p)
    )


def _lemma4_18(p: int, q: int, b: int) -> Fraction:
    return (
        (q - b) * (q - p * b) * (b - 1)
        + F(b * (q * p + q - 2 * p * b) * (b - 1), 2)
        + F(p * b * (b - 1) * (2 * b - 1), 6)
    )


# -- the identity table ---------------------------------------------------------


@dataclass(frozen=True)
class _Identity:
    applies: Callable[[int, int], bool]
    lhs: Callable[[int, int], object]
    rhs: Callable[[int, int], object]
    # "grid": coprime 1 <= p < q <= q_max; ("modulus", m): (p, m); ("numerator", m): (m, q)
    domain: tuple = ("grid",)


def _always(p: int, q: int) -> bool:
    return True


def _split_ok(p: int, q: int) -> bool:
    return 2 <= p < q


def _b_is(k: int) -> Callable[[int, int], bool]:
    return lambda p, q: 2 <= p < q and q % p == k


def _b_is_p_minus(k: int) -> Callable[[int, int], bool]:
    return lambda p, q: 2 <= p < q and q % p == p - k


def _ab(p: int, q: int) -> tuple[int, int]:
    return divmod(q, p)


def _sec2_lhs(p: int, q: int) -> tuple[Fraction, Fraction]:
    direct = _b1_sq_sum(p, q)
    squares = sum(r * r for r in range(1, q))
    second = (
        -F(p * p * squares, q * q)
        + 2 * p * naive_s(p, q)
        + 2 * _double_t_sum(p, q)
        + F(q - 1, 4)
    )
    return direct, second


def _sec2_rhs(p: int, q: int) -> tuple[Fraction, Fraction]:
    v = F((q - 1) * (2 * q - 1), 6 * q) - F(q - 1, 4)
    return v, v


def _equa0_lhs(p: int, q: int) -> tuple[Fraction, Fraction, Fraction]:
    v = naive_S(p, q) + naive_S(q, p)
    return v, v, v


def _equa0_rhs(p: int, q: int) -> tuple[Fraction, Fraction, Fraction]:
    probes = [equa0_rhs(p, q, b) for b in range(1, p)]
    return equa0_rhs(p, q, q % p), min(probes), max(probes)


def _thm1_lhs(p: int, q: int) -> Fraction:
    return naive_S(p, q) + (naive_S(q % p, p) if p > 1 else F(0))


_TABLE: dict[IdentityId, _Identity] = {
    IdentityId.SUM1: _Identity(
        _always, lambda p, q: sum(range(1, q)), lambda p, q: F(q * (q - 1), 2)
    ),
    IdentityId.SUM2: _Identity(
        _always,
        lambda p, q: sum(r * r for r in range(1, q)),
        lambda p, q: F(q * (q - 1) * (2 * q - 1), 6),
    ),
    IdentityId.B1_ZERO_SUM: _Identity(
        _always,
        lambda p, q: F(sum(2 * (r * p % q) - q for r in range(1, q)), 2 * q),
        lambda p, q: F(0),
    ),
    IdentityId.LEMMA1: _Identity(
        _always,
        _double_t_sum,
        lambda p, q: F((p - 1) * (2 * p * q - 3 * p + 2 * q), 12) + p * fast.fast_s(q, p),
    ),
    IdentityId.LEMMA2_9: _Identity(
        _always, lambda p, q: _frac_sum(p, q, 1), lambda p, q: F(q - 1, 2)
    ),
    IdentityId.LEMMA2_10: _Identity(
        _always,
        lambda p, q: _frac_sum(p, q, 2),
        lambda p, q: F((q - 1) * (2 * q - 1), 6 * q),
    ),
    IdentityId.LEMMA2_11: _Identity(
        _always, lambda p, q: _floor_sum(p, q, 1), lambda p, q: F((p - 1) * (q - 1), 2)
    ),
    IdentityId.LEMMA2_12: _Identity(
        _always,
        lambda p, q: _floor_sum(p, q, 2),
        lambda p, q: F((p * p + 1) * (q - 1) * (2 * q - 1), 6 * q) - 2 * p * fast.fast_S(p, q),
    ),
    IdentityId.COR2_S1Q: _Identity(
        lambda p, q: p == 1,
        lambda p, q: F(sum(r * r for r in range(1, q)), q * q),
        lambda p, q: F((q - 1) * (2 * q - 1), 6 * q),
    ),
    IdentityId.COR2_SHIFT: _Identity(
        _always, naive_s, lambda p, q: fast.fast_S(p, q) - F(q - 1, 4)
    ),
    IdentityId.LEMMA3: _Identity(
        lambda p, q: p < q,
        lambda p, q: naive_S(q - p, q),
        lambda p, q: F(q - 1, 2) - fast.fast_S(p, q),
    ),
    IdentityId.PROP1_B1: _Identity(
        _b_is(1),
        naive_S,
        lambda p, q: F(_prop1_first(p, q, q // p, 1), q * q),
    ),
    IdentityId.PROP1_BGE2: _Identity(
        lambda p, q: 2 <= p < q and q % p >= 2,
        naive_S,
        lambda p, q: (
            F(_prop1_first(p, q, *_ab(p, q)), q * q)
            + F(_prop1_middle(p, *_ab(p, q)), q)
            + F(_prop1_last(p, q, *_ab(p, q)), q * q)
        ),
    ),
    IdentityId.LEMMA4_16: _Identity(
        _split_ok,
        lambda p, q: _prop1_first(p, q, *_ab(p, q)),
        lambda p, q: _lemma4_16(p, q, q % p),
    ),
    IdentityId.LEMMA4_17: _Identity(
        _split_ok,
        lambda p, q: _prop1_middle(p, *_ab(p, q)),
        lambda p, q: _lemma4_17(p, q, q % p),
    ),
    IdentityId.LEMMA4_18: _Identity(
        _split_ok,
        lambda p, q: _prop1_last(p, q, *_ab(p, q)),
        lambda p, q: _lemma4_18(p, q, q % p),
    ),
    IdentityId.COR3_EQUA0: _Identity(_split_ok, _equa0_lhs, _equa0_rhs),
    IdentityId.POLY_COLLAPSE: _Identity(
        _split_ok,
        poly_coeffs,
        lambda p, q: (F(0), F(0), F(0), fast.reciprocity_rhs(p, q)),
    ),
    IdentityId.THM1: _Identity(_always, _thm1_lhs, fast.reciprocity_rhs),
    IdentityId.S_RECIP: _Identity(
        _always,
        lambda p, q: naive_s(p, q) + naive_s(q, p),
        fast.s_reciprocity_rhs,
    ),
    IdentityId.SEC2_B1SQ: _Identity(_always, _sec2_lhs, _sec2_rhs),
}

for _k in (1, 2, 3, 4):
    _TABLE[IdentityId[f"THM2_B{_k}"]] = _Identity(_b_is(_k), naive_S, closed.theorem2_S)
    for _variant in ("printed", "corrected"):
        _TABLE[IdentityId[f"COR1_{_variant.upper()}_B{_k}"]] = _Identity(
            _b_is_p_minus(_k),
            lambda p, q: naive_S(q - p, q),
            lambda p, q, v=_variant: closed.corollary1_S(p, q, v),
        )

for _tag, _m in (("23", 2), ("24", 3), ("25", 4)):
    _TABLE[IdentityId[f"LEMMA5_{_tag}"]] = _Identity(
        lambda p, q, m=_m: q == m,
        naive_S,
        closed.small_modulus_S,
        ("modulus", _m),
    )
for _tag, _m in (("26", 2), ("27", 3), ("28", 4)):
    _TABLE[IdentityId[f"COR4_{_tag}"]] = _Identity(
        lambda p, q, m=_m: p == m,
        naive_S,
        closed.small_numerator_S,
        ("numerator", _m),
    )

assert set(_TABLE) == set(IdentityId)


# -- results and reports ----------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    identity: IdentityId
    p: int
    q: int
    applicable: bool
    passed: bool
    lhs: object = None
    rhs: object = None

    def to_json(self) -> dict:
        return {
            "identity": self.identity.value,
            "p": str(self.p),
            "q": str(self.q),
            "lhs": None if self.lhs is None else to_json(self.lhs),
            "rhs": None if self.rhs is None else to_json(self.rhs),
        }

    def csv_row(self) -> list[str]:
        return [
            self.identity.value,
            str(self.p),
            str(self.q),
            "true" if self.applicable else "false",
            "true" if self.passed else "false",
            "" if self.lhs is None else render(self.lhs),
            "" if self.rhs is None else render(self.rhs),
        ]


def check_identity(identity, p, q=None) -> CheckResult:
    identity = IdentityId(identity)
    p, q = coprime_pair(p, q)
    spec = _TABLE[identity]
    if not spec.applies(p, q):
        return CheckResult(identity, p, q, False, False)
    lhs = spec.lhs(p, q)
    rhs = spec.rhs(p, q)
    if not isinstance(lhs, tuple):
        lhs = F(lhs)
    if not isinstance(rhs, tuple):
        rhs = F(rhs)
    return CheckResult(identity, p, q, True, lhs == rhs, lhs, rhs)


@dataclass
class Counts:
    checked: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0

    def add(self, result: CheckResult) -> None:
        if not result.applicable:
            self.skipped += 1
            return
        self.checked += 1
        if result.passed:
            self.passed += 1
        else:
            self.failed += 1


@dataclass
class CheckReport:
    identities: tuple[IdentityId, ...]
    q_max: int
    checked: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    counterexamples: list[CheckResult] = field(default_factory=list)
    by_identity: dict[IdentityId, Counts] = field(default_factory=dict)
    results: Optional[list[CheckResult]] = None
    stopped_early: bool = False

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        return {
            "identity": ",".join(i.value for i in self.identities),
            "q_max": self.q_max,
            "checked": self.checked,
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "counterexamples": [c.to_json() for c in self.counterexamples],
            "by_identity": {
                i.value: vars(c) for i, c in self.by_identity.items()
            },
            "stopped_early": self.stopped_early,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["identity", "p", "q", "applicable", "passed", "lhs", "rhs"])
        for r in self.results or self.counterexamples:
            writer.writerow(r.csv_row())
        return buf.getvalue()


def _domain(identity: IdentityId, q_max: int) -> Iterator[tuple[int, int]]:
    kind = _TABLE[identity].domain
    if kind[0] == "modulus":
        m = kind[1]
        for p in range(1, q_max + 1):
            if gcd(p, m) == 1:
                yield p, m
    elif kind[0] == "numerator":
        m = kind[1]
        for q in range(1, q_max + 1):
            if gcd(m, q) == 1:
                yield m, q
    else:
        for q in range(2, q_max + 1):
            for p in range(1, q):
                if gcd(p, q) == 1:
                    yield p, q


def _work_items(ids, q_max, p_filter) -> list[tuple[int, int, int]]:
    items = []
    for ident in ids:
        n = _ORDER[ident]
        for p, q in _domain(ident, q_max):
            if p_filter is None or p_filter(p, q):
                items.append((q, p, n))
    items.sort()
    return items


_IDS = tuple(IdentityId)


def _run_chunk(chunk: Sequence[tuple[int, int, int]]) -> list[CheckResult]:
    return [check_identity(_IDS[n], p, q) for q, p, n in chunk]


def sweep(
    ids: Iterable = DEFAULT_IDENTITIES,
    q_max: int = 100,
    p_filter: Optional[Callable[[int, int], bool]] = None,
    *,
    workers: int = 1,
    fail_fast: bool = False,
    max_counterexamples: int = 16,
    keep_results: bool = False,
) -> CheckReport:
    """Check every identity over its domain up to ``q_max``.

    Work is visited in ``(q, p, identity)`` order; with ``workers > 1`` the
    chunks are evaluated in a process pool but merged back in that same
    order, so the report does not depend on the worker count.
    """
    if q_max < 2:
        raise ValueError("q_max must be at least 2")
    ids = tuple(sorted({IdentityId(i) for i in ids}, key=_ORDER.__getitem__))
    report = CheckReport(ids, q_max, by_identity={i: Counts() for i in ids})
    if keep_results:
        report.results = []
    items = _work_items(ids, q_max, p_filter)

    if workers > 1 and not fail_fast:
        size = max(1, len(items) // (workers * 8))
        chunks = [items[i : i + size] for i in range(0, len(items), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = (r for batch in pool.map(_run_chunk, chunks) for r in batch)
            _merge(report, results, fail_fast, max_counterexamples)
    else:
        results = (check_identity(_IDS[n], p, q) for q, p, n in items)
        _merge(report, results, fail_fast, max_counterexamples)
    return report


def _merge(report: CheckReport, results, fail_fast: bool, cap: int) -> None:
    total = Counts()
    for result in results:
        report.by_identity[result.identity].add(result)
        total.add(result)
        if report.results is not None:
            report.results.append(result)
        if result.applicable and not result.passed:
            if len(report.counterexamples) < cap:
                report.counterexamples.append(result)
            if fail_fast:
                report.stopped_early = True
                break
    report.checked = total.checked
    report.passed = total.passed
    report.failed = total.failed
    report.skipped = total.skipped
