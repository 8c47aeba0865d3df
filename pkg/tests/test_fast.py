import random
import sys
from fractions import Fraction
from math import gcd, log2

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dedekind.closed import closed_form_S
from dedekind.core import naive_S
from dedekind.fast import S_one, fast_S, fast_S_traced, fast_s, reciprocity_rhs, s_reciprocity_rhs

from conftest import coprime_pairs


def test_reciprocity_rhs_examples():
    assert reciprocity_rhs(3, 7) == Fraction(125, 63) == naive_S(3, 7) + naive_S(1, 3)
    assert reciprocity_rhs(1, 1) == 0
    assert reciprocity_rhs(3, 5) == Fraction(13, 9) == 1 + Fraction(4, 9)


def test_fast_examples():
    assert fast_S(3, 7) == Fraction(10, 7)
    assert fast_S(1, 5) == Fraction(6, 5) == Fraction(sum(r * r for r in range(5)), 25)
    assert fast_S(4, 7) == Fraction(11, 7)
    assert fast_s(3, 7) == Fraction(-1, 14)
    assert fast_s(7, 3) == Fraction(1, 18)
    assert fast_s(12, 1) == 0
    assert S_one(1) == 0


def test_matches_oracle_exhaustively():
    for p, q in coprime_pairs(250):
        assert fast_S(p, q) == naive_S(p, q)


def test_unreduced_numerators():
    for q in range(1, 60):
        for p in range(q, 4 * q):
            if gcd(p, q) == 1:
                assert fast_S(p, q) == naive_S(p, q)


def test_both_base_cases_agree():
    rng = random.Random(7)
    for p, q in coprime_pairs(120):
        assert fast_S_traced(p, q, base="p1")[0] == fast_S_traced(p, q, base="q1")[0]
    for _ in range(200):
        q = rng.getrandbits(100) | 1
        p = rng.randrange(1, q)
        if gcd(p, q) == 1:
            assert fast_S_traced(p, q, base="p1")[0] == fast_S_traced(p, q, base="q1")[0]


def _fib(n):
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def _depth_bound(p, q):
    return 2 * log2(min(p, q)) + 2


def test_depth_bound_random_and_fibonacci():
    rng = random.Random(11)
    for _ in range(2000):
        q = rng.getrandbits(rng.randint(2, 128)) | 1
        p = rng.randrange(1, q + 1)
        if gcd(p, q) != 1:
            continue
        assert fast_S_traced(p, q)[1] <= _depth_bound(p, q)
    for n in range(3, 200):
        p, q = _fib(n), _fib(n + 1)
        assert fast_S_traced(p, q)[1] <= _depth_bound(p, q)


def test_deep_chain_does_not_recurse():
    # Consecutive Fibonacci numbers give the longest chain for their size.
    n = 3 * sys.getrecursionlimit()
    p, q = _fib(n), _fib(n + 1)
    value, depth = fast_S_traced(p, q)
    assert depth >= n - 3
    assert value + fast_S(q, p) == reciprocity_rhs(p, q)


@given(st.integers(1, 2**62), st.integers(1, 2**62))
def test_s_reciprocity_large(p, q):
    if gcd(p, q) != 1:
        return
    assert fast_s(p, q) + fast_s(q, p) == s_reciprocity_rhs(p, q)
    assert fast_S(p, q) + fast_S(q, p) == reciprocity_rhs(p, q)


def test_large_pairs_against_closed_forms():
    rng = random.Random(2024)
    hits = 0
    while hits < 300:
        q = rng.getrandbits(62) | (1 << 61)
        p = rng.choice([1, 2, 3, 4, rng.randrange(5, 40), q - rng.randrange(1, 5)])
        if gcd(p, q) != 1:
            continue
        value = closed_form_S(p, q)
        if value is not None:
            hits += 1
            assert fast_S(p, q) == value
