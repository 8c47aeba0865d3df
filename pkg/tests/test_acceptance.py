"""Exit criteria.  Every check is exact (zero tolerance); runtime limits are asserted."""

import json
import subprocess
import sys
import time
from fractions import Fraction
from math import gcd, log2

import pytest

from dedekind.cli import run_bench
from dedekind.closed import closed_form_S, corollary1_S, small_numerator_S, theorem2_S
from dedekind.core import naive_S, naive_s
from dedekind.fast import fast_S, fast_S_traced, fast_s, reciprocity_rhs, s_reciprocity_rhs
from dedekind.identities import PRINTED_ERRATA, IdentityId, sweep

from conftest import coprime_pairs

criterion = pytest.mark.criterion


@criterion("1 paper values via naive / fast / closed, < 1 s")
def test_paper_values():
    start = time.perf_counter()
    expected = {(1, 3): Fraction(5, 9), (2, 3): Fraction(4, 9), (1, 4): Fraction(7, 8), (3, 4): Fraction(5, 8)}
    expected.update({(p, 2): Fraction(1, 4) for p in range(1, 100, 2)})
    for (p, q), value in expected.items():
        assert naive_S(p, q) == value, (p, q)
        assert fast_S(p, q) == value, (p, q)
        assert closed_form_S(p, q) == value, (p, q)
    assert time.perf_counter() - start < 1.0


@criterion("2 reciprocity law, exhaustive 1 <= p < q <= 300, < 30 s")
def test_reciprocity_exhaustive():
    start = time.perf_counter()
    n = 0
    for p, q in coprime_pairs(300):
        lhs = naive_S(p, q) + (naive_S(q % p, p) if p > 1 else 0)
        assert lhs == reciprocity_rhs(p, q), (p, q)
        n += 1
    assert n == sum(1 for q in range(2, 301) for p in range(1, q) if gcd(p, q) == 1)
    assert time.perf_counter() - start < 30.0


@criterion("3 fast_S == naive_S and s-reciprocity, exhaustive q <= 1000")
def test_oracle_equivalence():
    for p, q in coprime_pairs(1000):
        assert fast_S(p, q) == naive_S(p, q), (p, q)
        assert fast_s(p, q) + fast_s(q, p) == s_reciprocity_rhs(p, q), (p, q)


@criterion("4 closed forms == naive_S (q <= 500; Corollary 4 for p <= 500)")
def test_closed_forms_exhaustive():
    thm2 = cor1 = 0
    for p, q in coprime_pairs(500):
        if p < 2:
            continue
        b = q % p
        if b <= 4:
            assert theorem2_S(p, q) == naive_S(p, q), (p, q)
            thm2 += 1
        if p - b <= 4:
            assert corollary1_S(p, q, "corrected") == naive_S(q - p, q), (p, q)
            cor1 += 1
    assert thm2 and cor1
    for m in (2, 3, 4):
        for p in range(1, 501):
            if gcd(m, p) == 1:
                assert small_numerator_S(m, p) == naive_S(m, p), (m, p)


@criterion("5 printed Corollary 1 erratum detected; corrected variant clean (q_max = 50)")
def test_erratum_detection():
    printed = sweep(PRINTED_ERRATA, 50)
    hits = [c for c in printed.counterexamples if (c.p, c.q) == (3, 5)]
    assert hits and hits[0].lhs == 1 and hits[0].rhs == Fraction(10, 9)
    corrected = sweep({IdentityId[f"COR1_CORRECTED_B{k}"] for k in (1, 2, 3, 4)}, 50)
    assert corrected.checked == printed.checked
    assert corrected.failed == 0


SUITE = [
    "LEMMA1", "LEMMA2_9", "LEMMA2_10", "LEMMA2_11", "LEMMA2_12", "COR2_S1Q", "COR2_SHIFT",
    "LEMMA3", "PROP1_B1", "PROP1_BGE2", "LEMMA4_16", "LEMMA4_17", "LEMMA4_18",
    "COR3_EQUA0", "POLY_COLLAPSE", "SEC2_B1SQ",
]


@criterion("6 identity suite exhaustive for q <= 200, < 5 min")
def test_identity_suite():
    start = time.perf_counter()
    ids = [IdentityId[name] for name in SUITE]
    report = sweep(ids, 200)
    assert report.failed == 0, report.counterexamples[:3]
    for ident in ids:
        assert report.by_identity[ident].checked > 0, ident
    # everything else that should hold, too
    rest = sweep([i for i in IdentityId if i.name not in SUITE and i not in PRINTED_ERRATA], 200)
    assert rest.failed == 0, rest.counterexamples[:3]
    assert time.perf_counter() - start < 300.0


@criterion("7 performance: 62-bit median < 10 ms, 20-bit speedup > 100x, depth bound")
def test_performance():
    big = run_bench(62, 50, seed=62)
    assert big["fast"]["median_ns"] < 10_000_000
    small = run_bench(20, 50, seed=20)
    assert small["agree"] is True
    assert small["speedup"] > 100

    import random

    rng = random.Random(7)
    for _ in range(500):
        q = rng.getrandbits(62) | (1 << 61)
        p = rng.randrange(1, q)
        if gcd(p, q) == 1:
            assert fast_S_traced(p, q)[1] <= 2 * log2(min(p, q)) + 2


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "dedekind", *argv], capture_output=True, text=True)


@criterion("8 CLI exit codes, JSON, byte-stable table, < 5 s")
def test_cli_contract():
    start = time.perf_counter()
    ok = _cli("eval", "--p", "3", "--q", "7", "--method", "all", "--format", "json")
    assert ok.returncode == 0 and json.loads(ok.stdout)["agree"] is True
    bad = _cli("verify", "--identities", "COR1_PRINTED_B1", "--q-max", "10")
    assert bad.returncode == 1 and json.loads(bad.stdout)["failed"] > 0
    usage = _cli("eval", "--p", "4", "--q", "2")
    assert usage.returncode == 2 and usage.stdout == "" and "coprime" in usage.stderr

    first = _cli("table", "--q-max", "3")
    second = _cli("table", "--q-max", "3")
    assert first.returncode == 0 and first.stdout == second.stdout
    assert first.stdout == (
        "p,q,b,S_num,S_den,s_num,s_den\n1,2,0,1,4,0,1\n1,3,0,5,9,1,18\n2,3,1,4,9,-1,18\n"
    )
    assert time.perf_counter() - start < 5.0
