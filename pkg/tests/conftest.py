from fractions import Fraction
from math import gcd

import pytest


def frac_part(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def definition_S(p: int, q: int) -> Fraction:
    """S(p, q) summed straight from the definition, one Fraction per term."""
    return sum(
        (frac_part(Fraction(r, q)) * frac_part(Fraction(r * p, q)) for r in range(1, q)),
        Fraction(0),
    )


def definition_s(p: int, q: int) -> Fraction:
    def b1(x):
        f = frac_part(x)
        return Fraction(0) if f == 0 else f - Fraction(1, 2)

    return sum((b1(Fraction(r, q)) * b1(Fraction(r * p, q)) for r in range(1, q)), Fraction(0))


def coprime_pairs(q_max: int, q_min: int = 2):
    for q in range(q_min, q_max + 1):
        for p in range(1, q):
            if gcd(p, q) == 1:
                yield p, q


@pytest.fixture
def oracle_S():
    return definition_S


# -- acceptance summary: one line per criterion at the end of the run --------

_acceptance: list[tuple[str, str, float]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
        _acceptance.append((marker.args[0], status, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label, status, seconds in _acceptance:
        terminalreporter.write_line(f"[{status}] {label} ({seconds:.1f}s)")
