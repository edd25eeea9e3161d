"""Shared fixtures, hypothesis profile, and the acceptance recorder."""

import random

import pytest
from hypothesis import HealthCheck, settings

from charp.ring import MultiPoly, PolyRing

settings.register_profile(
    "charp",
    max_examples=100,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large,
                           HealthCheck.filter_too_much],
)
settings.load_profile("charp")


def random_poly(rng: random.Random, ring: PolyRing, max_degree: int = 3,
                max_terms: int = 4, nonzero: bool = False) -> MultiPoly:
    """Deterministic random sparse polynomial for seeded property loops."""
    while True:
        terms = {}
        for _ in range(rng.randint(0 if not nonzero else 1, max_terms)):
            total = rng.randint(0, max_degree)
            exps = [0] * ring.nvars
            for _ in range(total):
                exps[rng.randrange(ring.nvars)] += 1
            terms[tuple(exps)] = rng.randint(1, ring.p - 1)
        poly = ring.poly(terms)
        if not nonzero or not poly.is_zero:
            return poly


def random_homogeneous(rng: random.Random, ring: PolyRing, degree: int,
                       max_terms: int = 3) -> MultiPoly:
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            exps = [0] * ring.nvars
            for _ in range(degree):
                exps[rng.randrange(ring.nvars)] += 1
            terms[tuple(exps)] = rng.randint(1, ring.p - 1)
        poly = ring.poly(terms)
        if not poly.is_zero:
            return poly


# -- acceptance criterion recording ----------------------------------------

_ACCEPTANCE: list = []


def record_criterion(number: int, description: str, ok: bool):
    _ACCEPTANCE.append((number, description, bool(ok)))


def check_criterion(number: int, description: str, ok: bool):
    record_criterion(number, description, ok)
    assert ok, f"acceptance criterion {number} failed: {description}"


@pytest.hookimpl
def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, description, ok in sorted(_ACCEPTANCE):
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"C{number:02d} {verdict}  {description}")
