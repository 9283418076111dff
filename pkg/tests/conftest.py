import random
from fractions import Fraction

import pytest

from logvgit.engine import PairState
from logvgit.one_param import generate_candidates
from logvgit.poly import SparsePolynomial, monomials_of_degree, parse_polynomial

A2_CORE = "x0*x1*x3 + x2^3"


def a2_f(rng: random.Random) -> SparsePolynomial:
    """A2 normal form ``x0x1x3 + x2^3 + x2^2 f1 + x2 f2 + f3`` with random binary forms."""
    f = parse_polynomial(A2_CORE, 4)
    for k in (1, 2, 3):
        for m in monomials_of_degree(2, k):
            c = Fraction(rng.randint(-9, 9), rng.randint(1, 5)) or Fraction(1)
            f = f + SparsePolynomial.monomial((m[0], m[1], 3 - k, 0), c)
    return f


def random_pair(rng: random.Random, n: int = 2, d: int = 3, terms: int = 5) -> PairState:
    monos = monomials_of_degree(n + 2, d)
    f = SparsePolynomial(n + 2, {m: Fraction(rng.randint(1, 7), rng.randint(1, 3)) for m in rng.sample(monos, terms)})
    lin = monomials_of_degree(n + 2, 1)
    h = SparsePolynomial(n + 2, {m: rng.randint(1, 4) for m in rng.sample(lin, rng.randint(1, n + 2))})
    return PairState(n, d, f, h)


@pytest.fixture(scope="session")
def cands23():
    return generate_candidates(2, 3)


@pytest.fixture
def rng():
    return random.Random(20261016)


# --- acceptance reporting ---------------------------------------------------------

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.failed:
        _ACCEPTANCE[number] = ("FAIL", title)
    elif report.when == "call" and number not in _ACCEPTANCE:
        _ACCEPTANCE[number] = ("PASS", title)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        status, title = _ACCEPTANCE[number]
        terminalreporter.write_line(f"{status} criterion {number:2d}: {title}")
