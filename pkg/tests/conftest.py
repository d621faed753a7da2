"""Shared hypothesis strategies and settings."""
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from orthoplucker.exterior import Form, MetricSpace

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def rationals(height: int = 9, nonzero: bool = False):
    q = st.builds(Fraction, st.integers(-height, height), st.integers(1, height))
    return q.filter(bool) if nonzero else q


@st.composite
def spaces(draw, min_dim=1, max_dim=6, lorentzian=True):
    d = draw(st.integers(min_dim, max_dim))
    t = draw(st.integers(0, 1)) if lorentzian else 0
    return MetricSpace(d, t)


@st.composite
def forms_on(draw, space: MetricSpace, degree: int, max_terms: int = 6):
    keys = list(combinations(range(1, space.dim + 1), degree))
    if not keys:
        return Form.zero(space, degree)
    chosen = draw(st.lists(st.sampled_from(keys), max_size=max_terms, unique=True))
    return Form(space, degree, {k: draw(rationals(nonzero=True)) for k in chosen})


@st.composite
def vectors_on(draw, space: MetricSpace):
    return [draw(rationals()) for _ in range(space.dim)]


@pytest.fixture
def e6():
    return MetricSpace(6, 0)


@pytest.fixture
def m4():
    return MetricSpace(4, 1)


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def verdict(request):
    """Record one acceptance line; it is printed now and in the terminal summary."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def record(number: int, ok: bool, detail: str):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {detail}"
        lines.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
