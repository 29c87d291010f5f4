import os
import itertools

import hypothesis
import pytest
from hypothesis import strategies as st

hypothesis.settings.register_profile("default", max_examples=200, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def reference_f(a, v):
    """f^a written straight from its case definition, one coordinate at a time."""
    out = []
    for i in range(len(v)):
        if v[i] > a[i] and all(v[j] <= a[j] for j in range(i)):
            out.append(v[i] - 1)
        elif v[i] < a[i] and all(v[j] >= a[j] for j in range(i)):
            out.append(v[i] + 1)
        else:
            out.append(v[i])
    return tuple(out)


def all_points(n, k):
    return list(itertools.product(range(n), repeat=k))


@st.composite
def shapes(draw, max_n=6, max_k=4):
    return draw(st.integers(1, max_n)), draw(st.integers(1, max_k))


@st.composite
def shape_and_points(draw, count=1, max_n=8, max_k=6):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, max_k))
    pts = [tuple(draw(st.lists(st.integers(0, n - 1), min_size=k, max_size=k))) for _ in range(count)]
    return (n, k, *pts)


@pytest.fixture
def fig2():
    """The three-query trace on the 7-bit hypercube, with responses from f^a."""
    a = (0, 0, 1, 1, 1, 1, 0)
    queries = [(0, 1, 1, 1, 0, 0, 1), (0, 0, 1, 0, 1, 0, 1), (0, 0, 1, 1, 1, 0, 0)]
    # index 4 of the second response is 1: the increment there has a valid prefix
    responses = [(0, 0, 1, 1, 1, 0, 1), (0, 0, 1, 1, 1, 0, 0), (0, 0, 1, 1, 1, 1, 0)]
    return a, queries, responses


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
