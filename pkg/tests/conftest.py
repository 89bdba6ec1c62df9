import itertools
from fractions import Fraction

import numpy as np
import pytest

from fracsub import Ratio, MultiRatioInstance, Unconstrained


EXAMPLE_A = (3, 2, 1)
EXAMPLE_B0 = 2
EXAMPLE_B = (1, 1, 1)


@pytest.fixture
def example_ratio():
    return Ratio(EXAMPLE_A, EXAMPLE_B0, EXAMPLE_B)


@pytest.fixture
def example_instance(example_ratio):
    return MultiRatioInstance((example_ratio,), Unconstrained())


def all_subsets(n):
    items = range(1, n + 1)
    for k in range(n + 1):
        yield from itertools.combinations(items, k)


def naive_h(a, b0, b, S):
    """From-scratch evaluation, deliberately loop based."""
    num = 0.0
    den = float(b0)
    for i in S:
        num += a[i - 1]
        den += b[i - 1]
    return 0.0 if not S else num / den


def exact_h(a, b0, b, S):
    if not S:
        return Fraction(0)
    return Fraction(sum(Fraction(a[i - 1]) for i in S)) / (Fraction(b0) + sum(Fraction(b[i - 1]) for i in S))


def naive_max(f, feasible, n):
    """Brute-force maximum of ``f`` over feasible subsets, ties to the first found."""
    best_S, best = None, -np.inf
    for S in all_subsets(n):
        if feasible(S):
            v = f(S)
            if v > best:
                best_S, best = S, v
    return best_S, best


def rel_close(x, y, rel=1e-12):
    return abs(x - y) <= rel * max(1.0, abs(x), abs(y))


# acceptance criteria outcomes, in run order: (number, title, passed, detail)
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {number:2d}: {title} ({detail})")
