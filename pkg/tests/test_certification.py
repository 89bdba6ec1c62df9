import itertools

import numpy as np
import pytest

from fracsub import (
    Cardinality,
    HomogeneousRatio,
    Knapsack,
    MultiRatioInstance,
    NotCertifiedSubmodular,
    Ratio,
    Unconstrained,
    Verdict,
    certify_instance,
    check_homogeneous_obstruction,
    check_monotone_definition,
    check_monotone_sufficient,
    check_monotone_unconstrained,
    check_near_monotone_structure,
    check_ratio_submodular,
    check_submodular_definition,
)
from fracsub.certification import definition_slack, pairwise_slack
from fracsub.generate import random_ratio, random_region

from conftest import all_subsets, naive_h

TOL = 1e-9


def loop_submodular_scan(f, feasible, n):
    """Pure-python scan of the diminishing-returns inequality."""
    worst = np.inf
    items = range(1, n + 1)
    for k in range(n + 1):
        for S in itertools.combinations(items, k):
            rest = [x for x in items if x not in S]
            for i, j in itertools.combinations(rest, 2):
                if not feasible(tuple(sorted(S + (i, j)))):
                    continue
                Si = tuple(sorted(S + (i,)))
                Sj = tuple(sorted(S + (j,)))
                Sij = tuple(sorted(S + (i, j)))
                worst = min(worst, f(Si) - f(S) - f(Sij) + f(Sj))
    return worst


def test_example_submodular(example_ratio):
    F = Unconstrained()
    assert check_submodular_definition(example_ratio, F, 3).verdict is Verdict.SUBMODULAR
    rep = check_ratio_submodular(example_ratio, F)
    assert rep.verdict is Verdict.SUBMODULAR
    # smallest pairwise sum is 3 (items 2, 3) against max h(S+i)+h(S+j) = 5/4 + 1 at S={1}
    assert rep.min_slack == pytest.approx(0.75)


def test_modular_function_has_zero_slack():
    c = [0.5, 1.0, 2.0, 3.0]
    rep = check_submodular_definition(lambda S: sum(c[i - 1] for i in S), Unconstrained(), 4)
    assert rep.verdict is Verdict.SUBMODULAR
    assert rep.min_slack == pytest.approx(0.0, abs=1e-15)


def test_homogeneous_three_ratios_not_submodular():
    r = Ratio([1, 1, 1], 0, [1, 2, 4])
    rep = check_submodular_definition(r, Unconstrained(), 3)
    assert rep.verdict is Verdict.NOT_SUBMODULAR
    w = rep.witness
    assert definition_slack(r, w.S, w.i, w.j) < -TOL


def test_definition_scan_matches_loop_oracle():
    rng = np.random.default_rng(21)
    for _ in range(30):
        n = int(rng.integers(2, 7))
        r = random_ratio(rng, n)
        F = random_region(rng, n, ["unconstrained", "cardinality", "knapsack"][int(rng.integers(3))])
        f = lambda S: naive_h(r.a, r.b0, r.b, S)
        worst = loop_submodular_scan(f, F.contains, n)
        rep = check_submodular_definition(r, F, n)
        if np.isfinite(worst):
            assert rep.min_slack == pytest.approx(worst, abs=1e-12)
        else:
            assert rep.min_slack == np.inf


def test_single_item_is_vacuously_submodular():
    rep = check_ratio_submodular(Ratio([2.0], 1.0, [3.0]), Unconstrained())
    assert rep.verdict is Verdict.SUBMODULAR
    assert rep.min_slack == np.inf


def test_pairwise_test_refuses_homogeneous():
    with pytest.raises(HomogeneousRatio):
        check_ratio_submodular(Ratio([1, 2], 0, [1, 1]), Unconstrained())


@pytest.mark.parametrize("kind", ["unconstrained", "cardinality", "knapsack"])
def test_pairwise_equals_definition(kind):
    rng = np.random.default_rng({"unconstrained": 1, "cardinality": 2, "knapsack": 3}[kind])
    verdicts = set()
    for _ in range(150):
        n = int(rng.integers(2, 9))
        r = random_ratio(rng, n)
        F = random_region(rng, n, kind)
        a = check_ratio_submodular(r, F)
        b = check_submodular_definition(r, F, n)
        assert a.verdict is b.verdict
        verdicts.add(a.verdict)
    assert verdicts == {Verdict.SUBMODULAR, Verdict.NOT_SUBMODULAR}


def test_witness_replays():
    rng = np.random.default_rng(4)
    found = 0
    for _ in range(200):
        r = random_ratio(rng, 6)
        rep = check_ratio_submodular(r, Unconstrained())
        if rep.verdict is Verdict.NOT_SUBMODULAR:
            w = rep.witness
            assert pairwise_slack(r, w.S, w.i, w.j) < -TOL
            assert definition_slack(r, w.S, w.i, w.j) < -TOL
            found += 1
    assert found > 0


def test_monotone_checks_on_example(example_ratio):
    assert not check_monotone_unconstrained(example_ratio)
    rep = check_monotone_sufficient(example_ratio, Unconstrained())
    assert rep.verdict is Verdict.INCONCLUSIVE
    assert rep.details["min_item_ratio"] == 1.0
    assert rep.details["max_value"] == pytest.approx(5 / 4)
    assert rep.monotone is False
    assert not check_monotone_definition(example_ratio, Unconstrained(), 3).holds


def test_equal_item_ratios_certify_monotone():
    rho = 1.7
    b = np.array([0.3, 1.2, 0.5, 2.0])
    r = Ratio(rho * b, 0.4, b)
    for F in (Unconstrained(), Cardinality(2), Knapsack([1, 1, 1, 1], 2.5)):
        assert check_monotone_sufficient(r, F).verdict is Verdict.MONOTONE_SUBMODULAR
    assert check_monotone_unconstrained(Ratio([1, 2, 3], 1.0, [1, 2, 3]))


def test_min_ratio_test_agrees_with_exhaustive_monotonicity():
    rng = np.random.default_rng(9)
    outcomes = set()
    for _ in range(300):
        n = int(rng.integers(1, 8))
        r = random_ratio(rng, n, ratio_spread=float(rng.choice([0.05, 0.5, 3.0])))
        fast = check_monotone_unconstrained(r)
        assert fast == check_monotone_definition(r, Unconstrained(), n).holds
        if fast:
            assert check_monotone_sufficient(r, Unconstrained()).verdict is Verdict.MONOTONE_SUBMODULAR
        outcomes.add(fast)
    assert outcomes == {True, False}


def test_monotone_certificates_pass_exhaustive_scan():
    rng = np.random.default_rng(10)
    certified = 0
    for _ in range(300):
        n = int(rng.integers(2, 8))
        r = random_ratio(rng, n, ratio_spread=0.3, b0_range=(1.0, 20.0))
        F = random_region(rng, n, ["unconstrained", "cardinality", "knapsack"][int(rng.integers(3))])
        if check_monotone_sufficient(r, F).verdict is Verdict.MONOTONE_SUBMODULAR:
            certified += 1
            assert check_monotone_definition(r, F, n).holds
            assert check_ratio_submodular(r, F).verdict is Verdict.SUBMODULAR
    assert certified > 50


def test_homogeneous_obstruction_witness():
    r = Ratio([1, 1, 1], 0, [1, 2, 4])
    rep = check_homogeneous_obstruction(r, Unconstrained())
    assert rep.verdict is Verdict.NOT_SUBMODULAR
    # item ratios 1 > 1/2 > 1/4: the largest is item 1, so the quadruple is
    # {3,1}, {2,1}, {1,2,3}, {1}
    assert rep.details["sets"] == [[1, 3], [1, 2], [1, 2, 3], [1]]
    h = lambda S: naive_h(r.a, 0, r.b, S)
    assert h((1, 3)) + h((1, 2)) < h((1, 2, 3)) + h((1,))
    w = rep.witness
    assert definition_slack(r, w.S, w.i, w.j) == pytest.approx(rep.min_slack)


@pytest.mark.parametrize("a, b", [
    ([2, 4, 6], [1, 2, 3]),    # all ratios equal
    ([1, 2, 1, 2], [1, 1, 1, 1]),  # two distinct values
])
def test_homogeneous_obstruction_inapplicable(a, b):
    rep = check_homogeneous_obstruction(Ratio(a, 0, b), Unconstrained())
    assert rep.verdict is Verdict.INCONCLUSIVE


def test_homogeneous_obstruction_needs_feasible_triple():
    r = Ratio([1, 1, 1], 0, [1, 2, 4])
    assert check_homogeneous_obstruction(r, Cardinality(2)).verdict is Verdict.INCONCLUSIVE


def test_near_monotone_structure_example(example_ratio):
    assert check_near_monotone_structure(example_ratio, Unconstrained())
    h = lambda S: naive_h((3, 2, 1), 2, (1, 1, 1), S)
    # chains through the sets with and without the smallest-ratio item 3
    assert h((3,)) < h((2, 3)) < h((1, 3)) < h((1, 2, 3))
    assert h(()) < h((2,)) < h((1,)) < h((1, 2))


def test_near_monotone_requires_submodular():
    rng = np.random.default_rng(0)
    while True:
        r = random_ratio(rng, 5)
        if check_ratio_submodular(r, Unconstrained()).verdict is Verdict.NOT_SUBMODULAR:
            break
    with pytest.raises(NotCertifiedSubmodular):
        check_near_monotone_structure(r, Unconstrained())


def near_monotone_oracle(r, F, n, require_pair_feasible):
    rho = [r.a[i] / r.b[i] for i in range(n)]
    star = max(i + 1 for i in range(n) if rho[i] == min(rho))
    h = lambda S: naive_h(r.a, r.b0, r.b, S)
    for S in all_subsets(n):
        if not F.contains(S):
            continue
        for j in range(1, n + 1):
            if j in S or j == star or not F.contains(tuple(sorted(S + (j,)))):
                continue
            up = h(tuple(sorted(S + (j,)))) - h(S)
            if star in S:
                if up < -TOL:
                    return False
            elif F.contains(tuple(sorted(S + (star,)))):
                if require_pair_feasible and not F.contains(tuple(sorted(S + (j, star)))):
                    continue
                if up < -TOL:
                    return False
    return True


def test_near_monotone_on_random_submodular():
    rng = np.random.default_rng(33)
    checked = 0
    while checked < 300:
        n = int(rng.integers(2, 9))
        r = random_ratio(rng, n)
        F = Unconstrained() if rng.random() < 0.5 else Cardinality(int(rng.integers(1, n + 1)))
        if check_ratio_submodular(r, F).verdict is not Verdict.SUBMODULAR:
            continue
        checked += 1
        got = check_near_monotone_structure(r, F)
        assert got == near_monotone_oracle(r, F, n, require_pair_feasible=False)
        # the chain argument goes through whenever S+j+n* is feasible as well
        assert near_monotone_oracle(r, F, n, require_pair_feasible=True)
        if isinstance(F, Unconstrained):
            assert got


def test_near_monotone_fails_at_cardinality_boundary():
    r = Ratio([0.2, 0.06, 0.58], 0.015, [0.88, 0.8, 0.55])
    F = Cardinality(2)
    assert check_ratio_submodular(r, F).verdict is Verdict.SUBMODULAR
    h = lambda S: naive_h(r.a, r.b0, r.b, S)
    # item 2 has the smallest ratio; {3} and {2,3} are feasible but {1,2,3} is not
    assert h((1, 3)) < h((3,))
    assert not check_near_monotone_structure(r, F)
    # without the constraint the same ratio is not submodular at all
    assert check_ratio_submodular(r, Unconstrained()).verdict is Verdict.NOT_SUBMODULAR


def test_monotone_ratio_has_near_monotone_structure():
    r = Ratio([1, 2, 3], 1.0, [1, 2, 3])
    assert check_near_monotone_structure(r, Unconstrained())


def test_verdict_invariant_under_scaling():
    rng = np.random.default_rng(17)
    for _ in range(100):
        r = random_ratio(rng, 6)
        F = random_region(rng, 6, "cardinality")
        v = check_ratio_submodular(r, F).verdict
        g = float(rng.uniform(0.1, 10))
        assert check_ratio_submodular(r.scaled(numerator=g), F).verdict is v
        assert check_ratio_submodular(r.scaled(denominator=g), F).verdict is v


def test_certify_single_ratio_matches_report(example_ratio):
    cert = certify_instance(MultiRatioInstance((example_ratio,)))
    assert cert.verdict is Verdict.SUBMODULAR
    assert cert.summary() == "submodular, not monotone"
    assert cert.reports[0].method == "pairwise-ratio"


def test_certify_all_monotone():
    ratios = tuple(Ratio(rho * np.ones(4), 1.0, np.ones(4)) for rho in (1.0, 2.0, 3.0))
    cert = certify_instance(MultiRatioInstance(ratios, Cardinality(2)))
    assert cert.verdict is Verdict.MONOTONE_SUBMODULAR
    assert cert.monotone is True


def test_certify_mixed_instance_scans_the_sum():
    bad = Ratio([1, 1, 1], 0, [1, 2, 4])
    # a large modular-ish term: huge b0 makes it nearly linear and nondecreasing
    big = Ratio([50, 50, 50], 1e6, [1, 1, 1])
    cert = certify_instance(MultiRatioInstance((bad, big)))
    assert cert.reports[0].verdict is Verdict.NOT_SUBMODULAR
    assert cert.method == "definition-on-sum"
    assert cert.verdict is cert.sum_report.verdict
    direct = check_submodular_definition(MultiRatioInstance((bad, big)), Unconstrained(), 3)
    assert cert.verdict is direct.verdict

    twice = certify_instance(MultiRatioInstance((bad, bad)))
    assert twice.verdict is Verdict.NOT_SUBMODULAR
    w = twice.sum_report.witness
    f = MultiRatioInstance((bad, bad))
    assert definition_slack(f, w.S, w.i, w.j) < -TOL


def test_large_n_falls_back_to_ladder():
    rng = np.random.default_rng(1)
    r = random_ratio(rng, 30)
    rep = certify_instance(MultiRatioInstance((r,)), exact_limit=20).reports[0]
    assert rep.verdict in (Verdict.MONOTONE_SUBMODULAR, Verdict.INCONCLUSIVE)
