import math

import pytest

from betamatch.errors import EmptySweep, InsufficientData, NotQuadraticPisot
from betamatch.numberfield import field_from_minpoly
from betamatch.paramsweep import SweepResult, refine, sweep
from betamatch.stats import (A038199, box_dimension_estimate, default_fit_range, plot_tsv,
                             quadratic_dimension_formula, reference_compare, size_histogram,
                             stats_json, totient)


@pytest.fixture(scope="module")
def golden13(golden):
    return sweep(golden, 13)


@pytest.fixture(scope="module")
def sqrt2_14(two_plus_sqrt2):
    return sweep(two_plus_sqrt2, 14)


def test_totient():
    assert [totient(n) for n in range(1, 11)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4]


def test_golden_totient_counts(golden13):
    hist = size_histogram(golden13)
    rep = reference_compare(hist.exact_counts, "totient")
    assert rep.first_mismatch >= 10
    assert hist.total() == len(golden13.matched) == sum(hist.log_counts)
    assert sum(c for _, c in hist.by_index) == len(golden13.matched)


def test_a038199_counts(sqrt2_14):
    hist = size_histogram(sqrt2_14)
    assert hist.log_counts[:8] == list(A038199[:8])
    rep = reference_compare(hist.log_counts, "A038199")
    assert rep.all_match and rep.compared == 13


def test_a038199_other_d2_field():
    # the same pattern for another quadratic slope with d = 2 (conjecture check)
    f = field_from_minpoly([2, -5])
    hist = size_histogram(sweep(f, 12))
    assert hist.log_counts[:8] == list(A038199[:8])


def test_reference_compare_edge_cases():
    rep = reference_compare([], "A038199")
    assert rep.compared == 0 and rep.first_mismatch == 0
    rep = reference_compare([1, 2, 7], [1, 2, 6])
    assert rep.first_mismatch == 2 and not rep.all_match
    with pytest.raises(ValueError):
        reference_compare([1], "nope")


def test_single_interval_histogram(golden):
    res = sweep(golden, 2)
    one = SweepResult(golden, 2, res.region, res.matched[:1], [])
    hist = size_histogram(one)
    assert hist.bins == [(res.matched[0].size, 1)]


def test_empty_sweep(non_pisot):
    with pytest.raises(EmptySweep):
        size_histogram(sweep(non_pisot, 4))


def test_insufficient_data(golden):
    with pytest.raises(InsufficientData):
        box_dimension_estimate(sweep(golden, 4))


def test_default_fit_range():
    assert default_fit_range(14) == (5, 12)
    assert default_fit_range(16) == (6, 14)


def test_sqrt2_estimate(sqrt2_14):
    est = box_dimension_estimate(sqrt2_14)
    assert est.fit_range == (5, 12)
    assert abs(est.value - 0.5644763825) <= 0.03
    assert 0 <= est.value <= 1
    assert est.cover_estimate is not None


def test_sqrt2_trend(two_plus_sqrt2):
    target = 0.5644763825
    res = sweep(two_plus_sqrt2, 8)
    gaps = [abs(box_dimension_estimate(res).value - target)]
    for _ in range(6):
        res = refine(res, 1)
        gaps.append(abs(box_dimension_estimate(res).value - target))
    assert gaps[-1] < gaps[0] and gaps[-1] <= 0.03
    assert all(b <= a + 0.005 for a, b in zip(gaps, gaps[1:]))


def test_golden_estimate_decreases(golden, golden13):
    e13 = box_dimension_estimate(golden13).value
    e14 = box_dimension_estimate(refine(golden13, 1)).value
    assert e14 < e13 < 0.5


@pytest.mark.slow
def test_tribonacci_estimate(tribonacci):
    est = box_dimension_estimate(sweep(tribonacci, 16))
    assert abs(est.value - 0.66) <= 0.08


def test_base_invariance(sqrt2_14, two_plus_sqrt2):
    hist = size_histogram(sqrt2_14)
    a = box_dimension_estimate(sqrt2_14, hist=hist)
    b = box_dimension_estimate(sqrt2_14, hist=hist, log_base=2)
    ratio = math.log(float(two_plus_sqrt2.beta)) / math.log(2)
    assert abs(b.slope - a.slope * ratio) < 1e-9
    for (n, u), (m, v) in zip(a.per_n, b.per_n):
        assert n == m and abs(v - u * ratio) < 1e-9


def test_other_base_binning(golden13):
    hist = size_histogram(golden13, base=2)
    assert hist.total() == len(golden13.matched)
    hist = size_histogram(golden13, base="2.5")
    assert sum(hist.log_counts) == len(golden13.matched)


def test_quadratic_formula():
    assert quadratic_dimension_formula(field_from_minpoly([2, -4])) == "0.564476382514"
    assert quadratic_dimension_formula(field_from_minpoly([-1, -1])) == "0.000000000000"
    assert quadratic_dimension_formula(field_from_minpoly([-2, -3])) == "0.545700691119"
    with pytest.raises(NotQuadraticPisot):
        quadratic_dimension_formula(field_from_minpoly([-3, -1]))
    with pytest.raises(NotQuadraticPisot):
        quadratic_dimension_formula(field_from_minpoly([-1, -1, -1]))


def test_outputs(sqrt2_14):
    hist = size_histogram(sqrt2_14)
    est = box_dimension_estimate(sqrt2_14, hist=hist)
    data = stats_json(hist, est)
    assert [b["count"] for b in data["a_n"]][:3] == [1, 2, 6]
    assert data["estimate"]["fit_range"] == [5, 12]
    lines = plot_tsv(hist).splitlines()
    assert lines[0] == "n\tlog_b_a_n" and lines[1].startswith("0\t0.0")
