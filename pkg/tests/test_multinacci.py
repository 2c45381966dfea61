import random
from fractions import Fraction

import pytest

from betamatch.dynamics import MINUS, PLUS, OneSidedPoint, matching_index, step
from betamatch.errors import NotACode, NotMultinacci, RegimeNotImplemented, UndefinedTransition
from betamatch.multinacci import (TETRA_EDGES, FIBER_STATES, MATCHED, code_of_difference, code_value,
                                  fiber_step, fiber_trace, j_alpha_regions, predict_matching)
from betamatch.paramsweep import sweep
from betamatch.transitions import MATCHING, START, build_graph, labeled_edges


def test_predict_examples(tribonacci):
    assert predict_matching(tribonacci, Fraction(1, 20)).m == 3
    assert predict_matching(tribonacci, Fraction(14, 25)).m == 4
    assert predict_matching(tribonacci, Fraction(9, 10)).m is None


def test_predict_rejects_other_fields(salem, k5p3):
    for f in (salem, k5p3):
        with pytest.raises(NotMultinacci):
            predict_matching(f, Fraction(1, 3))


def test_codes(tribonacci):
    f = tribonacci
    assert code_of_difference(f, f.one).label == "111"
    c = code_of_difference(f, f.beta.inverse())
    assert c.label == "+100" and c.sign == 1
    assert code_of_difference(f, -code_value(f, [1, 0, 1])).label == "-101"
    assert code_of_difference(f, f.zero) == MATCHED
    with pytest.raises(NotACode):
        code_of_difference(f, f(Fraction(1, 2)))


def test_fiber_step_examples():
    assert fiber_step("+011", 1) == "-001"
    assert fiber_step("-101", 2) == "+101"
    assert fiber_step("+010", 0) == MATCHED
    assert fiber_step("111", 1) == "+110"
    with pytest.raises(UndefinedTransition):
        fiber_step("+001", 2)
    with pytest.raises(UndefinedTransition):
        fiber_step(MATCHED, 0)


def test_fiber_step_is_the_difference_law(tribonacci):
    # D' = beta*D - offset with the offset measured along the sign of D
    f = tribonacci
    for state in FIBER_STATES:
        sign = 1 if state[0] == "+" else -1
        d = code_value(f, [int(c) for c in state[1:]]) * sign
        for off in (0, 1, 2):
            try:
                nxt = fiber_step(state, off)
            except UndefinedTransition:
                continue
            new = f.beta * d - off * sign
            if nxt == MATCHED:
                assert (f.beta * new).is_integer()
            else:
                assert code_of_difference(f, new).label == nxt


def test_fiber_trace_follows_table(tribonacci):
    rng = random.Random(11)
    for _ in range(100):
        a = Fraction(rng.randrange(1, 10 ** 6), 10 ** 6)
        trace = fiber_trace(tribonacci, a, 30)
        for cur, nxt in zip(trace, trace[1:]):
            assert fiber_step(cur["state"], cur["offset"]) == nxt["state"]
        m = matching_index(tribonacci, a, 40)
        if trace[-1]["state"] == MATCHED:
            assert m.matched_at == trace[-1]["n"] + 1
        else:
            assert m.matched_at is None or m.matched_at > 30


def test_prediction_conformance(tribonacci):
    rng = random.Random(3)
    alphas = [Fraction(i, 200) for i in range(1, 200)]
    alphas += [Fraction(rng.randrange(1, 10 ** 6), 10 ** 6) for _ in range(20)]
    for a in alphas:
        p = predict_matching(tribonacci, a)
        if p.predicted:
            assert matching_index(tribonacci, a, 20).matched_at == p.m


def test_j_alpha_regions(tribonacci):
    f = tribonacci
    a = Fraction(1, 4)
    regions = j_alpha_regions(f, a)
    assert {r.fiber for r in regions} == {"-010", "+010", "-110", "+110"}
    rng = random.Random(8)
    for r in regions:
        sign = 1 if r.fiber[0] == "+" else -1
        d = code_value(f, [int(c) for c in r.fiber[1:]]) * sign
        for _ in range(10):
            t = Fraction(rng.randrange(1, 1000), 1000)
            x = r.lo + (r.hi - r.lo) * t
            p, q = OneSidedPoint(x, PLUS), OneSidedPoint(x + d, MINUS)
            met = False
            for _ in range(2):
                p, q = step(f, a, p)[0], step(f, a, q)[0]
                met = met or p.circle_equal(q)
            assert met


def test_j_alpha_errors(tribonacci, golden):
    with pytest.raises(RegimeNotImplemented):
        j_alpha_regions(tribonacci, Fraction(9, 10))
    with pytest.raises(NotMultinacci):
        j_alpha_regions(golden, Fraction(1, 10))


@pytest.mark.slow
def test_tetrabonacci_graph_inside_reference(tetrabonacci):
    g = build_graph(tetrabonacci, sweep(tetrabonacci, 14), collapse_prematch=False)
    obs = {(s.lstrip("+-"), t.lstrip("+-"), l) for s, t, l in labeled_edges(g) if t != MATCHING}
    assert obs <= TETRA_EDGES
    # the reference lists only 1111 -> 0001 out of the start state
    starts = {(str(code_of_difference(tetrabonacci, t).label), o)
              for s, t, o in g.edges if s == START and t != MATCHING}
    assert starts == {("+1110", 1), ("-0001", 2)}
