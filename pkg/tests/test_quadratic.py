import itertools
import random
from fractions import Fraction

import pytest

from betamatch.dynamics import OneSidedPoint, PLUS, critical_orbits, matching_index, step
from betamatch.errors import EmptyCylinder, NotPisotQuadratic, WrongRegime
from betamatch.numberfield import field_from_minpoly
from betamatch.paramsweep import sweep
from betamatch.quadratic import (MATCH_OFFSET, coding_arcs, cylinder_components, escape_depth,
                                 plateau_json, plateau_map, quadratic_case)


@pytest.fixture(scope="module")
def k4p2():
    return field_from_minpoly([2, -4])


def _alphas(f, case, rng, count):
    out = []
    while len(out) < count:
        a = Fraction(rng.randrange(1, 1000), 1000)
        if case.sign > 0 and a < case.circle_length:
            out.append(a)
        elif case.sign < 0 and a >= case.k + 1 - f.beta:
            out.append(a)
    return out


def test_cases(k5p3, k3m2, non_pisot):
    c = quadratic_case(k5p3)
    assert (c.sign, c.k, c.d) == (1, 5, 3) and c.gamma == k5p3.beta - 4
    assert c.circle_length == 5 - k5p3.beta
    assert (c.k - 1 - c.d) / k5p3.beta < c.gamma < (c.k - c.d) / k5p3.beta
    c = quadratic_case(k3m2)
    assert (c.sign, c.k, c.d) == (-1, 3, 2) and c.gamma == 4 - k3m2.beta
    assert c.circle_length == 2 / k3m2.beta
    with pytest.raises(NotPisotQuadratic):
        quadratic_case(non_pisot)


def test_plus_d_plateaus(k5p3):
    case = quadratic_case(k5p3)
    pm = plateau_map(k5p3, case, Fraction(3, 10))
    assert len(pm.plateaus) == 3 and pm.slope == k5p3.beta
    width = sum((p.hi - p.lo for p in pm.v), k5p3.zero)
    assert width == case.d * case.gamma / k5p3.beta
    for p in pm.v:
        mid = (p.lo + p.hi) / 2
        assert pm.f1(mid) == case.circle_length
        assert pm(mid) == 0


def test_minus_d_plateaus(k3m2):
    case = quadratic_case(k3m2)
    pm = plateau_map(k3m2, case, Fraction(1, 2))
    assert len(pm.plateaus) == case.d + case.d ** 2 == 6
    assert pm.slope == k3m2.beta ** 2
    assert len(pm.v) == len(pm.w) == case.d
    # V_i is W_(i+k-d) shifted down by gamma
    assert [(p.lo + case.gamma, p.hi + case.gamma) for p in pm.v] == [(p.lo, p.hi) for p in pm.w]
    with pytest.raises(WrongRegime):
        plateau_map(k3m2, case, Fraction(1, 10))


def test_off_plateau_is_t(k5p3, k3m2):
    rng = random.Random(5)
    for f in (k5p3, k3m2):
        case = quadratic_case(f)
        for a in _alphas(f, case, rng, 10):
            pm = plateau_map(f, case, a)
            for _ in range(20):
                x = f(Fraction(rng.randrange(1, 1000), 1000)) * case.circle_length
                if any(p.lo <= x < p.hi for p in pm.v):
                    continue
                assert pm.f1(x) == step(f, a, OneSidedPoint(x, PLUS))[0].value


def test_monotone_with_slope_beta(k5p3):
    case = quadratic_case(k5p3)
    pm = plateau_map(k5p3, case, Fraction(3, 10))
    L = case.circle_length
    pts = sorted({L * Fraction(i, 400) for i in range(400)}, key=float)
    for x, y in zip(pts, pts[1:]):
        gx, gy = pm(x), pm(y)
        in_plateau = any(p.lo <= x < p.hi for p in pm.v) and any(p.lo <= y < p.hi for p in pm.v)
        diff = gy - gx
        if diff.sign() < 0:
            diff = diff + L  # wrapped once around the circle
        assert diff.sign() >= 0
        if not in_plateau and (k5p3.beta * x + pm.alpha).floor() == (k5p3.beta * y + pm.alpha).floor() \
                and not any(p.lo <= x < p.hi or p.lo <= y < p.hi for p in pm.v):
            assert diff == k5p3.beta * (y - x)


@pytest.mark.parametrize("poly", [[3, -5], [2, -4], [2, -5], [-2, -3], [-1, -1], [-3, -3]])
def test_escape_matches_matching_index(poly):
    f = field_from_minpoly(poly)
    case = quadratic_case(f)
    rng = random.Random(sum(poly))
    for a in _alphas(f, case, rng, 50):
        m = matching_index(f, a, 40)
        e = escape_depth(f, case, a, a, 40 - MATCH_OFFSET)
        assert e.matching_index() == m.matched_at


def test_escape_against_sweep(k4p2):
    case = quadratic_case(k4p2)
    res = sweep(k4p2, 10)
    rng = random.Random(2)
    intervals = [m for m in res.matched if m.m >= 3 and m.hi < case.circle_length]
    for m in rng.sample(intervals, 20):
        a = Fraction(float((m.lo + m.hi) / 2)).limit_denominator(10 ** 15)
        if not m.contains(a):
            continue
        assert escape_depth(k4p2, case, a, a, 20).hit_at + MATCH_OFFSET == m.m
    for p in rng.sample(res.unresolved, 10):
        a = Fraction(float((p.lo + p.hi) / 2)).limit_denominator(10 ** 15)
        if p.contains(a) and a < case.circle_length:
            assert escape_depth(k4p2, case, a, a, 10 - MATCH_OFFSET).kind == "SurvivesTo"


def test_escape_in_plateau(k5p3):
    case = quadratic_case(k5p3)
    pm = plateau_map(k5p3, case, Fraction(3, 10))
    x = pm.v[1].lo
    assert escape_depth(k5p3, case, Fraction(3, 10), x, 5).hit_at == 0
    assert escape_depth(k5p3, case, Fraction(3, 10), OneSidedPoint(x, PLUS), 5).hit_at == 0


def test_difference_automata(k5p3, k3m2):
    rng = random.Random(9)
    for f in (k5p3, k3m2):
        case = quadratic_case(f)
        pre = case.d / f.beta
        for a in _alphas(f, case, rng, 30):
            res = matching_index(f, a, 40)
            if not res.matched:
                continue
            d = res.difference_trace[1:res.matched_at]
            if case.sign > 0:
                assert d[:-1] == [case.gamma] * (len(d) - 1) and d[-1] == -pre
            else:
                for i, x in enumerate(d[:-1]):
                    assert x == (-case.gamma if i % 2 == 0 else case.gamma)
                assert abs(d[-1]) == pre


def test_cylinder_single_letter(k5p3):
    case = quadratic_case(k5p3)
    for e in range(case.d):
        comps = cylinder_components(k5p3, case, Fraction(3, 10), [e])
        assert len(comps) == 1 and comps[0].length == case.circle_length / k5p3.beta


def test_cylinder_word_01(k4p2):
    case = quadratic_case(k4p2)
    comps = cylinder_components(k4p2, case, Fraction(1, 3), [0, 1])
    assert len(comps) <= 2
    assert sum((c.length for c in comps), k4p2.zero) == case.circle_length / k4p2.beta ** 2


def test_cylinder_lemma_random_words(k5p3, k4p2):
    rng = random.Random(4)
    for f in (k5p3, k4p2):
        case = quadratic_case(f)
        L, inv = case.circle_length, f.beta.inverse()
        for a in _alphas(f, case, rng, 5):
            for _ in range(10):
                n = rng.randint(1, 8)
                word = [rng.randrange(case.d) for _ in range(n)]
                comps = cylinder_components(f, case, a, word)
                assert len(comps) <= n
                assert sum((c.length for c in comps), f.zero) == L * inv ** n


def test_cylinder_itineraries(k5p3):
    case = quadratic_case(k5p3)
    a = Fraction(3, 10)
    pm = plateau_map(k5p3, case, a)
    arcs = coding_arcs(pm)
    L = case.circle_length
    for word in itertools.product(range(case.d), repeat=3):
        for comp in cylinder_components(k5p3, case, a, word):
            x = comp.start + comp.length / 3
            if x >= L:
                x = x - L
            for e in word:
                rel = x - arcs[e].start
                if rel.sign() < 0:
                    rel = rel + L
                assert rel < arcs[e].length
                x = pm(x)


def test_cylinder_errors(k5p3, k3m2):
    case = quadratic_case(k5p3)
    with pytest.raises(EmptyCylinder):
        cylinder_components(k5p3, case, Fraction(3, 10), [0, 7])
    with pytest.raises(WrongRegime):
        cylinder_components(k3m2, quadratic_case(k3m2), Fraction(1, 2), [0])


def test_plateau_json(k3m2):
    import json
    pm = plateau_map(k3m2, quadratic_case(k3m2), Fraction(1, 2))
    data = json.loads(plateau_json(pm))
    assert data["case"] == "-d" and len(data["plateaus"]) == 6
    assert {"lo", "hi", "lo_decimal", "value"} <= set(data["V"][0])
    assert data["branch_boundaries"]
