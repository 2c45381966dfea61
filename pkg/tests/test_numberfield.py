from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from betamatch import classify, fe_arith, fe_inverse, fe_sign, field_from_minpoly, make_field, to_decimal
from betamatch.errors import (DivisionByZero, FieldMismatch, MultipleRoots, NoRoot, ReducibleP,
                              RootNotGreaterThanOne)
from betamatch.fields import NAMES, bundled_field, resolve_field


def test_make_field_golden():
    f = make_field([-1, -1], ("3/2", "17/10"))
    assert f.degree == 2
    assert to_decimal(f.beta, 10) == "1.6180339887"


def test_degree_one_field():
    f = make_field([-2], ("3/2", "5/2"))
    assert f.degree == 1
    assert f.beta == 2


def test_reducible_rejected():
    with pytest.raises(ReducibleP):
        make_field([4, -4], (1, 3))


def test_isolation_errors():
    with pytest.raises(NoRoot):
        make_field([-1, -1], (2, 3))
    with pytest.raises(MultipleRoots):
        make_field([5, -5], (1, 4))  # x^2 - 5x + 5: roots 1.38 and 3.62
    with pytest.raises(RootNotGreaterThanOne):
        make_field([1, -3], (0, 1))


def test_arith_examples(golden, tribonacci):
    b = golden.beta
    assert fe_arith(b, b, "mul").coeffs == (1, 1)
    t = tribonacci.beta
    assert t * t ** 2 == t ** 2 + t + 1
    assert fe_arith(b - 1, b, "mul") == 1


def test_inverse_examples(golden, tribonacci):
    assert fe_inverse(golden.beta) == golden.beta - 1
    assert fe_inverse(golden.one) == 1
    assert fe_inverse(tribonacci.beta).coeffs == (-1, -1, 1)
    with pytest.raises(DivisionByZero):
        fe_inverse(golden.zero)


def test_field_mismatch(golden, tribonacci):
    with pytest.raises(FieldMismatch):
        fe_arith(golden.beta, tribonacci.beta, "add")


def test_sign_examples(golden, tribonacci):
    assert fe_sign(golden.beta - Fraction(8, 5)) == 1
    assert fe_sign(golden.zero) == 0
    assert fe_sign(tribonacci.beta.inverse() ** 3 - Fraction(1, 6)) == -1


def test_decimal(two_plus_sqrt2, golden):
    assert to_decimal(two_plus_sqrt2.beta, 10) == "3.4142135624"
    assert to_decimal(golden.zero, 10) == "0.0000000000"
    assert to_decimal(golden(Fraction(-1, 3)), 5) == "-0.33333"


def test_beta_satisfies_minpoly():
    for name in NAMES:
        f = bundled_field(name)
        acc = f.zero
        for c in reversed(f.poly):
            acc = acc * f.beta + c
        assert acc.is_zero(), name


def test_classify_examples(golden, salem, non_pisot):
    assert classify(golden).tag == "Pisot"
    assert classify(salem).tag == "Salem"
    assert classify(non_pisot).tag == "OtherAlgebraic"
    assert classify(bundled_field("lehmer")).tag == "Salem"
    assert classify(bundled_field("plastic")).tag == "Pisot"


def test_classify_quadratic_grid():
    for k in range(2, 7):
        for d in range(1, k):
            for sign in (1, -1):
                if sign > 0 and d == k - 1:
                    continue  # (x - 1)(x - d) is reducible
                f = field_from_minpoly([sign * d, -k])
                pisot = k > d + 1 if sign > 0 else k > d - 1
                assert (classify(f).tag == "Pisot") == pisot, (k, d, sign)


def test_bundled_names_and_paths(tmp_path):
    f = resolve_field("tribonacci.json")
    assert f.minpoly == (-1, -1, -1)
    p = tmp_path / "g.json"
    p.write_text('{"minpoly": [-1, -1], "root_lo": "3/2", "root_hi": "17/10"}')
    assert resolve_field(str(p)) == bundled_field("golden")
    with pytest.raises(KeyError):
        resolve_field("nonexistent")


rats = st.fractions(min_value=-50, max_value=50, max_denominator=30)


def _elem(f, cs):
    return f.from_coeffs(cs)


@settings(max_examples=150, deadline=None)
@given(st.lists(rats, min_size=3, max_size=3), st.lists(rats, min_size=3, max_size=3),
       st.lists(rats, min_size=3, max_size=3))
def test_field_axioms(a, b, c):
    f = bundled_field("tribonacci")
    a, b, c = _elem(f, a), _elem(f, b), _elem(f, c)
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    if not a.is_zero():
        assert a * a.inverse() == 1


@settings(max_examples=100, deadline=None)
@given(st.lists(rats, min_size=2, max_size=2))
def test_sign_consistent_with_decimal(cs):
    f = bundled_field("golden")
    a = f.from_coeffs(cs)
    assert fe_sign(a) == -fe_sign(-a)
    dec = float(to_decimal(a, 12))
    if fe_sign(a) > 0:
        assert dec >= 0
    elif fe_sign(a) < 0:
        assert dec <= 0
    else:
        assert dec == 0
