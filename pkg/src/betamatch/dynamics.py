"""Exact iteration of T(x) = beta*x + alpha (mod 1) on one-sided points.

The two critical orbits start at 0+ (value 0, right side) and 0- (value 1,
left side).  A point carries its side so that the branch index is well
defined when it sits exactly on a branch boundary (i - alpha)/beta:

* side +1 evaluates the map just to the right: digit = floor(beta*x + alpha)
* side -1 evaluates it just to the left:        digit = ceil(beta*x + alpha) - 1

With these conventions plus-points live in [0, 1) and minus-points in (0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable

from .errors import AlphaOutOfRange
from .numberfield import FieldElement, NumberField

PLUS = 1
MINUS = -1


def side_name(side: int) -> str:
    return "plus" if side == PLUS else "minus"


def as_alpha(f: NumberField, alpha) -> FieldElement:
    """Coerce ``alpha`` into the field and check 0 <= alpha <= 1."""
    a = f(alpha)
    if a.sign() < 0 or (a - 1).sign() > 0:
        raise AlphaOutOfRange(f"alpha = {a.to_decimal(6)} is outside [0, 1]")
    return a


@dataclass(frozen=True)
class OneSidedPoint:
    value: FieldElement
    side: int = PLUS

    def __post_init__(self):
        if self.side not in (PLUS, MINUS):
            raise ValueError("side must be PLUS or MINUS")
        v = self.value
        if self.side == MINUS and v.is_zero():
            object.__setattr__(self, "value", v.field.one)
        elif self.side == PLUS and v == 1:
            object.__setattr__(self, "value", v.field.zero)
        v = self.value
        if v.sign() < 0 or (v - 1).sign() > 0:
            raise ValueError(f"point {v.to_decimal(6)} outside [0, 1]")

    def circle_value(self) -> FieldElement:
        """Representative in [0, 1)."""
        return self.value.field.zero if self.value == 1 else self.value

    def circle_equal(self, other: "OneSidedPoint") -> bool:
        return self.circle_value() == other.circle_value()

    def __str__(self):
        return f"{self.value.to_decimal(6)}{'+' if self.side == PLUS else '-'}"


def zero_plus(f: NumberField) -> OneSidedPoint:
    return OneSidedPoint(f.zero, PLUS)


def zero_minus(f: NumberField) -> OneSidedPoint:
    return OneSidedPoint(f.one, MINUS)


def branch_data(f: NumberField, alpha):
    """Largest k with (k - alpha)/beta < 1, and the inner boundaries (i - alpha)/beta, i = 1..k."""
    a = as_alpha(f, alpha)
    k = (f.beta + a).ceil() - 1
    inv_beta = f.beta.inverse()
    return k, [(i - a) * inv_beta for i in range(1, k + 1)]


def digit_of(y: FieldElement, side: int) -> int:
    """Branch index of a point whose image before reduction is ``y``."""
    return y.floor() if side == PLUS else y.ceil() - 1


def step(f: NumberField, alpha, p: OneSidedPoint):
    """One application of T to a one-sided point; returns (image, digit)."""
    a = f(alpha)
    y = f.beta * p.value + a
    digit = digit_of(y, p.side)
    return OneSidedPoint(y - digit, p.side), digit


@dataclass
class OrbitRecord:
    """``points[n]`` is T^n of the start; ``digits[n]`` is the branch of ``points[n]``."""

    points: list
    digits: list
    alpha: FieldElement

    @property
    def side(self):
        return self.points[0].side

    def closed_form(self, n: int) -> FieldElement:
        """T^n(x_0) = beta^n x_0 + (1 + ... + beta^{n-1}) alpha - sum_j digits[j] beta^{n-1-j}."""
        f = self.alpha.field
        beta = f.beta
        acc = self.points[0].value
        for j in range(n):
            acc = beta * acc + self.alpha - self.digits[j]
        return acc

    def closed_form_expanded(self, n: int) -> FieldElement:
        """Same value assembled from the explicit geometric-sum formula."""
        f = self.alpha.field
        beta = f.beta
        geo = sum((beta ** i for i in range(n)), f.zero)
        tail = sum((self.digits[j] * beta ** (n - 1 - j) for j in range(n)), f.zero)
        return beta ** n * self.points[0].value + geo * self.alpha - tail

    def to_json(self, digits: int = 12):
        return [
            {
                "n": n,
                "value_coeffs": p.value.coeff_strings(),
                "value_decimal": p.value.to_decimal(digits),
                "digit": self.digits[n] if n < len(self.digits) else None,
                "side": side_name(p.side),
            }
            for n, p in enumerate(self.points)
        ]


def orbit(f: NumberField, alpha, start: OneSidedPoint, n: int) -> OrbitRecord:
    a = f(alpha)
    points, digits = [start], []
    p = start
    for _ in range(n):
        p, dgt = step(f, a, p)
        digits.append(dgt)
        points.append(p)
    return OrbitRecord(points, digits, a)


def critical_orbits(f: NumberField, alpha, n: int):
    """Orbits of 0+ and 0- for ``n`` steps."""
    if n < 0:
        raise ValueError("n must be >= 0")
    a = as_alpha(f, alpha)
    return orbit(f, a, zero_plus(f), n), orbit(f, a, zero_minus(f), n)


def difference(p: OneSidedPoint, q: OneSidedPoint) -> FieldElement:
    """q - p as real numbers (minus-orbit point minus plus-orbit point)."""
    return q.value - p.value


@dataclass
class MatchingOutcome:
    matched_at: int | None
    bound: int
    difference_trace: list = dc_field(default_factory=list)
    offsets: list = dc_field(default_factory=list)

    @property
    def matched(self):
        return self.matched_at is not None

    @property
    def kind(self):
        return "MatchedAt" if self.matched else "NoMatchWithin"

    def __str__(self):
        if self.matched:
            return f"matched at {self.matched_at}"
        return f"no match within {self.bound}"


def _is_j_over_beta(f: NumberField, d: FieldElement) -> bool:
    return (f.beta * d).is_integer()


def matching_index(f: NumberField, alpha, bound: int, discontinuity: str = "limit") -> MatchingOutcome:
    """Least m <= bound with T^m(0+) = T^m(0-) on the circle.

    Two criteria run side by side and must agree: direct circle equality at
    m, and integrality of beta * D_{m-1} with D_n = T^n(0-) - T^n(0+).

    ``discontinuity="either"`` lets a critical orbit that lands exactly on
    0 ~ 1 continue as 0+ or as 0-, and reports the least m reached by any
    choice (circle equality only).  The default keeps each orbit's side.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    a = as_alpha(f, alpha)
    if discontinuity == "either":
        return _matching_either(f, a, bound)
    if discontinuity != "limit":
        raise ValueError("discontinuity must be 'limit' or 'either'")
    p, q = zero_plus(f), zero_minus(f)
    trace = [difference(p, q)]
    offsets = []
    predicted = None
    for n in range(1, bound + 1):
        if predicted is None and _is_j_over_beta(f, trace[-1]):
            predicted = n
        p, dp = step(f, a, p)
        q, dq = step(f, a, q)
        offsets.append(dq - dp)
        trace.append(difference(p, q))
        hit = p.circle_equal(q)
        if hit != (predicted == n):
            raise AssertionError(
                f"matching criteria disagree at n={n}: circle={hit}, lemma={predicted}")
        if hit:
            return MatchingOutcome(n, bound, trace, offsets)
    return MatchingOutcome(None, bound, trace, offsets)


def _both_sides(p: OneSidedPoint):
    if p.circle_value().is_zero():
        f = p.value.field
        return (zero_plus(f), zero_minus(f))
    return (p,)


def _matching_either(f, a, bound):
    level = {(zero_plus(f), zero_minus(f))}
    for n in range(1, bound + 1):
        nxt = set()
        for p, q in level:
            p1, _ = step(f, a, p)
            q1, _ = step(f, a, q)
            if p1.circle_equal(q1):
                return MatchingOutcome(n, bound)
            nxt.update((x, y) for x in _both_sides(p1) for y in _both_sides(q1))
        level = nxt
    return MatchingOutcome(None, bound)


@dataclass
class MarkovOutcome:
    bound: int
    plus: tuple | None  # (preperiod, period) or None
    minus: tuple | None
    plus_cycle: list = dc_field(default_factory=list)
    minus_cycle: list = dc_field(default_factory=list)

    @property
    def finite(self):
        return self.plus is not None and self.minus is not None

    @property
    def kind(self):
        return "FiniteOrbits" if self.finite else "NotDetectedWithin"

    @property
    def shared_cycle(self) -> bool:
        """Do both critical orbits end in the same cycle of circle values?"""
        if not self.finite:
            return False
        a = {p.circle_value() for p in self.plus_cycle}
        b = {p.circle_value() for p in self.minus_cycle}
        return a == b

    def __str__(self):
        if self.finite:
            return (f"finite orbits: 0+ preperiod {self.plus[0]} period {self.plus[1]}, "
                    f"0- preperiod {self.minus[0]} period {self.minus[1]}")
        return f"no repetition detected within {self.bound}"


def _eventual_period(f, a, start, bound):
    seen = {}
    p = start
    pts = []
    for n in range(bound + 1):
        key = (p.value, p.side)
        if key in seen:
            pre = seen[key]
            return (pre, n - pre), pts[pre:n]
        seen[key] = n
        pts.append(p)
        p, _ = step(f, a, p)
    return None, []


def markov_test(f: NumberField, alpha, bound: int) -> MarkovOutcome:
    """Detect exact eventual periodicity of both critical orbits within ``bound`` steps."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    a = as_alpha(f, alpha)
    plus, pc = _eventual_period(f, a, zero_plus(f), bound)
    minus, mc = _eventual_period(f, a, zero_minus(f), bound)
    return MarkovOutcome(bound, plus, minus, pc, mc)


@dataclass
class StepFunction:
    """Piecewise constant function: ``values[i]`` on [breakpoints[i], breakpoints[i+1])."""

    breakpoints: list
    values: list
    raw_values: list
    raw_integral: FieldElement
    flags: tuple = ()

    def __call__(self, x):
        x = self.breakpoints[0].field(x)
        for i in range(len(self.values)):
            if self.breakpoints[i] <= x < self.breakpoints[i + 1]:
                return self.values[i]
        return self.values[-1]

    def integral(self) -> FieldElement:
        f = self.breakpoints[0].field
        total = f.zero
        for i, v in enumerate(self.values):
            total = total + v * (self.breakpoints[i + 1] - self.breakpoints[i])
        return total

    @property
    def interior_breakpoints(self):
        return self.breakpoints[1:-1]


def density(f: NumberField, alpha, truncation: int, start: int = 0) -> StepFunction:
    """Truncated invariant density

        h(x) = sum_{n: T^n(0-) < x} beta^-n  -  sum_{n: T^n(0+) < x} beta^-n,

    over start <= n <= truncation, normalised to total mass 1.  Orbit points
    enter with their real value, so 0- (value 1) never lies below any x in
    [0, 1).  ``start`` selects whether the n = 0 terms are included.
    """
    if truncation < 1:
        raise ValueError("truncation must be >= 1")
    a = as_alpha(f, alpha)
    plus, minus = critical_orbits(f, a, truncation)
    inv_beta = f.beta.inverse()
    jumps = {}
    w = f.one if start == 0 else inv_beta
    for n in range(start, truncation + 1):
        for rec, sgn in ((minus, 1), (plus, -1)):
            x = rec.points[n].value
            if x == 1:
                continue
            jumps[x] = jumps.get(x, f.zero) + (w if sgn > 0 else -w)
        w = w * inv_beta
    # h jumps by jumps[x] just to the right of x
    cuts = sort_elements(x for x, j in jumps.items() if not j.is_zero() and not x.is_zero())
    level = jumps.get(f.zero, f.zero)
    bps = [f.zero]
    raw = [level]
    for x in cuts:
        level = level + jumps[x]
        bps.append(x)
        raw.append(level)
    bps.append(f.one)
    integral = f.zero
    for i, v in enumerate(raw):
        integral = integral + v * (bps[i + 1] - bps[i])
    flags = []
    if integral.is_zero():
        return StepFunction(bps, raw, raw, integral, ("NonPositiveDensity",))
    values = [v / integral for v in raw]
    if any(v.sign() < 0 for v in values):
        flags.append("NonPositiveDensity")
    return StepFunction(bps, values, raw, integral, tuple(flags))


class _SortKey:
    """Exact ordering key for field elements (for ``sorted``)."""

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return self.v < other.v


def sort_elements(values: Iterable[FieldElement]):
    return sorted(values, key=_SortKey)


def difference_set(f: NumberField, alphas, depth: int) -> set:
    """All |D_n|, 0 <= n <= depth, observed over the sampled parameters."""
    out = set()
    for alpha in alphas:
        plus, minus = critical_orbits(f, alpha, depth)
        for p, q in zip(plus.points, minus.points):
            out.add(abs(difference(p, q)))
    return out


def rational_grid(lo: Fraction, hi: Fraction, count: int, closed: bool = True):
    """``count`` equally spaced rationals in [lo, hi] (or [lo, hi) if not closed)."""
    if count == 1:
        return [lo]
    steps = count - 1 if closed else count
    return [lo + (hi - lo) * Fraction(i, steps) for i in range(count)]
