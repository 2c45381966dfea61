"""Multinacci slopes: beta^k = beta^(k-1) + ... + beta + 1.

For these slopes every difference D_n = T^n(0-) - T^n(0+) before matching
has |D_n| = sum e_i / beta^i with e_i in {0, 1}.  A signed code such as
"-101" stands for D = -(1/beta + 1/beta^3); "+" means the 0- orbit is
ahead.  The start state 1 = 1/beta + ... + 1/beta^k is the all-ones code.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .dynamics import MINUS, PLUS, OneSidedPoint, as_alpha, step
from .errors import NotACode, NotMultinacci, RegimeNotImplemented, UndefinedTransition
from .numberfield import FieldElement, NumberField

MATCHED = "MATCHED"


def multinacci_order(f: NumberField) -> int:
    """k for the k-bonacci field, else NotMultinacci."""
    if f.degree < 2 or any(c != -1 for c in f.minpoly):
        raise NotMultinacci(f"{f.poly_str()} is not x^k - x^(k-1) - ... - 1")
    return f.degree


def is_multinacci(f: NumberField) -> bool:
    try:
        multinacci_order(f)
    except NotMultinacci:
        return False
    return True


@dataclass(frozen=True)
class Prediction:
    m: int | None

    @property
    def predicted(self):
        return self.m is not None

    def __str__(self):
        return f"predicted matching at {self.m}" if self.predicted else "no prediction"


def predict_matching(f: NumberField, alpha) -> Prediction:
    """Closed-form matching index where one is known.

    alpha < 1/beta^k gives k (two branches); for tribonacci the closed
    interval [1/beta, 1/beta^2 + 2/beta^3] gives 4.
    """
    k = multinacci_order(f)
    a = as_alpha(f, alpha)
    inv = f.beta.inverse()
    if a < inv ** k:
        return Prediction(k)
    if k == 3 and inv <= a <= inv ** 2 + 2 * inv ** 3:
        return Prediction(4)
    return Prediction(None)


@dataclass(frozen=True)
class DifferenceCode:
    bits: tuple
    sign: int
    value: FieldElement

    @property
    def label(self) -> str:
        body = "".join(map(str, self.bits))
        if all(self.bits):
            return body
        return ("+" if self.sign > 0 else "-") + body

    @property
    def unsigned(self) -> str:
        return "".join(map(str, self.bits))


def code_value(f: NumberField, bits) -> FieldElement:
    inv = f.beta.inverse()
    acc, p = f.zero, f.one
    for e in bits:
        p = p * inv
        if e:
            acc = acc + p
    return acc


def _solve(rows, rhs):
    """Solve the square rational system rows * x = rhs."""
    n = len(rhs)
    m = [list(map(Fraction, rows[i])) + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                fac = m[r][col]
                m[r] = [x - fac * y for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def code_of_difference(f: NumberField, d: FieldElement):
    """Signed code of a difference, or MATCHED for 0.

    The coordinates of |d| in the basis 1/beta, ..., 1/beta^k are found by a
    rational linear solve and must all be 0 or 1.
    """
    k = multinacci_order(f)
    d = f(d)
    if d.is_zero():
        return MATCHED
    sign = d.sign()
    a = abs(d)
    basis = [code_value(f, [1 if j == i else 0 for j in range(k)]) for i in range(k)]
    cols = [b.coeffs for b in basis]
    rows = [[cols[j][i] for j in range(k)] for i in range(k)]
    x = _solve(rows, a.coeffs)
    if any(v not in (0, 1) for v in x):
        raise NotACode(f"{d.to_decimal(8)} is not a sum of distinct powers 1/beta^i, i <= {k}")
    return DifferenceCode(tuple(int(v) for v in x), sign, d)


# transition table on signed codes (tribonacci); labels are the branch
# offset measured in the direction of the sign, i.e. sign(D) * (b - a)
PHI_TABLE = {
    "001": {0: ("010", 1), 1: ("101", -1)},
    "010": {0: ("100", 1), 1: ("011", -1)},
    "011": {0: ("110", 1), 1: ("001", -1)},
    "101": {1: ("010", 1), 2: ("101", -1)},
    "110": {1: ("100", 1), 2: ("011", -1)},
}
START_TABLE = {1: "+110", 2: "-001"}
FIBER_STATES = tuple(s + c for c in ("001", "010", "011", "101", "110") for s in "+-")


def fiber_step(state: str, offset: int) -> str:
    """Image of a tribonacci fiber state under the branch offset ``offset``.

    Reaching 100 means matching on the next step, so it is reported as MATCHED.
    """
    if state == MATCHED:
        raise UndefinedTransition("MATCHED is absorbing")
    if state == "111":
        if offset not in START_TABLE:
            raise UndefinedTransition(f"offset {offset} not possible from the start state")
        return START_TABLE[offset]
    sign, body = state[0], state[1:]
    row = PHI_TABLE.get(body)
    if sign not in "+-" or row is None:
        raise UndefinedTransition(f"unknown state {state!r}")
    if offset not in row:
        raise UndefinedTransition(f"offset {offset} not allowed from {state}")
    target, flip = row[offset]
    if target == "100":
        return MATCHED
    new_sign = sign if flip > 0 else ("-" if sign == "+" else "+")
    return new_sign + target


def signed_offset(d: FieldElement, raw_offset: int) -> int:
    """Table label for a step taken from difference ``d`` with b - a = raw_offset."""
    return raw_offset if d.sign() > 0 else -raw_offset


def fiber_trace(f: NumberField, alpha, depth: int):
    """Follow the code of D_n along both critical orbits; list of {n, state, offset}."""
    multinacci_order(f)
    a = as_alpha(f, alpha)
    p, q = OneSidedPoint(f.zero, PLUS), OneSidedPoint(f.one, MINUS)
    out = []
    d = q.value - p.value
    for n in range(depth + 1):
        if (n > 0 and p.circle_equal(q)) or (f.beta * d).is_integer():
            # D = +-1/beta (code 10..0): the orbits meet on the next step
            out.append({"n": n, "state": MATCHED, "offset": None})
            break
        label = code_of_difference(f, d).label
        if n == depth:
            out.append({"n": n, "state": label, "offset": None})
            break
        p, dp = step(f, a, p)
        q, dq = step(f, a, q)
        out.append({"n": n, "state": label, "offset": signed_offset(d, dq - dp)})
        d = q.value - p.value
    return out


def fiber_trace_json(f: NumberField, alpha, depth: int) -> str:
    return json.dumps(fiber_trace(f, alpha, depth), indent=1)


@dataclass(frozen=True)
class Region:
    lo: FieldElement
    hi: FieldElement  # half-open [lo, hi)
    fiber: str

    def contains(self, x) -> bool:
        x = self.lo.field(x)
        return self.lo <= x < self.hi


def j_alpha_regions(f: NumberField, alpha) -> list:
    """Parameters x (the 0+ coordinate) where a tribonacci fiber state leads to matching in two steps.

    Only the regime alpha < 1 - 1/beta is implemented.
    """
    if multinacci_order(f) != 3:
        raise NotMultinacci("the fiber regions are defined for the tribonacci slope only")
    a = as_alpha(f, alpha)
    inv = f.beta.inverse()
    if not a < 1 - inv:
        raise RegimeNotImplemented("regions are only tabulated for alpha < 1 - 1/beta")
    b1 = (1 - a) * inv
    b2 = (2 - a) * inv
    i2 = inv * inv
    raw = [
        (b1 + i2, b2, "-010"),
        (i2, b1, "-010"),
        (f.zero, b1 - i2, "+010"),
        (b1, b2 - i2, "+010"),
        (inv + i2, b2, "-110"),
        (f.zero, b1 - i2, "+110"),
    ]
    out = []
    for lo, hi, s in raw:
        # intersect with the fiber domain I_e, where both orbit points fit in [0, 1]
        code = code_value(f, [int(c) for c in s[1:]])
        if s[0] == "+":
            hi = min(hi, 1 - code, key=_Key)
        else:
            lo = max(lo, code, key=_Key)
            hi = min(hi, f.one, key=_Key)
        if lo < hi:
            out.append(Region(lo, hi, s))
    return out


class _Key:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return self.v < other.v

    def __gt__(self, other):
        return self.v > other.v


# transitions of the tetrabonacci graph, unsigned codes; 1000 leads to matching
TETRA_EDGES = frozenset({
    ("0001", "0010", 0), ("0001", "1101", 1),
    ("1101", "0101", 2), ("1101", "1010", 1),
    ("0101", "1010", 0), ("0101", "0101", 1),
    ("1010", "1011", 2), ("1010", "0100", 1),
    ("1011", "1001", 2), ("1011", "0110", 1),
    ("0011", "1001", 1), ("0011", "0110", 0),
    ("0010", "0100", 0), ("0010", "1011", 1),
    ("0110", "0011", 1), ("0110", "1100", 0),
    ("1110", "1100", 1), ("1110", "0011", 2),
    ("0100", "1000", 0), ("0100", "0111", 1),
    ("1100", "1000", 1), ("1100", "0111", 2),
    ("0111", "1110", 0), ("0111", "0001", 1),
    ("1001", "0010", 1), ("1001", "1101", 2),
})
TETRA_START = ("1111", "0001")
TETRA_STATES = frozenset({"0001", "0010", "0011", "0100", "0101", "0110", "0111", "1000",
                         "1001", "1010", "1011", "1100", "1101", "1110", "1111"})
