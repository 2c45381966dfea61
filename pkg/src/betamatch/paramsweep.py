"""Exact enumeration of matching intervals in the parameter alpha.

On a parameter piece where both critical orbits have followed fixed digit
sequences for n steps, each orbit value is affine in alpha:

    T^n(0+) = c_n*alpha + r_plus,   T^n(0-) = c_n*alpha + r_minus,
    c_n = 1 + beta + ... + beta^(n-1).

The next image beta*v + alpha = c_{n+1}*alpha + beta*r is increasing in alpha,
so the digit changes exactly where it passes an integer j, at
alpha_j = (j - beta*r) / c_{n+1}.  The difference D = r_minus - r_plus does
not depend on alpha, and the whole piece matches at step n+1 as soon as
beta*D is an integer.

Endpoint bookkeeping.  At a crossing alpha_j the plus orbit already takes
the new digit (it belongs to the right piece) while the minus orbit still
takes the old one (it belongs to the left piece).  A parameter where both
orbits cross at once has an itinerary of its own; it is dropped, as are the
similar isolated parameters at the outer ends of a piece.  Only finitely
many parameters are lost at any depth.
"""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from .dynamics import MINUS, PLUS, matching_index
from .errors import DepthTooLarge
from .numberfield import FieldElement, NumberField

DEFAULT_DEPTH_CAP = 20
DEFAULT_PIECE_CAP = 4_000_000


def depth_cap() -> int:
    env = os.environ.get("BETAMATCH_DEPTH_CAP")
    return int(env) if env else DEFAULT_DEPTH_CAP


@dataclass(frozen=True, slots=True)
class AffineOrbit:
    c: FieldElement
    r: FieldElement
    side: int

    def at(self, alpha) -> FieldElement:
        return self.c * alpha + self.r


@dataclass(slots=True)
class AlphaPiece:
    lo: FieldElement
    hi: FieldElement
    lo_closed: bool
    hi_closed: bool
    n: int
    plus: AffineOrbit
    minus: AffineOrbit
    digits_plus: tuple = ()
    digits_minus: tuple = ()

    @property
    def difference(self) -> FieldElement:
        return self.minus.r - self.plus.r

    @property
    def size(self) -> FieldElement:
        return self.hi - self.lo

    def contains(self, alpha) -> bool:
        a = self.lo.field(alpha)
        left = self.lo <= a if self.lo_closed else self.lo < a
        right = a <= self.hi if self.hi_closed else a < self.hi
        return left and right

    def bracket(self, digits=6) -> str:
        return (("[" if self.lo_closed else "(") + self.lo.to_decimal(digits) + ", "
                + self.hi.to_decimal(digits) + ("]" if self.hi_closed else ")"))


@dataclass(slots=True)
class MatchingInterval:
    lo: FieldElement
    hi: FieldElement
    lo_closed: bool
    hi_closed: bool
    m: int
    digits_plus: tuple
    digits_minus: tuple

    @property
    def size(self) -> FieldElement:
        return self.hi - self.lo

    def contains(self, alpha) -> bool:
        a = self.lo.field(alpha)
        left = self.lo <= a if self.lo_closed else self.lo < a
        right = a <= self.hi if self.hi_closed else a < self.hi
        return left and right

    def bracket(self, digits=6) -> str:
        return (("[" if self.lo_closed else "(") + self.lo.to_decimal(digits) + ", "
                + self.hi.to_decimal(digits) + ("]" if self.hi_closed else ")"))


@dataclass
class SweepResult:
    field: NumberField
    depth: int
    region: tuple
    matched: list
    unresolved: list
    endpoint_outcomes: dict = dc_field(default_factory=dict)

    def unresolved_measure(self) -> FieldElement:
        return sum((p.size for p in self.unresolved), self.field.zero)

    def matched_measure(self) -> FieldElement:
        return sum((m.size for m in self.matched), self.field.zero)

    def find(self, alpha):
        """The matched interval or unresolved piece containing ``alpha`` (or None)."""
        for item in self.matched:
            if item.contains(alpha):
                return item
        for item in self.unresolved:
            if item.contains(alpha):
                return item
        return None


class _Coefficients:
    """c_n = (beta^n - 1)/(beta - 1) and 1/c_n, cached per field."""

    def __init__(self, f: NumberField):
        self.f = f
        self.c = [f.zero, f.one]
        self.inv = [None, f.one]

    def extend(self, n):
        while len(self.c) <= n:
            nxt = self.f.beta * self.c[-1] + 1
            self.c.append(nxt)
            self.inv.append(nxt.inverse())


def alpha_coefficient(f: NumberField, n: int) -> FieldElement:
    """1 + beta + ... + beta^(n-1), i.e. (beta^n - 1)/(beta - 1)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    acc = f.zero
    for _ in range(n):
        acc = f.beta * acc + 1
    return acc


def seed_piece(f: NumberField, lo=0, hi=1, lo_closed=True, hi_closed=False) -> AlphaPiece:
    lo, hi = f(lo), f(hi)
    if lo.sign() < 0 or (hi - 1).sign() > 0 or not lo < hi:
        raise ValueError("region must satisfy 0 <= lo < hi <= 1")
    return AlphaPiece(lo, hi, lo_closed, hi_closed, 0,
                      AffineOrbit(f.zero, f.zero, PLUS), AffineOrbit(f.zero, f.one, MINUS))


def _orbit_crossings(c1, inv_c1, br, lo, hi):
    """Start digit (just right of lo), integer status at lo/hi, and crossing list."""
    y_lo = c1 * lo + br
    y_hi = c1 * hi + br
    d_lo = y_lo.floor()
    lo_int = y_lo == d_lo
    top = y_hi.ceil()
    hi_int = y_hi == top
    cross = [((j - br) * inv_c1, j) for j in range(d_lo + 1, top)]
    return d_lo, lo_int, hi_int, cross


def _split(piece: AlphaPiece, coeffs: _Coefficients):
    """Advance one step: returns the subpieces at depth n+1."""
    f = piece.lo.field
    beta = f.beta
    n = piece.n
    c1, inv_c1 = coeffs.c[n + 1], coeffs.inv[n + 1]
    br_p = beta * piece.plus.r
    br_m = beta * piece.minus.r
    dp, _, p_hi_int, cross_p = _orbit_crossings(c1, inv_c1, br_p, piece.lo, piece.hi)
    dm, m_lo_int, _, cross_m = _orbit_crossings(c1, inv_c1, br_m, piece.lo, piece.hi)

    lo_closed = piece.lo_closed and not m_lo_int
    hi_closed = piece.hi_closed and not p_hi_int

    # merge the two sorted crossing lists: (alpha, orbit)
    events = []
    i = j = 0
    while i < len(cross_p) or j < len(cross_m):
        if j == len(cross_m):
            events.append((cross_p[i][0], PLUS)); i += 1
        elif i == len(cross_p):
            events.append((cross_m[j][0], MINUS)); j += 1
        else:
            ap, am = cross_p[i][0], cross_m[j][0]
            s = (ap - am).sign()
            if s < 0:
                events.append((ap, PLUS)); i += 1
            elif s > 0:
                events.append((am, MINUS)); j += 1
            else:
                events.append((ap, 0)); i += 1; j += 1

    out = []
    cur_lo, cur_lo_closed = piece.lo, lo_closed
    for a, who in events + [(piece.hi, None)]:
        if who is None:
            right_closed = hi_closed
        else:
            right_closed = who == MINUS
        out.append(AlphaPiece(
            cur_lo, a, cur_lo_closed, right_closed, n + 1,
            AffineOrbit(c1, br_p - dp, PLUS), AffineOrbit(c1, br_m - dm, MINUS),
            piece.digits_plus + (dp,), piece.digits_minus + (dm,)))
        if who is None:
            break
        cur_lo = a
        cur_lo_closed = who == PLUS
        if who in (PLUS, 0):
            dp += 1
        if who in (MINUS, 0):
            dm += 1
    return out


def piece_breakpoints(f: NumberField, piece: AlphaPiece) -> list:
    """Parameters inside (lo, hi) where either orbit's next digit changes."""
    coeffs = _Coefficients(f)
    coeffs.extend(piece.n + 1)
    return [p.hi for p in _split(piece, coeffs)[:-1]]


def _matches_next(f: NumberField, piece: AlphaPiece) -> bool:
    return (f.beta * piece.difference).is_integer()


def _advance_chunk(args):
    """Process a list of live pieces one level; returns (matched, survivors)."""
    f, pieces, n = args
    coeffs = _Coefficients(f)
    coeffs.extend(n + 1)
    return _advance(f, pieces, coeffs)


def _advance(f, pieces, coeffs):
    matched, live = [], []
    for p in pieces:
        if _matches_next(f, p):
            matched.append(MatchingInterval(p.lo, p.hi, p.lo_closed, p.hi_closed, p.n + 1,
                                            p.digits_plus, p.digits_minus))
        else:
            live.extend(_split(p, coeffs))
    return matched, live


def _run(f, live, start, depth, matched, jobs, piece_cap, progress=None):
    coeffs = _Coefficients(f)
    coeffs.extend(depth + 1)
    pool = ProcessPoolExecutor(jobs) if jobs and jobs > 1 else None
    try:
        for n in range(start, depth):
            if pool is not None and len(live) >= 256:
                size = -(-len(live) // (4 * jobs))
                chunks = [(f, live[i:i + size], n) for i in range(0, len(live), size)]
                new_live = []
                for got_m, got_l in pool.map(_advance_chunk, chunks):
                    matched.extend(got_m)
                    new_live.extend(got_l)
                live = new_live
            else:
                got_m, live = _advance(f, live, coeffs)
                matched.extend(got_m)
            if len(live) > piece_cap:
                raise DepthTooLarge(f"{len(live)} live pieces at depth {n + 1} exceeds the cap {piece_cap}")
            if progress:
                progress(n + 1, len(matched), len(live))
    finally:
        if pool is not None:
            pool.shutdown()
    return live


def _check_depth(depth, cap):
    if depth < 1:
        raise ValueError("depth must be >= 1")
    cap = depth_cap() if cap is None else cap
    if depth > cap:
        raise DepthTooLarge(f"depth {depth} exceeds the cap {cap} (set BETAMATCH_DEPTH_CAP to raise it)")


def sweep(f: NumberField, depth: int, region=None, jobs: int = 1, cap: int | None = None,
          piece_cap: int = DEFAULT_PIECE_CAP, progress=None) -> SweepResult:
    """Matching intervals with index <= depth inside ``region`` (default [0, 1)).

    ``region`` is an AlphaPiece from :func:`seed_piece` or a pair (lo, hi).
    Matched intervals come out sorted by their lower endpoint; the
    unresolved pieces cover the parameters with no matching up to ``depth``.
    """
    _check_depth(depth, cap)
    if region is None:
        seed = seed_piece(f)
    elif isinstance(region, AlphaPiece):
        seed = region
    else:
        seed = seed_piece(f, *region)
    matched = []
    live = _run(f, [seed], 0, depth, matched, jobs, piece_cap, progress)
    matched.sort(key=lambda m: _Key(m.lo))
    ends = {}
    for a in (seed.lo, seed.hi):
        if a.is_rational() and a.as_fraction() in (0, 1):
            ends[int(a.as_fraction())] = matching_index(f, a, depth)
    return SweepResult(f, depth, (seed.lo, seed.hi, seed.lo_closed, seed.hi_closed),
                       matched, live, ends)


def refine(result: SweepResult, extra: int, jobs: int = 1, cap: int | None = None,
           piece_cap: int = DEFAULT_PIECE_CAP, progress=None) -> SweepResult:
    """Continue a sweep on its unresolved pieces for ``extra`` more steps."""
    depth = result.depth + extra
    _check_depth(depth, cap)
    f = result.field
    new_matched = []
    live = _run(f, list(result.unresolved), result.depth, depth, new_matched, jobs, piece_cap, progress)
    matched = sorted(result.matched + new_matched, key=lambda m: _Key(m.lo))
    ends = {k: matching_index(f, k, depth) for k in result.endpoint_outcomes}
    return SweepResult(f, depth, result.region, matched, live, ends)


class _Key:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return self.v < other.v


# --------------------------------------------------------------------------
# output

CSV_COLUMNS = ["lo_decimal", "hi_decimal", "lo_coeffs", "hi_coeffs", "match_index",
               "size_decimal", "size_coeffs"]


def _coeff_text(x: FieldElement) -> str:
    return " ".join(x.coeff_strings())


def to_csv(result: SweepResult, digits: int = 15) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    rows = [(m, m.m) for m in result.matched] + [(p, -1) for p in result.unresolved]
    for item, idx in rows:
        size = item.size
        w.writerow([item.lo.to_decimal(digits), item.hi.to_decimal(digits),
                    _coeff_text(item.lo), _coeff_text(item.hi), idx,
                    size.to_decimal(digits), _coeff_text(size)])
    return buf.getvalue()


def _interval_json(item, digits):
    return {
        "lo": item.lo.coeff_strings(), "hi": item.hi.coeff_strings(),
        "lo_decimal": item.lo.to_decimal(digits), "hi_decimal": item.hi.to_decimal(digits),
        "lo_closed": item.lo_closed, "hi_closed": item.hi_closed,
        "digits_plus": list(item.digits_plus), "digits_minus": list(item.digits_minus),
    }


def to_json(result: SweepResult, digits: int = 15) -> dict:
    matched = []
    for m in result.matched:
        d = _interval_json(m, digits)
        d["match_index"] = m.m
        matched.append(d)
    return {
        "field": result.field.to_json(),
        "depth": result.depth,
        "matched": matched,
        "unresolved": [_interval_json(p, digits) for p in result.unresolved],
        "endpoints": {str(k): (v.matched_at if v.matched else None)
                      for k, v in sorted(result.endpoint_outcomes.items())},
    }
