"""Size statistics of matching intervals and box-dimension estimates.

For a base b the count a_n is the number of matching intervals J with
-(n+1) <= log_b |J| < -n.  The box dimension of the non-matching set is
the growth rate limsup (1/n) log_b a_n; here it is estimated as the
least-squares slope of log_b a_n against n over a range of n where the
enumeration is complete.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field as dc_field
from decimal import Decimal
from fractions import Fraction

import mpmath
import numpy as np

from .errors import EmptySweep, InsufficientData, NotQuadraticPisot
from .numberfield import FieldElement, NumberField

# first 13 terms as printed for beta = 2 + sqrt(2)
A038199 = (1, 2, 6, 12, 30, 54, 126, 240, 504, 990, 2046, 4020, 8190)


def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@dataclass
class SizeHistogram:
    bins: list            # (size, count) by decreasing exact size
    log_bins: list        # (n, a_n) for every n from the first to the last non-empty bin
    base: object
    by_index: list = dc_field(default_factory=list)  # (m, count)

    @property
    def exact_counts(self):
        return [c for _, c in self.bins]

    @property
    def log_counts(self):
        return [c for _, c in self.log_bins]

    def total(self) -> int:
        return sum(self.exact_counts)


class _Key:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return self.v < other.v


def _base_value(f: NumberField, base):
    """Normalise a base: None -> beta; field elements stay exact; others become mpmath numbers."""
    if base is None:
        return f.beta
    if isinstance(base, FieldElement):
        return base
    if isinstance(base, (int, Fraction)):
        return f(base)
    return mpmath.mpf(str(base))


def _log(x) -> float:
    if isinstance(x, FieldElement):
        return float(mpmath.log(mpmath.mpf(x.to_decimal(30))))
    return float(mpmath.log(x))


class _LogBinner:
    """n with b^-(n+1) <= size < b^-n, decided exactly when b is a field element."""

    def __init__(self, base):
        self.base = base
        self.exact = isinstance(base, FieldElement)
        self.log_b = _log(base)
        if self.exact:
            self.inv = base.inverse()
            self.powers = [base.field.one]

    def _power(self, n):
        while len(self.powers) <= n:
            self.powers.append(self.powers[-1] * self.inv)
        return self.powers[n]

    def __call__(self, size: FieldElement) -> int:
        if self.exact:
            n = max(0, math.ceil(-_log(size) / self.log_b) - 1)
            while n > 0 and size >= self._power(n):
                n -= 1
            while size < self._power(n + 1):
                n += 1
            if size >= self._power(n):
                raise ValueError("interval size is at least 1")
            return n
        with mpmath.workdps(40):
            v = -mpmath.log(mpmath.mpf(size.to_decimal(35))) / mpmath.log(self.base)
            return int(mpmath.ceil(v)) - 1


def size_histogram(result, base=None) -> SizeHistogram:
    """Exact-size grouping, log-binned counts (default base beta) and counts by matching index."""
    if not result.matched:
        raise EmptySweep("the sweep contains no matching interval")
    f = result.field
    b = _base_value(f, base)
    exact = Counter(m.size for m in result.matched)
    bins = sorted(exact.items(), key=lambda kv: _Key(kv[0]), reverse=True)
    binner = _LogBinner(b)
    logc = Counter()
    for size, count in exact.items():
        logc[binner(size)] += count
    lo, hi = min(logc), max(logc)
    log_bins = [(n, logc.get(n, 0)) for n in range(lo, hi + 1)]
    idx = Counter(m.m for m in result.matched)
    by_index = sorted(idx.items())
    return SizeHistogram(bins, log_bins, b, by_index)


@dataclass
class DimensionEstimate:
    value: float
    base: object
    fit_range: tuple
    per_n: list               # (n, (1/n) log a_n)
    slope: float
    intercept: float
    residual: float
    plateau: bool
    cover_estimate: float | None
    log_base: object = None

    def summary(self) -> str:
        return (f"estimate {self.value:.4f} (fit n in [{self.fit_range[0]}, {self.fit_range[1]}], "
                f"residual {self.residual:.3g}, cover {self.cover_estimate if self.cover_estimate is None else round(self.cover_estimate, 4)})")


def default_fit_range(depth: int) -> tuple:
    """Bins up to depth - 2 are complete; the sparse low bins are left out too."""
    n1 = depth - 2
    return n1 - int(0.6 * n1), n1


def box_dimension_estimate(result, base=None, fit_range=None, log_base=None,
                           hist: SizeHistogram | None = None) -> DimensionEstimate:
    """Least-squares slope of log a_n against n.

    ``base`` sets the binning; ``log_base`` (default: the same) the logarithm
    applied to the counts, so the fitted slope scales by log(base)/log(log_base).
    """
    if hist is None:
        hist = size_histogram(result, base)
    b = hist.base
    lb = b if log_base is None else _base_value(result.field, log_base)
    log_lb = _log(lb)
    n0, n1 = fit_range if fit_range is not None else default_fit_range(result.depth)
    pts = [(n, c) for n, c in hist.log_bins if n0 <= n <= n1 and c > 0]
    if len(pts) < 3:
        raise InsufficientData(f"only {len(pts)} non-empty bins in [{n0}, {n1}]")
    xs = np.array([n for n, _ in pts], dtype=float)
    ys = np.array([math.log(c) / log_lb for _, c in pts])
    (slope, intercept), res, *_ = np.polyfit(xs, ys, 1, full=True)
    residual = float(math.sqrt(res[0] / len(pts))) if len(res) else 0.0
    per_n = [(n, math.log(c) / log_lb / n) for n, c in hist.log_bins if c > 0 and n > 0]
    tail = [v for n, v in per_n if n0 <= n <= n1][-3:]
    plateau = len(tail) == 3 and max(tail) - min(tail) < 0.05
    cover = None
    if result.unresolved:
        cover = math.log(len(result.unresolved)) / _log(b) / result.depth
    value = min(1.0, max(0.0, float(slope)))
    return DimensionEstimate(value, b, (n0, n1), per_n, float(slope), float(intercept),
                             residual, plateau, cover, lb)


@dataclass
class ReferenceReport:
    reference: str
    compared: int
    first_mismatch: int      # index of the first disagreement (== compared if none)
    counts: list
    expected: list

    @property
    def all_match(self):
        return self.first_mismatch == self.compared

    def __str__(self):
        return (f"{self.reference}: {self.first_mismatch} of {self.compared} leading entries agree")


def reference_compare(counts, reference="A038199") -> ReferenceReport:
    """Compare a count sequence against the totient function, A038199 or a custom list."""
    counts = list(counts)
    if isinstance(reference, str):
        name = reference
        if reference.lower() == "totient":
            expected = [totient(n) for n in range(1, len(counts) + 1)]
        elif reference.upper() == "A038199":
            expected = list(A038199)
        else:
            raise ValueError(f"unknown reference {reference!r}")
    else:
        name, expected = "custom", list(reference)
    compared = min(len(counts), len(expected))
    k = 0
    while k < compared and counts[k] == expected[k]:
        k += 1
    return ReferenceReport(name, compared, k, counts[:compared], expected[:compared])


def quadratic_form(f: NumberField):
    """(sign, k, d) for minimal polynomial x^2 - kx + sign*d, or None."""
    if f.degree != 2:
        return None
    c0, c1 = f.minpoly
    k, d = -c1, abs(c0)
    if k < 1 or d < 1:
        return None
    return (1 if c0 > 0 else -1), k, d


def quadratic_dimension_formula(f: NumberField, digits: int = 12) -> str:
    """log d / log beta for a quadratic Pisot slope with beta^2 = k*beta -+ d."""
    form = quadratic_form(f)
    if form is None:
        raise NotQuadraticPisot(f"{f.poly_str()} is not of the form x^2 - kx +- d")
    sign, k, d = form
    if not (k > d + 1 if sign > 0 else k > d - 1):
        raise NotQuadraticPisot(f"{f.poly_str()} is not Pisot")
    with mpmath.workdps(50):
        beta = mpmath.mpf(f.beta.to_decimal(45))
        v = mpmath.log(d) / mpmath.log(beta)
        return f"{Decimal(mpmath.nstr(v, digits + 10)):.{digits}f}"


def stats_json(hist: SizeHistogram, estimate: DimensionEstimate | None = None, digits: int = 15):
    out = {
        "bins": [{"size_coeffs": s.coeff_strings(), "size_decimal": s.to_decimal(digits), "count": c}
                 for s, c in hist.bins],
        "a_n": [{"n": n, "count": c} for n, c in hist.log_bins],
        "by_match_index": [{"m": m, "count": c} for m, c in hist.by_index],
    }
    if estimate is not None:
        out["estimate"] = {
            "value": round(estimate.value, 10),
            "slope": round(estimate.slope, 10),
            "fit_range": list(estimate.fit_range),
            "residual": round(estimate.residual, 10),
            "plateau": estimate.plateau,
            "cover_estimate": None if estimate.cover_estimate is None else round(estimate.cover_estimate, 10),
            "per_n": [{"n": n, "value": round(v, 10)} for n, v in estimate.per_n],
        }
    return out


def plot_tsv(hist: SizeHistogram) -> str:
    """Two columns: n and log_b a_n (empty bins skipped)."""
    log_b = _log(hist.base)
    lines = ["n\tlog_b_a_n"]
    for n, c in hist.log_bins:
        if c > 0:
            lines.append(f"{n}\t{math.log(c) / log_b:.10f}")
    return "\n".join(lines) + "\n"
