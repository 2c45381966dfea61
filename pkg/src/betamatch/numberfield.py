"""Exact arithmetic in Q(beta) for a real algebraic integer beta > 1.

Elements are stored as an integer numerator vector over a common positive
denominator, reduced modulo the minimal polynomial.  Signs, floors and
decimal expansions are decided by fixed-point interval evaluation on a
bisected isolating interval of beta, refined until the enclosure is
conclusive.  Nothing here ever falls back to floating point.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DivisionByZero,
    FieldMismatch,
    Inconclusive,
    MultipleRoots,
    NoRoot,
    ReducibleP,
    RootNotGreaterThanOne,
    SignRefinementExhausted,
)

MAX_BISECTIONS = 4096


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` (or an int / Fraction) into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


# --------------------------------------------------------------------------
# polynomial helpers (ascending coefficient lists)

def _full_poly(minpoly):
    return list(minpoly) + [1]


def _sign_at(poly, x: Fraction) -> int:
    """Sign of an integer polynomial at a rational point, exactly."""
    a, b = x.numerator, x.denominator
    d = len(poly) - 1
    total = 0
    apow = 1
    for i, c in enumerate(poly):
        if c:
            total += c * apow * b ** (d - i)
        apow *= a
    return (total > 0) - (total < 0)


def _poly_eval(poly, x):
    acc = 0
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def _poly_rem(num, den):
    num = [Fraction(c) for c in num]
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        q = num[-1] / den[-1]
        for i, c in enumerate(den):
            num[shift + i] -= q * c
        num.pop()
    while num and num[-1] == 0:
        num.pop()
    return num


def sturm_sequence(poly):
    seq = [[Fraction(c) for c in poly]]
    deriv = [Fraction(i * c) for i, c in enumerate(poly)][1:]
    while deriv and deriv[-1] == 0:
        deriv.pop()
    if deriv:
        seq.append(deriv)
    while len(seq[-1]) > 1:
        r = _poly_rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return seq


def _variations(seq, x: Fraction) -> int:
    signs = [v for v in (_poly_eval(p, x) for p in seq) if v != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u > 0) != (v > 0))


def count_real_roots(poly, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of ``poly`` in the half-open (lo, hi]."""
    seq = sturm_sequence(poly)
    return _variations(seq, lo) - _variations(seq, hi)


def is_irreducible(poly) -> bool:
    """Irreducibility over Q of an integer polynomial (ascending coefficients)."""
    if len(poly) <= 2:
        return True
    import sympy

    x = sympy.Symbol("x")
    return bool(sympy.Poly(list(reversed(poly)), x, domain="ZZ").is_irreducible)


# --------------------------------------------------------------------------

class NumberField:
    """The field Q(beta) with beta the real root of ``minpoly`` in ``isolation``.

    ``minpoly`` holds the ascending coefficients c_0..c_{d-1} of the monic
    polynomial x^d + c_{d-1} x^{d-1} + ... + c_0.  Build instances through
    :func:`make_field` or :func:`field_from_minpoly`, which validate.
    """

    def __init__(self, minpoly: Sequence[int], isolation, name: str | None = None):
        self.minpoly = tuple(int(c) for c in minpoly)
        self.isolation = (parse_rational(isolation[0]), parse_rational(isolation[1]))
        self.degree = len(self.minpoly)
        self.name = name
        d = self.degree
        # x^j reduced mod minpoly, for j = d .. 2d-2
        table = {}
        vec = [-c for c in self.minpoly]
        for j in range(d, 2 * d - 1):
            table[j] = tuple(vec)
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for i in range(d):
                    vec[i] -= top * self.minpoly[i]
        self._reduce = table
        self._bracket = self.isolation
        self._bisections = 0
        self._powers = {}
        self._one = None
        self._beta = None

    # identity -----------------------------------------------------------
    def _key(self):
        return (self.minpoly, self.isolation)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<NumberField{label} {self.poly_str()} root in ({self.isolation[0]}, {self.isolation[1]})>"

    def __getstate__(self):
        return {"minpoly": self.minpoly, "isolation": self.isolation, "name": self.name}

    def __setstate__(self, state):
        self.__init__(state["minpoly"], state["isolation"], state["name"])

    def poly_str(self, var="x"):
        terms = [f"{var}^{self.degree}" if self.degree > 1 else var]
        for i in range(self.degree - 1, -1, -1):
            c = self.minpoly[i]
            if not c:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            mag = abs(c)
            body = f"{mag}{mono}" if (mag != 1 or not mono) else mono
            terms.append(("- " if c < 0 else "+ ") + body)
        return " ".join(terms)

    @property
    def poly(self):
        """Full ascending coefficient list including the leading 1."""
        return _full_poly(self.minpoly)

    # constructors -------------------------------------------------------
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field is not self and value.field != self:
                raise FieldMismatch("element belongs to a different field")
            return value
        if isinstance(value, (list, tuple)):
            return self.from_coeffs(value)
        q = parse_rational(value)
        num = [0] * self.degree
        num[0] = q.numerator
        return FieldElement._make(self, num, q.denominator)

    def from_coeffs(self, coeffs: Iterable) -> "FieldElement":
        coeffs = [parse_rational(c) for c in coeffs]
        if len(coeffs) > self.degree:
            # reduce a longer polynomial in beta
            acc = self.zero
            for c in reversed(coeffs):
                acc = acc * self.beta + self(c)
            return acc
        coeffs += [Fraction(0)] * (self.degree - len(coeffs))
        den = math.lcm(*(c.denominator for c in coeffs))
        return FieldElement._make(self, [int(c * den) for c in coeffs], den)

    @property
    def zero(self):
        return FieldElement._make(self, [0] * self.degree, 1)

    @property
    def one(self):
        if self._one is None:
            self._one = self(1)
        return self._one

    @property
    def beta(self):
        if self._beta is None:
            if self.degree == 1:
                self._beta = self(-self.minpoly[0])
            else:
                num = [0] * self.degree
                num[1] = 1
                self._beta = FieldElement._make(self, num, 1)
        return self._beta

    # root enclosure -----------------------------------------------------
    def _refine_to(self, width: Fraction):
        lo, hi = self._bracket
        poly = self.poly
        slo = _sign_at(poly, lo)
        while hi - lo > width:
            if self._bisections >= MAX_BISECTIONS:
                raise SignRefinementExhausted(
                    f"root bracket refinement exceeded {MAX_BISECTIONS} bisections")
            mid = (lo + hi) / 2
            s = _sign_at(poly, mid)
            self._bisections += 1
            if s == 0:  # rational root: impossible for irreducible degree > 1
                lo = hi = mid
                break
            if s == slo:
                lo = mid
            else:
                hi = mid
        self._bracket = (lo, hi)

    def root_bracket(self, bits: int = 64):
        """Rational bracket of beta of width at most 2**-bits."""
        if self.degree == 1:
            b = Fraction(-self.minpoly[0])
            return b, b
        self._refine_to(Fraction(1, 1 << bits))
        return self._bracket

    def _power_bounds(self, prec: int):
        """Integers L_i <= beta^i * 2^prec <= H_i for i < degree."""
        got = self._powers.get(prec)
        if got is not None:
            return got
        d = self.degree
        hi_bits = max(1, math.ceil(self.isolation[1]).bit_length())
        lo, hi = self.root_bracket(prec + d * hi_bits + 4)
        scale = 1 << prec
        L, H = [], []
        plo = phi = Fraction(1)
        for _ in range(d):
            L.append(math.floor(plo * scale))
            H.append(math.ceil(phi * scale))
            plo *= lo
            phi *= hi
        got = (tuple(L), tuple(H))
        self._powers[prec] = got
        return got

    def to_json(self):
        return {
            "minpoly": list(self.minpoly),
            "root_lo": str(self.isolation[0]),
            "root_hi": str(self.isolation[1]),
            **({"name": self.name} if self.name else {}),
        }


class FieldElement:
    """An exact element sum_i c_i beta^i of a :class:`NumberField`."""

    __slots__ = ("field", "num", "den", "_enc")

    def __init__(self, field: NumberField, coeffs: Sequence):
        el = field.from_coeffs(coeffs)
        self.field, self.num, self.den, self._enc = field, el.num, el.den, None

    @classmethod
    def _make(cls, field, num, den):
        g = math.gcd(den, *num)
        if g != 1:
            num = [c // g for c in num]
            den //= g
        obj = object.__new__(cls)
        obj.field = field
        obj.num = tuple(num)
        obj.den = den
        obj._enc = None
        return obj

    # views ----------------------------------------------------------------
    @property
    def coeffs(self):
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self):
        return not any(self.num)

    def is_rational(self):
        return not any(self.num[1:])

    def is_integer(self):
        return self.den == 1 and self.is_rational()

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is irrational")
        return Fraction(self.num[0], self.den)

    def __repr__(self):
        return f"FieldElement({[str(c) for c in self.coeffs]}, ~{self.to_decimal(6)})"

    def __str__(self):
        return self.to_decimal(10)

    def coeff_strings(self):
        return [str(c) for c in self.coeffs]

    # coercion ---------------------------------------------------------------
    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch("operands belong to different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return FieldElement._make(self.field, [a + b for a, b in zip(self.num, other.num)], self.den)
        return FieldElement._make(
            self.field,
            [a * other.den + b * self.den for a, b in zip(self.num, other.num)],
            self.den * other.den,
        )

    __radd__ = __add__

    def __neg__(self):
        obj = FieldElement._make(self.field, [-a for a in self.num], self.den)
        return obj

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return FieldElement._make(self.field, [a * q.numerator for a in self.num], self.den * q.denominator)
        other = self._other(other)
        if other is NotImplemented:
            return other
        d = self.field.degree
        a, b = self.num, other.num
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        table = self.field._reduce
        for j in range(2 * d - 2, d - 1, -1):
            t = prod[j]
            if t:
                red = table[j]
                for i in range(d):
                    if red[i]:
                        prod[i] += t * red[i]
        return FieldElement._make(self.field, prod[:d], self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            return self.field(Fraction(self.den, self.num[0]))
        d = self.field.degree
        # columns: numerator polynomial times beta^j
        col = FieldElement._make(self.field, list(self.num), 1)
        beta = self.field.beta
        cols = []
        for _ in range(d):
            cols.append(col.num)
            col = col * beta
        rows = [[Fraction(cols[j][i]) for j in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
        for c in range(d):
            p = next(r for r in range(c, d) if rows[r][c] != 0)
            rows[c], rows[p] = rows[p], rows[c]
            piv = rows[c][c]
            rows[c] = [v / piv for v in rows[c]]
            for r in range(d):
                if r != c and rows[r][c] != 0:
                    f = rows[r][c]
                    rows[r] = [u - f * v for u, v in zip(rows[r], rows[c])]
        sol = [rows[i][d] * self.den for i in range(d)]
        return self.field.from_coeffs(sol)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return self * (1 / Fraction(other))
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # exact identity ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return (self.num == other.num and self.den == other.den
                    and (self.field is other.field or self.field == other.field))
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        return hash((self.num, self.den, self.field.minpoly))

    # ordering -----------------------------------------------------------------
    def enclosure(self, prec: int):
        """Integers (lo, hi) with lo <= value * den * 2^prec <= hi."""
        enc = self._enc
        if enc is not None and enc[0] == prec:
            return enc[1], enc[2]
        L, H = self.field._power_bounds(prec)
        lo = hi = 0
        for n, l, h in zip(self.num, L, H):
            if n > 0:
                lo += n * l
                hi += n * h
            elif n < 0:
                lo += n * h
                hi += n * l
        self._enc = (prec, lo, hi)
        return lo, hi

    def _start_prec(self):
        bits = 48 + max(abs(c) for c in self.num).bit_length()
        return -(-bits // 32) * 32

    def sign(self) -> int:
        if self.is_rational():
            c = self.num[0]
            return (c > 0) - (c < 0)
        prec = self._enc[0] if self._enc is not None else self._start_prec()
        while True:
            lo, hi = self.enclosure(prec)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            prec *= 2

    def floor(self) -> int:
        if self.is_rational():
            return self.num[0] // self.den
        prec = self._enc[0] if self._enc is not None else self._start_prec()
        while True:
            lo, hi = self.enclosure(prec)
            scale = self.den << prec
            fl, fh = lo // scale, hi // scale
            if fl == fh:
                return fl  # irrational, so never an exact integer
            prec *= 2

    def ceil(self) -> int:
        if self.is_rational():
            return -((-self.num[0]) // self.den)
        return self.floor() + 1

    def __lt__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return (self - other).sign() < 0

    def __le__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return (self - other).sign() <= 0

    def __gt__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return (self - other).sign() > 0

    def __ge__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        if self.is_rational():
            return float(Fraction(self.num[0], self.den))
        lo, hi = self.enclosure(max(self._start_prec(), 80))
        return float(Fraction(lo + hi, 2 * (self.den << max(self._start_prec(), 80))))

    def to_decimal(self, digits: int = 10) -> str:
        """Correctly rounded decimal with ``digits`` places after the point."""
        if digits < 1:
            raise ValueError("digits must be >= 1")
        q = (self * 10 ** digits + Fraction(1, 2)).floor()
        neg = q < 0 or (q == 0 and self.sign() < 0)
        s = str(abs(q)).rjust(digits + 1, "0")
        return ("-" if neg else "") + s[:-digits] + "." + s[-digits:]


# --------------------------------------------------------------------------
# field-level operations

def make_field(minpoly: Sequence[int], isolation, name: str | None = None) -> NumberField:
    """Validate and build a :class:`NumberField`.

    Raises ReducibleP, NoRoot, MultipleRoots or RootNotGreaterThanOne.
    """
    minpoly = [int(c) for c in minpoly]
    if not minpoly:
        raise ValueError("minimal polynomial must have degree >= 1")
    lo, hi = parse_rational(isolation[0]), parse_rational(isolation[1])
    if not lo < hi:
        raise ValueError("isolation interval must satisfy lo < hi")
    poly = _full_poly(minpoly)
    if not is_irreducible(poly):
        raise ReducibleP(f"polynomial {poly[::-1]} (descending) is reducible over Q")
    if len(poly) == 2:
        root = Fraction(-poly[0])
        if not lo < root < hi:
            raise NoRoot(f"root {root} not in ({lo}, {hi})")
        if root <= 1:
            raise RootNotGreaterThanOne(f"root {root} is not > 1")
        return NumberField(minpoly, (lo, hi), name)
    n = count_real_roots(poly, lo, hi)  # hi is never a root (irreducible)
    if n == 0:
        raise NoRoot(f"no real root in ({lo}, {hi})")
    if n > 1:
        raise MultipleRoots(f"{n} real roots in ({lo}, {hi})")
    if lo < 1:
        if _sign_at(poly, Fraction(1)) == 0 or count_real_roots(poly, lo, Fraction(1)) == 1:
            raise RootNotGreaterThanOne("the isolated root is not > 1")
        lo = Fraction(1)
    if _sign_at(poly, lo) * _sign_at(poly, hi) >= 0:
        raise MultipleRoots("no sign change across the isolation interval")
    return NumberField(minpoly, (lo, hi), name)


def field_from_minpoly(minpoly: Sequence[int], name: str | None = None) -> NumberField:
    """Field of the largest real root of the monic polynomial, isolated automatically."""
    poly = _full_poly(minpoly)
    bound = Fraction(1 + max(abs(c) for c in minpoly))
    lo, hi = Fraction(1), bound
    if count_real_roots(poly, lo, hi) == 0:
        raise RootNotGreaterThanOne("polynomial has no real root > 1")
    while True:
        n = count_real_roots(poly, lo, hi)
        if n == 1 and _sign_at(poly, lo) != 0 and hi - lo <= Fraction(1, 64):
            break
        mid = (lo + hi) / 2
        if count_real_roots(poly, mid, hi) >= 1:
            lo = mid
        else:
            hi = mid
    # round outward to short decimals for readability
    for den in (100, 1000, 10 ** 4, 10 ** 6, 10 ** 9):
        a = Fraction(math.floor(lo * den), den)
        b = Fraction(math.ceil(hi * den), den)
        if b == hi:
            b += Fraction(1, den)
        if a >= 1 and _sign_at(poly, a) != 0 and count_real_roots(poly, a, b) == 1:
            lo, hi = a, b
            break
    return make_field(minpoly, (lo, hi), name)


def load_field(path) -> NumberField:
    """Read a field specification JSON file."""
    with open(path) as fh:
        data = json.load(fh)
    return field_from_json(data)


def field_from_json(data) -> NumberField:
    return make_field(data["minpoly"], (data["root_lo"], data["root_hi"]), data.get("name"))


def fe_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if a.field != b.field:
        raise FieldMismatch("operands belong to different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def fe_inverse(a: FieldElement) -> FieldElement:
    return a.inverse()


def fe_sign(a: FieldElement) -> int:
    return a.sign()


def to_decimal(a: FieldElement, digits: int) -> str:
    return a.to_decimal(digits)


# --------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class SlopeClass:
    tag: str  # "Pisot" | "Salem" | "OtherAlgebraic"
    conjugate_moduli_bounds: tuple  # ((lo, hi), ...) rational enclosures

    def __str__(self):
        return self.tag


def _fraction_of(x) -> Fraction:
    sign, man, exp, _ = x._mpf_
    man = -int(man) if sign else int(man)
    return Fraction(man * (1 << exp)) if exp >= 0 else Fraction(man, 1 << -exp)


def _sqrt_bounds(q: Fraction, bits: int):
    """Rationals lo <= sqrt(q) <= hi with hi - lo about 2**-bits."""
    scale = 1 << (2 * bits)
    n = q.numerator * scale // q.denominator
    r = math.isqrt(n)
    lo = Fraction(r, 1 << bits)
    hi = Fraction(r + 1, 1 << bits)
    return lo, hi


def _cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _cpoly(poly, z):
    acc = (Fraction(0), Fraction(0))
    for c in reversed(poly):
        acc = _cmul(acc, z)
        acc = (acc[0] + c, acc[1])
    return acc


def _abs2(z):
    return z[0] * z[0] + z[1] * z[1]


def certified_roots(poly, bits: int):
    """Disks (center, radius) each containing exactly one complex root.

    Centers come from mpmath; each radius is the rigorous bound
    deg * |p(z)| / |p'(z)|, evaluated exactly on Gaussian rationals.
    Returns None if the disks are not pairwise disjoint at this precision.
    """
    import mpmath

    d = len(poly) - 1
    deriv = [i * c for i, c in enumerate(poly)][1:]
    with mpmath.workdps(int(bits * 0.302) + 30):
        approx = mpmath.polyroots(list(reversed(poly)), maxsteps=400, extraprec=4 * bits)
        centers = []
        for z in approx:
            z = mpmath.mpc(z)
            centers.append((_fraction_of(z.real), _fraction_of(z.imag)))
    disks = []
    for z in centers:
        pz, dz = _cpoly(poly, z), _cpoly(deriv, z)
        den = _abs2(dz)
        if den == 0:
            return None
        r2 = Fraction(d * d) * _abs2(pz) / den
        _, r = _sqrt_bounds(r2, bits + 16)
        disks.append((z, r))
    for i in range(d):
        for j in range(i + 1, d):
            (zi, ri), (zj, rj) = disks[i], disks[j]
            gap2 = _abs2((zi[0] - zj[0], zi[1] - zj[1]))
            if (ri + rj) ** 2 >= gap2:
                return None
    return disks


def _on_unit_circle(disks, idx) -> bool:
    """For a reciprocal polynomial: does disk ``idx`` hold a root of modulus 1?

    Roots are closed under z -> 1/conj(z).  If that image of the disk meets
    no other disk, the unique root inside is its own image, so |z| = 1.
    """
    (c, r) = disks[idx]
    c2 = _abs2(c)
    if c2 <= r * r:
        return False
    den = c2 - r * r
    ic = (c[0] / den, c[1] / den)
    ir = r / den
    for j, (z, rz) in enumerate(disks):
        if j == idx:
            continue
        if (ir + rz) ** 2 >= _abs2((ic[0] - z[0], ic[1] - z[1])):
            return False
    return True


def conjugate_enclosures(f: NumberField, bits: int = 64):
    """Rational enclosures of |sigma(beta)| over the non-identity conjugates."""
    poly = f.poly
    if f.degree == 1:
        return ()
    reciprocal = poly == poly[::-1] or poly == [-c for c in poly[::-1]]
    blo, bhi = f.root_bracket(bits + 8)
    disks = None
    b = bits
    while disks is None:
        disks = certified_roots(poly, b)
        if disks is None:
            b *= 2
            if b > 4096:
                raise Inconclusive("could not separate the complex roots")
    mid = (blo + bhi) / 2
    main = min(range(len(disks)), key=lambda i: _abs2((disks[i][0][0] - mid, disks[i][0][1])))
    out = []
    for i, (z, r) in enumerate(disks):
        if i == main:
            continue
        if reciprocal and _on_unit_circle(disks, i):
            out.append((Fraction(1), Fraction(1)))
            continue
        mlo, mhi = _sqrt_bounds(_abs2(z), b + 16)
        out.append((max(Fraction(0), mlo - r), mhi + r))
    return tuple(out)


def classify(f: NumberField, bits: int = 64, max_bits: int = 1024) -> SlopeClass:
    """Pisot / Salem / OtherAlgebraic, from certified conjugate moduli."""
    while True:
        bounds = conjugate_enclosures(f, bits)
        if all(hi < 1 for _, hi in bounds):
            return SlopeClass("Pisot", bounds)
        if any(lo > 1 for lo, _ in bounds):
            return SlopeClass("OtherAlgebraic", bounds)
        exact_one = [lo == hi == 1 for lo, hi in bounds]
        undecided = [not e and lo <= 1 <= hi for e, (lo, hi) in zip(exact_one, bounds)]
        if not any(undecided) and any(exact_one):
            return SlopeClass("Salem", bounds)
        bits *= 2
        if bits > max_bits:
            raise Inconclusive("conjugate moduli enclosures straddle 1")
