"""Quadratic Pisot slopes beta^2 = k*beta -+ d: plateau maps and cylinders.

Case +d (beta^2 - k beta + d = 0, k > d + 1).  gamma = beta - (k - 1) is the
difference after one step when alpha < k - beta.  While the difference stays
gamma the 0+ orbit lives on S = [0, k - beta), a circle once 0 ~ k - beta.
On the forbidden regions V_i the difference becomes -d/beta and the orbits
match one step later; g_alpha collapses each V_i to the point k - beta ~ 0.

Case -d (beta^2 - k beta - d = 0, k > d - 1).  gamma = (k + 1) - beta and,
for alpha >= k + 1 - beta, the difference alternates between gamma and
-gamma.  f1 acts on the lower point in [0, 1 - gamma] (plateaus V_i with
value gamma), f2 on the upper point in [gamma, 1] (plateaus W_i with value
1 - gamma); g_alpha = f2 o f1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .dynamics import as_alpha
from .errors import EmptyCylinder, NotPisotQuadratic, WrongRegime
from .numberfield import FieldElement, NumberField
from .stats import quadratic_form


@dataclass(frozen=True)
class QuadraticCase:
    sign: int  # +1 for beta^2 - k beta + d, -1 for beta^2 - k beta - d
    k: int
    d: int
    gamma: FieldElement
    circle_length: FieldElement

    @property
    def label(self):
        return "+d" if self.sign > 0 else "-d"


def quadratic_case(f: NumberField) -> QuadraticCase:
    form = quadratic_form(f)
    if form is None:
        raise NotPisotQuadratic(f"{f.poly_str()} is not of the form x^2 - kx +- d")
    sign, k, d = form
    beta = f.beta
    if sign > 0:
        if not k > d + 1:
            raise NotPisotQuadratic(f"{f.poly_str()}: k > d + 1 fails, beta is not Pisot")
        gamma = beta - (k - 1)
        return QuadraticCase(1, k, d, gamma, k - beta)
    if not k > d - 1:
        raise NotPisotQuadratic(f"{f.poly_str()}: k > d - 1 fails, beta is not Pisot")
    gamma = (k + 1) - beta
    return QuadraticCase(-1, k, d, gamma, 1 - gamma)


def _t(f: NumberField, alpha: FieldElement, x: FieldElement) -> FieldElement:
    """T_alpha on a real point; 1 is read as the left limit."""
    y = f.beta * x + alpha
    if x == 1:
        return y - (y.ceil() - 1)
    return y - y.floor()


@dataclass(frozen=True)
class Plateau:
    lo: FieldElement
    hi: FieldElement  # half-open [lo, hi); on a circle lo > hi means the arc wraps
    value: FieldElement

    def contains(self, x, length=None) -> bool:
        if self.lo < self.hi:
            return self.lo <= x < self.hi
        return x >= self.lo or x < self.hi


@dataclass
class PlateauMap:
    case: QuadraticCase
    alpha: FieldElement
    plateaus: list                 # +d: V_i; -d: plateaus of the composition on [0, 1 - gamma)
    slope: FieldElement
    v: list = dc_field(default_factory=list)   # first-iterate plateaus V_i
    w: list = dc_field(default_factory=list)   # -d only: W_i

    @property
    def field(self):
        return self.alpha.field

    def f1(self, x: FieldElement) -> FieldElement:
        for p in self.v:
            if p.lo <= x < p.hi:
                return p.value
        return _t(self.field, self.alpha, x)

    def f2(self, x: FieldElement) -> FieldElement:
        for p in self.w:
            if p.lo <= x < p.hi:
                return p.value
        return _t(self.field, self.alpha, x)

    def __call__(self, x) -> FieldElement:
        """g_alpha(x) on the circle [0, circle_length)."""
        x = self.field(getattr(x, "value", x))
        length = self.case.circle_length
        if x == length:
            x = self.field.zero
        if self.case.sign > 0:
            y = self.f1(x)
        else:
            y = self.f2(self.f1(x))
        return self.field.zero if y == length else y

    def in_plateau(self, x) -> bool:
        x = self.field(x)
        return any(p.contains(x) for p in self.plateaus)

    def to_json(self, digits: int = 12) -> dict:
        def enc(items):
            return [{"lo": p.lo.coeff_strings(), "hi": p.hi.coeff_strings(),
                     "lo_decimal": p.lo.to_decimal(digits), "hi_decimal": p.hi.to_decimal(digits),
                     "value": p.value.coeff_strings(), "value_decimal": p.value.to_decimal(digits)}
                    for p in items]
        f = self.field
        inv = f.beta.inverse()
        k_br = (f.beta + self.alpha).ceil() - 1
        return {
            "field": f.to_json(), "case": self.case.label, "k": self.case.k, "d": self.case.d,
            "alpha": self.alpha.coeff_strings(),
            "gamma": self.case.gamma.to_decimal(digits),
            "circle_length": self.case.circle_length.to_decimal(digits),
            "branch_boundaries": [((i - self.alpha) * inv).to_decimal(digits) for i in range(1, k_br + 1)],
            "V": enc(self.v), "W": enc(self.w), "plateaus": enc(self.plateaus),
        }


def _composition_plateaus(f, case, a, v, w):
    """Plateaus of f2 o f1 on the circle [0, 1 - gamma): the V_i plus f1-preimages of the W_j."""
    beta, inv = f.beta, f.beta.inverse()
    length = case.circle_length
    t0 = _t(f, a, case.gamma)  # f2(gamma), the value of g on every V_i
    cuts = {f.zero, length}
    for p in v:
        cuts |= {p.lo, p.hi}
    j = 1
    while (j - a) * inv < length:
        cuts.add((j - a) * inv)
        j += 1
    pts = sorted(cuts, key=_K)
    raw = [(p.lo, p.hi, t0) for p in v]
    for lo, hi in zip(pts, pts[1:]):
        if any(p.lo <= lo < p.hi for p in v):
            continue
        digit = (beta * lo + a).floor()
        ylo, yhi = beta * lo + a - digit, beta * hi + a - digit
        for q in w:
            s, e = max(ylo, q.lo, key=_K), min(yhi, q.hi, key=_K)
            if s < e:
                raw.append(((s + digit - a) * inv, (e + digit - a) * inv, length))
    raw.sort(key=lambda r: _K(r[0]))
    merged = []
    for lo, hi, val in raw:
        if merged and merged[-1][1] == lo and merged[-1][2] == val:
            merged[-1] = (merged[-1][0], hi, val)
        else:
            merged.append((lo, hi, val))
    # the identification 0 ~ 1 - gamma may join the last and first plateaus
    if len(merged) > 1 and merged[0][0].is_zero() and merged[-1][1] == length and merged[0][2] == merged[-1][2]:
        first = merged.pop(0)
        last = merged.pop()
        merged.append((last[0], first[1], first[2]))
    return [Plateau(lo, hi, val) for lo, hi, val in merged]


class _K:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return self.v < other.v

    def __gt__(self, other):
        return self.v > other.v


def plateau_map(f: NumberField, case: QuadraticCase, alpha) -> PlateauMap:
    a = as_alpha(f, alpha)
    beta, inv = f.beta, f.beta.inverse()
    k, d, gamma = case.k, case.d, case.gamma
    if case.sign > 0:
        v = [Plateau((i + k - d - a) * inv - gamma, (i + 1 - a) * inv, case.circle_length)
             for i in range(d)]
        return PlateauMap(case, a, v, beta, v, [])
    if a < k + 1 - beta:
        raise WrongRegime("for alpha < k + 1 - beta the orbits match at step 2; no plateau map")
    # lower point x with digit(x + gamma) - digit(x) = k - d, i.e. V_i = W_(i+k-d) - gamma
    v = [Plateau((i - a) * inv, (i + 1 + k - d - a) * inv - gamma, gamma) for i in range(1, d + 1)]
    w = [Plateau((i - (k - d) - a) * inv + gamma, (i + 1 - a) * inv, 1 - gamma)
         for i in range(k - d + 1, k + 1)]
    comp = _composition_plateaus(f, case, a, v, w)
    return PlateauMap(case, a, comp, beta * beta, v, w)


# a plateau hit at n for x = T(0+) (time 1) puts D = -+d/beta at time n + 2
MATCH_OFFSET = 3


@dataclass(frozen=True)
class EscapeOutcome:
    hit_at: int | None
    bound: int

    @property
    def kind(self):
        return "HitsPlateauAt" if self.hit_at is not None else "SurvivesTo"

    def matching_index(self):
        """Matching index implied for x = T(0+) (with first="f2" in the -d case)."""
        return None if self.hit_at is None else self.hit_at + MATCH_OFFSET

    def __str__(self):
        return f"hits a plateau at {self.hit_at}" if self.hit_at is not None else f"survives to {self.bound}"


def escape_depth(f: NumberField, case: QuadraticCase, alpha, x, bound: int, first: str = "f2") -> EscapeOutcome:
    """First n with the n-th point of the tracked orbit in a forbidden region.

    +d: iterate g_alpha on S.  -d: apply f1 and f2 alternately, ``first``
    naming the map used at n = 0 (f2 for an upper point such as alpha, f1
    for a lower point such as T(0-)).  Counting is per single application.
    """
    pm = plateau_map(f, case, alpha)
    x = f(getattr(x, "value", x))
    if case.sign > 0:
        if not (x.sign() >= 0 and x <= case.circle_length):
            raise WrongRegime("point outside the circle [0, k - beta]")
        if x == case.circle_length:
            x = f.zero
        for n in range(bound + 1):
            if any(p.lo <= x < p.hi for p in pm.v):
                return EscapeOutcome(n, bound)
            x = pm(x)
        return EscapeOutcome(None, bound)
    use_f1 = first == "f1"
    for n in range(bound + 1):
        regions = pm.v if use_f1 else pm.w
        if any(p.lo <= x < p.hi for p in regions):
            return EscapeOutcome(n, bound)
        x = _t(f, pm.alpha, x)
        use_f1 = not use_f1
    return EscapeOutcome(None, bound)


# --------------------------------------------------------------------------
# cylinders of the coding by Z_0, ..., Z_{d-1} (case +d)

@dataclass(frozen=True)
class Arc:
    start: FieldElement   # in [0, L)
    length: FieldElement
    image: FieldElement   # g^n(start) in [0, L)

    def end(self, circle_length):
        e = self.start + self.length
        return e - circle_length if e > circle_length else e

    def wraps(self, circle_length) -> bool:
        return self.start + self.length > circle_length


def _mod(x: FieldElement, length: FieldElement) -> FieldElement:
    q = (x / length).floor()
    return x - q * length


def coding_arcs(pm: PlateauMap):
    """C_e = Z_e minus V_e: the arc from the end of V_e to the start of V_{e+1}."""
    case = pm.case
    length = case.circle_length
    inv = pm.field.beta.inverse()
    d = case.d
    out = []
    for e in range(d):
        start = pm.v[e].hi
        out.append(Arc(_mod(start, length), length * inv, pm.field.zero))
    return out


def cylinder_components(f: NumberField, case: QuadraticCase, alpha, word) -> list:
    """Arcs of S coded by ``word``; each is mapped onto S by g^n with slope beta^n.

    Components are half-open arcs of the circle S = [0, k - beta); an arc
    may run through the identified point 0 ~ k - beta.
    """
    if case.sign < 0:
        raise WrongRegime("cylinders are implemented for the +d case")
    word = list(word)
    if not word:
        raise ValueError("word must be non-empty")
    if any(not 0 <= e < case.d for e in word):
        raise EmptyCylinder(f"letters must lie in 0..{case.d - 1}")
    pm = plateau_map(f, case, alpha)
    length = case.circle_length
    beta = f.beta
    c_arcs = coding_arcs(pm)
    comps = [c_arcs[word[0]]]
    scale = beta  # slope of g^n on the current components
    for e in word[1:]:
        target = c_arcs[e]
        new = []
        for arc in comps:
            u0 = arc.image
            u1 = arc.image + scale * arc.length
            for m in (-1, 0, 1):
                s = target.start + m * length
                t = s + target.length
                lo, hi = max(u0, s, key=_K), min(u1, t, key=_K)
                if lo < hi:
                    start = _mod(arc.start + (lo - u0) / scale, length)
                    new.append(Arc(start, (hi - lo) / scale, beta * (lo - s)))
        comps = _merge_arcs(new, length, scale * beta)
        scale = scale * beta
    if not comps:
        raise EmptyCylinder(f"no points with itinerary {word}")
    return comps


def _merge_arcs(arcs, length, scale):
    """Join arcs that continue each other both in S and in the image."""
    arcs = sorted(arcs, key=lambda a: _K(a.start))
    out = []
    for a in arcs:
        if out:
            prev = out[-1]
            end = prev.start + prev.length
            if end == a.start and _mod(prev.image + scale * prev.length, length) == a.image:
                out[-1] = Arc(prev.start, prev.length + a.length, prev.image)
                continue
        out.append(a)
    if len(out) > 1:
        first, last = out[0], out[-1]
        if last.start + last.length == length and first.start.is_zero() \
                and _mod(last.image + scale * last.length, length) == first.image:
            out = [Arc(last.start, last.length + first.length, last.image)] + out[1:-1]
    return out


def plateau_json(pm: PlateauMap) -> str:
    return json.dumps(pm.to_json(), indent=1)
