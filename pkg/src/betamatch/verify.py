"""Built-in reproduction suite: one check per acceptance criterion.

Each check returns a CheckResult; ``run_all`` collects them and
``format_table`` renders the pass/fail table printed by ``betamatch verify``.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .dynamics import critical_orbits, markov_test, matching_index, rational_grid
from .fields import bundled_field
from .multinacci import MATCHED, PHI_TABLE, code_of_difference, predict_matching
from .numberfield import FieldElement, NumberField, field_from_minpoly
from .paramsweep import sweep
from .quadratic import cylinder_components, quadratic_case
from .stats import (A038199, box_dimension_estimate, reference_compare, size_histogram,
                    totient)
from .transitions import MATCHING, START, build_graph, labeled_edges, node_label


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0
    gated: bool = True

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d}. {self.title} ({self.seconds:.1f} s): {self.detail}"


def rational_below(x: FieldElement, den: int = 10 ** 9) -> Fraction:
    """Largest p/den strictly below x (x irrational or not a multiple of 1/den)."""
    p = (x * den).floor()
    q = Fraction(p, den)
    return q if x.field(q) < x else q - Fraction(1, den)


def random_rationals_between(lo: FieldElement, hi: FieldElement, count: int, rng: random.Random):
    """Random rationals strictly inside (lo, hi)."""
    a, b = rational_below(lo) + Fraction(1, 10 ** 9), rational_below(hi)
    out = []
    while len(out) < count:
        x = a + (b - a) * Fraction(rng.randrange(1, 10 ** 6), 10 ** 6)
        if lo < x < hi:
            out.append(x)
    return out


# --------------------------------------------------------------------------

def check_quadratic_immediate() -> CheckResult:
    f = bundled_field("k5_plus3")
    k = 5
    res = sweep(f, 3)
    target = [m for m in res.matched if m.lo == k - f.beta and m.hi == 1]
    ok = len(target) == 1 and target[0].m == 2
    rng = random.Random(1)
    sample = random_rationals_between(k - f.beta, f.one, 20, rng)
    bad = [a for a in sample if matching_index(f, a, 10).matched_at != 2]
    ok = ok and not bad
    where = target[0].bracket() if target else "missing"
    return CheckResult(1, "x^2-5x+3: [k-beta, 1) matches at 2", ok,
                       f"interval {where}, {20 - len(bad)}/20 samples match at 2")


def check_multinacci_k() -> CheckResult:
    parts, ok = [], True
    for name in ("golden", "tribonacci", "tetrabonacci"):
        f = bundled_field(name)
        k = f.degree
        top = rational_below(f.beta.inverse() ** k)
        grid = rational_grid(Fraction(0), top, 50, closed=True)
        good = sum(matching_index(f, a, 20).matched_at == k for a in grid)
        ok = ok and good == 50
        parts.append(f"{name} {good}/50 at {k}")
    return CheckResult(2, "multinacci: alpha < 1/beta^k matches at k", ok, ", ".join(parts))


def check_tribonacci_four() -> CheckResult:
    f = bundled_field("tribonacci")
    inv = f.beta.inverse()
    lo, hi = inv, inv ** 2 + 2 * inv ** 3
    grid = [lo + (hi - lo) * Fraction(i, 49) for i in range(50)]
    inner = sum(matching_index(f, a, 20).matched_at == 4 for a in grid[1:-1])
    # at both endpoints one critical orbit lands on the discontinuity after
    # three steps; it matches at 4 only when continued from the other side
    ends = [matching_index(f, a, 20, discontinuity="either").matched_at for a in (lo, hi)]
    strict = [matching_index(f, a, 20).matched_at for a in (lo, hi)]
    pred = all(predict_matching(f, a).m == 4 for a in grid)
    return CheckResult(3, "tribonacci: [1/beta, 1/beta^2+2/beta^3] matches at 4",
                       inner == 48 and ends == [4, 4] and pred,
                       f"{inner}/48 interior grid points at 4; endpoints at {ends[0]} and {ends[1]} "
                       f"with either-side continuation at 0 (persistent sides: {strict})")


def check_salem_orbits() -> CheckResult:
    f = bundled_field("salem4")
    beta, inv = f.beta, f.beta.inverse()
    lo, hi = 1 / (beta ** 4 + 1), beta / (beta ** 4 + 1)
    ok, notes = True, []
    for a in (Fraction(3, 20), Fraction(4, 25), Fraction(17, 100)):
        inside = lo < a < hi
        plus, minus = critical_orbits(f, a, 3)
        expect_plus = [f.zero, f(a), (beta + 1) * a, (beta ** 2 + beta + 1) * a]
        expect_minus = [f.one, beta + a - 1, (beta + 1) * a + inv - inv ** 2,
                        (beta ** 2 + beta + 1) * a - inv]
        forms = ([p.value for p in plus.points] == expect_plus
                 and [p.value for p in minus.points] == expect_minus)
        m = matching_index(f, a, 20).matched_at
        ok = ok and inside and forms and m == 4
        notes.append(f"{a}: m={m}, closed forms {'ok' if forms else 'differ'}")
    return CheckResult(4, "Salem x^4-x^3-x^2-x+1: displayed orbits, matching at 4", ok, "; ".join(notes))


def check_markov_examples() -> CheckResult:
    salem = bundled_field("salem4")
    mk = markov_test(salem, 0, 50)
    ma = matching_index(salem, 0, 50)
    a_ok = mk.finite and not ma.matched
    golden = bundled_field("golden")
    alpha = golden.beta.inverse() ** 3
    mb = matching_index(golden, alpha, 50)
    mkb = markov_test(golden, alpha, 50)
    b_ok = mb.matched_at == 2 and mkb.finite and mkb.shared_cycle
    silver = bundled_field("silver")
    # 16/113 = 355/113 - 3 and the previous convergent 22/7 - 3 = 1/7
    mc = [matching_index(silver, a, 50).matched_at for a in (Fraction(16, 113), Fraction(1, 7))]
    c_ok = mc == [2, 2]
    return CheckResult(5, "three Markov/matching examples", a_ok and b_ok and c_ok,
                       f"(a) {mk.kind}, {ma}; (b) {mb}, shared cycle {mkb.shared_cycle}; "
                       f"(c) matched at {mc[0]} (and {mc[1]} for 1/7)")


def check_totient() -> CheckResult:
    hist = size_histogram(sweep(bundled_field("golden"), 13))
    counts = hist.exact_counts[:10]
    rep = reference_compare(counts, "totient")
    ok = rep.first_mismatch >= 8
    return CheckResult(6, "golden: counts per exact size are Euler's totient", ok,
                       f"{counts} vs {[totient(n) for n in range(1, 11)]} ({rep.first_mismatch}/10 agree)")


_cache: dict = {}


def _two_plus_sqrt2_sweep():
    if "2+sqrt2" not in _cache:
        _cache["2+sqrt2"] = sweep(bundled_field("two_plus_sqrt2"), 14)
    return _cache["2+sqrt2"]


def check_a038199() -> CheckResult:
    hist = size_histogram(_two_plus_sqrt2_sweep())
    counts = hist.log_counts[:8]
    rep = reference_compare(counts, "A038199")
    return CheckResult(7, "2+sqrt2: log-beta binned counts follow A038199", rep.first_mismatch >= 6,
                       f"{counts} vs {list(A038199[:8])} ({rep.first_mismatch}/8 agree)")


def check_dimensions() -> CheckResult:
    est1 = box_dimension_estimate(_two_plus_sqrt2_sweep())
    est2 = box_dimension_estimate(sweep(bundled_field("tribonacci"), 16))
    ok1 = abs(est1.value - 0.5644763825) <= 0.03
    ok2 = abs(est2.value - 0.66) <= 0.08
    extra = []
    for name, depth, ref in (("tetrabonacci", 16, 0.76), ("plastic", 20, 0.93)):
        est = box_dimension_estimate(sweep(bundled_field(name), depth))
        per_n = dict(est.per_n).get(est.fit_range[1])
        per_n = "n/a" if per_n is None else f"{per_n:.3f}"
        extra.append(f"{name} slope {est.value:.3f}, per-n {per_n} (reference {ref}, not gated)")
    return CheckResult(8, "box-dimension estimates", ok1 and ok2,
                       f"2+sqrt2 {est1.value:.4f} (0.5645 +- 0.03), tribonacci {est2.value:.4f} "
                       f"(0.66 +- 0.08); " + ", ".join(extra))


def check_non_pisot() -> CheckResult:
    f = field_from_minpoly([-3, -1])
    res = sweep(f, 12)
    return CheckResult(9, "x^2-x-3: no matching intervals", not res.matched,
                       f"{len(res.matched)} matched, {len(res.unresolved)} unresolved pieces at depth 12")


def phi_table_edges():
    """Labeled edges of the tribonacci table, states as signed codes."""
    out = set()
    for body, row in PHI_TABLE.items():
        for sign in "+-":
            for label, (target, flip) in row.items():
                if target == "100":
                    dst = MATCHING
                else:
                    dst = (sign if flip > 0 else ("-" if sign == "+" else "+")) + target
                out.add((sign + body, dst, label))
    return out


def check_graphs() -> CheckResult:
    f = bundled_field("tribonacci")
    g = build_graph(f, sweep(f, 16))
    labels = {node_label(g, n) for n in g.all_nodes()}
    states = {s + b for b in PHI_TABLE for s in "+-"}
    tri_ok = labels == states | {START, MATCHING} and labeled_edges(g) == phi_table_edges()
    notes = [f"tribonacci {len(labels)} nodes, {len(labeled_edges(g))} labeled edges"]
    quad_ok = True
    for name in ("k5_plus3",):
        q = bundled_field(name)
        case = quadratic_case(q)
        gq = build_graph(q, sweep(q, 8), collapse_prematch=False)
        gamma, pre = case.gamma, -case.d * q.beta.inverse()
        shape = (gq.nodes == {gamma, pre}
                 and any(k[0] == START and k[1] == gamma for k in gq.edges)
                 and any(k[0] == pre and k[1] == MATCHING for k in gq.edges))
        loops = [k for k in gq.edges if k[0] == gamma and k[1] == gamma]
        mult = sum(gq.multiplicity(k) for k in loops)
        exit_edge = any(k[0] == gamma and k[1] == pre for k in gq.edges)
        ok = shape and exit_edge and mult in (case.d, case.d + 1)
        quad_ok = quad_ok and ok
        notes.append(f"{name}: nodes 1 -> gamma -> -d/beta -> matching, self-loop multiplicity {mult}")
    return CheckResult(10, "transition graphs", tri_ok and quad_ok, "; ".join(notes))


def check_properties(seed: int = 0) -> CheckResult:
    rng = random.Random(seed)
    notes, ok = [], True

    f = bundled_field("tribonacci")

    def rnd():
        return f.from_coeffs([Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(f.degree)])

    axioms = 0
    for _ in range(1000):
        a, b, c = rnd(), rnd(), rnd()
        good = ((a + b) + c == a + (b + c) and (a * b) * c == a * (b * c) and a * b == b * a
                and a * (b + c) == a * b + a * c and a - a == f.zero
                and (a.is_zero() or a * a.inverse() == f.one))
        axioms += good
    ok = ok and axioms == 1000
    notes.append(f"field axioms {axioms}/1000")

    closed = rec = 0
    for _ in range(200):
        a = Fraction(rng.randrange(0, 1000), 1000)
        n = rng.randint(1, 25)
        plus, minus = critical_orbits(f, a, n)
        good = all(r.closed_form(n) == r.points[n].value == r.closed_form_expanded(n)
                   for r in (plus, minus))
        closed += good
        mo = matching_index(f, a, n)
        d = mo.difference_trace
        rec += all(d[i + 1] == f.beta * d[i] - mo.offsets[i] for i in range(len(mo.offsets)))
    ok = ok and closed == 200 and rec == 200
    notes.append(f"closed form {closed}/200, difference recursion {rec}/200")

    beta = f.beta
    res = sweep(f, 12)
    coeff_ok = all(p.plus.c == (beta ** p.n - 1) / (beta - 1) == p.minus.c for p in res.unresolved)
    ok = ok and coeff_ok
    notes.append(f"affine coefficient identity on {len(res.unresolved)} pieces {'ok' if coeff_ok else 'FAILED'}")

    cyl = 0
    total = 0
    for name in ("k5_plus3",):
        q = bundled_field(name)
        case = quadratic_case(q)
        length, inv = case.circle_length, q.beta.inverse()
        for _ in range(20):
            while True:
                a = Fraction(rng.randrange(1, 1000), 1000)
                if a < length:
                    break
            n = rng.randint(1, 8)
            word = [rng.randrange(case.d) for _ in range(n)]
            comps = cylinder_components(q, case, a, word)
            total += 1
            cyl += len(comps) <= n and sum((c.length for c in comps), q.zero) == length * inv ** n
    q = field_from_minpoly([2, -4])
    case = quadratic_case(q)
    for word in itertools.product(range(case.d), repeat=8):
        comps = cylinder_components(q, case, Fraction(1, 3), word)
        total += 1
        cyl += len(comps) <= 8 and sum((c.length for c in comps), q.zero) == case.circle_length * q.beta.inverse() ** 8
    ok = ok and cyl == total
    notes.append(f"cylinder lemma {cyl}/{total}")

    decoded = seen = 0
    for name, depth in (("golden", 14), ("tribonacci", 14), ("tetrabonacci", 14)):
        m = bundled_field(name)
        g = build_graph(m, sweep(m, depth), collapse_prematch=False)
        for d in g.nodes:
            seen += 1
            try:
                decoded += code_of_difference(m, d) != MATCHED
            except Exception:
                pass
    ok = ok and decoded == seen
    notes.append(f"difference codes decoded {decoded}/{seen}")
    return CheckResult(11, "property suites", ok, ", ".join(notes))


CHECKS = (check_quadratic_immediate, check_multinacci_k, check_tribonacci_four, check_salem_orbits, check_markov_examples,
          check_totient, check_a038199, check_dimensions, check_non_pisot, check_graphs,
          check_properties)


def run_check(fn) -> CheckResult:
    t = time.perf_counter()
    res = fn()
    res.seconds = time.perf_counter() - t
    return res


def run_all(only=None):
    out = []
    for i, fn in enumerate(CHECKS, start=1):
        if only and i not in only:
            continue
        out.append(run_check(fn))
    return out


def format_table(results) -> str:
    lines = [r.line() for r in results]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(lines) + "\n"
