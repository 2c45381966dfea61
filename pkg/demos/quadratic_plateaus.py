"""Plateau maps for quadratic Pisot slopes.

For x^2 - 5x + 3 (a "+d" slope) the orbit of 0+ matches exactly when it
falls into one of d plateaus of the collapsed circle map g.  For
x^2 - 3x - 2 (a "-d" slope) the plateaus come from composing two maps.
The depth at which the orbit of alpha hits a plateau, plus three, is the
matching index; we check that on a few parameters.
"""

import random
from fractions import Fraction

from betamatch.dynamics import matching_index
from betamatch.fields import bundled_field
from betamatch.quadratic import MATCH_OFFSET, cylinder_components, escape_depth, plateau_map, quadratic_case

rng = random.Random(1)

for name, alpha in (("k5_plus3", Fraction(3, 10)), ("k3_minus2", Fraction(1, 2))):
    f = bundled_field(name)
    case = quadratic_case(f)
    pm = plateau_map(f, case, alpha)
    print(f"{f.poly_str()}: case {case.label}, gamma = {case.gamma.to_decimal(6)}, "
          f"circle length {case.circle_length.to_decimal(6)}")
    print(f"  alpha = {alpha}: {len(pm.plateaus)} plateaus, slope {pm.slope.to_decimal(6)}")
    for p in pm.plateaus:
        print(f"    [{p.lo.to_decimal(6)}, {p.hi.to_decimal(6)}) -> {p.value.to_decimal(6)}")
    agree = 0
    for _ in range(20):
        a = Fraction(rng.randrange(600, 1000), 1000)
        if case.sign > 0 and not a < case.circle_length:
            continue
        e = escape_depth(f, case, a, a, 30)
        m = matching_index(f, a, 40).matched_at
        agree += e.matching_index() == m
        print(f"    alpha={a}: plateau after {e.hit_at} steps, matching index {m}")
    print(f"  offset {MATCH_OFFSET} agreed in {agree} cases")

f = bundled_field("k5_plus3")
case = quadratic_case(f)
comps = cylinder_components(f, case, Fraction(3, 10), [0, 2, 1])
total = sum((c.length for c in comps), f.zero)
print(f"cylinder 021: {len(comps)} arcs, total {total.to_decimal(8)} "
      f"= L/beta^3 {(case.circle_length / f.beta ** 3).to_decimal(8)}")
