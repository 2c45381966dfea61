"""Difference states for the tribonacci slope.

Before matching the gap D_n between the two critical orbits is always a
signed 0/1 code in powers of 1/beta.  This script follows the code along
a few parameters, builds the observed transition graph from a sweep and
shows why the endpoints of the interval [1/beta, 1/beta^2 + 2/beta^3]
only match if an orbit that hits the discontinuity may continue on either
side.
"""

from betamatch.dynamics import matching_index
from betamatch.fields import bundled_field
from betamatch.multinacci import fiber_trace, predict_matching
from betamatch.paramsweep import sweep
from betamatch.transitions import build_graph, labeled_edges

f = bundled_field("tribonacci")
inv = f.beta.inverse()

for alpha in ("1/20", "14/25", "3/10"):
    states = " -> ".join(str(s["state"]) for s in fiber_trace(f, alpha, 12))
    print(f"alpha={alpha}: {states}   ({predict_matching(f, alpha)})")

g = build_graph(f, sweep(f, 14))
print(f"observed graph: {len(g.nodes)} difference nodes")
for s, t, label in sorted(labeled_edges(g), key=str):
    print(f"  {s:>5} --{label:+d}--> {t}")

for name, end in (("1/beta", inv), ("1/beta^2+2/beta^3", inv ** 2 + 2 * inv ** 3)):
    strict = matching_index(f, end, 20)
    either = matching_index(f, end, 20, discontinuity="either")
    print(f"alpha = {name}: persistent sides {strict.matched_at}, either side {either.matched_at}")
