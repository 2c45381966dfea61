"""Matching intervals for the golden mean slope.

Sweeps alpha in [0, 1) to a fixed depth, groups the matching intervals by
their exact length and compares the group sizes with Euler's phi.  Then
prints a box-dimension estimate of the leftover (non-matching) set.
"""

from betamatch.fields import bundled_field
from betamatch.paramsweep import sweep
from betamatch.stats import box_dimension_estimate, size_histogram, totient

f = bundled_field("golden")
res = sweep(f, 13)
print(f"{len(res.matched)} matching intervals, measure {res.matched_measure().to_decimal(8)}")

hist = size_histogram(res)
counts = hist.exact_counts[:10]
print("intervals per size:", counts)
print("phi(1..10):        ", [totient(n) for n in range(1, 11)])

# the first few intervals, widest first
for iv in sorted(res.matched, key=lambda m: -float(m.size.to_decimal(12)))[:5]:
    print(f"  [{iv.lo.to_decimal(6)}, {iv.hi.to_decimal(6)})  matches at {iv.m}")

print(box_dimension_estimate(res).summary())
