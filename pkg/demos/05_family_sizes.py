"""How many sequences each rule generates, and what that buys in bits.

Family sizes come in units of G0 = (m!/2) 4^(m+1) for length-1 seeds and
A0 = m! 4^(m+1) for longer seeds.  The five per-rule closed forms sum to
the family total, and exhaustive enumeration confirms them at desk scale.
"""

import math

from csforge import qam

M = 4
print(f"family sizes at m = {M} (length-1 seed), in G0 units")
print(f"{'s':>3} " + " ".join(f"{r:>8}" for r in qam.RULES) + f" {'total':>10}")
for s in (1, 2, 4, 8):
    units = [qam.count_sequences(r, s, M).units for r in qam.RULES]
    total = qam.count_sequences("total", s, M).units
    assert sum(units) == total
    print(f"{s:>3} " + " ".join(f"{u:>8}" for u in units) + f" {total:>10}")

print("\nuncoded bits versus sequence length")
print(f"{'s':>3} {'N':>3} {'length':>7} {'bits':>6}")
for s in (1, 2, 4, 8):
    for n in (1, 3):
        n_class = "N=1" if n == 1 else "N>1"
        count = qam.count_sequences("total", s, M, n_class).count
        print(f"{s:>3} {n:>3} {n * 2**M:>7} {math.floor(math.log2(count)):>6}")

print("\nexhaustive check at desk scale (every parameter combination, deduped):")
for rule in ("green", "yellow", "orange"):
    distinct = qam.distinct_sequences(rule, 2, 2)
    formula = qam.count_sequences(rule, 2, 2).count
    print(f"  {rule:6s} s=2 m=2: {distinct} distinct == formula {formula}")
