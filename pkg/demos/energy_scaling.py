# Additive energy E(A) = #{a+b = c+d} and its scaling along the block
# sequence checkpoints.  The block construction is tuned so that
# E(A_N) ~ N^3 / f(N)^(3(beta-gamma)) — big energy, but just short of N^3.

from ppclab import (
    GrowthFunction,
    additive_energy,
    additive_energy_bruteforce,
    ap_energy_closed_form,
    build_blocks,
    energy_scaling,
)

# arithmetic progressions maximize energy at the N^3 order:
# E = k^2 + (k-1)k(2k-1)/3, and dilation/translation leave E unchanged
for k in (3, 10, 20):
    ap = [7 + 5 * i for i in range(k)]
    assert additive_energy(ap) == ap_energy_closed_form(k)
    print(f"E(AP of length {k:>2}) = {ap_energy_closed_form(k)}  (~{ap_energy_closed_form(k) / k**3:.3f} N^3)")

# random sets sit near the N^2 floor instead
import random

rng = random.Random(1)
a = rng.sample(range(10**9), 50)
e = additive_energy(a)
assert e == additive_energy_bruteforce(a)  # oracle is capped at 64 elements
print(f"E(random 50-set)   = {e}  (~{e / 50**2:.3f} N^2)")

# blocks: exact energy at every checkpoint, normalized by the predicted
# growth; the normalized column settling into a narrow band is the point
f = GrowthFunction("ilog", r=1)
seq = build_blocks(f, 2 / 3, 1 / 3, 10)
result = energy_scaling(seq, [j for j in range(2, 11) if seq.a_block(j).length > 0])
print("\n  j        N        E(A_N)       E/N^3    normalized")
for row in result.rows:
    print(f"{row.level:>3} {row.n:>8} {row.energy:>13} {row.energy / row.n**3:>11.5f} {row.normalized:>13.5f}")
print("spread (max/min normalized):", f"{result.spread:.3f}")
