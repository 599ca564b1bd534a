# The pair correlation statistic R(N, s): how many dilated differences
# alpha*(a_i - a_j) land within s/N of an integer, per point.  For a
# "random" alpha and a well-spread sequence, R -> 2s (the Poisson value).

import random
from fractions import Fraction

from ppclab import (
    Alpha,
    PrecisionError,
    classic,
    monte_carlo_ppc,
    pair_correlation,
    pair_correlation_naive,
    random_prime_alpha,
)

squares = classic("power", 3000, 2)

# seeded random dilations of the squares: R hugs 2s = 2
result = monte_carlo_ppc(squares, seed=7, trials=8, schedule=[3000], s_values=[1])
print("squares, N=3000, s=1, eight random dilations:")
print("  R =", "  ".join(f"{float(row.r):.3f}" for row in result.rows))
print("  mean =", f"{result.mean_r(3000, 1):.4f}", "(Poisson value 2)")

# rational alpha makes R an exact fraction — and a bad one: alpha = 1/3 on
# the integers 1..N collapses to three residue classes
r = pair_correlation(list(range(1, 301)), Alpha.rational(1, 3), 300, 1)
print("\nidentity, alpha = 1/3:  R =", r, "=", float(r))
assert r == pair_correlation_naive(list(range(1, 301)), Alpha.rational(1, 3), 300, 1)

# s = 0 counts exact collisions of the dilated points
print("identity, alpha = 1/3, s = 0:  R =",
      pair_correlation(list(range(1, 301)), Alpha.rational(1, 3), 300, 0))

# fixed-point alpha carries an explicit guard window.  When every pair is
# certified on one side of the threshold the answer is exact; when a pair
# lands inside the window the call refuses instead of guessing.
alpha96 = Alpha.fixed(mantissa=0x9E3779B97F4A7C15 << 32, bits=96)  # golden ratio
r96 = pair_correlation(squares, alpha96, 3000, 1)
print("\nsquares, 96-bit fixed-point golden ratio:  R =", f"{float(r96):.4f}")

tie = Alpha.fixed(16384, 16, guard=8)  # 1/4 exactly; distances hit s/N head-on
try:
    pair_correlation([1, 2, 3, 4], tie, 4, 2)
except PrecisionError as exc:
    print("tie case refused as designed:", exc)

# lacunary sequences are the classic Poissonian-for-almost-every-alpha
# family — but the denominator must not resonate with the sequence.  A
# dyadic alpha = p/2^64 on the powers of two collapses: alpha * 2^n is an
# integer for every n >= 64, so the statistic explodes.
lac = classic("lacunary", 1200, 2)
rng = random.Random(3)
dyadic = Alpha.rational(rng.getrandbits(64) | 1, 1 << 64)
print("\nlacunary 2^n, dyadic denominator (resonant):  R =",
      f"{float(pair_correlation(lac, dyadic, 1200, Fraction(1, 2))):.1f}")

# a random prime denominator whose multiplicative order of 2 is large keeps
# the dilated points distinct, and R comes back down to Poisson size
prime = random_prime_alpha(rng, bits=64, min_power_order=1200)
print("lacunary 2^n, prime denominator:              R =",
      f"{float(pair_correlation(lac, prime, 1200, Fraction(1, 2))):.4f}",
      "(2s = 1)")
