# Hunting the exceptional set: for the block sequence, almost every alpha
# gives Poissonian pair correlations, but rationals with a small denominator
# — nudged by a tiny eta so the run's multiples stay inside the window —
# make R blow up along the checkpoints.  The regular-system machinery picks
# those rationals and the admissible nudge size.

import random
from fractions import Fraction

from ppclab import (
    Alpha,
    GrowthFunction,
    RegularSystemParams,
    ThetaFunction,
    build_blocks,
    divergence_probe,
    exceptional_alpha_candidates,
    pair_correlation,
    perturbed_alpha,
    psi,
    random_prime_alpha,
    rank_of_denominator,
    targeting_eta,
)

f = GrowthFunction("ilog", r=1)
theta = ThetaFunction("one_plus_log")
system = RegularSystemParams(f=f, theta=theta)

# beta = 0.7, gamma = 0.45 keeps the runs long relative to the geometric
# tails, which is what the divergence argument needs
seq = build_blocks(f, 0.7, 0.45, 10)
top = 10
n_top = seq.checkpoint(top)

# the level-8 window of admissible denominators and its first few rationals
print("denominator window at level 8:", system.denominator_range(8))
print("first candidates:", [f"{c.num}/{c.den}" for c in exceptional_alpha_candidates(system, 8, limit=5)])

cand = exceptional_alpha_candidates(system, 8, limit=1)[0]  # 1/13
rank = rank_of_denominator(cand.den)
eta = min(Fraction(psi(f, theta, rank)) / 2, targeting_eta(seq, top, cand.den, 1))
alpha = perturbed_alpha(cand, system, rank=rank, eta=eta)
print(f"\nperturbed alpha = {cand.num}/{cand.den} + {eta}")

traj = divergence_probe(seq, alpha, s=1, levels=range(6, top + 1), system=system)
print("\nlevel      N        R     predicted-order curve")
for pt in traj.points:
    print(f"{pt.level:>5} {pt.n:>6} {float(pt.r):>8.3f}     {pt.predicted:>8.3f}")

# a random prime-denominator dilation at the same N stays near 2s = 2
beta_alpha = random_prime_alpha(random.Random(0), bits=64, min_power_order=2048)
r_base = pair_correlation(seq, beta_alpha, n_top, 1)
print(f"\nrandom prime-denominator baseline at N = {n_top}: R = {float(r_base):.3f}")
assert traj.points[-1].r > 4 * r_base
