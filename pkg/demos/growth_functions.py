# The slowly-growing functions that steer the block construction, and the
# derived quantities: psi radii, divergent series, predicted dimension.

from ppclab import GrowthFunction, ThetaFunction, lower_order, predicted_hausdorff_dim, psi, series_partial_sum

f1 = GrowthFunction("ilog", r=1)        # log(x), clamped away from 0
f2 = GrowthFunction("ilog", r=2)        # log(x) * log(log(x))
fe = GrowthFunction("ilog_eps", r=1, eps=0.5)  # log(x)^(1.5)
fp = GrowthFunction("pow", a=0.1)       # x^0.1

print("f(N) at N = 10^6:")
for f in (f1, f2, fe, fp):
    print(f"  {f.spec_string:<22} {f(1e6):.4f}")

# sum 1/(n f(n)) diverges for the iterated-log families (slowly!) and
# converges for powers; compare partial sums at two cutoffs.
for f in (f1, fp):
    s5, s7 = series_partial_sum(f, 10**5), series_partial_sum(f, 10**7)
    print(f"sum 1/(n*{f.spec_string}): S(1e5) = {s5:.3f}   S(1e7) = {s7:.3f}   delta = {s7 - s5:.3f}")

# psi(n) = 1/(n f(n) theta(n)) is the approximation radius attached to the
# n-th rational of the regular system.
theta = ThetaFunction("one_plus_log")
print("psi(n) for n = 1, 10, 1000:", [psi(f1, theta, n) for n in (1, 10, 1000)])

# lower order lambda of log f / log x and the predicted Hausdorff dimension
# 1/(1+lambda) of the exceptional set; log factors do not move the order.
for f in (f1, f2, fe, fp):
    res = lower_order(f)
    print(f"  {f.spec_string:<22} lambda = {res.analytic:.6f} "
          f"(grid estimate {res.grid_estimate:.6f})   predicted dim = {predicted_hausdorff_dim(f):.6f}")

assert abs(predicted_hausdorff_dim(f1) - 1.0) < 1e-9
assert abs(predicted_hausdorff_dim(fp) - 1 / 1.1) < 1e-9
