# Exact interval arithmetic on [0,1]: Bohr sets, unions, measures.
# Everything below is Fraction arithmetic — no floats, no tolerance.

from fractions import Fraction

from ppclab import bohr_set, borel_cantelli_ratio, small_denominator_set

# B(d, delta) = {alpha : ||d*alpha|| <= delta} is a union of |d|+1 closed
# intervals centred on k/|d|, and its measure is exactly min(1, 2*delta).
b2 = bohr_set(2, Fraction(1, 8))
print("B(2, 1/8) =", " ∪ ".join(f"[{iv.lo}, {iv.hi}]" for iv in b2.intervals))
print("measure   =", b2.measure)
assert b2.measure == Fraction(1, 4)

for d in (1, 3, 17, -6):
    for delta in (Fraction(1, 10), Fraction(1, 3), Fraction(1, 2)):
        assert bohr_set(d, delta).measure == min(Fraction(1), 2 * delta)
print("measure(B(d, delta)) == min(1, 2*delta) checked on a small grid")

# unions merge touching pieces; intersections sweep the component lists;
# inclusion-exclusion comes out exact
b3 = bohr_set(3, Fraction(1, 12))
print("measure(B(2,1/8) | B(3,1/12)) =", (b2 | b3).measure)
print("measure(B(2,1/8) & B(3,1/12)) =", (b2 & b3).measure)
assert (b2 | b3).measure + (b2 & b3).measure == b2.measure + b3.measure

# complement closes up the gaps
assert b2.complement().measure == 1 - b2.measure

# dilations of a finite integer set B all stay close to integers exactly
# when alpha lies in a union of Bohr sets over the differences of B; the
# per-difference radius is budgeted so the total measure stays under 2*eps
s = small_denominator_set([3, 5, 8], Fraction(1, 5))
print("small_denominator_set({3,5,8}, 1/5): measure =", s.measure, "< 2/5")
assert s.measure < Fraction(2, 5)

# the quasi-independence ratio  measure(A & B) / (measure(A)*measure(B))
# is the quantity the divergence Borel-Cantelli step needs bounded
r = borel_cantelli_ratio([bohr_set(3, Fraction(1, 12)), bohr_set(5, Fraction(1, 20))])
print("ratio for B(3,1/12), B(5,1/20) =", r, "=", float(r))
