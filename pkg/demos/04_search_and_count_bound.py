"""Exact primitive-solution search in a box, and the 52 - 20i count bound.

The box search sieves (x, y) pairs with residue tables modulo several
auxiliary primes before any big-integer evaluation, so boxes of side 10^4
cost well under a second even for 20-digit coefficients.

Run:  python3 demos/04_search_and_count_bound.py
"""

import time
from fractions import Fraction

from quartic_hasse import BinaryQuarticForm, invariants
from quartic_hasse.search import (bound_applicable, count_bound,
                                  primitive_solutions_in_box)

f = BinaryQuarticForm(1, 0, 0, 0, 1)
ss = primitive_solutions_in_box(f, 2, 1000)
print(f"x^4 + y^4 = 2, |x|,|y| <= 1000: {ss.solutions}")

big = BinaryQuarticForm(10**20 + 7, -3, 0, 5, -(10**19 + 9))
m = big(11, 7)
t0 = time.monotonic()
ss = primitive_solutions_in_box(big, m, 10_000)
dt = time.monotonic() - t0
print(f"\n20-digit form, box 10^4: {len(ss.solutions)} solutions in {dt:.2f}s")
print(f"  {ss.solutions}")

# when |D| is large against m, the number of primitive solutions of
# |F| = m is bounded by 36 - 16 i + (4 - i)/(3 eps) = 52 - 20 i at eps = 1/12
D = invariants(big).D
eps = Fraction(1, 12)
small_m = 385
print(f"\n|D| ~ 10^{len(str(abs(D)))-1}")
print(f"  bound applicable at m = {small_m}: {bound_applicable(D, small_m, eps)}")
print(f"  bound applicable at m ~ 10^{len(str(m))-1}: {bound_applicable(D, abs(m), eps)}")
for i in (0, 1, 2):
    print(f"  signature i = {i}: at most {count_bound(D, small_m, i, eps)} solutions")
