"""Exact local densities and the rigorous mu enclosure.

Every closed formula is cross-checked against a brute-force enumeration of
all p^5 coefficient vectors over F_p (numpy), and the Euler product over
the unbounded prime range is enclosed between exact rationals.

Run:  python3 demos/05_densities.py
"""

from quartic_hasse.density import (brute_force_density, delta2, gamma, lam,
                                   mu_lower_bound, sigma)
from quartic_hasse.jsonio import fraction_decimal

print("density of complete splitting, sigma(p):")
for p in (5, 7, 11):
    bf = brute_force_density(p, "splits_completely")
    print(f"  p = {p:2d}: formula {sigma(p)}  brute force {bf}  "
          f"match: {sigma(p) == bf}")

print(f"\nL1 * L2^3 densities: delta2 = {delta2()}, "
      f"gamma(5) = {gamma(5)} (= {brute_force_density(5, 'L1L2cubed')})")
print(f"non-square-class density lam(5) = {lam(5)}")

iv = mu_lower_bound(1, (5, 7, 11), cutoff=10_000)
print("\nmu enclosure for h = 1, primes (5, 7, 11), cutoff 10^4:")
print(f"  lower ~ {fraction_decimal(iv.lower, 6)}")
print(f"  upper ~ {fraction_decimal(iv.upper, 6)}")
print(f"  relative width: {float(1 - iv.lower / iv.upper):.2e}")
