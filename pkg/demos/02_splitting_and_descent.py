"""Complete splitting mod p and the 4-branch descent of F = m.

If F splits completely mod p (four distinct rational projective roots) and
p | m, every primitive solution of F = m reduces mod p along exactly one
root b, and the substitution x -> (px + by) (or the infinity analogue)
divides out one factor of p.  Iterating at three primes yields 64 quartic
forms whose solution sets partition that of the parent.

Run:  python3 demos/02_splitting_and_descent.py
"""

from quartic_hasse import BinaryQuarticForm, invariants
from quartic_hasse.descent import build_family, descend_all, push_through_family
from quartic_hasse.modp import splits_completely

f = BinaryQuarticForm(15, -17, 22, -27, 7)
for p in (5, 7, 11):
    sd = splits_completely(f, p)
    print(f"mod {p:2d}: roots {sd.roots}, unit m0 = {sd.m0}")

print("\nthe four descended forms at p = 5:")
for b, g in descend_all(f, 5).items():
    print(f"  branch {b}: {g.coeffs()}")

fam = build_family(f, (5, 7, 11))
print(f"\nfamily over (5, 7, 11): {len(fam.members)} forms")
inv, ig = invariants(f), invariants(fam.forms()[0])
print(f"  height scales by (5*7*11)^6: {ig.H // inv.H} = {(5*7*11)**6}")

# push a concrete solution of F = 385 h through the tower
import math

P = 5 * 7 * 11
for x in range(-100, 101):
    for y in range(1, 100):
        m = f(x, y)
        if m and m % P == 0 and math.gcd(x, y) == 1:
            label, pair = push_through_family(fam, (x, y))
            print(f"\nF({x}, {y}) = {m} = 385 * {m // P}")
            print(f"  descends along branches {label} to G{label}{pair} = {m // P}")
            raise SystemExit
