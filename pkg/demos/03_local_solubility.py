"""Certified local solubility of F(x, y) = h over R and every Z_p.

Run:  python3 demos/03_local_solubility.py
"""

from quartic_hasse import BinaryQuarticForm
from quartic_hasse.local import local_everywhere, soluble_over_Zp

f = BinaryQuarticForm(1, 0, 0, 0, 1)          # x^4 + y^4

# a Hensel-certified point mod 5
cert = soluble_over_Zp(f, 2, 5)
w = cert.witness
print(f"x^4 + y^4 = 2 over Z_5: {cert.verdict}")
print(f"  witness ({w['x']}, {w['y']}) mod 5^{w['k']}, derivative valuation {w['v']}")
print(f"  certificate re-verifies: {cert.check(f, 2)}")

# a certified failure: fourth powers are 0 or 1 mod 16
cert = soluble_over_Zp(f, 3, 2)
print(f"\nx^4 + y^4 = 3 over Z_2: {cert.verdict} (tree exhausted at depth {cert.depth})")

# the full report: R, all p <= 49, and every prime the discriminant or h forces
rep = local_everywhere(f, 2)
print(f"\nx^4 + y^4 = 2 everywhere locally soluble: {rep.locally_soluble_everywhere}")
for c in rep.certificates[:6]:
    print(f"  place {c.place}: {c.verdict}")
print(f"  ... ({len(rep.certificates)} places checked; "
      f"justification sound: {rep.justification['sound']})")
