"""Invariants of binary quartic forms and which (I, J) pairs can occur.

Run:  python3 demos/01_invariants_and_admissibility.py
"""

from quartic_hasse import (BinaryQuarticForm, IntegerMatrix2x2, apply_matrix,
                           invariant_pair_admissible, invariants,
                           realize_invariants)

f = BinaryQuarticForm(1, 0, 0, 0, 1)          # x^4 + y^4
inv = invariants(f)
print(f"F = {f}")
print(f"  I = {inv.I}, J = {inv.J}, D = {inv.D}, H = {inv.H}")
print(f"  real signature i = {inv.signature_i}  (i = 2: no real roots)")
print(f"  syzygy: 27 D = 4 I^3 - J^2 -> {27 * inv.D} = {4 * inv.I**3 - inv.J**2}")

# the invariants transform by det^4 and det^6 under substitution
mat = IntegerMatrix2x2(2, 1, 1, 1)            # det = 1
g = apply_matrix(f, mat)
ig = invariants(g)
print(f"\nunder (x, y) -> (2x + y, x + y): G = {g}")
print(f"  I, J, D unchanged (det = {mat.det()}): {ig.I}, {ig.J}, {ig.D}")

# not every integer pair (I, J) arises from an integral quartic
print("\nadmissibility of small pairs:")
for I, J in [(-3, 27), (1, 2), (1, 1), (2, 0), (4, 16)]:
    ok = invariant_pair_admissible(I, J)
    note = ""
    if ok:
        w = realize_invariants(I, J)
        note = f"  realized by {w.coeffs()}"
    print(f"  (I, J) = ({I:3d}, {J:3d}): {'admissible' if ok else 'impossible'}{note}")
