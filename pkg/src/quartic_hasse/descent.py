"""Descent of quartic Thue equations at completely split primes.

If F splits completely mod p and F(x,y) = m with p | m, p^2 ndiv m, every
primitive solution reduces mod p along exactly one of the four simple roots
b (possibly infinity), giving a solution of a descended form

    Ftilde_b(x, y) = F(p x + b y, y) / p        (b finite)
    Ftilde_inf(x, y) = F(y, p x) / p            (b = infinity)

with value m / p.  Iterating over three split primes produces the family of
4^3 = 64 forms G_j with G_j = h <=> F = h p1 p2 p3, solution sets in exact
bijection.  Every division and every invariant-scaling identity is asserted
along the way.
"""

from __future__ import annotations

from dataclasses import dataclass

from .forms import (BinaryQuarticForm, IntegerMatrix2x2, apply_matrix,
                    invariants)
from .modp import INF, SplitData, reduce_mod_p, splits_completely


class NotSplitError(ValueError):
    """The form does not split completely modulo the requested prime."""


def descend_at(form: BinaryQuarticForm, p: int, b) -> BinaryQuarticForm:
    """The descended form Ftilde_b; b is a residue mod p or INF.

    Checks integrality of the division by p, the invariant scaling
    (I, J, D) -> (p^2 I, p^3 J, p^6 D), and the residual shape
    Ftilde_b = y^3 (l1 x + l2 y) mod p with l1 a unit (b a simple root).
    """
    if b is INF:
        if form.a0 % p:
            raise ValueError(f"infinity is not a root of F mod {p}")
        mat = IntegerMatrix2x2(0, 1, p, 0)
    else:
        b = b % p
        if form(b, 1) % p:
            raise ValueError(f"{b} is not a root of F mod {p}")
        mat = IntegerMatrix2x2(p, b, 0, 1)
    image = apply_matrix(form, mat)
    coeffs = []
    for c in image.coeffs():
        q, r = divmod(c, p)
        assert r == 0, f"descent at p={p}, b={b}: non-integral coefficient"
        coeffs.append(q)
    out = BinaryQuarticForm(*coeffs)
    inv, inv_out = invariants(form), invariants(out)
    assert inv_out.I == p ** 2 * inv.I
    assert inv_out.J == p ** 3 * inv.J
    assert inv_out.D == p ** 6 * inv.D
    # residual shape: y^3 * (unit * x + l2 * y) mod p
    r = reduce_mod_p(out, p)
    assert r[0] == r[1] == r[2] == 0 and r[3] != 0, \
        f"descent residue not y^3*L with unit slope: {r}"
    return out


def descend_all(form: BinaryQuarticForm, p: int,
                split: SplitData | None = None) -> dict:
    """All four descended forms, keyed by simple root (INF possible)."""
    if split is None:
        split = splits_completely(form, p)
        if split is None:
            raise NotSplitError(f"form does not split completely mod {p}")
    return {b: descend_at(form, p, b) for b in split.roots}


def push_solution(form: BinaryQuarticForm, p: int, sol: tuple[int, int],
                  split: SplitData | None = None):
    """(root, descended solution) for a primitive solution of F = p*m1.

    The descended pair solves Ftilde_root = m1; the branch root is uniquely
    determined by sol mod p.
    """
    if split is None:
        split = splits_completely(form, p)
        if split is None:
            raise NotSplitError(f"form does not split completely mod {p}")
    x0, y0 = sol
    if y0 % p == 0:
        if not split.has_infinity():
            raise ValueError("p | y0 but infinity is not a root mod p")
        return INF, (y0 // p, x0)
    inv_y = pow(y0, -1, p)
    b = (x0 * inv_y) % p
    if b not in split.roots:
        raise ValueError(f"solution does not reduce to a simple root mod {p}")
    return b, ((x0 - b * y0) // p, y0)


def lift_solution(p: int, b, sol: tuple[int, int]) -> tuple[int, int]:
    """Inverse of push_solution: a solution of Ftilde_b = m1 lifted to F = p*m1."""
    X, Y = sol
    if b is INF:
        return (Y, p * X)
    return (p * X + b * Y, Y)


@dataclass(frozen=True)
class GFamily:
    """The 64 forms obtained by descending F at three split primes."""

    base: BinaryQuarticForm
    primes: tuple[int, int, int]
    members: dict  # label (b1, b2, b3) -> BinaryQuarticForm

    def labels(self):
        return sorted(self.members, key=lambda lab: tuple(
            (1, 0) if b is INF else (0, b) for b in lab))

    def forms(self):
        return [self.members[lab] for lab in self.labels()]


def build_family(form: BinaryQuarticForm, primes) -> GFamily:
    """Descend F at three distinct split primes > 4, all 4^3 branches.

    Verifies the split-persistence lemma (each intermediate form still
    splits completely modulo the remaining primes), the height scaling
    H(G) = (p1 p2 p3)^6 H(F), and that each p_i divides D(G) exactly to
    the sixth power (which requires p_i ndiv D(F)).
    """
    p1, p2, p3 = primes
    if len({p1, p2, p3}) != 3 or min(primes) < 5:
        raise ValueError("need three distinct primes greater than 4")
    D = invariants(form).D
    for p in primes:
        if D % p == 0:
            raise ValueError(f"prime {p} divides the discriminant of F")
    level = {(): form}
    for depth, p in enumerate(primes):
        nxt = {}
        for label, g in level.items():
            split = splits_completely(g, p)
            if split is None:
                raise NotSplitError(
                    f"intermediate form at label {label} does not split mod {p}")
            for b, gt in descend_all(g, p, split).items():
                nxt[label + (b,)] = gt
        # persistence: every new form must still split at the later primes
        for q in primes[depth + 1:]:
            for gt in nxt.values():
                assert splits_completely(gt, q) is not None, \
                    "split persistence failed"
        level = nxt
    P6 = (p1 * p2 * p3) ** 6
    H = invariants(form).H
    for label, g in level.items():
        ig = invariants(g)
        assert ig.H == P6 * H, f"height scaling failed at {label}"
        for p in primes:
            assert ig.D % p ** 6 == 0 and ig.D % p ** 7 != 0, \
                f"p^6 || D(G) failed at {label}, p={p}"
    assert len(level) == 64
    return GFamily(form, (p1, p2, p3), level)


def push_through_family(family: GFamily, sol: tuple[int, int]):
    """(label, pair) with G_label(pair) = h, from a primitive solution of
    F = h * p1 * p2 * p3."""
    g = family.base
    label = ()
    cur = sol
    for p in family.primes:
        b, cur = push_solution(g, p, cur)
        label = label + (b,)
        g = descend_at(g, p, b)
    return label, cur


def lift_through_family(family: GFamily, label, sol: tuple[int, int]):
    """Inverse of push_through_family."""
    cur = sol
    for p, b in zip(reversed(family.primes), reversed(label)):
        cur = lift_solution(p, b, cur)
    return cur
