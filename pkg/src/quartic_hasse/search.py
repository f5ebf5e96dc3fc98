"""Primitive-solution search in boxes and the solution-count bound.

The box search sieves candidate pairs with per-prime residue tables before
doing any exact big-integer evaluation, so it stays fast even when the
coefficients have hundreds of bits.  The count bound 36 - 16i + (4-i)/(3e)
and its applicability condition m <= |D|^(1/6-e) / (3.5^2 * 4^(2/3)) are
evaluated with pure integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .descent import GFamily, lift_through_family, push_through_family
from .forms import BinaryQuarticForm

_SIEVE_PRIMES = (11, 13, 17, 19, 23, 29)
_CHUNK_ROWS = 128


@dataclass
class SolutionSet:
    form: BinaryQuarticForm
    m: int
    B: int
    solutions: list  # sorted primitive (x, y) with F(x,y) = m, |x|,|y| <= B

    def __post_init__(self):
        for (x, y) in self.solutions:
            assert math.gcd(x, y) == 1 and self.form(x, y) == self.m
        assert self.solutions == sorted(set(self.solutions))


def _residue_tables(form: BinaryQuarticForm, m: int):
    """tables[q][x mod q, y mod q] = (F(x,y) == m mod q), as boolean arrays."""
    tables = {}
    for q in _SIEVE_PRIMES:
        a = [c % q for c in form.coeffs()]
        xs = np.arange(q, dtype=np.int64)
        X = xs[:, None]
        Y = xs[None, :]
        val = np.zeros((q, q), dtype=np.int64)
        for i, c in enumerate(a):
            val = (val + c * pow_mod(X, 4 - i, q) * pow_mod(Y, i, q)) % q
        tables[q] = val == (m % q)
    return tables


def pow_mod(arr, e, q):
    out = np.ones_like(arr)
    base = arr % q
    while e:
        if e & 1:
            out = out * base % q
        base = base * base % q
        e >>= 1
    return out


def primitive_solutions_in_box(form: BinaryQuarticForm, m: int, B: int,
                               jobs: int = 1) -> SolutionSet:
    """All primitive (x, y), |x|,|y| <= B, with F(x,y) = m, exactly."""
    if m == 0:
        raise ValueError("m must be nonzero")
    if B < 1:
        raise ValueError("B must be >= 1")
    sols = set()
    # y = 0: only (+-1, 0) can be primitive
    for x in (1, -1):
        if form(x, 0) == m:
            sols.add((x, 0))
    tables = _residue_tables(form, m)
    xs = np.arange(-B, B + 1, dtype=np.int64)
    W = len(xs)
    xmods = {q: (xs % q).astype(np.intp) for q in _SIEVE_PRIMES}
    # apply the sparsest table first, then filter the surviving indices only
    order = sorted(_SIEVE_PRIMES, key=lambda q: tables[q].mean())
    for y0 in range(1, B + 1, _CHUNK_ROWS):
        ys = np.arange(y0, min(y0 + _CHUNK_ROWS, B + 1), dtype=np.int64)
        ymods = {q: (ys % q).astype(np.intp) for q in _SIEVE_PRIMES}
        q0 = order[0]
        mask = tables[q0][xmods[q0][None, :], ymods[q0][:, None]]
        surv = np.nonzero(mask.ravel())[0]
        for q in order[1:]:
            if not len(surv):
                break
            keep = tables[q][xmods[q][surv % W], ymods[q][surv // W]]
            surv = surv[keep]
        for flat in surv:
            iy, ix = divmod(int(flat), W)
            x, y = int(xs[ix]), int(ys[iy])
            if math.gcd(x, y) != 1:
                continue
            if form(x, y) == m:
                sols.add((x, y))
                sols.add((-x, -y))
    sols = {(x, y) for (x, y) in sols if abs(x) <= B and abs(y) <= B}
    return SolutionSet(form, m, B, sorted(sols))


# ---------------------------------------------------------------------------
# Prop-2.1-style count bound
# ---------------------------------------------------------------------------

def _check_eps(eps: Fraction) -> Fraction:
    eps = Fraction(eps)
    if not 0 < eps < Fraction(1, 6):
        raise ValueError("epsilon must lie in (0, 1/6)")
    return eps


def bound_applicable(D: int, m: int, eps=Fraction(1, 12)) -> bool:
    """Exactly decide 0 < m <= |D|^(1/6 - eps) / (3.5^2 * 4^(2/3)).

    With eps = a/b the condition, raised to the power 6b, becomes
    m^(6b) * 49^(6b) <= |D|^(b - 6a) * 4^(2b), pure integers throughout.
    """
    eps = _check_eps(eps)
    if m <= 0:
        return False
    a, b = eps.numerator, eps.denominator
    return m ** (6 * b) * 49 ** (6 * b) <= abs(D) ** (b - 6 * a) * 4 ** (2 * b)


def count_bound(D: int, m: int, signature_i: int, eps=Fraction(1, 12)) -> int:
    """36 - 16 i + ceil((4 - i) / (3 eps)) primitive solutions of |F| = m."""
    eps = _check_eps(eps)
    if signature_i not in (0, 1, 2):
        raise ValueError("signature_i must be 0, 1 or 2")
    extra = Fraction(4 - signature_i, 1) / (3 * eps)
    return 36 - 16 * signature_i + math.ceil(extra)


# ---------------------------------------------------------------------------
# descent correspondence, checked exhaustively inside a box
# ---------------------------------------------------------------------------

@dataclass
class CorrespondenceReport:
    family: GFamily
    h: int
    B: int
    parent: SolutionSet
    members: dict                      # label -> SolutionSet
    pushed: dict = field(default_factory=dict)    # parent sol -> (label, pair)
    mismatches: list = field(default_factory=list)
    out_of_box: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def counts_match(self) -> bool:
        pulled = sum(1 for label, ss in self.members.items()
                     for s in ss.solutions
                     if max(map(abs, lift_through_family(self.family, label, s)))
                     <= self.B)
        return len(self.parent.solutions) == len(self.pushed) == pulled


def verify_correspondence(family: GFamily, h: int, B: int,
                          jobs: int = 1) -> CorrespondenceReport:
    """Check the 64-form bijection on every solution the box can see."""
    p1, p2, p3 = family.primes
    m = h * p1 * p2 * p3
    parent = primitive_solutions_in_box(family.base, m, B, jobs=jobs)
    members = {label: primitive_solutions_in_box(g, h, B, jobs=jobs)
               for label, g in sorted(family.members.items(),
                                      key=lambda kv: str(kv[0]))}
    rep = CorrespondenceReport(family, h, B, parent, members)
    # forward: each parent solution descends to a unique member solution
    for sol in parent.solutions:
        label, pair = push_through_family(family, sol)
        rep.pushed[sol] = (label, pair)
        g = family.members[label]
        if g(*pair) != h or math.gcd(*pair) != 1:
            rep.mismatches.append(("push", sol, label, pair))
        elif max(abs(pair[0]), abs(pair[1])) > B:
            rep.out_of_box.append(("push", sol, label, pair))
        elif pair not in members[label].solutions:
            rep.mismatches.append(("push-missing", sol, label, pair))
    # backward: each member solution lifts into the parent set
    for label, ss in members.items():
        for pair in ss.solutions:
            lifted = lift_through_family(family, label, pair)
            if family.base(*lifted) != m or math.gcd(*lifted) != 1:
                rep.mismatches.append(("lift", label, pair, lifted))
                continue
            back_label, back = push_through_family(family, lifted)
            if back_label != label or back != pair:
                rep.mismatches.append(("round-trip", label, pair, lifted))
                continue
            if max(map(abs, lifted)) > B:
                rep.out_of_box.append(("lift", label, pair, lifted))
            elif lifted not in parent.solutions:
                rep.mismatches.append(("lift-missing", label, pair, lifted))
    return rep
