"""Acceptance gate: end-to-end checks with explicit runtime budgets.

Each test states its wall-clock budget and asserts it, so a regression in
any hot path (invariants, sieved search, local deciders, the witness
pipeline) fails loudly here.
"""

import math
import random
import time
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from quartic_hasse.density import brute_force_density, delta2, gamma, lam, sigma
from quartic_hasse.descent import build_family, descend_all
from quartic_hasse.forms import (BinaryQuarticForm, IntegerMatrix2x2,
                                 apply_matrix, invariant_pair_admissible,
                                 invariants)
from quartic_hasse.local import INSOLUBLE, SOLUBLE, soluble_over_Zp
from quartic_hasse.modp import splits_completely
from quartic_hasse.search import bound_applicable, count_bound
from quartic_hasse.witness import construct_witness, verify_theorem
from quartic_hasse.density import mu_lower_bound

from conftest import random_split_form


def test_invariants_at_scale():
    """10^5 forms with coefficients up to 2^128: syzygy and weight laws, < 30 s."""
    t0 = time.monotonic()
    rng = random.Random(1)
    bound = 1 << 128
    mats = [IntegerMatrix2x2(1, 1, 0, 1), IntegerMatrix2x2(0, 1, -1, 0),
            IntegerMatrix2x2(2, 1, 1, 1), IntegerMatrix2x2(1, 0, 3, 1)]
    for n in range(100_000):
        f = BinaryQuarticForm(*(rng.randint(-bound, bound) for _ in range(5)))
        inv = invariants(f)   # asserts 27 | 4I^3 - J^2 internally
        assert 27 * inv.D == 4 * inv.I ** 3 - inv.J ** 2
        if n % 100 == 0:      # full weight-law check on a 1% subsample
            mat = mats[n // 100 % 4]
            d = mat.det()
            ig = invariants(apply_matrix(f, mat))
            assert (ig.I, ig.J, ig.D) == (d ** 4 * inv.I, d ** 6 * inv.J,
                                          d ** 12 * inv.D)
            assert ig.H == d ** 12 * inv.H
    elapsed = time.monotonic() - t0
    assert elapsed < 30, f"invariant check took {elapsed:.1f}s (budget 30s)"


def test_admissibility_at_scale():
    """10^6 random forms: every integral (I, J) pair is admissible, < 60 s."""
    t0 = time.monotonic()
    rs = np.random.default_rng(2)
    n = 1_000_000
    # int64 is exact here: |J| <= 135 * 1000^3 < 2^63
    a = rs.integers(-1000, 1001, size=(5, n))
    a0, a1, a2, a3, a4 = a
    I = a2 * a2 - 3 * a1 * a3 + 12 * a0 * a4
    J = (2 * a2 ** 3 - 9 * a1 * a2 * a3 + 27 * a1 * a1 * a4
         - 72 * a0 * a2 * a4 + 27 * a0 * a3 * a3)
    i9, j27 = I % 9, J % 27
    cls0 = (I % 3 == 0) & (j27 == 0)
    ok = (cls0
          | ((i9 == 1) & ((j27 == 2) | (j27 == 25)))
          | ((i9 == 4) & ((j27 == 16) | (j27 == 11)))
          | ((i9 == 7) & ((j27 == 7) | (j27 == 20))))
    assert bool(ok.all())
    # spot-check the vectorized classifier against the reference predicate
    for k in range(0, n, 50_000):
        assert invariant_pair_admissible(int(I[k]), int(J[k])) == bool(ok[k])
    elapsed = time.monotonic() - t0
    assert elapsed < 60, f"admissibility check took {elapsed:.1f}s (budget 60s)"


def test_density_oracles():
    """Closed-form densities equal brute force for p in {2,...,13}, < 2 min."""
    t0 = time.monotonic()
    assert brute_force_density(2, "L1L2cubed") == delta2() == Fraction(3, 16)
    for p in (5, 7, 11, 13):
        assert brute_force_density(p, "splits_completely") == sigma(p)
    for p in (3, 5, 7, 11, 13):
        assert brute_force_density(p, "L1L2cubed") == gamma(p)
        assert 1 - brute_force_density(p, "square_class") == lam(p)
    assert lam(5) == Fraction(3041, 3125)
    elapsed = time.monotonic() - t0
    assert elapsed < 120, f"density oracles took {elapsed:.1f}s (budget 120s)"


def test_descent_at_scale():
    """10^3 split forms: descent integrality, shape and scaling, < 10 s.

    Every descend_at call asserts integrality of the division by p, the
    (p^2, p^3, p^6) invariant scaling and the y^3 * (unit x + ...) residual
    shape; this test only has to drive it.
    """
    t0 = time.monotonic()
    rng = random.Random(4)
    for k in range(1000):
        p = (5, 7, 11, 13)[k % 4]
        f = random_split_form(rng, p, lift_bound=50)
        branches = descend_all(f, p)
        assert len(branches) == 4
    elapsed = time.monotonic() - t0
    assert elapsed < 10, f"descent check took {elapsed:.1f}s (budget 10s)"


def test_correspondence_families():
    """64-form family at (5,7,11), h = 1, box B = 200: exact bijection, < 2 min."""
    t0 = time.monotonic()
    from quartic_hasse.search import verify_correspondence

    _, form, _ = construct_witness(1)
    fam = build_family(form, (5, 7, 11))
    rep = verify_correspondence(fam, 1, 200)
    assert rep.ok and rep.counts_match()
    # a small synthetic family with actual solutions in the box
    g = BinaryQuarticForm(15, -17, 22, -27, 7)
    fam2 = build_family(g, (5, 7, 11))
    targets = []
    for x in range(-200, 201):
        for y in (1, 3, 7):
            v = g(x, y)
            if v and v % 385 == 0 and math.gcd(x, y) == 1:
                targets.append(v // 385)
    found = False
    for h2 in sorted(set(targets), key=abs)[:3]:
        rep2 = verify_correspondence(fam2, h2, 200)
        assert rep2.ok
        found = found or any(ss.solutions for ss in rep2.members.values())
    assert found
    elapsed = time.monotonic() - t0
    assert elapsed < 120, f"correspondence check took {elapsed:.1f}s (budget 120s)"


def _exhaustive_insoluble_check(form, h, p, depth):
    """No residue pair solves F = h mod p^depth (primitivity via scale 0)."""
    mod = p ** depth
    co = [c % mod for c in form.coeffs()]
    for x, y in product(range(mod), repeat=2):
        if x % p == 0 and y % p == 0:
            continue
        v = (((co[0] * x + co[1] * y) * x + co[2] * y * y) * x
             + co[3] * y ** 3) * x + co[4] * y ** 4
        if (v - h) % mod == 0:
            return False
    return True


def test_local_deciders():
    """2-adic facts, 500 Soluble L1*L2^3 instances, 100 exhaustively
    re-verified Insoluble certificates, < 5 min."""
    t0 = time.monotonic()
    from quartic_hasse.local import fourth_power_unit_2adic

    # (a) u is a 2-adic fourth power iff u = 1 mod 16
    for u in range(-31, 32, 2):
        assert fourth_power_unit_2adic(u) == (u % 16 == 1)
    # (b) the x y^3 shape mod an odd prime q forces Z_q-solubility when
    # q does not divide h
    rng = random.Random(6)
    soluble_seen = 0
    while soluble_seen < 500:
        q = rng.choice([3, 5, 7, 11, 13])
        base = rng.randrange(1, q)          # unit coefficient on x y^3
        co = [q * rng.randint(-20, 20) for _ in range(5)]
        co[3] += base
        f = BinaryQuarticForm(*co)
        if invariants(f).D == 0:
            continue
        h = rng.choice([1, -1, 2, 3, 5, -7, 9, 11])
        if h % q == 0:
            continue
        cert = soluble_over_Zp(f, h, q)
        assert cert.verdict == SOLUBLE, (co, h, q, cert)
        assert cert.check(f, h)
        soluble_seen += 1
    # (c) Insoluble certificates re-verified by exhausting residues at the
    # certified depth (kept to p^(2 depth) <= ~4e6 pairs)
    insoluble_seen = 0
    while insoluble_seen < 100:
        p = rng.choice([2, 3, 5])
        f = BinaryQuarticForm(*(rng.randint(-30, 30) for _ in range(5)))
        if invariants(f).D == 0:
            continue
        h = rng.choice([1, -1, 2, 3, -3, 5, 7, -7, 10, 13])
        if h % p ** 4 == 0:
            continue
        cert = soluble_over_Zp(f, h, p)
        if cert.verdict != INSOLUBLE:
            continue
        if p ** (2 * cert.depth) > 4_000_000:
            continue
        assert _exhaustive_insoluble_check(f, h, p, cert.depth), \
            (f.coeffs(), h, p, cert.depth)
        insoluble_seen += 1
    elapsed = time.monotonic() - t0
    assert elapsed < 300, f"local deciders took {elapsed:.1f}s (budget 300s)"


def test_count_bound_values():
    """52 - 20 i at eps = 1/12, with the exact applicability inequality."""
    for i in (0, 1, 2):
        assert count_bound(10 ** 120, 385, i) == 52 - 20 * i
    # applicability is monotone in |D| and anti-monotone in m
    assert bound_applicable(10 ** 120, 385)
    assert not bound_applicable(10 ** 24, 385)
    assert not bound_applicable(10 ** 120, 10 ** 18)


@pytest.mark.parametrize("h", [1, -2, 5])
def test_full_pipeline(h):
    """verify_theorem at B = 10^4: everywhere locally soluble, bound holds,
    >= 64 - bound members flagged globally insoluble, < 30 min for all h."""
    t0 = time.monotonic()
    rep = verify_theorem(h, B=10_000)
    assert rep.everywhere_locally_soluble is True
    assert rep.applicable
    assert rep.bound == 52 - 20 * rep.invariants.signature_i
    assert len(rep.solutions.solutions) <= rep.bound
    assert rep.correspondence.ok
    assert len(rep.flagged) >= rep.min_flagged_expected > 0
    for label in rep.flagged:
        assert rep.local_reports[label].locally_soluble_everywhere is True
        assert rep.correspondence.members[label].solutions == []
    elapsed = time.monotonic() - t0
    assert elapsed < 600, f"full pipeline (h={h}) took {elapsed:.1f}s (budget 600s each)"


def test_density_enclosure():
    """mu_lower_bound(1, (5,7,11), 10^4): valid, tight, reproducible, < 1 min."""
    t0 = time.monotonic()
    a = mu_lower_bound(1, (5, 7, 11), cutoff=10_000)
    b = mu_lower_bound(1, (5, 7, 11), cutoff=10_000)
    assert (a.lower, a.upper) == (b.lower, b.upper)
    assert 0 < a.lower <= a.upper < 1
    assert a.lower > a.upper * Fraction(999, 1000)   # 1e4 tail is tiny
    # the enclosure sits below the bare core factor and above zero by a
    # concrete margin
    assert a.upper < Fraction(12, (5 * 7 * 11) ** 5)
    assert a.lower > Fraction(1, 10 ** 60)
    elapsed = time.monotonic() - t0
    assert elapsed < 60, f"density enclosure took {elapsed:.1f}s (budget 60s)"
