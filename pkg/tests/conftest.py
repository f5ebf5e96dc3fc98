import math
import random

import pytest

from quartic_hasse.forms import BinaryQuarticForm, invariants


def random_form(rng: random.Random, bound: int = 50,
                nonzero_disc: bool = True) -> BinaryQuarticForm:
    while True:
        co = [rng.randint(-bound, bound) for _ in range(5)]
        if not any(co):
            continue
        f = BinaryQuarticForm(*co)
        if nonzero_disc and invariants(f).D == 0:
            continue
        return f


def random_split_form(rng: random.Random, p: int,
                      lift_bound: int = 20) -> BinaryQuarticForm:
    """A form that splits completely mod p, built from prescribed roots."""
    from quartic_hasse.modp import splits_completely

    while True:
        use_inf = rng.random() < 0.3
        nfinite = 3 if use_inf else 4
        pool = list(range(1, p)) if use_inf else list(range(p))
        roots = rng.sample(pool, nfinite)
        m0 = rng.randrange(1, p)
        poly = [m0]
        for b in roots:
            new = [0] * (len(poly) + 1)
            for i, c in enumerate(poly):
                new[i] += c
                new[i + 1] -= c * b
            poly = new
        poly = [0] * (5 - len(poly)) + [c % p for c in poly]
        coeffs = [c + p * rng.randint(-lift_bound, lift_bound) for c in poly]
        if not any(coeffs) or math.gcd(*coeffs) != 1:
            continue
        f = BinaryQuarticForm(*coeffs)
        if invariants(f).D == 0:
            continue
        if splits_completely(f, p) is not None:
            return f


@pytest.fixture
def rng():
    return random.Random(20260823)
