"""Exact local densities and the lower-bounded Euler product.

Closed formulas for the completely-split density sigma(p), the 2-adic
L1*L2^3 density delta2 = 3/16, its odd-prime analogue gamma(p), and the
large-prime non-square-class density lam(p), together with a brute-force
F_p oracle (numpy over all p^5 coefficient vectors) and a rigorous
rational enclosure of the product mu in the main-theorem count.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .factorize import factor, small_primes

_ORACLE_LIMIT = 13


def sigma(p: int) -> Fraction:
    """Density of forms mod p that split completely (p >= 5)."""
    if p < 5:
        raise ValueError("sigma requires p >= 5")
    return Fraction((p - 1) ** 2 * (p + 4) * (p - 2) * (p - 3), 24 * p ** 5)


def delta2() -> Fraction:
    """Density of L1 * L2^3 shapes mod 2."""
    return Fraction(3, 16)


def lam(p: int) -> Fraction:
    """Density of forms mod p that are nonzero and not c * M(x,y)^2 with M a
    split quadratic (c M^2 with two double roots, or a fourth power)."""
    return 1 - Fraction((p - 1) * (p + 1) * p, 2 * p ** 5) \
             - Fraction((p - 1) * (p + 1), p ** 5)


def gamma(p: int) -> Fraction:
    """Density of L1 * L2^3 shapes mod an odd prime p."""
    if p == 2:
        raise ValueError("use delta2() for p = 2")
    return Fraction((p + 1) * p * (p - 1), p ** 5)


# ---------------------------------------------------------------------------
# brute-force oracle over F_p
# ---------------------------------------------------------------------------

def _all_vectors(p: int):
    """All p^5 coefficient vectors as an (p^5, 5) int64 array."""
    n = p ** 5
    idx = np.arange(n, dtype=np.int64)
    cols = []
    for k in range(5):
        cols.append((idx // p ** (4 - k)) % p)
    return np.stack(cols, axis=1)


def _values_on_P1(vecs: np.ndarray, p: int):
    """F(b, 1) for b in F_p and F(1, 0), for every vector: (n, p+1) array."""
    n = len(vecs)
    bs = np.arange(p, dtype=np.int64)
    powers = np.stack([pow(int(b), k, p) for b in bs for k in range(5)]) \
        .reshape(p, 5)
    # value at (b, 1): sum a_i * b^(4-i)
    exps = powers[:, ::-1]                       # b^4, b^3, ..., b^0
    vals = vecs @ exps.T % p                     # (n, p)
    inf = vecs[:, 0] % p                         # F(1,0) = a0
    return np.concatenate([vals, inf[:, None]], axis=1)


def _derivs_on_P1(vecs: np.ndarray, p: int):
    """Criterion values whose nonvanishing makes each projective root simple.

    At finite b: f'(b) with f = F(X, 1).  At infinity: a1 (the derivative of
    the reversed polynomial at 0 when a0 = 0).
    """
    bs = np.arange(p, dtype=np.int64)
    dexp = np.stack([[(4 - i) * pow(int(b), 3 - i, p) if i < 4 else 0
                      for i in range(5)] for b in bs]).reshape(p, 5)
    dvals = vecs @ dexp.T % p
    dinf = vecs[:, 1] % p
    return np.concatenate([dvals, dinf[:, None]], axis=1)


def splits_completely_mask(p: int) -> np.ndarray:
    """Boolean mask over all p^5 vectors: splits completely mod p."""
    vecs = _all_vectors(p)
    vals = _values_on_P1(vecs, p)
    der = _derivs_on_P1(vecs, p)
    is_root = vals == 0
    simple = is_root & (der != 0)
    nroot = is_root.sum(axis=1)
    nsimple = simple.sum(axis=1)
    nonzero = vecs.any(axis=1)
    four_simple = nonzero & (nroot == 4) & (nsimple == 4)
    # 0 and infinity not both roots
    both = is_root[:, 0] & is_root[:, p]
    return four_simple & ~both


def L1L2cubed_mask(p: int) -> np.ndarray:
    """Boolean mask: exactly two projective roots, multiplicities {1, 3}."""
    vecs = _all_vectors(p)
    vals = _values_on_P1(vecs, p)
    der = _derivs_on_P1(vecs, p)
    is_root = vals == 0
    simple = is_root & (der != 0)
    nonzero = vecs.any(axis=1)
    # degree-4 split into two rational points with mults {1,3}: two distinct
    # projective roots, exactly one of them simple
    return nonzero & (is_root.sum(axis=1) == 2) & (simple.sum(axis=1) == 1) \
        & _fully_split_mask(vecs, vals, p)


def _fully_split_mask(vecs, vals, p):
    """Vectors whose form is a product of linear forms over F_p (all four
    projective roots rational, counted with multiplicity)."""
    # build the set of coefficient codes of m0 * prod of 4 rational points
    import itertools

    codes = set()
    points = list(range(p)) + [None]  # None = infinity
    for combo in itertools.combinations_with_replacement(points, 4):
        poly = [1]
        for b in combo:
            if b is None:
                continue
            poly = [(c) % p for c in _mul_linear(poly, b, p)]
        poly = [0] * (5 - len(poly)) + poly
        for m0 in range(1, p):
            codes.add(_code([m0 * c % p for c in poly], p))
    vec_codes = _code_arr(vecs, p)
    return np.isin(vec_codes, np.fromiter(codes, dtype=np.int64))


def _mul_linear(poly, b, p):
    new = [0] * (len(poly) + 1)
    for i, c in enumerate(poly):
        new[i] = (new[i] + c) % p
        new[i + 1] = (new[i + 1] - c * b) % p
    return new


def _code(coeffs, p):
    v = 0
    for c in coeffs:
        v = v * p + c
    return v


def _code_arr(vecs, p):
    v = np.zeros(len(vecs), dtype=np.int64)
    for k in range(5):
        v = v * p + vecs[:, k]
    return v


def square_class_mask(p: int) -> np.ndarray:
    """Boolean mask: F = c * M^2 with M a product of rational linear forms
    (root multiplicity pattern {2,2} or {4})."""
    import itertools

    codes = set()
    points = list(range(p)) + [None]
    for pts in itertools.chain(
            ((a, a, b, b) for a, b in itertools.combinations(points, 2)),
            ((a, a, a, a) for a in points)):
        poly = [1]
        for b in pts:
            if b is None:
                continue
            poly = _mul_linear(poly, b, p)
        poly = [0] * (5 - len(poly)) + poly
        for m0 in range(1, p):
            codes.add(_code([m0 * c % p for c in poly], p))
    vecs = _all_vectors(p)
    return np.isin(_code_arr(vecs, p), np.fromiter(codes, dtype=np.int64))


_MASKS = {
    "splits_completely": splits_completely_mask,
    "L1L2cubed": L1L2cubed_mask,
    "square_class": square_class_mask,
}


def brute_force_density(p: int, predicate) -> Fraction:
    """count / p^5 of vectors mod p satisfying the predicate.

    `predicate` is one of the mask names above, a mask-builder f(p) -> bool
    array over all p^5 vectors, or a scalar function f(form, p) -> bool.
    """
    if p > _ORACLE_LIMIT:
        raise ValueError(f"enumeration budget is p <= {_ORACLE_LIMIT}")
    if isinstance(predicate, str):
        mask = _MASKS[predicate](p)
        return Fraction(int(mask.sum()), p ** 5)
    try:
        mask = predicate(p)
        if isinstance(mask, np.ndarray) and mask.dtype == bool:
            return Fraction(int(mask.sum()), p ** 5)
    except TypeError:
        pass
    from itertools import product

    from .forms import BinaryQuarticForm

    count = 0
    for co in product(range(p), repeat=5):
        if not any(co):
            continue  # the zero form is outside every predicate's domain
        if predicate(BinaryQuarticForm(*co), p):
            count += 1
    return Fraction(count, p ** 5)


# ---------------------------------------------------------------------------
# the Euler-product lower bound from the main count
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DensityInterval:
    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        assert 0 < self.lower <= self.upper < 1

    def __str__(self):
        return f"[{self.lower}, {self.upper}]"


def mu_lower_bound(h: int, primes: tuple[int, int, int],
                   cutoff: int = 10_000) -> DensityInterval:
    """Rigorous enclosure of the product density

        mu = 12/(p1 p2 p3)^5 * delta2 * prod sigma(p_i)
             * prod_{49 < p <= cutoff, p not in P, p coprime to h} lam(p)
             * prod_{odd p < 49 not in P, or p | h} gamma(p)

    with the lam tail below cutoff bounded by
    prod_{p > N} lam(p) >= 1 - 1/(2N) - 1/(2N^2).
    """
    if h == 0:
        raise ValueError("h must be nonzero")
    p1, p2, p3 = primes
    if len(set(primes)) != 3 or min(primes) < 5:
        raise ValueError("need three distinct primes > 4")
    if any(h % p == 0 for p in primes):
        raise ValueError("primes must not divide h")
    if cutoff < 49:
        raise ValueError("cutoff must be >= 49")
    hres = factor(abs(h), ecm_curves=60)
    if not hres.complete:
        raise ValueError(f"could not factor h = {h}")
    h_primes = set(hres.factors)
    core = Fraction(12, (p1 * p2 * p3) ** 5) * delta2()
    for p in primes:
        core *= sigma(p)
    gamma_set = {p for p in small_primes() if 2 < p < 49 and p not in primes}
    gamma_set |= {p for p in h_primes if p % 2 and p not in primes}
    for p in sorted(gamma_set):
        core *= gamma(p)
    lam_prod = Fraction(1)
    for p in small_primes(cutoff + 1):
        if p <= 49 or p in primes or p in h_primes or p > cutoff:
            continue
        lam_prod *= lam(p)
    tail_low = 1 - Fraction(1, 2 * cutoff) - Fraction(1, 2 * cutoff ** 2)
    assert tail_low > 0
    return DensityInterval(core * lam_prod * tail_low, core * lam_prod)
