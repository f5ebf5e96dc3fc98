"""Reduction of binary quartic forms modulo a prime.

Projective roots (including the point at infinity), complete splitting,
square classes, and the L1 * L2^3 shape used by the 2-adic and odd-prime
local conditions.  Roots are computed with sympy over GF(p), which stays
fast even for p around 10^15.
"""

from __future__ import annotations

from dataclasses import dataclass

from sympy import GF, Poly, Symbol

from .forms import BinaryQuarticForm

_X = Symbol("x")


class _Infinity:
    """Sentinel for the projective point (1 : 0)."""

    __slots__ = ()

    def __repr__(self):
        return "INF"


INF = _Infinity()


def reduce_mod_p(form: BinaryQuarticForm, p: int) -> tuple[int, int, int, int, int]:
    return tuple(a % p for a in form.coeffs())


def _poly_mod_p(form: BinaryQuarticForm, p: int) -> Poly:
    """F(x, 1) mod p as a sympy Poly over GF(p) (may drop degree)."""
    return Poly(list(reduce_mod_p(form, p)), _X, domain=GF(p))


def roots_mod_p(form: BinaryQuarticForm, p: int) -> list[tuple[object, int]]:
    """Projective roots of F mod p with multiplicities.

    Returns (root, mult) pairs, root an integer in [0, p) or INF.  Raises
    if F vanishes identically mod p.
    """
    coeffs = reduce_mod_p(form, p)
    if not any(coeffs):
        raise ValueError(f"form vanishes identically mod {p}")
    f = _poly_mod_p(form, p)
    deg = f.degree() if not f.is_zero else -1
    out: list[tuple[object, int]] = []
    if deg < 4:
        out.append((INF, 4 - max(deg, 0)))
    if deg >= 1:
        for r, m in f.ground_roots().items():
            out.append((int(r) % p, m))
    return out


@dataclass(frozen=True)
class SplitData:
    p: int
    roots: tuple[object, ...]  # 4 distinct projective roots, INF last if present
    m0: int                    # unit: leading coefficient along the split

    def has_infinity(self) -> bool:
        return self.roots and self.roots[-1] is INF


def splits_completely(form: BinaryQuarticForm, p: int) -> SplitData | None:
    """SplitData if F mod p is a unit times 4 distinct rational linear forms,
    with 0 and infinity not both among the roots; else None.
    """
    if p < 5:
        return None  # fewer than 4 usable residues
    rts = roots_mod_p(form, p)
    if len(rts) != 4 or any(m != 1 for _, m in rts):
        return None
    has_inf = any(r is INF for r, _ in rts)
    roots = sorted(r for r, _ in rts if r is not INF)
    if has_inf:
        # finite roots must all be nonzero when infinity is a root
        if 0 in roots:
            return None
        roots.append(INF)
        m0 = form.a1 % p
    else:
        m0 = form.a0 % p
    data = SplitData(p, tuple(roots), m0)
    _assert_split(form, data)
    return data


def _assert_split(form: BinaryQuarticForm, data: SplitData) -> None:
    """Re-expand m0 * prod(x - b*y) (* y if INF) and compare with F mod p."""
    p = data.p
    # coefficients highest x-degree first; multiplying by y = appending a
    # leading zero on the x^4 side, i.e. the product has degree < 4 in x
    poly = [data.m0]
    for b in data.roots:
        if b is INF:
            continue
        new = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            new[i] = (new[i] + c) % p
            new[i + 1] = (new[i + 1] - c * b) % p
        poly = new
    poly = [0] * (5 - len(poly)) + poly
    assert tuple(poly) == reduce_mod_p(form, p), "split re-expansion mismatch"


def is_square_class(form: BinaryQuarticForm, p: int) -> bool:
    """True iff F mod p = c * M(x,y)^2 with M a product of two rational
    linear forms over F_p (the split square classes counted by lambda(p)).
    """
    coeffs = reduce_mod_p(form, p)
    if not any(coeffs):
        raise ValueError(f"form vanishes identically mod {p}")
    rts = roots_mod_p(form, p)
    mults = sorted(m for _, m in rts)
    return sum(mults) == 4 and mults in ([4], [2, 2])


def is_square_class_any(form: BinaryQuarticForm, p: int) -> bool:
    """True iff F mod p = c * M(x,y)^2 with M any quadratic form over F_p,
    i.e. every irreducible factor (including y) has even multiplicity.
    """
    coeffs = reduce_mod_p(form, p)
    if not any(coeffs):
        raise ValueError(f"form vanishes identically mod {p}")
    f = _poly_mod_p(form, p)
    deg = f.degree() if not f.is_zero else 0
    if (4 - deg) % 2:
        return False  # odd power of y
    _, factors = f.factor_list()
    return all(e % 2 == 0 for _, e in factors)


def is_L1_L2cubed(form: BinaryQuarticForm, p: int) -> bool:
    """True iff F mod p = c * L1 * L2^3 with L1, L2 nonproportional rational
    linear forms (projective root multiplicities exactly {1, 3}).
    """
    coeffs = reduce_mod_p(form, p)
    if not any(coeffs):
        raise ValueError(f"form vanishes identically mod {p}")
    rts = roots_mod_p(form, p)
    return sum(m for _, m in rts) == 4 and sorted(m for _, m in rts) == [1, 3]


# ---------------------------------------------------------------------------
# candidate primes for square-class behavior at unfactored moduli
# ---------------------------------------------------------------------------

def _subresultant_sres1(coeffs: list[int]) -> int:
    """First principal subresultant coefficient of (f, f').

    Vanishes mod p exactly when deg gcd(f mod p, f' mod p) >= 2, i.e. when
    the affine part of F mod p has either a root of multiplicity >= 3 or
    two distinct repeated roots.
    """
    from sympy import ZZ, subresultants

    f = Poly(coeffs, _X, domain=ZZ)
    if f.degree() < 2:
        return 0
    chain = subresultants(f, f.diff(_X), _X)
    # the subresultant of degree 1 in the chain; its leading coefficient is
    # sres_1 up to sign, which is all we need (we only use its prime support)
    for g in reversed(chain):
        gp = Poly(g, _X)
        if gp.degree() == 1:
            return int(gp.LC())
    return 0


def square_class_candidate_primes(form: BinaryQuarticForm, D: int,
                                  rho_iters: int = 1 << 19,
                                  ecm_curves: int = 40) -> list[int]:
    """Primes p | D at which F mod p *could* be c * M^2 (any M) or worse.

    If F mod p has every factor with even multiplicity then either the
    affine polynomial f = F(X,1) has deg gcd(f, f') >= 2 mod p, or the
    reversed polynomial does (double root at infinity), or all of
    a0, a1, a3, a4 vanish mod p (the c x^2 y^2 shape).  So every such prime
    divides one of three much smaller gcds with D, which are factored with a
    bounded budget.  Raises if a gcd cannot be fully factored.
    """
    import math

    from .factorize import factor

    coeffs = list(form.coeffs())
    s1 = _subresultant_sres1(coeffs)
    s2 = _subresultant_sres1(list(reversed(coeffs)))
    g3 = math.gcd(form.a0, form.a1, form.a3, form.a4)
    primes: set[int] = set()
    for s in (s1, s2, g3):
        g = math.gcd(abs(D), abs(s))
        if g <= 1:
            continue
        res = factor(g, rho_iters=rho_iters, ecm_curves=ecm_curves)
        if not res.complete:
            raise RuntimeError(
                f"could not fully factor square-class gcd {g} (cofactor {res.cofactor})")
        primes.update(res.factors)
    return sorted(p for p in primes if D % p == 0)
