"""Exact arithmetic on integral binary quartic forms.

A form F(x,y) = a0*x^4 + a1*x^3*y + a2*x^2*y^2 + a3*x*y^3 + a4*y^4 is kept
as five arbitrary-precision integers.  This module computes the classical
invariants I and J (weights 4 and 6), the discriminant D with
27*D = 4*I^3 - J^2, the height max(|I^3|, J^2/4), the action of integer
2x2 matrices, irreducibility over Q, the number of real roots, maximality
(not a proper image of another integral form under a determinant-p map),
admissibility of an (I, J) pair, and triviality of the rational stabilizer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .factorize import factor, small_primes
from .realroots import count_real_roots


class DegenerateFormError(ValueError):
    """Operation requires a nonzero discriminant."""


class NonPrimitiveFormError(ValueError):
    """Operation requires content 1."""


class ReducibleFormError(ValueError):
    """Operation requires an irreducible form."""


class InadmissiblePairError(ValueError):
    """The (I, J) pair matches none of the allowed congruence classes."""


class StabilizerUndecidedError(RuntimeError):
    """Numeric candidate generation exhausted its precision ladder."""


@dataclass(frozen=True)
class BinaryQuarticForm:
    a0: int
    a1: int
    a2: int
    a3: int
    a4: int

    def coeffs(self) -> tuple[int, int, int, int, int]:
        return (self.a0, self.a1, self.a2, self.a3, self.a4)

    def __call__(self, x: int, y: int) -> int:
        a0, a1, a2, a3, a4 = self.coeffs()
        return (((a0 * x + a1 * y) * x + a2 * y * y) * x + a3 * y ** 3) * x + a4 * y ** 4

    def is_zero(self) -> bool:
        return not any(self.coeffs())

    def scale(self, c: int) -> "BinaryQuarticForm":
        return BinaryQuarticForm(*(c * a for a in self.coeffs()))

    def reversed(self) -> "BinaryQuarticForm":
        """F(y, x)."""
        return BinaryQuarticForm(self.a4, self.a3, self.a2, self.a1, self.a0)

    def __str__(self) -> str:
        return ",".join(str(a) for a in self.coeffs())

    @staticmethod
    def parse(text: str) -> "BinaryQuarticForm":
        parts = text.replace(",", " ").split()
        if len(parts) != 5:
            raise ValueError(f"expected 5 coefficients, got {len(parts)}")
        return BinaryQuarticForm(*(int(t) for t in parts))


@dataclass(frozen=True)
class IntegerMatrix2x2:
    a: int
    b: int
    c: int
    d: int

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def is_unimodular(self) -> bool:
        return self.det() in (1, -1)


IDENTITY = IntegerMatrix2x2(1, 0, 0, 1)


class InvariantData:
    """Exact I, J, D, height, and (lazily) the real-root signature."""

    __slots__ = ("I", "J", "D", "H", "_form", "_signature")

    def __init__(self, I: int, J: int, D: int, H: Fraction, form: BinaryQuarticForm):
        self.I = I
        self.J = J
        self.D = D
        self.H = H
        self._form = form
        self._signature = None

    @property
    def signature_i(self) -> int:
        """Number of complex-conjugate root pairs (0, 1 or 2); D != 0 only."""
        if self._signature is None:
            self._signature = real_signature(self._form)
        return self._signature

    def __repr__(self) -> str:
        return f"InvariantData(I={self.I}, J={self.J}, D={self.D}, H={self.H})"


def invariants(form: BinaryQuarticForm) -> InvariantData:
    a0, a1, a2, a3, a4 = form.coeffs()
    I = a2 * a2 - 3 * a1 * a3 + 12 * a0 * a4
    J = (2 * a2 ** 3 - 9 * a1 * a2 * a3 + 27 * a1 * a1 * a4
         - 72 * a0 * a2 * a4 + 27 * a0 * a3 * a3)
    num = 4 * I ** 3 - J * J
    D, rem = divmod(num, 27)
    if rem:
        raise AssertionError("4I^3 - J^2 not divisible by 27; arithmetic bug")
    H = Fraction(max(4 * abs(I) ** 3, J * J), 4)
    return InvariantData(I, J, D, H, form)


def discriminant(form: BinaryQuarticForm) -> int:
    return invariants(form).D


def apply_matrix(form: BinaryQuarticForm, mat: IntegerMatrix2x2) -> BinaryQuarticForm:
    """F(ax + by, cx + dy), expanded exactly."""
    a0, a1, a2, a3, a4 = form.coeffs()
    a, b, c, d = mat.a, mat.b, mat.c, mat.d
    # Coefficients of (a x + b y)^i (c x + d y)^(4-i) collected by x^j y^(4-j).
    out = [0, 0, 0, 0, 0]
    lin1 = _lin_powers(a, b)   # (a x + b y)^k for k = 0..4
    lin2 = _lin_powers(c, d)   # (c x + d y)^k
    for i, ai in enumerate((a0, a1, a2, a3, a4)):
        if ai == 0:
            continue
        p = _poly_mul(lin1[4 - i], lin2[i])
        for j in range(5):
            out[j] += ai * p[j]
    return BinaryQuarticForm(*out)


def _lin_powers(u: int, v: int):
    """Binomial powers of (u x + v y): list of coefficient tuples, k=0..4."""
    pows = [(1,)]
    cur = (1,)
    for _ in range(4):
        nxt = [0] * (len(cur) + 1)
        for j, c in enumerate(cur):
            nxt[j] += c * u
            nxt[j + 1] += c * v
        cur = tuple(nxt)
        pows.append(cur)
    return pows


def _poly_mul(p, q):
    out = [0] * 5
    for i, ci in enumerate(p):
        if ci:
            for j, cj in enumerate(q):
                if cj:
                    out[i + j] += ci * cj
    return out


def content(form: BinaryQuarticForm) -> int:
    if form.is_zero():
        raise ValueError("zero form has no content")
    return math.gcd(*form.coeffs())


def primitive_part(form: BinaryQuarticForm) -> BinaryQuarticForm:
    c = content(form)
    return BinaryQuarticForm(*(a // c for a in form.coeffs()))


def real_signature(form: BinaryQuarticForm) -> int:
    """Number i of complex-conjugate root pairs; F has 4-2i real roots.

    The projective root (1:0) (present when a0 = 0) counts as real.
    Requires D != 0, which makes F(X,1) squarefree.
    """
    inv = invariants(form)
    if inv.D == 0:
        raise DegenerateFormError("real_signature requires D != 0")
    coeffs = list(form.coeffs())
    real = count_real_roots(coeffs)
    if form.a0 == 0:
        real += 1
    return (4 - real) // 2


def invariant_pair_admissible(I: int, J: int) -> bool:
    """Whether (I, J) can occur as the invariants of an integral form."""
    if I % 3 == 0 and J % 27 == 0:
        return True
    i9, j27 = I % 9, J % 27
    if i9 == 1 and j27 in (2, 25):
        return True
    if i9 == 4 and j27 in (16, 11):
        return True
    if i9 == 7 and j27 in (7, 20):
        return True
    return False


def realize_invariants(I: int, J: int, search_bound: int = 16) -> BinaryQuarticForm:
    """A form with the given invariants, for any admissible pair.

    Works inside the family a0=0, a1=1: there I = a2^2 - 3*a3 and
    J = 2*a2^3 - 9*a2*a3 + 27*a4, so a small sweep over a2 always finds a
    solution when the pair is admissible.
    """
    if not invariant_pair_admissible(I, J):
        raise InadmissiblePairError(f"({I}, {J}) is not an admissible pair")
    for a2 in sorted(range(-search_bound, search_bound + 1), key=abs):
        if (a2 * a2 - I) % 3:
            continue
        a3 = (a2 * a2 - I) // 3
        num = J - 2 * a2 ** 3 + 9 * a2 * a3
        if num % 27:
            continue
        a4 = num // 27
        form = BinaryQuarticForm(0, 1, a2, a3, a4)
        inv = invariants(form)
        assert (inv.I, inv.J) == (I, J)
        return form
    raise AssertionError("admissible pair not realized; sweep bound too small")


# ---------------------------------------------------------------------------
# irreducibility over Q
# ---------------------------------------------------------------------------

def is_irreducible(form: BinaryQuarticForm) -> bool:
    """True iff F has no nontrivial factorization over Q.

    Homogeneous quartic F is irreducible iff a0 != 0 (y does not divide F)
    and the dehomogenization F(X, 1) is an irreducible degree-4 polynomial.
    """
    from sympy import Poly, Symbol

    if content(form) != 1:
        raise NonPrimitiveFormError("irreducibility test requires content 1")
    inv = invariants(form)
    if inv.D == 0:
        raise DegenerateFormError("irreducibility test requires D != 0")
    if form.a0 == 0 or form.a4 == 0:
        return False  # y | F, resp. x | F
    return Poly(list(form.coeffs()), Symbol("x"), domain="ZZ").is_irreducible


# ---------------------------------------------------------------------------
# maximality
# ---------------------------------------------------------------------------

def _nonmaximal_at(form: BinaryQuarticForm, p: int) -> bool:
    """Whether F is the image of an integral form under a |det| = p map.

    Equivalent to p^4 dividing every coefficient of F^B for one of the p+1
    Hermite candidates B = (p, b; 0, 1) or (1, 0; 0, p).  Only residues b
    with F(b,1) = 0 mod p can work, so candidates are generated from the
    roots of F mod p.
    """
    from .modp import roots_mod_p, INF

    p4 = p ** 4
    for root, _mult in roots_mod_p(form, p):
        if root is INF:
            g = apply_matrix(form, IntegerMatrix2x2(1, 0, 0, p))
        else:
            g = apply_matrix(form, IntegerMatrix2x2(p, root, 0, 1))
        if all(c % p4 == 0 for c in g.coeffs()):
            return True
    return False


def is_maximal(form: BinaryQuarticForm, _enum_limit: int = 2_000_000):
    """(verdict, per-prime report); tested at primes p with p^12 | D only.

    For huge discriminants the candidate primes come from trial division
    plus the repeated-factor analysis in `modp.square_class_candidate_primes`
    (a p^12 | D image forces a fourth-power factorization of F mod p).
    """
    if content(form) != 1:
        raise NonPrimitiveFormError("maximality test requires content 1")
    D = invariants(form).D
    if D == 0:
        raise DegenerateFormError("maximality test requires D != 0")
    bound = int(gmpy2.iroot(gmpy2.mpz(abs(D)), 12)[0])
    candidates: set[int] = set()
    if bound <= _enum_limit:
        for p in small_primes(bound + 2):
            if p > bound:
                break
            if D % p ** 12 == 0:
                candidates.add(p)
    else:
        from .modp import square_class_candidate_primes

        for p in small_primes():
            if D % p == 0 and D % p ** 12 == 0:
                candidates.add(p)
        for p in square_class_candidate_primes(form, D):
            if D % p ** 12 == 0:
                candidates.add(p)
    report = {p: _nonmaximal_at(form, p) for p in sorted(candidates)}
    return (not any(report.values()), report)


# ---------------------------------------------------------------------------
# rational stabilizer
# ---------------------------------------------------------------------------

def _proportionality(g: BinaryQuarticForm, f: BinaryQuarticForm) -> Fraction | None:
    """c with g = c * f, or None."""
    c = None
    for gc, fc in zip(g.coeffs(), f.coeffs()):
        if fc == 0:
            if gc != 0:
                return None
            continue
        r = Fraction(gc, fc)
        if c is None:
            c = r
        elif c != r:
            return None
    return c


def _is_fourth_power(fr: Fraction) -> bool:
    if fr <= 0:
        return False
    for part in (fr.numerator, fr.denominator):
        _, exact = gmpy2.iroot(gmpy2.mpz(part), 4)
        if not exact:
            return False
    return True


def _rational_matrix_stabilizes(form: BinaryQuarticForm, entries) -> bool:
    """Exact check: can the matrix be rescaled so that F^A = +-F?"""
    from math import lcm

    den = lcm(*(e.denominator for e in entries))
    ints = [int(e * den) for e in entries]
    g = math.gcd(*ints)
    if g:
        ints = [v // g for v in ints]
    mat = IntegerMatrix2x2(*ints)
    if mat.det() == 0:
        return False
    image = apply_matrix(form, mat)
    c = _proportionality(image, form)
    if c is None or c == 0:
        return False
    if abs(ints[0]) == abs(ints[3]) and ints[1] == 0 and ints[2] == 0 \
            and ints[0] == ints[3]:
        return False  # scalar matrix: the trivial +-identity class
    return _is_fourth_power(abs(c))


def stabilizer_is_trivial(form: BinaryQuarticForm) -> bool:
    """True iff the only rational matrices with F^A = +-F are +-identity.

    Candidates are generated numerically: every permutation of the four
    complex roots determines at most one Moebius map, which is rationally
    reconstructed and then verified exactly.  Precision only affects
    candidate generation, never the accept/reject decision.
    """
    import itertools

    import mpmath

    inv = invariants(form)
    if inv.D == 0:
        raise DegenerateFormError("stabilizer test requires D != 0")
    if not is_irreducible(form):
        raise ReducibleFormError("stabilizer test requires an irreducible form")
    unresolved_at_max = False
    for prec in (128, 256, 512, 1024):
        with mpmath.workprec(prec):
            roots = mpmath.polyroots([mpmath.mpf(c) for c in form.coeffs()],
                                     maxsteps=200, extraprec=prec)
            scale = max(1, max(abs(r) for r in roots))
            tol = mpmath.mpf(2) ** (-(3 * prec) // 4) * scale
            den_bound = int(2 ** (prec // 4))
            unresolved = False
            for perm in itertools.permutations(range(4)):
                if perm == (0, 1, 2, 3):
                    continue
                mat = _moebius_matrix(roots, perm)
                if mat is None:
                    continue
                target = roots[perm[3]]
                if abs(_moebius_apply(mat, roots[3]) - target) > tol:
                    continue
                entries = _reconstruct_rational(mat, tol, den_bound)
                if entries is None:
                    continue  # matrix not (recognizably) rational
                if _rational_matrix_stabilizes(form, entries):
                    return False
                unresolved = True  # looked rational but failed: escalate
            if not unresolved:
                return True
            unresolved_at_max = True
    if unresolved_at_max:
        raise StabilizerUndecidedError(
            "candidate matrix looked rational at 1024 bits but failed exact check")
    return True


def _moebius_matrix(roots, perm):
    """Matrix of the Moebius map sending roots[i] -> roots[perm[i]], i<3."""
    z = [roots[0], roots[1], roots[2]]
    w = [roots[perm[0]], roots[perm[1]], roots[perm[2]]]

    def three_point(a, b, c):
        # map sending a->0, b->1, c->inf
        return ((b - c, -a * (b - c)), (b - a, -c * (b - a)))

    mz = three_point(*z)
    mw = three_point(*w)
    # inverse of mw (adjugate), composed with mz
    (a, b), (c, d) = mw
    inv_w = ((d, -b), (-c, a))
    (p, q), (r, s) = inv_w
    (t, u), (v, x) = mz
    return ((p * t + q * v, p * u + q * x), (r * t + s * v, r * u + s * x))


def _moebius_apply(mat, z):
    (a, b), (c, d) = mat
    return (a * z + b) / (c * z + d)


def _reconstruct_rational(mat, tol, den_bound):
    import mpmath

    entries = [mat[0][0], mat[0][1], mat[1][0], mat[1][1]]
    pivot = max(entries, key=abs)
    if abs(pivot) == 0:
        return None
    shift = mpmath.mp.prec
    out = []
    for e in entries:
        ratio = e / pivot
        if abs(ratio.imag) > tol:
            return None
        scaled = int(mpmath.nint(ratio.real * 2 ** shift))
        fr = Fraction(scaled, 2 ** shift).limit_denominator(den_bound)
        if abs(ratio.real - mpmath.mpf(fr.numerator) / fr.denominator) > tol:
            return None
        out.append(fr)
    if all(e == 0 for e in out):
        return None
    return out
