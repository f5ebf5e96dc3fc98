"""Exact real-root counting for integer polynomials via Sturm chains.

Everything here works over the rationals (Fraction), so the counts are
exact for arbitrarily large coefficients.  Only low degrees (<= 4) are
ever needed, so no attempt is made at asymptotic cleverness.
"""

from fractions import Fraction


def _strip(coeffs):
    """Drop leading zeros; coeffs are highest-degree first."""
    i = 0
    while i < len(coeffs) and coeffs[i] == 0:
        i += 1
    return coeffs[i:]


def _polyrem(a, b):
    """Remainder of a / b, coefficients highest-first, Fraction arithmetic."""
    a = list(a)
    db, lb = len(b) - 1, b[0]
    while len(a) - 1 >= db and any(c != 0 for c in a):
        if a[0] == 0:
            a.pop(0)
            continue
        q = a[0] / lb
        for i, c in enumerate(b):
            a[i] -= q * c
        a.pop(0)
    return _strip(a)


def sturm_chain(coeffs):
    """Sturm chain of a squarefree polynomial, highest-degree first."""
    p0 = [Fraction(c) for c in _strip(coeffs)]
    if len(p0) <= 1:
        return [p0] if p0 else []
    p1 = [c * (len(p0) - 1 - i) for i, c in enumerate(p0[:-1])]
    chain = [p0, _strip(p1)]
    while len(chain[-1]) > 1:
        r = _polyrem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _sign_at_inf(poly, positive):
    """Sign of poly at +inf (positive=True) or -inf."""
    if not poly:
        return 0
    lead = poly[0]
    deg = len(poly) - 1
    s = 1 if lead > 0 else -1
    if not positive and deg % 2 == 1:
        s = -s
    return s


def _variations(signs):
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def count_real_roots(coeffs):
    """Number of distinct real roots of a squarefree integer polynomial.

    `coeffs` are highest-degree first.  The polynomial must be squarefree
    (callers guarantee this through a nonzero discriminant).
    """
    chain = sturm_chain(coeffs)
    if not chain or len(chain[0]) <= 1:
        return 0
    neg = _variations([_sign_at_inf(p, False) for p in chain])
    pos = _variations([_sign_at_inf(p, True) for p in chain])
    return neg - pos
