"""Independent brute-force oracles.

Nothing here calls the deciders under test: nets are evaluated term by term
with plain mpmath at very small eps, and polynomial suprema come from dense
grids with a derivative bound.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

DEEP_J = 3000  # eps = 2**-3000
_BITS = 4000


def _mp():
    ctx = mpmath.MPContext()
    ctx.prec = _BITS
    return ctx


def eval_terms(terms, eps, iota=None, ctx=None):
    """Sum of ``c * eps**q [* iota**b]`` from raw term tuples."""
    ctx = ctx or _mp()
    total = ctx.mpf(0)
    for c, *e in terms:
        v = ctx.mpf(c.numerator) / c.denominator * ctx.power(eps, ctx.mpf(e[0].numerator) / e[0].denominator)
        if len(e) > 1:
            v *= ctx.power(iota, ctx.mpf(e[1].numerator) / e[1].denominator)
        total += v
    return total


def brute_valuation(terms, j: int = DEEP_J) -> Fraction | float:
    """Valuation read off ``log|x(eps)| / log eps`` at ``eps = 2**-j``, snapped to
    the grid of exponents with denominator dividing 12."""
    ctx = _mp()
    v = eval_terms(terms, ctx.ldexp(1, -j), ctx=ctx)
    if v == 0:
        return float("inf")
    est = float(ctx.log(abs(v), 2)) / -j
    return Fraction(round(est * 12), 12)


def brute_sign(terms, iota=None, j: int = DEEP_J) -> int:
    ctx = _mp()
    io = None if iota is None else ctx.mpf(iota.numerator) / iota.denominator
    v = eval_terms(terms, ctx.ldexp(1, -j), io, ctx)
    return (v > 0) - (v < 0)


def brute_ball_member(terms, r: Fraction, j: int = DEEP_J, slack: int = 40) -> bool:
    """Simplified ``|x| <= eps**r + eps**b`` read at one deep grid point."""
    ctx = _mp()
    eps = ctx.ldexp(1, -j)
    v = eval_terms(terms, eps, ctx=ctx)
    bound = ctx.power(eps, ctx.mpf(r.numerator) / r.denominator)
    return abs(v) <= bound + ctx.power(eps, ctx.mpf(r.numerator) / r.denominator + slack)


def poly_eval(coeffs, x: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(coeffs):
        out = out * x + c
    return out


def brute_sup(coeffs, a: Fraction, b: Fraction, n: int = 2000) -> tuple[float, float]:
    """Enclosure of ``max_[a,b] |p|``: best grid value and that value plus a Lipschitz slack."""
    dcoeffs = [k * c for k, c in enumerate(coeffs)][1:]
    m = max(abs(a), abs(b))
    lip = sum(abs(c) * m**k for k, c in enumerate(dcoeffs))
    h = (b - a) / n
    best = max(abs(poly_eval(coeffs, a + h * i)) for i in range(n + 1))
    return float(best), float(best + lip * h / 2)


def _derive_coeffs(coeffs, k):
    for _ in range(k):
        coeffs = [i * c for i, c in enumerate(coeffs)][1:]
    return coeffs


def brute_gf_violation(terms, full, sigma, r, K, iotas=(Fraction(1, 5), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(4)),
                       n=200, j=DEEP_J, slack=40):
    """Grid point ``(x, iota)`` where ``|d^sigma f| > iota^r eps^r + eps^(r+slack)``, or ``None``.

    ``terms`` are raw ``(coeff_list, q[, b])`` tuples; ``iota`` is ignored for
    simplified functions (the bound is then ``eps^r + ...``).
    """
    ctx = _mp()
    eps = ctx.ldexp(1, -j)
    rr = ctx.mpf(r.numerator) / r.denominator
    a, b = K
    xs = [a + (b - a) * Fraction(i, n) for i in range(n + 1)]
    derived = [(_derive_coeffs(list(coeffs), sigma), e) for coeffs, *e in terms]
    derived = [(dc, e) for dc, e in derived if dc]
    for io in (iotas if full else (Fraction(1),)):
        iv = ctx.mpf(io.numerator) / io.denominator
        bound = (iv ** rr if full else 1) * ctx.power(eps, rr) + ctx.power(eps, rr + slack)
        weighted = []
        for dc, e in derived:
            w = ctx.power(eps, ctx.mpf(e[0].numerator) / e[0].denominator)
            if full:
                w *= iv ** (ctx.mpf(e[1].numerator) / e[1].denominator)
            weighted.append(([ctx.mpf(c.numerator) / c.denominator for c in dc], w))
        for x in xs:
            xv = ctx.mpf(x.numerator) / x.denominator
            total = ctx.mpf(0)
            for cs, w in weighted:
                px = ctx.mpf(0)
                for c in reversed(cs):
                    px = px * xv + c
                total += px * w
            if abs(total) > bound:
                return x, io
    return None
