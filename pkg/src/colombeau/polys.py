"""Univariate polynomials over Q and exact sign decisions.

``QPoly`` is a small immutable dense polynomial with Fraction coefficients.
Real-root isolation is delegated to sympy; everything layered on top
(signs on intervals, signs at algebraic roots, certified suprema) is exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Iterable, Sequence

from sympy import Poly, QQ, Symbol

__all__ = [
    "QPoly",
    "count_roots",
    "eval_interval",
    "isolate_roots",
    "max_sign",
    "rational_root_in",
    "sign_at_root",
    "sqf_list",
    "sup_abs",
    "sup_abs_exact_cmp",
    "laurent_to_poly",
]

_T = Symbol("t")


class QPoly:
    """Polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("QPoly is immutable")

    @classmethod
    def const(cls, c) -> "QPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "QPoly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, c, k: int) -> "QPoly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPoly.const(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"QPoly({str(self)!r})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            cs = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
            parts.append(cs if k == 0 else f"{cs}*x^{k}")
        return " + ".join(parts) if parts else "0"

    def _lift(self, other):
        if isinstance(other, QPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return QPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return QPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return QPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return QPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def __call__(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derive(self, k: int = 1) -> "QPoly":
        cs = list(self.coeffs)
        for _ in range(k):
            cs = [i * c for i, c in enumerate(cs)][1:]
        return QPoly(cs)

    def antiderivative(self) -> "QPoly":
        return QPoly([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def integrate(self, a: Fraction, b: Fraction) -> Fraction:
        F = self.antiderivative()
        return F(b) - F(a)

    def gcd(self, other: "QPoly") -> "QPoly":
        return _from_sympy(_to_sympy(self).gcd(_to_sympy(other)))

    def exquo(self, other: "QPoly") -> "QPoly":
        return _from_sympy(_to_sympy(self).exquo(_to_sympy(other)))


def _to_sympy(p: QPoly) -> Poly:
    cs = [QQ(c.numerator, c.denominator) for c in reversed(p.coeffs)] or [QQ(0)]
    return Poly.from_list(cs, _T, domain=QQ)


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if hasattr(v, "p") and hasattr(v, "q"):
        return Fraction(int(v.p), int(v.q))
    if hasattr(v, "numerator"):
        return Fraction(int(v.numerator), int(v.denominator))
    return Fraction(v)


def _from_sympy(P: Poly) -> QPoly:
    return QPoly(_frac(c) for c in reversed(P.all_coeffs()))


def laurent_to_poly(terms: Sequence[tuple[object, Fraction]]) -> tuple[QPoly, int]:
    """Turn ``sum c * t**b`` (rational ``b``) into a polynomial in ``s = t**(1/D)``.

    Returns ``(P, D)`` with ``P(s) = s**(-m) * sum c * s**(b*D)`` for the
    smallest exponent ``m``; on ``t > 0`` the sign of the sum equals the sign
    of ``P`` at ``s = t**(1/D)``, and ``P(0) != 0``.
    """
    D = reduce(lcm, (Fraction(b).denominator for _, b in terms), 1)
    ints = [(c, int(Fraction(b) * D)) for c, b in terms]
    m = min(e for _, e in ints)
    cs: dict[int, Fraction] = {}
    for c, e in ints:
        cs[e - m] = cs.get(e - m, Fraction(0)) + c
    top = max(cs)
    return QPoly(cs.get(k, 0) for k in range(top + 1)), D


def sqf_list(p: QPoly) -> list[tuple[QPoly, int]]:
    """Square-free factorization ``[(factor, multiplicity), ...]`` (monic factors)."""
    if p.is_constant():
        return []
    _, facs = _to_sympy(p).sqf_list()
    return [(_from_sympy(f), m) for f, m in facs]


def _bound(v):
    return None if v is None else QQ(v.numerator, v.denominator)


def count_roots(p: QPoly, lo: Fraction | None = None, hi: Fraction | None = None) -> int:
    """Distinct real roots in the closed interval ``[lo, hi]`` (``None`` = unbounded)."""
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    if p.is_constant():
        return 0
    return int(_to_sympy(p).count_roots(_bound(lo), _bound(hi)))


def count_open(p: QPoly, lo: Fraction | None, hi: Fraction | None) -> int:
    """Distinct real roots in the open interval ``(lo, hi)``."""
    n = count_roots(p, lo, hi)
    if lo is not None and p(lo) == 0:
        n -= 1
    if hi is not None and hi != lo and p(hi) == 0:
        n -= 1
    return n


def isolate_roots(p: QPoly, lo: Fraction | None = None, hi: Fraction | None = None
                  ) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating intervals for the distinct real roots in ``[lo, hi]``.

    An exact rational root comes back as a degenerate ``(r, r)``; otherwise
    the root lies in the open interval and neither endpoint is a root.
    """
    if p.is_constant():
        return []
    sq = _to_sympy(p).sqf_part()
    out = []
    for (a, b), _ in sq.intervals(inf=_bound(lo), sup=_bound(hi)):
        a, b = _frac(a), _frac(b)
        out.append(_clean(sq, a, b))
    return out


def _clean(sq: Poly, a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
    if a == b:
        return a, b
    P = _from_sympy(sq)
    if P(a) != 0 and P(b) != 0:
        return a, b
    # shrink until the endpoints are not themselves roots
    width = (b - a) / 4
    while True:
        a2, b2 = sq.refine_root(QQ(a.numerator, a.denominator), QQ(b.numerator, b.denominator),
                                eps=QQ(width.numerator, width.denominator))
        a2, b2 = _frac(a2), _frac(b2)
        if a2 == b2 or (P(a2) != 0 and P(b2) != 0):
            return a2, b2
        width /= 4
        a, b = a2, b2


def rational_root_in(p: QPoly, iv: tuple[Fraction, Fraction]) -> Fraction | None:
    """The root of ``p`` isolated by ``iv`` if it is rational, else ``None``."""
    a, b = iv
    if a == b:
        return a
    for root in _to_sympy(p).ground_roots():
        v = _frac(root)
        if a < v < b:
            return v
    return None


def refine(p: QPoly, a: Fraction, b: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink the isolating interval ``(a, b)`` of a root of square-free ``p``."""
    if a == b:
        return a, b
    sq = _to_sympy(p)
    a2, b2 = sq.refine_root(QQ(a.numerator, a.denominator), QQ(b.numerator, b.denominator),
                            eps=QQ(width.numerator, width.denominator))
    return _clean(sq, _frac(a2), _frac(b2))


def eval_interval(p: QPoly, a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of ``p`` over ``[a, b]`` by interval Horner evaluation."""
    lo = hi = Fraction(0)
    for c in reversed(p.coeffs):
        prods = (lo * a, lo * b, hi * a, hi * b)
        lo, hi = min(prods) + c, max(prods) + c
    return lo, hi


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def sign_at_root(F: QPoly, iv: tuple[Fraction, Fraction], q: QPoly) -> int:
    """Sign of ``q`` at the unique root of square-free ``F`` isolated by ``iv``."""
    a, b = iv
    if a == b:
        return _sign(q(a))
    if q.is_zero():
        return 0
    if not q.is_constant():
        G = F.gcd(q)
        if not G.is_constant() and count_open(G, a, b) > 0:
            return 0
    width = b - a
    while True:
        lo, hi = eval_interval(q, a, b)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        width /= 16
        a, b = refine(F, a, b, width)
        if a == b:
            return _sign(q(a))


def _right_sign(p: QPoly, a: Fraction) -> int:
    # sign of p just to the right of a: first non-vanishing Taylor coefficient
    d = p
    while not d.is_zero():
        v = d(a)
        if v != 0:
            return _sign(v)
        d = d.derive()
    return 0


def _odd_part(p: QPoly) -> QPoly:
    out = QPoly.const(1)
    for f, m in sqf_list(p):
        if m % 2:
            out = out * f
    return out


def max_sign(p: QPoly, a: Fraction, b: Fraction) -> int:
    """Sign of ``max p`` over the closed interval ``[a, b]``, decided exactly."""
    if p.is_zero():
        return 0
    if a == b or p.is_constant():
        return max(_sign(p(a)), _sign(p(b)))
    if _right_sign(p, a) > 0:
        return 1
    # cheap certificates: a positive sample, or negative enclosures everywhere
    stack, pieces = [(a, b)], 0
    while stack and pieces < 64:
        lo_x, hi_x = stack.pop()
        pieces += 1
        if eval_interval(p, lo_x, hi_x)[1] < 0:
            continue
        mid = (lo_x + hi_x) / 2
        if p(mid) > 0:
            return 1
        stack += [(lo_x, mid), (mid, hi_x)]
    if not stack:
        return -1
    odd = _odd_part(p)
    if not odd.is_constant() and count_open(odd, a, b) > 0:
        return 1
    return 0 if count_roots(p, a, b) > 0 else -1


def sup_abs(p: QPoly, a: Fraction, b: Fraction, tol: Fraction = Fraction(1, 10**13)
            ) -> tuple[Fraction, Fraction]:
    """Certified enclosure ``(lo, hi)`` of ``max |p|`` on ``[a, b]``, ``hi - lo <= tol``.

    Candidates are the endpoints and the critical points; irrational critical
    points are refined until a mean-value enclosure of ``p`` is tight.
    """
    if p.is_zero():
        return Fraction(0), Fraction(0)
    best_lo = max(abs(p(a)), abs(p(b)))
    best_hi = best_lo
    dp = p.derive()
    if not dp.is_constant():
        sq = QPoly.const(1)
        for f, _ in sqf_list(dp):
            sq = sq * f
        m = max(abs(a), abs(b))
        slope = sum((abs(c) * m**k for k, c in enumerate(dp.coeffs)), Fraction(0))
        width = tol / (2 * slope + 2)
        for iv in isolate_roots(sq, a, b):
            lo, hi = _abs_enclosure(p, dp, sq, iv, width, tol)
            best_lo = max(best_lo, lo)
            best_hi = max(best_hi, hi)
    return best_lo, best_hi


def _abs_enclosure(p, dp, sq, iv, width, tol):
    a, b = iv
    if b - a > width:
        a, b = refine(sq, a, b, width)
    while True:
        if a == b:
            v = abs(p(a))
            return v, v
        mid = (a + b) / 2
        d_lo, d_hi = eval_interval(dp, a, b)
        rad = max(abs(d_lo), abs(d_hi)) * (b - a) / 2
        v = p(mid)
        if 2 * rad <= tol:
            lo, hi = v - rad, v + rad
            if lo >= 0:
                return lo, hi
            if hi <= 0:
                return -hi, -lo
            return Fraction(0), max(-lo, hi)
        width = (b - a) / 16
        a, b = refine(sq, a, b, width)


def sup_abs_exact_cmp(p: QPoly, a: Fraction, b: Fraction, t: Fraction) -> int:
    """Exact sign of ``max_{[a,b]} |p| - t`` for ``t >= 0``."""
    s_up = max(max_sign(p - t, a, b), max_sign(-p - t, a, b))
    return s_up
