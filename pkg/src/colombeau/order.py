"""Valuation, sharp ultrametric, q-positivity order and scalar balls.

Every decision here is exact.  Simplified nets are decided from their
leading term.  Full nets are decided from their iota-profiles: grouping the
terms by eps exponent gives functions ``g_k(iota) = sum c * iota**b`` and a
net is q-positive iff for every ``iota > 0`` the first non-vanishing
``g_k(iota)`` is positive.  Touching zeros of ``g_1`` at algebraic points
are settled by exact sign evaluation of the later profiles there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
from math import lcm

from sympy import integer_nthroot

from .nets import (
    FULL,
    SIMPLIFIED,
    ModelMismatchError,
    NetF,
    NetS,
    alpha,
    context,
    fmt_rational,
    to_fraction,
)
from .polys import QPoly, count_open, isolate_roots, sign_at_root, sqf_list

__all__ = [
    "INF",
    "BallSpec",
    "Comparison",
    "Membership",
    "Verdict",
    "absolute",
    "fmt_valuation",
    "member",
    "nonneg_representative",
    "order_compare",
    "proot",
    "q_positivity",
    "scalar_ball_member",
    "sharp_dist",
    "sharp_norm",
    "valuation",
]

INF = math.inf


class Verdict(str, Enum):
    POSITIVE = "positive"
    NOT_POSITIVE = "not-positive"
    UNKNOWN = "unknown"

    def __str__(self):
        return self.value


class Membership(str, Enum):
    MEMBER = "member"
    NOT_MEMBER = "not-member"
    UNKNOWN = "unknown"

    def __str__(self):
        return self.value

    @classmethod
    def all_of(cls, verdicts) -> "Membership":
        """Conjunction: any NotMember wins, then any Unknown."""
        vs = list(verdicts)
        if cls.NOT_MEMBER in vs:
            return cls.NOT_MEMBER
        if cls.UNKNOWN in vs:
            return cls.UNKNOWN
        return cls.MEMBER


class Comparison(str, Enum):
    LEQ = "leq"
    GEQ = "geq"
    EQ = "eq"
    INCOMPARABLE = "incomparable"
    UNKNOWN = "unknown"

    def __str__(self):
        return self.value


def valuation(x) -> Fraction | float:
    """Least eps exponent, ``INF`` for the zero net."""
    if x.is_zero():
        return INF
    return x.terms[0][1]


def fmt_valuation(v) -> str:
    return "inf" if v == INF else fmt_rational(Fraction(v))


def sharp_norm(x: NetS) -> float:
    return sharp_dist(x, NetS.zero())


def sharp_dist(x: NetS, y: NetS) -> float:
    """``exp(-valuation(x - y))``; simplified model only."""
    if not isinstance(x, NetS) or not isinstance(y, NetS):
        raise ModelMismatchError("the sharp ultrametric is defined on simplified nets")
    v = valuation(x - y)
    return 0.0 if v == INF else math.exp(-float(v))


# -- q-positivity -----------------------------------------------------------

def _profile_polys(groups) -> list[QPoly]:
    """Each iota-profile as a polynomial in ``s = iota**(1/D)`` (common ``D``).

    Each polynomial is divided by its lowest power of ``s``, which leaves the
    sign on ``s > 0`` unchanged and makes the constant term nonzero.
    """
    D = reduce(lcm, (b.denominator for _, g in groups for _, b in g), 1)
    out = []
    for _, g in groups:
        ints = [(c, int(b * D)) for c, b in g]
        m = min(e for _, e in ints)
        cs: dict[int, Fraction] = {}
        for c, e in ints:
            cs[e - m] = cs.get(e - m, Fraction(0)) + c
        out.append(QPoly(cs.get(k, 0) for k in range(max(cs) + 1)))
    return out


_PROBES = (Fraction(1, 2), Fraction(1), Fraction(2))


def profiles_nonneg(groups) -> bool:
    """Exact test: the first non-vanishing profile is positive for every ``iota > 0``."""
    if not groups:
        return True
    polys = _profile_polys(groups)
    first = polys[0]
    if first.coeffs[0] < 0:
        return False
    if all(c >= 0 for c in first.coeffs):
        return True
    if any(first(s) < 0 for s in _PROBES):
        return False
    for f, m in sqf_list(first):
        if m % 2 and count_open(f, Fraction(0), None) > 0:
            return False
    touching = isolate_roots(first, Fraction(0), None)
    if not touching:
        return True
    F = QPoly.const(1)
    for f, _ in sqf_list(first):
        F = F * f
    for iv in touching:
        for later in polys[1:]:
            s = sign_at_root(F, iv, later)
            if s < 0:
                return False
            if s > 0:
                break
    return True


def q_positivity(x) -> Verdict:
    if x.is_zero():
        return Verdict.POSITIVE
    if isinstance(x, NetS):
        return Verdict.POSITIVE if x.terms[0][0] > 0 else Verdict.NOT_POSITIVE
    groups = x.groups()
    if not x.is_exact:
        # inexact coefficients: only a single-term leading profile is decidable
        if len(groups[0][1]) == 1:
            ok = groups[0][1][0][0] > 0
            return Verdict.POSITIVE if ok else Verdict.NOT_POSITIVE
        return Verdict.UNKNOWN
    return Verdict.POSITIVE if profiles_nonneg(groups) else Verdict.NOT_POSITIVE


def _same_model(x, y):
    if type(x) is not type(y):
        raise ModelMismatchError(f"cannot compare {x.model} net with {y.model} net")


def order_compare(x, y) -> Comparison:
    _same_model(x, y)
    le = q_positivity(y - x)
    ge = q_positivity(x - y)
    P, N = Verdict.POSITIVE, Verdict.NOT_POSITIVE
    if le is P and ge is P:
        return Comparison.EQ
    if le is P and ge is N:
        return Comparison.LEQ
    if ge is P and le is N:
        return Comparison.GEQ
    if le is N and ge is N:
        return Comparison.INCOMPARABLE
    return Comparison.UNKNOWN


# -- absolute value and roots ----------------------------------------------

def absolute(x):
    """``|x|``; exact whenever the sign of ``x`` is decidable.

    A full net that is neither q-positive nor q-negative (its profile
    changes sign) comes back as a sampled net ``|x(eps, iota)|``.
    """
    if x.is_zero():
        return x
    if isinstance(x, NetS):
        return -x if x.terms[0][0] < 0 else x
    pos, neg = q_positivity(x), q_positivity(-x)
    if pos is Verdict.POSITIVE:
        return x
    if neg is Verdict.POSITIVE:
        return -x
    if Verdict.UNKNOWN in (pos, neg):
        raise ValueError(f"sign of {x} is undecidable; refusing to take |x|")
    from .sampled import SampledNet

    return abs(SampledNet.from_exact(x))


def _exact_root(c: Fraction, p: int) -> Fraction | None:
    a, ok_a = integer_nthroot(c.numerator, p)
    b, ok_b = integer_nthroot(c.denominator, p)
    return Fraction(int(a), int(b)) if ok_a and ok_b else None


def _require_positive(x, what):
    v = q_positivity(x)
    if v is not Verdict.POSITIVE:
        raise ValueError(f"{what} needs a q-positive net; {x} is {v}")


def proot(x, p: int):
    """The q-positive ``p``-th root.

    A single term with a rational root gives an exact net; anything else
    gives a sampled net (evaluated at working precision) carrying the
    leading data.
    """
    if not isinstance(p, int) or p < 1:
        raise ValueError("root order must be a positive integer")
    _require_positive(x, "proot")
    if x.is_zero():
        return x
    if len(x.terms) == 1 and isinstance(x.terms[0][0], Fraction):
        c, *exps = x.terms[0]
        root = _exact_root(c, p)
        if root is not None:
            return type(x)([(root, *(e / p for e in exps))])
    from .sampled import SampledNet

    base = SampledNet.from_exact(x)

    def fn(ctx, eps, iota):
        v = base.fn(ctx, eps, iota)
        return ctx.root(v, p) if v > 0 else ctx.zero

    lead = None
    if isinstance(x, NetS):
        c, q = x.terms[0]
        root = _exact_root(c, p) if isinstance(c, Fraction) else None
        if root is None:
            ctx = context()
            cv = ctx.mpf(c.numerator) / c.denominator if isinstance(c, Fraction) else ctx.mpf(c)
            root = ctx.root(cv, p)
        lead = (root, q / p)
    return SampledNet(fn, full=isinstance(x, NetF), depth=base.depth, lead=lead,
                      label=f"root{p}({x})")


def nonneg_representative(x):
    """Sampled representative ``max(0, x(eps))`` of a q-positive net."""
    _require_positive(x, "nonneg_representative")
    from .sampled import SampledNet

    base = SampledNet.from_exact(x)

    def fn(ctx, eps, iota):
        v = base.fn(ctx, eps, iota)
        return v if v > 0 else ctx.zero

    lead = (x.terms[0][0], x.terms[0][1]) if isinstance(x, NetS) and x else None
    return SampledNet(fn, full=isinstance(x, NetF), depth=base.depth, lead=lead,
                      label=f"max(0, {x})")


# -- scalar balls -----------------------------------------------------------

@dataclass(frozen=True)
class BallSpec:
    """Scalar ball ``V_r`` around 0 in the given model."""

    r: Fraction
    model: str = SIMPLIFIED
    variant: str = "scalar"

    def __post_init__(self):
        object.__setattr__(self, "r", to_fraction(self.r))
        if self.model not in (SIMPLIFIED, FULL):
            raise ValueError(f"unknown model {self.model!r}")

    def __str__(self):
        return f"V_{fmt_rational(self.r)}[{self.model}]"


def scalar_ball_member(x, ball: BallSpec) -> Membership:
    """Decide ``|x| <= alpha_r``, i.e. both ``alpha_r - x`` and ``alpha_r + x`` q-positive."""
    want = NetS if ball.model == SIMPLIFIED else NetF
    if not isinstance(x, want):
        raise ModelMismatchError(f"{x.model} net tested against a {ball.model} ball")
    if x.is_zero():
        return Membership.MEMBER
    a = alpha(ball.r, ball.model)
    upper = q_positivity(a - x)
    lower = q_positivity(a + x)
    if Verdict.NOT_POSITIVE in (upper, lower):
        return Membership.NOT_MEMBER
    if Verdict.UNKNOWN in (upper, lower):
        return Membership.UNKNOWN
    return Membership.MEMBER


def member(x, r, model: str | None = None) -> Membership:
    """Shorthand for :func:`scalar_ball_member` with the model taken from ``x``."""
    return scalar_ball_member(x, BallSpec(r, model or x.model))
