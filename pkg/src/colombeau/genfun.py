"""Generalized functions on an open interval with polynomial representatives.

A representative is a finite sum ``sum p_k(x) * eps**q_k`` (simplified) or
``sum p_k(x) * eps**a_k * iota**b_k`` (full) with rational polynomials
``p_k``.  Seminorms are suprema over the closures of an exhaustion
``Omega_0 c Omega_1 c ...`` and are computed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .nets import FULL, SIMPLIFIED, ModelMismatchError, NetF, NetS, context, fmt_rational, to_fraction
from .order import INF, BallSpec, Membership, scalar_ball_member
from .polys import (QPoly, count_open, isolate_roots, max_sign, rational_root_in, sign_at_root,
                    sqf_list, sup_abs)

__all__ = [
    "GenFunRep",
    "IntervalDomain",
    "SeminormDescriptor",
    "embed_const",
    "gf_arith",
    "gf_ball_member",
    "integrate",
    "lead_exp",
    "lpdo_apply",
    "psi_embed",
    "seminorm",
]


def _fmt_bound(v) -> str:
    if v is None:
        return "inf"
    return fmt_rational(v)


@dataclass(frozen=True)
class IntervalDomain:
    """Open interval ``(lower, upper)``; ``None`` marks an infinite end."""

    lower: Fraction | None = None
    upper: Fraction | None = None

    def __post_init__(self):
        lo = None if self.lower is None else to_fraction(self.lower)
        hi = None if self.upper is None else to_fraction(self.upper)
        if lo is not None and hi is not None and not lo < hi:
            raise ValueError(f"empty interval ({lo}, {hi})")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    def __str__(self):
        lo = "-inf" if self.lower is None else fmt_rational(self.lower)
        return f"({lo}, {_fmt_bound(self.upper)})"

    def _window(self, n: int) -> tuple[Fraction, Fraction]:
        inv = Fraction(1, n)
        lo = -Fraction(n) if self.lower is None else max(self.lower + inv, -Fraction(n))
        hi = Fraction(n) if self.upper is None else min(self.upper - inv, Fraction(n))
        return lo, hi

    @property
    def l0(self) -> int:
        """Least offset making ``Omega_0`` nonempty."""
        n = 1
        while True:
            lo, hi = self._window(n)
            if lo < hi:
                return n
            n += 1

    def exhaustion_set(self, l: int) -> tuple[Fraction, Fraction]:
        """Closure of ``Omega_l = {|x| < n, dist(x, boundary) > 1/n}``, ``n = l + l0``."""
        if l < 0:
            raise ValueError("exhaustion index must be >= 0")
        return self._window(l + self.l0)

    def compactly_contains(self, a: Fraction, b: Fraction) -> bool:
        return ((self.lower is None or self.lower < a)
                and (self.upper is None or b < self.upper) and a <= b)


REAL_LINE = IntervalDomain()


def _as_poly(p) -> QPoly:
    if isinstance(p, QPoly):
        return p
    return QPoly.const(to_fraction(p))


class GenFunRep:
    """Canonical polynomial-coefficient representative; immutable."""

    __slots__ = ("model", "terms", "domain")

    def __init__(self, terms: Iterable[tuple] = (), model: str = SIMPLIFIED,
                 domain: IntervalDomain = REAL_LINE):
        if model not in (SIMPLIFIED, FULL):
            raise ValueError(f"unknown model {model!r}")
        arity = 1 if model == SIMPLIFIED else 2
        merged: dict[tuple, QPoly] = {}
        for t in terms:
            if len(t) != arity + 1:
                raise ValueError(f"{model} terms need {arity + 1} entries, got {t!r}")
            key = tuple(to_fraction(e) for e in t[1:])
            p = _as_poly(t[0])
            merged[key] = merged[key] + p if key in merged else p
        canon = tuple((p,) + k for k, p in sorted(merged.items()) if not p.is_zero())
        object.__setattr__(self, "model", model)
        object.__setattr__(self, "terms", canon)
        object.__setattr__(self, "domain", domain)

    def __setattr__(self, name, value):
        raise AttributeError("GenFunRep is immutable")

    def _make(self, terms):
        return GenFunRep(terms, self.model, self.domain)

    @classmethod
    def zero(cls, model=SIMPLIFIED, domain=REAL_LINE):
        return cls((), model, domain)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, GenFunRep):
            return NotImplemented
        return (self.model, self.domain, self.terms) == (other.model, other.domain, other.terms)

    def __hash__(self):
        return hash((self.model, self.domain, self.terms))

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for p, *exps in self.terms:
            s = f"({p})*e^({fmt_rational(exps[0])})"
            if self.model == FULL:
                s += f"*i^({fmt_rational(exps[1])})"
            out.append(s)
        return " + ".join(out)

    def __repr__(self):
        return f"GenFunRep({str(self)!r}, domain={self.domain})"

    # -- algebra ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            other = embed_const(NetS.const(other) if self.model == SIMPLIFIED else NetF.const(other),
                                self.domain)
        elif isinstance(other, (NetS, NetF)):
            other = embed_const(other, self.domain)
        if not isinstance(other, GenFunRep):
            return NotImplemented
        if other.model != self.model:
            raise ModelMismatchError(f"cannot combine {self.model} and {other.model} functions")
        if other.domain != self.domain:
            raise ValueError(f"domain mismatch: {self.domain} vs {other.domain}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._make(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return self._make((-t[0],) + t[1:] for t in self.terms)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        raw = []
        for s in self.terms:
            for o in other.terms:
                raw.append((s[0] * o[0],) + tuple(a + b for a, b in zip(s[1:], o[1:])))
        return self._make(raw)

    __rmul__ = __mul__

    def derive(self, k: int = 1) -> "GenFunRep":
        if k < 0:
            raise ValueError("derivative order must be >= 0")
        return self._make((t[0].derive(k),) + t[1:] for t in self.terms)

    def value(self, x, eps, iota=None, ctx=None):
        """mpf value at a point ``x`` (exact rational or mpf)."""
        ctx = ctx or context()
        xs = ctx.mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else ctx.mpf(x)
        parts = []
        for p, *exps in self.terms:
            px = ctx.zero
            for c in reversed(p.coeffs):
                px = px * xs + ctx.mpf(c.numerator) / c.denominator
            w = ctx.power(ctx.mpf(eps), ctx.mpf(exps[0].numerator) / exps[0].denominator)
            if self.model == FULL:
                if iota is None:
                    raise ValueError("full-model functions need an iota value")
                w *= ctx.power(ctx.mpf(iota), ctx.mpf(exps[1].numerator) / exps[1].denominator)
            parts.append(px * w)
        return ctx.fsum(parts) if parts else ctx.zero


def gf_arith(op: str, f: GenFunRep, g: GenFunRep | int | None = None) -> GenFunRep:
    """``add``, ``sub``, ``neg``, ``mul`` or ``derive`` (``g`` is then the order)."""
    if op == "neg":
        return -f
    if op == "derive":
        return f.derive(1 if g is None else int(g))
    if g is None:
        raise ValueError(f"{op} needs two operands")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


# -- seminorms --------------------------------------------------------------

@dataclass(frozen=True)
class SeminormDescriptor:
    """Exact leading data of ``eps -> sup_{K} |d^beta f(eps, .)|``.

    ``term_bounds`` lists ``(sup_lo, sup_hi, exps)`` per term; ``lead_sup``
    is certified to lie within ``err`` of the true supremum.  For full
    functions the leading supremum is taken at ``iota = 1``.
    """

    lead_exp: Fraction | float
    lead_sup: float
    err: float
    lead_enclosure: tuple[Fraction, Fraction]
    term_bounds: tuple
    beta: int
    l: int
    K: tuple[Fraction, Fraction]

    @property
    def infinite(self) -> bool:
        return self.lead_exp == INF

    def __str__(self):
        if self.infinite:
            return "lead_exp=inf"
        return (f"lead_exp={fmt_rational(self.lead_exp)} lead_sup={self.lead_sup:.12g}"
                f" err={self.err:.1e}")


_TOL = Fraction(1, 10**13)


def _groups(f: GenFunRep, k: int):
    # (eps exponent, [(poly, iota exponent), ...]) after k derivatives
    out: list[tuple[Fraction, list]] = []
    for p, *exps in f.terms:
        dp = p.derive(k)
        if dp.is_zero():
            continue
        b = exps[1] if f.model == FULL else Fraction(0)
        if out and out[-1][0] == exps[0]:
            out[-1][1].append((dp, b))
        else:
            out.append((exps[0], [(dp, b)]))
    return out


def lead_exp(f: GenFunRep, beta: int) -> Fraction | float:
    """Least eps exponent surviving ``beta`` derivatives (``INF`` if none)."""
    for p, e, *_ in f.terms:
        if p.degree >= beta:
            return e
    return INF


def seminorm(f: GenFunRep, beta: int, l: int) -> SeminormDescriptor:
    a, b = K = f.domain.exhaustion_set(l)
    bounds = []
    for p, *exps in f.terms:
        lo, hi = sup_abs(p.derive(beta), a, b, _TOL)
        bounds.append((lo, hi, tuple(exps)))
    lead_exp, enc = INF, (Fraction(0), Fraction(0))
    groups = _groups(f, beta)
    if groups:
        # iota = 1 collapses a full group to the plain sum of its polynomials
        total = QPoly()
        for dp, _ in groups[0][1]:
            total = total + dp
        lead_exp, enc = groups[0][0], sup_abs(total, a, b, _TOL)
    mid = (enc[0] + enc[1]) / 2
    return SeminormDescriptor(
        lead_exp=lead_exp,
        lead_sup=float(mid),
        err=float(enc[1] - enc[0]) / 2 + 1e-15,
        lead_enclosure=enc,
        term_bounds=tuple(bounds),
        beta=beta,
        l=l,
        K=K,
    )


# -- ball membership --------------------------------------------------------

def _levels(groups, r: Fraction, sign: int) -> list[tuple[Fraction, QPoly]]:
    # coefficient polynomials of sign*P - eps**r, by ascending eps exponent
    lv: dict[Fraction, QPoly] = {}
    for e, p in groups:
        lv[e] = lv.get(e, QPoly()) + p * sign
    lv[r] = lv.get(r, QPoly()) - 1
    return [(e, p) for e, p in sorted(lv.items()) if not p.is_zero()]


def _nonpos_verdict(levels, a: Fraction, b: Fraction) -> Membership:
    """Is ``max_{[a,b]} sum L_k(x) eps**e_k <= eps**B`` eventually, for every ``B``?"""
    if not levels:
        return Membership.MEMBER
    first = levels[0][1]
    m = max_sign(first, a, b)
    if m < 0:
        return Membership.MEMBER
    if m > 0:
        return Membership.NOT_MEMBER
    F = QPoly.const(1)
    for f, _ in sqf_list(first):
        F = F * f
    verdict = Membership.MEMBER
    for iv in isolate_roots(first, a, b):
        for k, (_, nxt) in enumerate(levels[1:]):
            s = sign_at_root(F, iv, nxt)
            if s > 0:
                # first surviving level at this zero is positive: pointwise refutation
                return Membership.NOT_MEMBER
            if s < 0:
                if k > 0:
                    verdict = Membership.UNKNOWN
                break
        else:
            verdict = Membership.UNKNOWN
    return verdict


def _simplified_member(groups, r, a, b) -> Membership:
    out = []
    for sign in (1, -1):
        out.append(_nonpos_verdict(_levels(groups, r, sign), a, b))
        if out[-1] is Membership.NOT_MEMBER:
            break
    return Membership.all_of(out)


def _member_sigma(f: GenFunRep, sigma: int, r: Fraction, a, b) -> Membership:
    groups = _groups(f, sigma)
    if not groups:
        return Membership.MEMBER
    if f.model == SIMPLIFIED:
        return _simplified_member([(e, g[0][0]) for e, g in groups], r, a, b)
    if all(p.is_constant() for _, g in groups for p, _ in g):
        net = NetF([(p.coeffs[0], e, bb) for e, g in groups for p, bb in g])
        return scalar_ball_member(net, BallSpec(r, FULL))
    a1 = groups[0][0]
    if a1 < r:
        return Membership.NOT_MEMBER
    if a1 > r:
        return Membership.MEMBER
    first = groups[0][1]
    if len(first) > 1:
        return Membership.UNKNOWN
    if first[0][1] != r:
        # iota**(b - r) is unbounded on (0, inf): some diameter breaks the bound
        return Membership.NOT_MEMBER
    if all(len(g) == 1 for _, g in groups):
        # positive iota factors leave every sign test unchanged
        return _simplified_member([(e, g[0][0]) for e, g in groups], r, a, b)
    out = []
    for sign in (1, -1):
        out.append(_full_nonpos_verdict(groups, r, sign, a, b))
        if out[-1] is Membership.NOT_MEMBER:
            break
    return Membership.all_of(out)


def _profile_sign(terms) -> int:
    """Sign of ``sum c * iota**b`` over ``iota > 0``: -1 everywhere negative,
    +1 positive somewhere, 0 otherwise (nonpositive with zeros)."""
    D = 1
    for _, b in terms:
        D = D * b.denominator // gcd(D, b.denominator)
    m = min(int(b * D) for _, b in terms)
    cs: dict[int, Fraction] = {}
    for c, b in terms:
        k = int(b * D) - m
        cs[k] = cs.get(k, Fraction(0)) + c
    Q = QPoly(cs.get(k, 0) for k in range(max(cs) + 1))
    if Q(1) > 0:
        return 1
    for f, mult in sqf_list(Q):
        if mult % 2 and count_open(f, Fraction(0), None) > 0:
            return 1
    return -1 if count_open(Q, Fraction(0), None) == 0 else 0


def _full_nonpos_verdict(groups, r, sign, a, b) -> Membership:
    # first group is a single term at (r, r): its level is iota-free
    first = groups[0][1][0][0] * sign - 1
    m = max_sign(first, a, b)
    if m < 0:
        return Membership.MEMBER
    if m > 0:
        return Membership.NOT_MEMBER
    verdict = Membership.MEMBER
    for iv in isolate_roots(first, a, b):
        x0 = rational_root_in(first, iv)
        if x0 is None:
            verdict = Membership.UNKNOWN
            continue
        for k, (_, g) in enumerate(groups[1:]):
            terms = [(sign * p(x0), bb - r) for p, bb in g]
            terms = [t for t in terms if t[0] != 0]
            if not terms:
                continue
            s = _profile_sign(terms)
            if s > 0:
                # some diameter makes the first surviving level positive at x0
                return Membership.NOT_MEMBER
            if s == 0 or k > 0:
                verdict = Membership.UNKNOWN
            break
        else:
            verdict = Membership.UNKNOWN
    return verdict


def gf_ball_member(f: GenFunRep, beta: int, l: int, r) -> Membership:
    """Decide ``f in W^beta_{l,r}``: the bound must hold for every order ``sigma <= beta``."""
    r = to_fraction(r)
    a, b = f.domain.exhaustion_set(l)
    out = []
    for sigma in range(beta + 1):
        v = _member_sigma(f, sigma, r, a, b)
        if v is Membership.NOT_MEMBER:
            return v
        out.append(v)
    return Membership.all_of(out)


# -- integration, operators, embeddings -------------------------------------

def integrate(f: GenFunRep, M: Sequence) -> NetS | NetF:
    """``int_M f dx`` over a closed interval ``M`` compactly inside the domain."""
    if any(v is None for v in M):
        raise ValueError("integration needs a bounded interval")
    m1, m2 = (to_fraction(v) for v in M)
    if not f.domain.compactly_contains(m1, m2):
        raise ValueError(f"[{m1}, {m2}] is not compactly contained in {f.domain}")
    raw = [(p.integrate(m1, m2),) + tuple(exps) for p, *exps in f.terms]
    return NetS(raw) if f.model == SIMPLIFIED else NetF(raw)


def lpdo_apply(coeffs: Sequence[tuple[GenFunRep, int]], f: GenFunRep) -> GenFunRep:
    """``sum a_alpha * d^alpha f``."""
    out = GenFunRep.zero(f.model, f.domain)
    for a, order in coeffs:
        out = out + a * f.derive(order)
    return out


def embed_const(lam, domain: IntervalDomain = REAL_LINE) -> GenFunRep:
    """The constant function with value ``lam``."""
    model = FULL if isinstance(lam, NetF) else SIMPLIFIED
    return GenFunRep([(QPoly.const(t[0]),) + tuple(t[1:]) for t in lam.terms], model, domain)


def psi_embed(f: GenFunRep) -> GenFunRep:
    """Simplified to full: ``(p, q) -> (p, q, q)``."""
    if f.model != SIMPLIFIED:
        raise ModelMismatchError("psi_embed expects a simplified function")
    return GenFunRep([(p, q, q) for p, q in f.terms], FULL, f.domain)
