"""Seeded random nets, functions and ball members for the property suites.

Conventions (shared by every suite so failures replay from a seed):

* exponents: rationals ``k/d`` with ``d`` in 1..4 and ``k/d`` in [-5, 5];
* coefficients: nonzero rationals ``k/d`` in [-10, 10] with ``d`` in 1..4;
* at most 5 terms per net or function, polynomial degree at most 6.

Every sample draws from its own ``random.Random(f"{seed}:{tag}:{i}")``.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .genfun import GenFunRep, IntervalDomain, gf_ball_member
from .nets import SIMPLIFIED, NetF, NetS
from .order import BallSpec, Membership, scalar_ball_member
from .polys import QPoly, sup_abs

__all__ = [
    "DOMAINS",
    "member_genfun",
    "member_scalar",
    "rand_coeff",
    "rand_domain",
    "rand_exp",
    "rand_genfun",
    "rand_net",
    "rand_poly",
    "rng_for",
]

MAX_TERMS = 5
MAX_DEG = 6

DOMAINS = (
    IntervalDomain(-1, 1),
    IntervalDomain(-2, 2),
    IntervalDomain(0, None),
    IntervalDomain(None, None),
    IntervalDomain(Fraction(-3, 2), Fraction(1, 2)),
    IntervalDomain(-2, 3),
)


def rng_for(seed, *tags) -> random.Random:
    return random.Random(":".join(str(t) for t in (seed,) + tags))


def rand_exp(rng: random.Random, lo: int = -5, hi: int = 5) -> Fraction:
    d = rng.randint(1, 4)
    return Fraction(rng.randint(lo * d, hi * d), d)


def rand_coeff(rng: random.Random, bound: int = 10) -> Fraction:
    d = rng.randint(1, 4)
    k = 0
    while k == 0:
        k = rng.randint(-bound * d, bound * d)
    return Fraction(k, d)


def rand_net(rng: random.Random, model: str = SIMPLIFIED, max_terms: int = MAX_TERMS,
             zero_prob: float = 0.03):
    """A random exact net; may be zero with probability ``zero_prob``."""
    if rng.random() < zero_prob:
        return NetS.zero() if model == SIMPLIFIED else NetF.zero()
    n = rng.randint(1, max_terms)
    if model == SIMPLIFIED:
        return NetS((rand_coeff(rng), rand_exp(rng)) for _ in range(n))
    terms = []
    for _ in range(n):
        # share eps exponents now and then so profiles have several terms
        a = terms[-1][1] if terms and rng.random() < 0.3 else rand_exp(rng)
        terms.append((rand_coeff(rng), a, rand_exp(rng)))
    return NetF(terms)


def rand_poly(rng: random.Random, max_deg: int = MAX_DEG) -> QPoly:
    deg = rng.randint(0, max_deg)
    while True:
        cs = [rand_coeff(rng) if rng.random() < 0.6 else Fraction(0) for _ in range(deg + 1)]
        p = QPoly(cs)
        if not p.is_zero():
            return p


def rand_domain(rng: random.Random) -> IntervalDomain:
    return rng.choice(DOMAINS)


def rand_genfun(rng: random.Random, model: str = SIMPLIFIED, domain: IntervalDomain | None = None,
                max_terms: int = MAX_TERMS, max_deg: int = MAX_DEG, zero_prob: float = 0.03):
    domain = domain or rand_domain(rng)
    if rng.random() < zero_prob:
        return GenFunRep.zero(model, domain)
    n = rng.randint(1, max_terms)
    terms = []
    for _ in range(n):
        p = rand_poly(rng, max_deg)
        if model == SIMPLIFIED:
            terms.append((p, rand_exp(rng)))
        else:
            terms.append((p, rand_exp(rng), rand_exp(rng)))
    return GenFunRep(terms, model, domain)


def _shift_above(rng, exps_min: Fraction, r: Fraction) -> Fraction:
    # shift that puts the least exponent strictly above r
    return r - exps_min + Fraction(rng.randint(1, 8), rng.randint(1, 4))


def _unit_coeff(rng) -> Fraction:
    d = rng.randint(1, 4)
    k = 0
    while k == 0:
        k = rng.randint(-d, d)
    return Fraction(k, d)


def member_scalar(rng: random.Random, r: Fraction, model: str = SIMPLIFIED, tries: int = 50):
    """A random member of ``V_r``, confirmed by the exact decider."""
    ball = BallSpec(r, model)
    for _ in range(tries):
        x = rand_net(rng, model, max_terms=4, zero_prob=0.05)
        if x:
            shift = _shift_above(rng, min(t[1] for t in x.terms), r)
            if model == SIMPLIFIED:
                x = NetS((c, q + shift) for c, q in x.terms)
            else:
                x = NetF((c, a + shift, b) for c, a, b in x.terms)
        if rng.random() < 0.4:
            c = _unit_coeff(rng)
            x = x + (NetS([(c, r)]) if model == SIMPLIFIED else NetF([(c, r, r)]))
        if scalar_ball_member(x, ball) is Membership.MEMBER:
            return x
    return NetS.zero() if model == SIMPLIFIED else NetF.zero()


def _cheap_bound(p: QPoly, a: Fraction, b: Fraction) -> Fraction:
    m = max(abs(a), abs(b))
    return sum((abs(c) * m**k for k, c in enumerate(p.coeffs)), Fraction(0))


def member_genfun(rng: random.Random, beta: int, l: int, r: Fraction, model: str = SIMPLIFIED,
                  domain: IntervalDomain | None = None, tries: int = 50):
    """A random member of ``W^beta_{l,r}``, confirmed by the exact decider."""
    domain = domain or rand_domain(rng)
    a, b = domain.exhaustion_set(l)
    for _ in range(tries):
        f = rand_genfun(rng, model, domain, max_terms=4, zero_prob=0.05)
        if f:
            shift = _shift_above(rng, min(t[1] for t in f.terms), r)
            f = GenFunRep([(t[0], t[1] + shift) + tuple(t[2:]) for t in f.terms], model, domain)
        if rng.random() < 0.4:
            p = rand_poly(rng)
            if rng.random() < 0.3:
                bound = max(sup_abs(p.derive(s), a, b)[1] for s in range(beta + 1))
            else:
                bound = max(_cheap_bound(p.derive(s), a, b) for s in range(beta + 1))
            if bound > 0:
                p = p * (_unit_coeff(rng) / bound)
                f = f + GenFunRep([(p, r) if model == SIMPLIFIED else (p, r, r)], model, domain)
        if gf_ball_member(f, beta, l, r) is Membership.MEMBER:
            return f
    return GenFunRep.zero(model, domain)
