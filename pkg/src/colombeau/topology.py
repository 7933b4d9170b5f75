"""Randomized verifiers for the filter bases of the sharp topologies.

Four bases are covered:

========  ===================================  =========================
id        neighbourhoods of 0                  elements
========  ===================================  =========================
``B``     ``V_r[0]``, full model               exact full nets
``B_s``   ``V_r(0)``, simplified model         exact simplified nets
``B_O``   ``W^beta_{l,r}[0]``, full model      full polynomial functions
``B_sO``  ``W^beta_{l,r}(0)``, simplified      simplified functions
========  ===================================  =========================

Each check draws members of an inner ball with the radius prescribed by the
corresponding continuity argument and decides membership of the combined
element in the outer ball.  Radii: ``r+1`` for sums, ``(r+1)/2`` for
products, ``r+N+1`` (scalar factor bounded by ``eps**-N``) and ``r-r'+1``
(function factor with seminorms bounded by ``eps**r'``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .generators import (
    member_genfun,
    member_scalar,
    rand_domain,
    rand_exp,
    rand_genfun,
    rand_net,
    rng_for,
)
from .genfun import (
    GenFunRep,
    IntervalDomain,
    embed_const,
    gf_ball_member,
    integrate,
    lead_exp,
    psi_embed,
    seminorm,
)
from .nets import FULL, SIMPLIFIED, NetF, NetS, alpha, context, fmt_rational, jm_embed, to_fraction
from .order import (
    INF,
    BallSpec,
    Comparison,
    Membership,
    fmt_valuation,
    order_compare,
    scalar_ball_member,
    valuation,
)

__all__ = [
    "AXIOMS",
    "BASES",
    "AxiomReport",
    "Ball",
    "Certificate",
    "axiom_check",
    "axiom_suite",
    "lpdo_sequence",
    "canonical_axiom",
    "canonical_basis",
    "converges",
    "dnp",
    "gconvex_probe",
    "gseminorm_axiom_check",
    "INCLUSIONS",
    "inclusion_check",
    "metric_ball_equivalence",
    "vnp",
]

BASES = {
    "B": (FULL, False),
    "B_s": (SIMPLIFIED, False),
    "B_O": (FULL, True),
    "B_sO": (SIMPLIFIED, True),
}
_BASIS_ALIASES = {
    "B_Omega": "B_O", "B_Ω": "B_O", "B_sOmega": "B_sO", "B_sΩ": "B_sO",
    "B_s,Omega": "B_sO", "B_s,Ω": "B_sO",
}

AXIOMS = ("GA'_I", "GA'_II", "AV'_I", "AV'_II", "MV'_I", "MV'_II", "MV'_III")
CORE_AXIOMS = AXIOMS[:4]


def canonical_basis(name: str) -> str:
    name = _BASIS_ALIASES.get(name, name)
    if name not in BASES:
        raise ValueError(f"unknown basis {name!r}; choose from {', '.join(BASES)}")
    return name


def canonical_axiom(name: str) -> str:
    key = name.replace("′", "'").replace("{", "").replace("}", "")
    if "'" not in key:
        key = key.replace("_", "'_", 1)
    if key not in AXIOMS:
        raise ValueError(f"unknown axiom {name!r}; choose from {', '.join(AXIOMS)}")
    return key


# -- balls ------------------------------------------------------------------

@dataclass(frozen=True)
class Ball:
    """A basic neighbourhood of 0: scalar ``V_r`` or function ``W^beta_{l,r}``."""

    model: str
    r: Fraction
    function: bool = False
    beta: int = 0
    l: int = 0
    domain: IntervalDomain | None = None

    def with_r(self, r) -> "Ball":
        return Ball(self.model, to_fraction(r), self.function, self.beta, self.l, self.domain)

    def member(self, x) -> Membership:
        if self.function:
            return gf_ball_member(x, self.beta, self.l, self.r)
        return scalar_ball_member(x, BallSpec(self.r, self.model))

    def draw(self, rng):
        if self.function:
            return member_genfun(rng, self.beta, self.l, self.r, self.model, self.domain)
        return member_scalar(rng, self.r, self.model)

    def __str__(self):
        r = fmt_rational(self.r)
        if self.function:
            return f"W^{self.beta}_{{{self.l},{r}}} on {self.domain} [{self.model}]"
        return f"V_{r} [{self.model}]"


def rand_ball(rng, basis: str, r: Fraction | None = None) -> Ball:
    model, function = BASES[basis]
    r = rand_exp(rng) if r is None else r
    if not function:
        return Ball(model, r)
    return Ball(model, r, True, rng.randint(0, 2), rng.randint(0, 2), rand_domain(rng))


def _scalar_of(model: str):
    return NetS if model == SIMPLIFIED else NetF


def _scale(lam, f):
    # generalized scalar times element (scalar or function)
    if isinstance(f, GenFunRep):
        return embed_const(lam, f.domain) * f
    return lam * f


def _scalar_bound_exp(a) -> int:
    """Least natural ``N`` with ``|a| <= C eps**-N``."""
    v = valuation(a)
    return 0 if v == INF else max(0, math.ceil(-v))


def vnp(f: GenFunRep, n: int, p: int) -> Fraction | float:
    """``min_{sigma <= p}`` of the leading exponent of the ``sigma``-seminorm.

    ``n`` only selects the compact set, and a nonzero polynomial has a
    positive supremum on every nondegenerate interval, so the value is the
    least eps exponent that survives ``sigma`` derivatives.
    """
    f.domain.exhaustion_set(n)
    return min(lead_exp(f, sigma) for sigma in range(p + 1))


def dnp(f: GenFunRep, g: GenFunRep, n: int, p: int) -> float:
    v = vnp(f - g, n, p)
    return 0.0 if v == INF else math.exp(-float(v))


def _function_bound_exp(f0: GenFunRep, ball: Ball) -> Fraction:
    v = vnp(f0, ball.l, ball.beta)
    return Fraction(0) if v == INF else v


# -- reports ----------------------------------------------------------------

@dataclass
class Failure:
    index: int
    sample_seed: str
    detail: str

    def __str__(self):
        return f"#{self.index} seed={self.sample_seed}: {self.detail}"


@dataclass
class AxiomReport:
    axiom: str
    basis: str
    samples: int
    seed: object
    failures: list = field(default_factory=list)
    unknowns: list = field(default_factory=list)
    info: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def line(self) -> str:
        return f"{self.axiom} {self.basis} {self.samples} {len(self.failures)} {len(self.unknowns)} {self.seed}"

    def __str__(self):
        return self.line()

    def record(self, i: int, tag: str, verdict: Membership, detail: Callable[[], str]):
        if verdict is Membership.NOT_MEMBER:
            self.failures.append(Failure(i, tag, detail()))
        elif verdict is Membership.UNKNOWN:
            self.unknowns.append(Failure(i, tag, detail()))


def _sample_axiom(basis: str, axiom: str, rng):
    """One randomized instance: ``(verdict, detail_fn)``."""
    model, function = BASES[basis]
    U = rand_ball(rng, basis)
    r = U.r

    if axiom == "GA'_I":
        V = U.with_r(r + 1)
        x, y = V.draw(rng), V.draw(rng)
        z = x + y
        return U.member(z), lambda: f"x={x}; y={y}; x+y not in {U}"
    if axiom == "GA'_II":
        x = U.draw(rng)
        return U.member(-x), lambda: f"x={x}; -x not in {U}"
    if axiom == "AV'_II":
        V = U.with_r((r + 1) / 2)
        x, y = V.draw(rng), V.draw(rng)
        return U.member(x * y), lambda: f"x={x}; y={y}; x*y not in {U}"
    if axiom == "AV'_I":
        if function:
            f0 = rand_genfun(rng, model, U.domain)
            V = U.with_r(r - _function_bound_exp(f0, U) + 1)
        else:
            f0 = rand_net(rng, model)
            V = U.with_r(r + _scalar_bound_exp(f0) + 1)
        g = V.draw(rng)
        return U.member(f0 * g), lambda: f"a={f0}; x={g} in {V}; a*x not in {U}"
    if axiom == "MV'_I":
        # S.x0 c U with S a scalar ball
        x0 = rand_genfun(rng, model, U.domain) if function else rand_net(rng, model)
        rp = _function_bound_exp(x0, U) if function else -_scalar_bound_exp(x0)
        S = Ball(model, r - rp + 1)
        lam = S.draw(rng)
        return U.member(_scale(lam, x0)), lambda: f"lambda={lam} in {S}; x0={x0}; product not in {U}"
    if axiom == "MV'_II":
        lam0 = rand_net(rng, model)
        W = U.with_r(r + _scalar_bound_exp(lam0) + 1)
        f = W.draw(rng)
        return U.member(_scale(lam0, f)), lambda: f"lambda0={lam0}; x={f} in {W}; product not in {U}"
    if axiom == "MV'_III":
        s = (r + 1) / 2
        S, W = Ball(model, s), U.with_r(s)
        lam, f = S.draw(rng), W.draw(rng)
        return U.member(_scale(lam, f)), lambda: f"lambda={lam}; x={f}; product not in {U}"
    raise ValueError(f"unknown axiom {axiom!r}")


def axiom_check(basis: str, axiom: str, samples: int = 200, seed=0) -> AxiomReport:
    """Randomized check of one filter-basis axiom; Unknowns are reported separately."""
    basis, axiom = canonical_basis(basis), canonical_axiom(axiom)
    report = AxiomReport(axiom, basis, samples, seed)
    for i in range(samples):
        tag = f"{seed}:{basis}:{axiom}:{i}"
        verdict, detail = _sample_axiom(basis, axiom, rng_for(tag))
        report.record(i, tag, verdict, detail)
    return report


def axiom_suite(bases: Sequence[str] = tuple(BASES), axioms: Sequence[str] = CORE_AXIOMS,
                samples: int = 200, seed=0) -> list[AxiomReport]:
    return [axiom_check(b, a, samples, seed) for b in bases for a in axioms]


# -- pseudometrics and ball equivalences -------------------------------------

def _ge_neglog(v, a=None, t=None) -> bool:
    """``v >= -log(a)``, i.e. ``exp(-v) <= a``; ``t`` gives ``-log(a)`` exactly."""
    if v == INF:
        return True
    if t is not None:
        return v >= to_fraction(t)
    a = to_fraction(a)
    if a == 1:
        return v >= 0
    ctx = context(256)
    return ctx.mpf(v.numerator) / v.denominator >= -ctx.log(ctx.mpf(a.numerator) / a.denominator)


def _gt_neglog(v, t) -> bool:
    return v == INF or v > to_fraction(t)


def _neglog_float(a=None, t=None) -> float:
    return float(t) if t is not None else -math.log(float(a))


DIRECTIONS = ("2.13.1", "2.13.2", "3.12.2", "3.12.3")


def metric_ball_equivalence(direction: str, params: dict | None = None, samples: int = 200,
                            seed=0) -> AxiomReport:
    """Randomized inclusions between metric balls and the ``V``/``W`` balls.

    Radii of metric balls are given either as ``a`` (rational) or through
    the exact log-radius ``t`` with ``a = exp(-t)``.  Missing parameters are
    drawn per sample; given ones are checked against their side conditions.

    * ``2.13.1``: ``||x|| < exp(-t)``, ``t >= r``  implies  ``x in V_r(0)``
    * ``2.13.2``: ``x in V_r(0)``, ``t < r``  implies  ``||x|| < exp(-t)``
    * ``3.12.2``: ``f in W^p_{n,r}(0)``, ``r >= -log a + 1``  implies  ``d_np(f, 0) <= a``
    * ``3.12.3``: ``d_lb(f, 0) <= a``, ``a < exp(-r)``  implies  ``f in W^b_{l,r}(0)``
    """
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {', '.join(DIRECTIONS)}")
    params = dict(params or {})
    basis = "B_s" if direction.startswith("2.13") else "B_sO"
    report = AxiomReport(direction, basis, samples, seed)
    for i in range(samples):
        tag = f"{seed}:{direction}:{i}"
        rng = rng_for(tag)
        verdict, detail = _sample_metric(direction, params, rng)
        report.record(i, tag, verdict, detail)
    return report


def _check_side(ok: bool, msg: str):
    if not ok:
        raise ValueError(f"side condition violated: {msg}")


def _sample_metric(direction, params, rng):
    P = Membership
    if direction == "2.13.1":
        r = to_fraction(params["r"]) if "r" in params else rand_exp(rng)
        t = to_fraction(params.get("t", r))
        _check_side(t >= r, "rho <= exp(-r) needs t >= r")
        x = rand_net(rng)
        if x and rng.random() < 0.8:
            shift = t - valuation(x) + Fraction(rng.randint(0, 6), rng.randint(1, 4))
            x = NetS((c, q + shift) for c, q in x.terms)
        if not _gt_neglog(valuation(x), t):
            return P.MEMBER, lambda: "antecedent false"
        v = scalar_ball_member(x, BallSpec(r))
        return v, lambda: f"x={x}; ||x|| < exp(-{t}) but x not in V_{r}"
    if direction == "2.13.2":
        r = to_fraction(params["r"]) if "r" in params else rand_exp(rng)
        t = to_fraction(params["t"]) if "t" in params else r - Fraction(rng.randint(1, 8), 4)
        _check_side(t < r, "exp(-r) < rho needs t < r")
        x = member_scalar(rng, r)
        ok = _gt_neglog(valuation(x), t)
        return (P.MEMBER if ok else P.NOT_MEMBER), lambda: f"x={x} in V_{r} but ||x|| >= exp(-{t})"
    if direction == "3.12.2":
        a, t = params.get("a"), params.get("t")
        if a is None and t is None:
            t = rand_exp(rng, 0, 5)
        neglog = _neglog_float(a, t)
        n = params.get("n", rng.randint(0, 2))
        p = params.get("p", rng.randint(0, 2))
        if "r" in params:
            r = to_fraction(params["r"])
        else:
            r = Fraction(math.ceil((neglog + 1) * 4), 4) + Fraction(rng.randint(0, 4), 4)
        _check_side(float(r) >= neglog + 1 - 1e-12 and (t is None or r >= to_fraction(t) + 1),
                    "needs r >= -log a + 1")
        f = member_genfun(rng, p, n, r, domain=params.get("domain"))
        ok = _ge_neglog(vnp(f, n, p), a, t)
        return (P.MEMBER if ok else P.NOT_MEMBER), \
            lambda: f"f={f} in W^{p}_{{{n},{r}}} but d_{n}{p}(f,0) > a"
    beta = params.get("beta", rng.randint(0, 2))
    l = params.get("l", rng.randint(0, 2))
    r = to_fraction(params["r"]) if "r" in params else rand_exp(rng)
    a, t = params.get("a"), params.get("t")
    if a is None and t is None:
        t = r + Fraction(rng.randint(1, 8), rng.randint(1, 4))
    _check_side(_neglog_float(a, t) > float(r) if t is None else to_fraction(t) > r,
                "needs a < exp(-r)")
    f = rand_genfun(rng, domain=params.get("domain"))
    if f and rng.random() < 0.8:
        target = Fraction(math.ceil(_neglog_float(a, t) * 4) + rng.randint(0, 6), 4)
        shift = target - min(tt[1] for tt in f.terms)
        f = GenFunRep([(pp, q + shift) for pp, q in f.terms], f.model, f.domain)
    if not _ge_neglog(vnp(f, l, beta), a, t):
        return P.MEMBER, lambda: "antecedent false"
    v = gf_ball_member(f, beta, l, r)
    return v, lambda: f"f={f} with d_{l}{beta}(f,0) <= a but not in W^{beta}_{{{l},{r}}}"


# -- convergence ------------------------------------------------------------

@dataclass
class Certificate:
    converged: bool
    table: list  # rows (index, valuation) or (index, (n, p), valuation)

    def strictly_increasing(self) -> bool:
        vals = [row[-1] for row in self.table]
        return all(a < b for a, b in zip(vals, vals[1:]))

    def __str__(self):
        rows = [" ".join(str(c) if not isinstance(c, (Fraction, float)) else fmt_valuation(c)
                         for c in row) for row in self.table]
        return ("converges" if self.converged else "no-convergence") + "\n" + "\n".join(rows)


def _tail_ok(vals) -> bool:
    tail = vals[len(vals) // 2:]
    if all(v == INF for v in tail):
        return True
    return all(a <= b for a, b in zip(tail, tail[1:])) and tail[-1] > tail[0]


def converges(seq: Callable[[int], object], limit, mode: str = "scalar-sharp", L: int = 20,
              probes: Sequence[tuple[int, int]] = ((0, 0), (1, 1), (2, 2))) -> Certificate:
    """Finite evidence that ``seq(n) -> limit``: valuations of ``seq(n) - limit``
    must be nondecreasing on the second half of ``0..L`` and grow there."""
    if mode == "scalar-sharp":
        table = [(n, valuation(seq(n) - limit)) for n in range(L + 1)]
        return Certificate(_tail_ok([v for _, v in table]), table)
    if mode != "d_np-family":
        raise ValueError("mode is 'scalar-sharp' or 'd_np-family'")
    table, ok = [], True
    diffs = [seq(n) - limit for n in range(L + 1)]
    for idx in probes:
        vals = [vnp(d, *idx) for d in diffs]
        table.extend((n, idx, v) for n, v in enumerate(vals))
        ok = ok and _tail_ok(vals)
    return Certificate(ok, table)


# -- G-seminorms ------------------------------------------------------------

def _lead(f: GenFunRep, beta: int, l: int):
    d = seminorm(f, beta, l)
    return d.lead_exp, d.lead_enclosure


def _sum_leq(lhs, parts, slack=Fraction(0)) -> bool:
    # p(lhs) <= sum p(parts) on leading data
    e, (lo, _) = lhs
    m = min(p[0] for p in parts)
    if e == INF or e > m:
        return True
    if e < m:
        return False
    return lo <= sum(p[1][1] for p in parts if p[0] == m) + slack


def gseminorm_axiom_check(samples: int = 200, seed=0, model: str = SIMPLIFIED) -> list[AxiomReport]:
    """GSN1, GSN2, the reverse triangle and condition (i) on ``||.||_{beta,l}``.

    A fifth report, ``cond-ii``, lists instances where
    ``p(fg) <= p(f) p(g)`` fails on leading data; it is informational.
    """
    basis = "B_sO" if model == SIMPLIFIED else "B_O"
    reports = {k: AxiomReport(k, basis, samples, seed) for k in ("GSN1", "GSN2", "rev-tri", "cond-i", "cond-ii")}
    for i in range(samples):
        tag = f"{seed}:gsn:{model}:{i}"
        rng = rng_for(tag)
        dom = rand_domain(rng)
        beta, l = rng.randint(0, 2), rng.randint(0, 2)
        f, g = rand_genfun(rng, model, dom), rand_genfun(rng, model, dom)
        if rng.random() < 0.15:
            g = -f
        pf, pg, psum = _lead(f, beta, l), _lead(g, beta, l), _lead(f + g, beta, l)
        ok = _sum_leq(psum, [pf, pg])
        reports["GSN1"].record(i, tag, Membership.MEMBER if ok else Membership.NOT_MEMBER,
                               lambda: f"f={f}; g={g}; p(f+g) > p(f)+p(g)")
        # GSN2 with a scalar whose leading part is a single term
        c, q = rng.choice([-3, -1, Fraction(1, 2), 2, 5]), rand_exp(rng)
        raw = [(c, q)] + [(rand_net(rng, SIMPLIFIED, 1, 0).terms[0][0], q + k)
                          for k in range(1, rng.randint(1, 3))]
        a = NetS(raw) if model == SIMPLIFIED else NetF((cc, qq, 0) for cc, qq in raw)
        pa = _lead(embed_const(a, dom) * f, beta, l)
        want_e = INF if pf[0] == INF else pf[0] + q
        want = (abs(Fraction(c)) * pf[1][0], abs(Fraction(c)) * pf[1][1])
        ok = pa[0] == want_e and (want_e == INF or (pa[1][0] <= want[1] and want[0] <= pa[1][1]))
        reports["GSN2"].record(i, tag, Membership.MEMBER if ok else Membership.NOT_MEMBER,
                               lambda: f"a={a}; f={f}; p(af) != |a| p(f)")
        # |p(f) - p(g)| <= p(f - g): leading data of p(f), p(g) agree below order p(f-g)
        m = _lead(f - g, beta, l)[0]
        ok = True
        if min(pf[0], pg[0]) < m:
            ok = pf[0] == pg[0] and pf[1][0] <= pg[1][1] and pg[1][0] <= pf[1][1]
        reports["rev-tri"].record(i, tag, Membership.MEMBER if ok else Membership.NOT_MEMBER,
                                  lambda: f"f={f}; g={g}; |p(f)-p(g)| > p(f-g)")
        # condition (i): B_q B_q c B_p with q-radius (r+1)/2
        r = rand_exp(rng)
        U = Ball(model, r, True, beta, l, dom)
        V = U.with_r((r + 1) / 2)
        x, y = V.draw(rng), V.draw(rng)
        reports["cond-i"].record(i, tag, U.member(x * y), lambda: f"x={x}; y={y}; xy not in {U}")
        # condition (ii), informational: p(fg) <= p(f) p(g) with q = p
        pfg = _lead(f * g, beta, l)
        if pfg[0] != INF and pf[0] != INF and pg[0] != INF and pfg[0] == pf[0] + pg[0]:
            if pfg[1][0] > pf[1][1] * pg[1][1]:
                reports["cond-ii"].info.append(f"{tag}: f={f}; g={g}")
    return list(reports.values())


def gconvex_probe(x, y, lam, ball: Ball) -> Membership:
    """Membership of ``lam*x + (1-lam)*y``; ``lam`` must lie in ``[0, 1]_g``."""
    one = _scalar_of(ball.model).one()
    if type(lam) is not type(one):
        raise ValueError(f"lambda must be a {ball.model} scalar")
    if order_compare(lam, one.zero()) not in (Comparison.GEQ, Comparison.EQ) or \
            order_compare(lam, one) not in (Comparison.LEQ, Comparison.EQ):
        raise ValueError(f"{lam} is not in the generalized unit segment")
    z = _scale(lam, x) + _scale(one - lam, y)
    return ball.member(z)


def lpdo_sequence(L: int = 20, domain: IntervalDomain | None = None) -> Certificate:
    """``P f_n -> 0`` for ``f_n = alpha_n * g``, ``g = x^2 + x*eps``, ``P = x d + 1``."""
    from .genfun import lpdo_apply
    from .polys import QPoly

    dom = domain or IntervalDomain(-2, 2)
    g = GenFunRep([(QPoly([0, 0, 1]), 0, 0), (QPoly([0, 1]), 1, 1)], FULL, dom)  # eps enters as alpha_1
    P = [(GenFunRep([(QPoly([0, 1]), 0, 0)], FULL, dom), 1), (GenFunRep([(QPoly([1]), 0, 0)], FULL, dom), 0)]

    def seq(n):
        return lpdo_apply(P, embed_const(alpha(n, FULL), dom) * g)

    return converges(seq, GenFunRep.zero(FULL, dom), "d_np-family", L, probes=((1, 1),))


# -- embeddings, operators, convexity ----------------------------------------

INCLUSIONS = ("jm-embed", "const-embed", "psi-embed", "integrate", "derive", "gconvex")


def _same(a: Membership, b: Membership) -> Membership:
    # equivalence of two verdicts, as a membership-style verdict
    if Membership.UNKNOWN in (a, b):
        return Membership.UNKNOWN
    return Membership.MEMBER if a is b else Membership.NOT_MEMBER


def _sub_interval(rng, a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
    cuts = sorted(a + (b - a) * Fraction(rng.randint(0, 16), 16) for _ in range(2))
    return cuts[0], cuts[1]


def _sample_inclusion(kind: str, rng):
    P = Membership
    model = rng.choice((SIMPLIFIED, FULL))
    r = rand_exp(rng)
    beta, l = rng.randint(0, 2), rng.randint(0, 2)
    dom = rand_domain(rng)
    if kind == "jm-embed":
        x = member_scalar(rng, r) if rng.random() < 0.5 else rand_net(rng)
        a = scalar_ball_member(jm_embed(x), BallSpec(r, FULL))
        b = scalar_ball_member(x, BallSpec(r))
        return _same(a, b), lambda: f"x={x}, r={r}: jm_embed gives {a}, simplified gives {b}"
    if kind == "const-embed":
        lam = member_scalar(rng, r, model) if rng.random() < 0.5 else rand_net(rng, model)
        a = gf_ball_member(embed_const(lam, dom), beta, l, r)
        b = scalar_ball_member(lam, BallSpec(r, model))
        return _same(a, b), lambda: f"lambda={lam}, beta={beta}, l={l}, r={r}: function {a}, scalar {b}"
    if kind == "psi-embed":
        f = member_genfun(rng, beta, l, r, SIMPLIFIED, dom) if rng.random() < 0.5 \
            else rand_genfun(rng, SIMPLIFIED, dom)
        a, b = gf_ball_member(psi_embed(f), beta, l, r), gf_ball_member(f, beta, l, r)
        return _same(a, b), lambda: f"f={f}, beta={beta}, l={l}, r={r}: full {a}, simplified {b}"
    if kind == "integrate":
        f = member_genfun(rng, 0, l, r + 1, model, dom)
        M = _sub_interval(rng, *dom.exhaustion_set(l))
        v = integrate(f, M)
        return scalar_ball_member(v, BallSpec(r, model)), \
            lambda: f"f={f} in W^0_{{{l},{r + 1}}}, M={M}: integral {v} not in V_{r}"
    if kind == "derive":
        order = rng.randint(1, 2)
        f = member_genfun(rng, order + beta, l, r, model, dom)
        d = f.derive(order)
        return gf_ball_member(d, beta, l, r), \
            lambda: f"f={f} in W^{order + beta}_{{{l},{r}}}: derivative {d} not in W^{beta}"
    if kind == "gconvex":
        ball = Ball(model, r) if rng.random() < 0.5 else Ball(model, r, True, beta, l, dom)
        x, y = ball.draw(rng), ball.draw(rng)
        one = _scalar_of(model).one()
        verdicts = [gconvex_probe(x, y, lam, ball)
                    for lam in (one.zero(), one, one * Fraction(1, 2), alpha(1, model))]
        return P.all_of(verdicts), lambda: f"x={x}; y={y}; ball {ball}: {verdicts}"
    raise ValueError(f"unknown inclusion {kind!r}; choose from {', '.join(INCLUSIONS)}")


def inclusion_check(kind: str, samples: int = 200, seed=0) -> AxiomReport:
    """Randomized check of an embedding equivalence or an operator inclusion.

    * ``jm-embed``: ``jm_embed(x) in V_r`` (full) iff ``x in V_r`` (simplified)
    * ``const-embed``: constant function ``lam`` in ``W^beta_{l,r}`` iff ``lam in V_r``
    * ``psi-embed``: membership of ``f`` is unchanged by ``psi_embed``
    * ``integrate``: ``f in W^0_{l,r+1}``, ``M`` inside ``Omega_l``  implies  ``int_M f in V_r``
    * ``derive``: ``f in W^{k+beta}_{l,r}``  implies  ``d^k f in W^beta_{l,r}``
    * ``gconvex``: ``lam x + (1-lam) y`` stays in the ball for ``lam`` in ``{0, 1, 1/2, alpha_1}``
    """
    if kind not in INCLUSIONS:
        raise ValueError(f"unknown inclusion {kind!r}; choose from {', '.join(INCLUSIONS)}")
    report = AxiomReport(kind, "-", samples, seed)
    for i in range(samples):
        tag = f"{seed}:{kind}:{i}"
        verdict, detail = _sample_inclusion(kind, rng_for(tag))
        report.record(i, tag, verdict, detail)
    return report
