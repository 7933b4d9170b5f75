import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from colombeau.generators import member_genfun, member_scalar, rand_exp, rand_genfun, rng_for
from colombeau.genfun import GenFunRep, IntervalDomain, embed_const, seminorm
from colombeau.nets import FULL, SIMPLIFIED, NetF, NetS, alpha
from colombeau.order import INF, Membership, valuation
from colombeau.polys import QPoly
from colombeau.topology import (AXIOMS, BASES, INCLUSIONS, AxiomReport, Ball, axiom_check, axiom_suite,
                                canonical_axiom, canonical_basis, converges, lpdo_sequence, dnp,
                                gconvex_probe, gseminorm_axiom_check, inclusion_check,
                                metric_ball_equivalence, vnp)

from strategies import genfuns

X = QPoly.x()
M = Membership.MEMBER


def gf(*terms, dom=IntervalDomain(-2, 2)):
    return GenFunRep(terms, SIMPLIFIED, dom)


# -- names and reports -------------------------------------------------------

def test_name_aliases():
    assert canonical_basis("B_Ω") == "B_O" and canonical_basis("B_s,Ω") == "B_sO"
    assert canonical_axiom("GA′_I") == "GA'_I"
    assert canonical_axiom("MV_III") == "MV'_III"
    with pytest.raises(ValueError):
        canonical_basis("C")
    with pytest.raises(ValueError):
        canonical_axiom("GA'_V")


def test_report_line_format():
    rep = axiom_check("B", "GA'_II", samples=1, seed=3)
    assert rep.line() == "GA'_II B 1 0 0 3"
    assert rep.ok


# -- axioms ------------------------------------------------------------------

@pytest.mark.parametrize("basis", list(BASES))
@pytest.mark.parametrize("axiom", AXIOMS)
def test_axioms_hold(basis, axiom):
    rep = axiom_check(basis, axiom, samples=40, seed=1)
    assert not rep.failures, [str(f) for f in rep.failures[:3]]
    assert len(rep.unknowns) <= 1


def test_axiom_suite_shape():
    reps = axiom_suite(("B_s",), ("GA'_I", "AV'_I"), samples=5, seed="x")
    assert [(r.basis, r.axiom) for r in reps] == [("B_s", "GA'_I"), ("B_s", "AV'_I")]
    assert all(r.samples == 5 and r.seed == "x" for r in reps)


def test_axiom_check_reproducible():
    a = axiom_check("B_O", "AV'_II", samples=20, seed=9)
    b = axiom_check("B_O", "AV'_II", samples=20, seed=9)
    assert a.line() == b.line() and [str(u) for u in a.unknowns] == [str(u) for u in b.unknowns]


# -- pseudometrics -----------------------------------------------------------

def test_vnp_examples():
    f = gf((X, 2), (QPoly([1]), 5))
    assert vnp(f, 0, 0) == 2
    assert vnp(gf((QPoly([1]), 2), (X, 5)), 0, 1) == 2
    assert vnp(gf((QPoly([1]), 2), (X, 5)), 0, 2) == 2  # sigma = 0 always takes part
    assert vnp(GenFunRep.zero(), 1, 3) == INF


def test_vnp_ignores_terms_killed_by_derivatives():
    # d/dx kills the constant term, but the sigma = 0 seminorm still sees it
    f = gf((QPoly([3]), 1), (X * X, 4))
    assert vnp(f, 1, 0) == 1 and vnp(f, 1, 1) == 1
    g = f.derive()
    assert vnp(g, 1, 0) == 4


def test_dnp_examples():
    f = gf((X, 2))
    assert dnp(f, f, 1, 2) == 0.0
    assert dnp(f, GenFunRep.zero(domain=f.domain), 0, 0) == pytest.approx(math.exp(-2))


@settings(max_examples=100, deadline=None)
@given(genfuns(max_terms=5))
def test_vnp_monotone(f):
    for n in range(3):
        vals = [vnp(f, n, p) for p in range(4)]
        assert all(a >= b for a, b in zip(vals, vals[1:]))
        assert vnp(f, n, 1) == vnp(f, n + 1, 1)


def test_dnp_triangle():
    for i in range(100):
        rng = rng_for("tri", i)
        dom = IntervalDomain(-1, 3)
        f, g, h = (rand_genfun(rng, domain=dom) for _ in range(3))
        n, p = rng.randint(0, 2), rng.randint(0, 2)
        assert dnp(f, h, n, p) <= dnp(f, g, n, p) + dnp(g, h, n, p) + 1e-15
        assert dnp(f, h, n, p) <= max(dnp(f, g, n, p), dnp(g, h, n, p)) + 1e-15
        assert dnp(f, g, n, p) == dnp(g, f, n, p)


# -- ball equivalences -------------------------------------------------------

def test_norm_ball_inside_scalar_ball():
    assert metric_ball_equivalence("2.13.1", {"r": 1, "t": 1}, samples=500).ok


def test_scalar_ball_inside_norm_ball():
    assert metric_ball_equivalence("2.13.2", samples=300, seed=2).ok


def test_function_ball_inside_metric_ball():
    assert metric_ball_equivalence("3.12.2", samples=200).ok


def test_metric_ball_inside_function_ball():
    rep = metric_ball_equivalence("3.12.3", {"beta": 2, "l": 1, "r": 0, "a": F(1, 2)}, samples=200)
    assert rep.ok and not rep.unknowns


def test_side_conditions_enforced():
    with pytest.raises(ValueError):
        metric_ball_equivalence("2.13.1", {"r": 2, "t": 1}, samples=1)
    with pytest.raises(ValueError):
        metric_ball_equivalence("2.13.2", {"r": 1, "t": 1}, samples=1)
    with pytest.raises(ValueError):
        metric_ball_equivalence("3.12.2", {"t": 2, "r": 2}, samples=1)
    with pytest.raises(ValueError):
        metric_ball_equivalence("3.12.3", {"r": 0, "a": 1}, samples=1)
    with pytest.raises(ValueError):
        metric_ball_equivalence("4.1", samples=1)


def test_zero_in_every_ball():
    for r in (F(-3), F(0), F(5, 2)):
        for model in (SIMPLIFIED, FULL):
            z = NetS.zero() if model == SIMPLIFIED else NetF.zero()
            assert Ball(model, r).member(z) is M
            assert Ball(model, r, True, 2, 1, IntervalDomain(0, 1)).member(
                GenFunRep.zero(model, IntervalDomain(0, 1))) is M


# -- convergence -------------------------------------------------------------

def test_alpha_sequence_converges_to_zero():
    cert = converges(lambda n: alpha(n), NetS.zero(), L=20)
    assert cert.converged and cert.strictly_increasing()
    assert cert.table[5] == (5, 5)


def test_constant_sequence_converges():
    x = NetS([(2, F(-1, 2)), (1, 3)])
    cert = converges(lambda n: x, x, L=10)
    assert cert.converged and all(v == INF for _, v in cert.table)


def test_non_convergent_sequence():
    cert = converges(lambda n: alpha(n % 3), NetS.zero(), L=20)
    assert not cert.converged


def test_function_sequence_converges():
    g = gf((X * X, 0), (X, 1))
    cert = converges(lambda n: embed_const(alpha(n), g.domain) * g, GenFunRep.zero(domain=g.domain),
                     "d_np-family", L=12)
    assert cert.converged


def test_lpdo_sequence_converges():
    cert = lpdo_sequence(L=20)
    assert cert.converged and cert.strictly_increasing()
    assert len(cert.table) == 21


def test_converges_bad_mode():
    with pytest.raises(ValueError):
        converges(lambda n: alpha(n), NetS.zero(), "uniform")


# -- G-seminorms and convexity -----------------------------------------------

def test_gsn2_example():
    f = gf((X, 2))
    d = seminorm(embed_const(alpha(1), f.domain) * f, 0, 1)
    df = seminorm(f, 0, 1)
    assert d.lead_exp == 3 == df.lead_exp + valuation(alpha(1))
    assert d.lead_enclosure == df.lead_enclosure


def test_gsn1_opposite_pair():
    f = gf((X, 2))
    assert seminorm(f + (-f), 0, 1).infinite


@pytest.mark.parametrize("model", [SIMPLIFIED, FULL])
def test_gseminorm_checks(model):
    reps = gseminorm_axiom_check(samples=60, seed=4, model=model)
    names = [r.axiom for r in reps]
    assert names == ["GSN1", "GSN2", "rev-tri", "cond-i", "cond-ii"]
    for r in reps:
        assert not r.failures, (r.axiom, [str(f) for f in r.failures[:3]])


def test_gconvex_examples():
    V2 = Ball(SIMPLIFIED, F(2))
    x, y = NetS([(1, 2)]), NetS([(-1, 2), (5, 3)])
    assert gconvex_probe(x, y, NetS.one(), V2) is V2.member(x)
    assert gconvex_probe(x, y, NetS.const(F(1, 2)), V2) is M
    dom = IntervalDomain(-1, 1)
    W = Ball(SIMPLIFIED, F(2), True, 0, 1, dom)
    f, g = GenFunRep([(X, 2)], SIMPLIFIED, dom), GenFunRep([(-X * X, 3)], SIMPLIFIED, dom)
    assert W.member(f) is M and W.member(g) is M
    assert gconvex_probe(f, g, alpha(1), W) is M


def test_gconvex_rejects_bad_lambda():
    V = Ball(SIMPLIFIED, F(0))
    x = NetS.zero()
    for lam in (NetS.const(2), NetS([(-1, 1)]), alpha(-1)):
        with pytest.raises(ValueError):
            gconvex_probe(x, x, lam, V)
    with pytest.raises(ValueError):
        gconvex_probe(x, x, alpha(1, FULL), V)


def test_gconvex_random():
    for i in range(100):
        rng = rng_for("gconv", i)
        r = rand_exp(rng)
        V = Ball(SIMPLIFIED, r)
        x, y = member_scalar(rng, r), member_scalar(rng, r)
        lam = NetS([(F(rng.randint(1, 9), 10), 0)]) if i % 2 else alpha(F(rng.randint(1, 8), 4))
        assert gconvex_probe(x, y, lam, V) is M


# -- inclusions and embeddings -----------------------------------------------

@pytest.mark.parametrize("kind", INCLUSIONS)
def test_inclusion_checks(kind):
    rep = inclusion_check(kind, samples=60, seed=5)
    assert not rep.failures, [str(f) for f in rep.failures[:3]]
    assert not rep.unknowns


def test_inclusion_unknown_kind():
    with pytest.raises(ValueError):
        inclusion_check("transpose", samples=1)


def test_integer_radius_chain():
    # W_{ceil r} c W_r c W_{floor r}: the integer radii form a countable base
    for i in range(100):
        rng = rng_for("ceil", i)
        beta, l, r = rng.randint(0, 2), rng.randint(0, 2), rand_exp(rng)
        f = member_genfun(rng, beta, l, F(math.ceil(r)))
        ball = Ball(SIMPLIFIED, r, True, beta, l, f.domain)
        assert ball.member(f) is M
        assert ball.with_r(math.floor(r)).member(f) is M
        g = member_genfun(rng, beta, l, r)
        assert ball.with_r(math.floor(r)).member(g) is M


def test_report_records_failures():
    rep = AxiomReport("X", "B", 2, 0)
    rep.record(0, "t0", Membership.NOT_MEMBER, lambda: "bad")
    rep.record(1, "t1", Membership.UNKNOWN, lambda: "?")
    assert not rep.ok and rep.line() == "X B 2 1 1 0"
    assert str(rep.failures[0]) == "#0 seed=t0: bad"
