from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from colombeau.nets import (FULL, SIMPLIFIED, ModelMismatchError, NetF, NetS, alpha, context,
                            evaluate, jm_embed, net_arith, normalize)

from oracles import eval_terms
from strategies import exps, nets_f, nets_s, nonzero_s


def _canonical(x):
    keys = [t[1:] for t in x.terms]
    return keys == sorted(set(keys)) and all(t[0] != 0 for t in x.terms)


# -- examples ---------------------------------------------------------------

def test_normalize_merges_and_drops_zero():
    assert normalize([(1, 2), (2, 2), (0, 5)]) == NetS([(3, 2)])
    assert normalize([(1, 2), (2, 2), (0, 5)]).terms == ((F(3), F(2)),)


def test_normalize_empty_and_cancellation():
    assert normalize([]).is_zero()
    assert normalize([(1, 3), (-1, 3)]).is_zero()


def test_normalize_mixed_arity_rejected():
    with pytest.raises(ValueError):
        normalize([(1, 2), (1, 2, 3)])


def test_add_and_mul_examples():
    e = NetS([(1, 1)])
    assert net_arith("add", e, e) == NetS([(2, 1)])
    assert net_arith("mul", NetS([(2, F(1, 2))]), NetS([(3, F(1, 2))])) == NetS([(6, 1)])


def test_alpha_examples():
    assert alpha(0) == NetS.one()
    assert alpha(2, FULL).terms == ((F(1), F(2), F(2)),)
    assert alpha(-1).terms == ((F(1), F(-1)),)


def test_alpha_product_full_on_grid():
    lhs = alpha(1, FULL) * alpha(2, FULL)
    assert lhs == NetF([(1, 3, 3)])
    # independent evaluation of both sides on an (eps, iota) grid
    for eps in (F(1, 10), F(1, 1000), F(1, 2**40)):
        for iota in (F(1, 3), F(1), F(7, 2)):
            a = eval_terms([(F(1), F(1), F(1))], eps, iota) * eval_terms([(F(1), F(2), F(2))], eps, iota)
            b = evaluate(lhs, eps, iota).mpf(context(512))
            assert abs(a - b) <= abs(a) * F(1, 2**100)


def test_eval_examples():
    assert evaluate(NetS([(1, 2)]), F(1, 2)).value == 0.25
    assert evaluate(NetS.zero(), F(1, 3)).value == 0.0
    v = evaluate(NetS([(3, F(1, 2)), (-2, 3)]), F(1, 10**4)).value
    assert v == pytest.approx(0.03 - 2e-12, rel=1e-15)


def test_eval_deep_grid_no_underflow():
    v = evaluate(NetS([(1, 8)]), context().ldexp(1, -200))
    assert v.sign == 1 and v.overflow and v.value == 0.0
    assert v.log_abs == pytest.approx(-1600 * 0.6931471805599453, rel=1e-12)


def test_jm_embed_examples():
    assert jm_embed(alpha(3)) == alpha(3, FULL)
    assert jm_embed(NetS.zero()).is_zero()
    y = jm_embed(NetS([(2, 1), (1, 2)]))
    assert y.terms == ((F(2), F(1), F(1)), (F(1), F(2), F(2)))
    eps, iota = F(1, 1000), F(1, 2)
    t = eps * iota  # lambda evaluated at min(1, eps*iota)
    assert evaluate(y, eps, iota).value == pytest.approx(float(2 * t + t * t), rel=1e-14)


def test_model_mismatch():
    with pytest.raises(ModelMismatchError):
        NetS([(1, 1)]) + NetF([(1, 1, 1)])
    with pytest.raises(ModelMismatchError):
        jm_embed(NetF([(1, 1, 1)]))


def test_immutable():
    x = NetS([(1, 1)])
    with pytest.raises(AttributeError):
        x.terms = ()


def test_full_eval_needs_iota():
    with pytest.raises(ValueError):
        evaluate(alpha(1, FULL), F(1, 2))


# -- properties --------------------------------------------------------------

@settings(max_examples=300)
@given(st.lists(st.tuples(st.integers(-5, 5), exps), max_size=8))
def test_normalize_idempotent_and_canonical(raw):
    x = normalize(raw)
    assert _canonical(x)
    assert normalize(x.terms) == x


@settings(max_examples=200)
@given(nets_s, nets_s)
def test_sum_of_canonical_is_canonical(x, y):
    assert _canonical(x + y) and _canonical(x * y)


@settings(max_examples=300)
@given(nets_s, nets_s, nets_s)
def test_ring_axioms_simplified(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x + y == y + x and x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert x + NetS.zero() == x and x * NetS.one() == x
    assert (x - x).is_zero()


@settings(max_examples=150)
@given(nets_f, nets_f, nets_f)
def test_ring_axioms_full(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z


@settings(max_examples=200)
@given(nets_s, nets_s)
def test_jm_embed_ring_homomorphism(x, y):
    assert jm_embed(x + y) == jm_embed(x) + jm_embed(y)
    assert jm_embed(x * y) == jm_embed(x) * jm_embed(y)
    assert jm_embed(NetS.one()) == NetF.one()


@settings(max_examples=200)
@given(nets_s, nets_s)
def test_jm_embed_injective(x, y):
    assert (jm_embed(x) == jm_embed(y)) == (x == y)


@settings(max_examples=100)
@given(nets_s, nets_s)
def test_evaluation_is_a_ring_map(x, y):
    ctx = context(256)
    eps = F(1, 7)
    ex, ey = evaluate(x, eps).mpf(ctx), evaluate(y, eps).mpf(ctx)
    for got, want in ((evaluate(x * y, eps).mpf(ctx), ex * ey), (evaluate(x + y, eps).mpf(ctx), ex + ey)):
        scale = max(abs(ex), abs(ey), 1) ** 2
        assert abs(got - want) <= scale * ctx.ldexp(1, -100)


@settings(max_examples=100)
@given(nonzero_s)
def test_nonzero_net_is_not_null(x):
    # |x(eps)| > eps**b for every b above the valuation, on small grid eps
    v = x.terms[0][1]
    ctx = context(1024)
    for j in (400, 600, 800):
        eps = ctx.ldexp(1, -j)
        val = abs(evaluate(x, eps, ctx=ctx).mpf(ctx))
        b = v + F(1, 8)
        assert val > ctx.power(eps, ctx.mpf(b.numerator) / b.denominator)


def test_evaluate_matches_oracle_on_random_terms():
    import random
    rng = random.Random(11)
    for _ in range(50):
        raw = [(F(rng.randint(-9, 9), rng.randint(1, 4)), F(rng.randint(-12, 12), rng.randint(1, 4)))
               for _ in range(rng.randint(1, 5))]
        x = NetS(raw)
        eps = F(1, rng.randint(2, 10**6))
        got = evaluate(x, eps).mpf(context(256))
        want = eval_terms(x.terms, eps)
        assert abs(got - want) <= max(abs(want), 1e-300) * 1e-30 or abs(got - want) < 1e-60


def test_models_are_tagged():
    assert NetS.zero().model == SIMPLIFIED and NetF.zero().model == FULL
