"""Jet group: axioms, filtration, factorization, exp/log."""

from jetcartan.rings import Ring
from jetcartan import jet_group as jg
from jetcartan.rand import Gen

R = Ring.jet(2, 4)


def test_group_axioms():
    g = Gen(6)
    a, b, c = (g.group_elt(R) for _ in range(3))
    e = jg.identity(R)
    assert jg.mul(jg.mul(a, b), c) == jg.mul(a, jg.mul(b, c))
    assert jg.mul(a, jg.inv(a)) == e
    assert jg.mul(jg.inv(a), a) == e


def test_projection_homomorphism():
    g = Gen(7)
    a, b = g.group_elt(R), g.group_elt(R)
    for m in (1, 2, 3):
        assert jg.project(jg.mul(a, b), m) == jg.mul(jg.project(a, m),
                                                     jg.project(b, m))


def test_top_level_normal_abelian():
    # Elements that are the identity below the top level commute and
    # multiply by adding displacements.
    g = Gen(8)
    K = R.order
    X = g.vf_graded(R, K - 1)
    Y = g.vf_graded(R, K - 1)
    a = jg.from_displacement(X)
    b = jg.from_displacement(Y)
    assert jg.mul(a, b) == jg.mul(b, a) == jg.from_displacement(X + Y)


def test_factor_round_trip():
    g = Gen(9)
    a = g.group_elt(R)
    levels = jg.factor(a)
    assert jg.compose_factors(levels) == a


def test_exp_log_round_trip():
    g = Gen(10)
    X = g.vf(R, lo=1)
    assert jg.log(jg.exp(X)) == X
    u = g.group_elt(R, unipotent=True)
    assert jg.exp(jg.log(u)) == u
