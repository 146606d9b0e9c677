"""Adjoint action of group jets on field jets and cochains."""

from jetcartan.rings import Ring
from jetcartan import jet_group as jg
from jetcartan.adjoint import ad, shift_of, apply_shift, ad_on_cochain
from jetcartan.vf import VFJet, bracket
from jetcartan.spencer import partial
from jetcartan.rand import Gen

R = Ring.jet(2, 3)
K = R.order


def test_ad_is_automorphism_of_bracket():
    g = Gen(1)
    a = g.group_elt(R)
    X, Y = g.vf(R, lo=0), g.vf(R, lo=0)
    assert ad(a, bracket(X, Y)) == bracket(ad(a, X), ad(a, Y))


def test_ad_action_law_on_origin_fixing_fields():
    # Truncation is only a quotient by a Lie ideal on the origin-fixing
    # subalgebra (grades >= 0), where the ad action law holds exactly.
    g = Gen(2)
    a, b = g.group_elt(R), g.group_elt(R)
    X = g.vf(R, lo=0)
    assert ad(jg.mul(a, b), X) == ad(a, ad(b, X))


def test_top_kernel_shift_law():
    # g = id + top-degree displacement acts trivially mod the top grade,
    # and exactly as the shift cochain below it.
    k = K - 2
    g = Gen(3)
    alphaX = g.vf_graded(R, K - 1)
    a = jg.from_displacement(alphaX)
    alpha = shift_of(a)
    X = g.vf(R)
    lhs = ad(a, X).truncate_grades(-1, k)
    assert lhs == apply_shift(alpha, X).truncate_grades(-1, k)


def test_shift_cochain_closed():
    g = Gen(4)
    a = jg.from_displacement(g.vf_graded(R, K - 1))
    assert partial(shift_of(a)).is_zero()


def test_cochain_partial_equivariance_linear():
    # partial commutes with ad for linear group elements.
    g = Gen(5)
    gl = jg.factor(g.group_elt(R))[0]
    c = g.cochain(R, 1, 1)
    assert partial(ad_on_cochain(gl, c)) == ad_on_cochain(gl, partial(c))


def test_cochain_action_law():
    g = Gen(6)
    a, b = g.group_elt(R), g.group_elt(R)
    c = g.cochain(R, 1, 1)
    assert ad_on_cochain(jg.mul(a, b), c) == \
        ad_on_cochain(a, ad_on_cochain(b, c))
