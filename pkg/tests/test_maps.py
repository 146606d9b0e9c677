"""Polynomial map germs: anchoring, composition, and inversion."""

from fractions import Fraction

import pytest

from jetcartan.rings import Ring
from jetcartan.poly import TruncPoly
from jetcartan.maps import PolyMap
from jetcartan.errors import GermMismatch, SingularJet
from jetcartan.rand import Gen

R = Ring.jet(2, 4)


def test_identity_anchor():
    e = PolyMap.identity(R)
    assert e.src == (0, 0) and e.value_rational() == (0, 0)
    p = (Fraction(1, 2), Fraction(-1, 3))
    ep = PolyMap.identity(R, p)
    assert ep.src == p and ep.value_rational() == p


def test_after_requires_matching_germ():
    a = Gen(2).group_elt(R)     # germ at origin, value 0
    e = PolyMap.identity(R, (Fraction(1), Fraction(0)))
    with pytest.raises(GermMismatch):
        a.after(e)              # e has value (1,0), a is anchored at 0


def test_composition_associative():
    g = Gen(3)
    a, b, c = (g.group_elt(R) for _ in range(3))
    assert a.after(b).after(c) == a.after(b.after(c))


def test_inverse_round_trip():
    g = Gen(5)
    a = g.group_elt(R)
    e = PolyMap.identity(R)
    assert a.after(a.inverse()) == e
    assert a.inverse().after(a) == e


def test_singular_jet_raises():
    zero = PolyMap(R, (0, 0), [TruncPoly.zero(R), TruncPoly.zero(R)])
    with pytest.raises(SingularJet):
        zero.inverse()


def test_project_is_ring_hom_on_group():
    g = Gen(9)
    a, b = g.group_elt(R), g.group_elt(R)
    lo = Ring.jet(2, 2)
    assert a.after(b).project(2) == a.project(2).after(b.project(2))
    assert a.project(2).ring == lo
