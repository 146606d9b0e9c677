"""Truncated polynomial ring: exactness, truncation, and kernel parity."""

from fractions import Fraction

import pytest

from jetcartan.rings import Ring
from jetcartan.poly import TruncPoly, mat_inverse, mat_mul
from jetcartan.errors import RingMismatch
from jetcartan.rand import Gen
from jetcartan import _kernel_py

try:
    from jetcartan import _kernel_c
except ImportError:
    _kernel_c = None

R = Ring.jet(2, 4)


def test_ring_constructors():
    assert R.nvars == 2 and R.active == 2 and R.order == 4
    Rp = R.with_params(2, cap=1)
    assert Rp.nvars == 4 and Rp.active == 2
    assert Rp.param_index(0) == 2 and Rp.param_index(1) == 3


def test_exact_rational_arithmetic():
    x = TruncPoly.var(R, 0, Fraction(1, 3))
    y = TruncPoly.var(R, 1, Fraction(1, 7))
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert p.coeff((2, 0)) == Fraction(1, 9)
    assert p.coeff((0, 2)) == Fraction(-1, 49)


def test_truncation_cap():
    x = TruncPoly.var(R, 0)
    p = x
    for _ in range(4):
        p = p * x
    assert p.is_zero()          # degree 5 > order 4
    q = x * x * x * x
    assert q.coeff((4, 0)) == 1


def test_unit_inverse():
    x = TruncPoly.var(R, 0)
    u = TruncPoly.const(R, Fraction(2)) + x
    assert (u * u.unit_inverse() - TruncPoly.const(R, 1)).is_zero()


def test_diff_subs_eval():
    g = Gen(11)
    p, q = g.poly(R), g.poly(R)
    # Leibniz rule.
    lhs = (p * q).diff(0)
    assert lhs == p.diff(0) * q + p * q.diff(0)
    # subs then eval agrees with eval of composite at matching points.
    pt = g.point(2)
    assert p.eval(pt) == sum(
        (c * pt[0] ** e[0] * pt[1] ** e[1] for e, c in p.items_sorted()),
        Fraction(0))


def test_ring_mismatch_raises():
    other = Ring.jet(2, 3)
    with pytest.raises(RingMismatch):
        TruncPoly.var(R, 0) * TruncPoly.var(other, 0)


def test_matrix_helpers():
    m = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    inv = mat_inverse(m)
    prod = mat_mul(m, inv)
    assert prod == [[1, 0], [0, 1]]


@pytest.mark.skipif(_kernel_c is None, reason="compiled kernel unavailable")
def test_kernel_parity():
    g = Gen(4)
    caps = R.caps
    for _ in range(25):
        a, b = g.poly(R), g.poly(R)
        assert (_kernel_c.mul_terms(a.terms, b.terms, caps)
                == _kernel_py.mul_terms(a.terms, b.terms, caps))
