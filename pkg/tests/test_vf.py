"""Vector-field jets: grading, bracket identities, gl basis."""

from jetcartan.rings import Ring
from jetcartan.vf import VFJet, bracket, gl_basis, gl_dim
from jetcartan.rand import Gen


def test_grading_closure():
    ring = Ring.jet(2, 4)
    g = Gen(1)
    for a in range(-1, 3):
        for b in range(-1, 3):
            X = g.vf_graded(ring, a)
            Y = g.vf_graded(ring, b)
            B = bracket(X, Y)
            assert set(B.grades()) <= {a + b}


def test_bracket_antisymmetric_bilinear():
    ring = Ring.jet(3, 3)
    g = Gen(2)
    X, Y, Z = (g.vf(ring) for _ in range(3))
    assert bracket(X, Y) + bracket(Y, X) == VFJet.zero(ring)
    assert bracket(X + Y, Z) == bracket(X, Z) + bracket(Y, Z)


def test_jacobi_in_wide_ring():
    # High-degree truncation is not a Lie ideal once grade -1 fields are
    # present, so Jacobi is checked in a ring wide enough to hold every
    # intermediate bracket exactly.
    top = 2
    wide = Ring.jet(2, 3 * (top + 1) - 2)
    g = Gen(3)
    X, Y, Z = (g.vf(wide, hi=top) for _ in range(3))
    s = (bracket(X, bracket(Y, Z)) + bracket(Y, bracket(Z, X))
         + bracket(Z, bracket(X, Y)))
    assert s.is_zero()


def test_dilatation_grades():
    ring = Ring.jet(2, 4)
    D = VFJet.dilatation(ring)
    g = Gen(4)
    for k in range(-1, 3):
        X = g.vf_graded(ring, k)
        assert bracket(X, D) == k * X


def test_gl_dims():
    for n in (1, 2, 3):
        for k in range(-1, 3):
            ring = Ring.jet(n, 3)
            basis = gl_basis(ring, k)
            assert len(basis) == gl_dim(n, k)
            assert all(set(b.grades()) <= {k} for b in basis)
