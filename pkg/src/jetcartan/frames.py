"""Jet frames over a single chart and the frame form.

A frame of order K at a chart point x is a PolyMap germ phi with phi(0)=x
and invertible linear part; paths and two/three-parameter families of
frames are the same maps with square-zero parameter variables mixed into
the coefficients, so velocities and mixed partial derivatives are exact
coefficient extractions, never numerical limits.

The frame form of a path is theta = d/dt|0 of the jet of phi_0^{-1} o
phi_t, a vector-field jet in grades -1..K-1.  On two-parameter families
the structure residual

    d_s theta_t - d_t theta_s + [theta_s, theta_t]

vanishes identically in grades <= K-2, and the cyclic bracket of theta
with it (Bianchi) vanishes one grade lower; both are verified exactly.

A prolonged frame is a frame of one order higher together with a 1-form
shift in top-grade values; its torsion is the negative Spencer
differential of the shift, and ``reduce`` removes the exact part of the
shift so the torsion vanishes, leaving the expected one-order-up ambiguity.
"""

from fractions import Fraction

from .errors import NotInSubgroup, SingularJet
from .poly import TruncPoly, mat_det
from .maps import PolyMap
from .rings import Ring
from .vf import VFJet
from .spencer import SpencerCochain, partial, solve_preimage
from . import adjoint


def validate_frame(phi):
    """Frame invariants: invertible, orientation-preserving linear part.
    The value (base point) may be parameter-dependent."""
    det = mat_det(phi.linear_matrix()).constant_term()
    if det == 0:
        raise SingularJet("frame with degenerate linear part")
    if det < 0:
        raise NotInSubgroup("orientation-reversing frame")
    return phi


def frame_at(ring, point):
    """Translation frame u -> point + u (a germ at the origin of the
    formal variables, so group jets act on it by right composition)."""
    n = ring.active
    return PolyMap(ring, (0,) * n,
                   [TruncPoly.var(ring, a) + Fraction(point[a])
                    for a in range(n)])


def frame_right_action(e, g):
    """e . g = jet of phi o g for a group jet g in the same ring (g is
    anchored at the origin, where the frame's formal variables live)."""
    return e.after(g)


def frame_form(path, j=0):
    """Velocity of a frame path along parameter j, at parameter value 0,
    as a vector-field jet: d/dt|0 of the jet of phi_0^{-1} o phi_t.

    Other parameters in the ring stay symbolic, so this also computes
    theta on families (needed for the structure equation's mixed
    derivatives)."""
    ring = path.ring
    t = ring.param_index(j)
    phi0 = path.subs_param(j, 0)
    w = phi0.inverse().after(path)
    comps = [c.diff(t).subs({t: Fraction(0)}).convert(ring)
             for c in w.comps]
    return VFJet(ring, comps)


def structure_residual(fam, js=0, jt=1, top_grade=None):
    """Structure residual of a two-parameter family, in grades <= top_grade
    (defaults to order-2, i.e. "mod the top grade").  Contract: zero."""
    ring = fam.ring
    s = ring.param_index(js)
    t = ring.param_index(jt)
    theta_t = frame_form(fam, jt)    # s-dependent
    theta_s = frame_form(fam, js)    # t-dependent
    ds_theta_t = VFJet(ring, [c.diff(s).subs({s: Fraction(0)}).convert(ring)
                              for c in theta_t.comps])
    dt_theta_s = VFJet(ring, [c.diff(t).subs({t: Fraction(0)}).convert(ring)
                              for c in theta_s.comps])
    th_s0 = VFJet(ring, [c.subs({t: Fraction(0)}).convert(ring)
                         for c in theta_s.comps])
    th_t0 = VFJet(ring, [c.subs({s: Fraction(0)}).convert(ring)
                         for c in theta_t.comps])
    from .vf import bracket
    R = ds_theta_t - dt_theta_s + bracket(th_s0, th_t0)
    if top_grade is None:
        top_grade = ring.order - 2
    return R.truncate_grades(-1, top_grade)


def bianchi_residual(fam, params=(0, 1, 2), top_grade=None):
    """Cyclic bracket of theta with the structure 2-form on a
    three-parameter family, in grades <= order-3.  Contract: zero."""
    from .vf import bracket
    ring = fam.ring
    if top_grade is None:
        top_grade = ring.order - 3
    total = VFJet.zero(ring)
    for (a, b, c) in ((params[0], params[1], params[2]),
                      (params[1], params[2], params[0]),
                      (params[2], params[0], params[1])):
        va = ring.param_index(a)
        # Theta on directions (b, c), with parameter a kept symbolic, then
        # everything evaluated at the origin of parameter space.
        Th = structure_residual(fam, b, c, top_grade=ring.order - 2)
        Th0 = VFJet(ring, [p.subs({va: Fraction(0)}).convert(ring)
                           for p in Th.comps])
        th = frame_form(fam, a)
        th0 = th
        for other in params:
            if other != a:
                vo = ring.param_index(other)
                th0 = VFJet(ring, [p.subs({vo: Fraction(0)}).convert(ring)
                                   for p in th0.comps])
        total = total + bracket(th0, Th0)
    return total.truncate_grades(-1, top_grade)


class ProlongedFrame:
    """Frame of order K = k+2 together with a 1-form shift with grade-k
    values (the parametrization of the first prolongation)."""

    __slots__ = ("frame", "shift")

    def __init__(self, frame, shift):
        validate_frame(frame)
        k = frame.ring.order - 2
        if shift.l != 1:
            raise NotInSubgroup("shift must be a 1-form")
        for v in shift.values.values():
            if any(g != k for g in v.grades()):
                raise NotInSubgroup(f"shift values must sit in grade {k}")
        self.frame = frame
        self.shift = shift

    def __eq__(self, other):
        return (isinstance(other, ProlongedFrame)
                and self.frame == other.frame and self.shift == other.shift)


def torsion(p):
    """Torsion of a prolonged frame: -(Spencer differential of the shift),
    a 2-form with grade-(k-1) values.  Frames themselves are torsion-free,
    so the shift carries all of it."""
    return -partial(p.shift)


def reduce(p):
    """Remove the exact part of the shift so torsion vanishes; what is
    left of the shift is Spencer-closed (the one-order-up ambiguity)."""
    k = p.frame.ring.order - 2
    t = torsion(p)
    if t.is_zero():
        return p
    corr = solve_preimage(-t, k)
    # corr has the same differential as the shift; subtracting it kills
    # the torsion
    return ProlongedFrame(p.frame, p.shift - corr)


def torsion_right_action(p, g):
    """Action of a group jet on a prolonged frame: the frame moves by
    right composition, the shift by ad on values and slots."""
    k = p.frame.ring.order - 2
    moved = adjoint.ad_on_cochain(g.inverse(), p.shift)
    return ProlongedFrame(frame_right_action(p.frame, g),
                          moved.map_values(
                              lambda v: v.truncate_grades(k, k)))
