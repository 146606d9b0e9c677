"""Jet groups of origin-fixing diffeomorphism germs.

Elements are ``PolyMap`` germs anchored at the origin with vanishing value
and invertible linear part; the group law is truncated composition.  The
truncation order of the ring is the jet order.  The level-l kernel consists
of elements of the form id + (homogeneous of degree l+1); every element
factors uniquely as g0 o g1 o ... o gK with g_l in level l.

``exp``/``log`` relate the unipotent levels (l >= 1) to vector-field jets
of strictly positive grade, by integrating the flow with a formal time
parameter.
"""

from fractions import Fraction

from .errors import (GradeError, NotInSubgroup, SingularJet)
from .poly import TruncPoly, mat_det
from .maps import PolyMap
from .rings import Ring
from .vf import VFJet


def validate(g, orientation=True):
    """Check that g is a jet-group element: fixes the origin and has an
    invertible (optionally orientation-preserving) linear part."""
    if any(s != 0 for s in g.src) or any(v != 0 for v in g.value_rational()):
        raise NotInSubgroup("group jets fix the origin")
    det = mat_det(g.linear_matrix()).constant_term()
    if det == 0:
        raise SingularJet("linear part not invertible")
    if orientation and det < 0:
        raise NotInSubgroup("orientation-reversing linear part")
    return g


def identity(ring):
    return PolyMap.identity(ring)


def mul(g, h):
    """Group law: truncated composition g o h."""
    return g.after(h)


def inv(g):
    return g.inverse()


def project(g, order):
    return g.project(order)


def level_displacement(g):
    """Degree of the lowest nonlinear deviation from the identity, minus
    one; None when g is the identity jet."""
    ds = [(c - TruncPoly.var(g.ring, a)) for a, c in enumerate(g.comps)]
    degs = [min((sum(e[:g.ring.active]) for e in d.terms), default=None)
            for d in ds]
    degs = [d for d in degs if d is not None]
    return min(degs) - 1 if degs else None


def from_displacement(ring, X):
    """id + X for a vector-field jet X (degree >= 2 components)."""
    return PolyMap(ring, (0,) * ring.active,
                   [TruncPoly.var(ring, a) + X.comps[a]
                    for a in range(ring.active)])


def factor(g):
    """Factor g = g_0 o g_1 o ... o g_K by peeling levels from the left.

    g_0 is the linear part, g_l = id + (homogeneous degree l+1) for l >= 1.
    """
    ring = g.ring
    n = ring.active
    K = ring.order
    A = g.linear_matrix()
    g0 = PolyMap(ring, (0,) * n,
                 [sum((A[i][a] * TruncPoly.var(ring, a) for a in range(n)),
                      TruncPoly.zero(ring)) for i in range(n)])
    levels = [g0]
    r = g0.inverse().after(g)
    for l in range(1, K):
        h = PolyMap(ring, (0,) * n,
                    [TruncPoly.var(ring, a) +
                     (r.comps[a] - TruncPoly.var(ring, a)).active_part(l + 1)
                     for a in range(n)])
        levels.append(h)
        r = h.inverse().after(r)
    if r != PolyMap.identity(ring):
        raise NotInSubgroup("factorization residue is not the identity")
    return levels


def compose_factors(levels):
    g = levels[0]
    for h in levels[1:]:
        g = g.after(h)
    return g


def exp(X):
    """Time-one flow of a vector-field jet of strictly positive grade.

    Computed by Picard iteration with a formal time variable, then
    evaluated at t = 1; exact because positive-grade fields are nilpotent
    at any truncation order.
    """
    ring = X.ring
    if any(g <= 0 for g in X.grades()):
        raise GradeError("exp needs strictly positive grades")
    K = ring.order
    rt = ring.with_params(1, cap=K + 1)
    t = rt.param_index(0)
    n = ring.active
    Xc = [c.convert(rt) for c in X.comps]
    phi = [TruncPoly.var(rt, a) for a in range(n)]
    for _ in range(K + 1):
        rhs = [Xc[a].subs({b: phi[b] for b in range(n)}) for a in range(n)]
        new = []
        for a in range(n):
            integ = {}
            for e, c in rhs[a].terms.items():
                e2 = list(e)
                e2[t] += 1
                integ[tuple(e2)] = c / e2[t]
            new.append(TruncPoly.var(rt, a) + TruncPoly(rt, integ))
        if new == phi:
            break
        phi = new
    comps = [p.subs({t: Fraction(1)}).convert(ring) for p in phi]
    return PolyMap(ring, (0,) * n, comps)


def log(g):
    """Inverse of exp on unipotent jets (identity linear part)."""
    ring = g.ring
    n = ring.active
    ident = [TruncPoly.var(ring, a) for a in range(n)]
    if any((g.comps[a] - ident[a]).active_part(1).terms or
           not (g.comps[a] - ident[a]).active_part(0).is_zero()
           for a in range(n)):
        raise NotInSubgroup("log needs a unipotent jet")
    X = VFJet.zero(ring)
    for _ in range(ring.order + 1):
        E = exp(X)
        delta = [g.comps[a] - E.comps[a] for a in range(n)]
        if all(d.is_zero() for d in delta):
            return X
        X = X + VFJet(ring, delta)
    raise NotInSubgroup("log iteration did not converge")
