"""Adjoint action of jet groups on vector-field jets.

The closed formula is ad(g)X = (Dg . X) o g^{-1}, truncated by the ambient
ring; on a one-parameter unipotent subgroup this agrees with differentiating
conjugation of flows, which the tests exercise.

An element of the next jet group that projects to the identity acts on
truncated fields by a degree-k shift: X -> X + [alpha, X_{-1}] where alpha
is the top-degree displacement read off the element.  Cochains transform by
ad on values and by the inverse linear part on slots.
"""

from fractions import Fraction

from .errors import NotInSubgroup, GradeError
from .poly import TruncPoly, mat_inverse
from .vf import VFJet, bracket
from .maps import PolyMap


def ad(g, X):
    """ad(g)X = (Dg . X) o g^{-1} in the common truncation ring."""
    ring = g.ring
    n = ring.active
    gi = g.inverse()
    sub = {b: gi.comps[b] for b in range(n)}
    comps = []
    for a in range(n):
        s = TruncPoly.zero(ring)
        for b in range(n):
            s = s + g.comps[a].diff(b) * X.comps[b]
        comps.append(s.subs(sub))
    return VFJet(ring, comps)


def linear_part_matrix(g):
    """Rational matrix of the linear part (entries must be constants)."""
    n = g.ring.active
    M = g.linear_matrix()
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            p = M[i][j]
            if p.param_degree() > 0:
                raise NotInSubgroup("linear part is not constant")
            row.append(p.constant_term())
        out.append(row)
    return out


def rational_mat_inverse(M):
    n = len(M)
    aug = [[Fraction(M[i][j]) for j in range(n)] +
           [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise NotInSubgroup("singular linear part")
        aug[col], aug[piv] = aug[piv], aug[col]
        d = aug[col][col]
        aug[col] = [x / d for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def shift_of(g):
    """Top-degree displacement of an element projecting to the identity
    one order down, as a vector-field jet of top grade."""
    ring = g.ring
    n = ring.active
    K = ring.order
    disp = [g.comps[a] - TruncPoly.var(ring, a) for a in range(n)]
    for d in disp:
        low = d - d.active_part(K)
        if not low.is_zero():
            raise NotInSubgroup("element does not project to the identity")
    return VFJet(ring, [d.active_part(K) for d in disp])


def apply_shift(alpha, X):
    """Degree-k shift action: X + [alpha, X_{-1}] (truncated by the ring)."""
    return X + bracket(alpha, X.grade_part(-1))


def ad_on_cochain(g, cochain):
    """Transform a cochain by ad(g) on values and the inverse linear part
    of g on the constant-field slots."""
    from .spencer import SpencerCochain
    Ainv = rational_mat_inverse(linear_part_matrix(g))
    return SpencerCochain(cochain.ring, cochain.l,
                          _transform_values(cochain, g, Ainv))


def _transform_values(cochain, g, Ainv):
    from itertools import product
    n = g.ring.active
    out = {}
    for idx in _all_indices(n, cochain.l):
        total = VFJet.zero(g.ring)
        for cols in product(range(n), repeat=cochain.l):
            coeff = Fraction(1)
            for slot, i in enumerate(idx):
                coeff *= Ainv[cols[slot]][i]
            if not coeff:
                continue
            total = total + coeff * cochain.antisym_value(cols)
        if not total.is_zero():
            out[idx] = ad(g, total)
    return out


def _all_indices(n, l):
    from itertools import combinations
    return list(combinations(range(n), l))
