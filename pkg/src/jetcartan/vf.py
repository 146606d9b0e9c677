"""Jets of formal vector fields.

A ``VFJet`` is a vector field with truncated polynomial components in the
active variables.  The grading is by polynomial degree shifted down by one:
grade k means homogeneous components of degree k+1, so grade -1 holds the
constant fields, grade 0 the linear ones, and the grade-k piece of the
algebra has dimension n * C(n+k, k+1).

The bracket used throughout is the *negative* of the usual vector-field
commutator.  With that sign the dilatation field D = u^a d_a satisfies
[X, D] = k X for X of grade k, and grade-k elements paired with a constant
field d_i differentiate: [d_i, Y] = -dY/du_i.
"""

from itertools import combinations_with_replacement

from .errors import RingMismatch, DimensionMismatch, GradeError
from .poly import TruncPoly, grlex_key


class VFJet:
    __slots__ = ("ring", "comps")

    def __init__(self, ring, comps):
        comps = tuple(comps)
        if len(comps) != ring.active:
            raise DimensionMismatch("one component per active variable")
        for c in comps:
            if c.ring != ring:
                raise RingMismatch("component outside the field's ring")
        self.ring = ring
        self.comps = comps

    @staticmethod
    def zero(ring):
        return VFJet(ring, [TruncPoly.zero(ring)] * ring.active)

    @staticmethod
    def coordinate(ring, i, c=1):
        """Constant field c * d_i (grade -1)."""
        comps = [TruncPoly.zero(ring)] * ring.active
        comps = list(comps)
        comps[i] = TruncPoly.const(ring, c)
        return VFJet(ring, comps)

    @staticmethod
    def dilatation(ring):
        return VFJet(ring, [TruncPoly.var(ring, a)
                            for a in range(ring.active)])

    def is_zero(self):
        return all(c.is_zero() for c in self.comps)

    def __eq__(self, other):
        return (isinstance(other, VFJet) and self.ring == other.ring
                and self.comps == other.comps)

    def __hash__(self):
        return hash((self.ring, self.comps))

    def __add__(self, other):
        return VFJet(self.ring, [a + b for a, b in
                                 zip(self.comps, other.comps)])

    def __sub__(self, other):
        return VFJet(self.ring, [a - b for a, b in
                                 zip(self.comps, other.comps)])

    def __neg__(self):
        return VFJet(self.ring, [-a for a in self.comps])

    def __mul__(self, scalar):
        return VFJet(self.ring, [c * scalar for c in self.comps])

    __rmul__ = __mul__

    def grade_part(self, k):
        return VFJet(self.ring, [c.active_part(k + 1) for c in self.comps])

    def grades(self):
        got = set()
        for c in self.comps:
            n = self.ring.active
            got.update(sum(e[:n]) - 1 for e in c.terms)
        return sorted(got)

    def truncate_grades(self, lo, hi):
        n = self.ring.active
        return VFJet(self.ring, [
            TruncPoly(self.ring, {e: v for e, v in c.terms.items()
                                  if lo + 1 <= sum(e[:n]) <= hi + 1})
            for c in self.comps])

    def max_grade(self):
        g = self.grades()
        return g[-1] if g else None

    def convert(self, ring, var_map=None):
        return VFJet(ring, [c.convert(ring, var_map) for c in self.comps])

    def __repr__(self):
        return f"VFJet({list(self.comps)})"


def bracket(X, Y):
    """The sign-reversed commutator (see module docstring)."""
    if X.ring != Y.ring:
        raise RingMismatch("bracket across rings")
    n = X.ring.active
    comps = []
    for a in range(n):
        s = TruncPoly.zero(X.ring)
        for b in range(n):
            s = s + X.comps[b] * Y.comps[a].diff(b) \
                  - Y.comps[b] * X.comps[a].diff(b)
        comps.append(-s)
    return VFJet(X.ring, comps)


def gl_monomials(n, k):
    """Exponent tuples of total degree k+1 in n variables, graded-lex."""
    if k + 1 < 0:
        raise GradeError("grade below -1")
    expos = set()
    for combo in combinations_with_replacement(range(n), k + 1):
        e = [0] * n
        for i in combo:
            e[i] += 1
        expos.add(tuple(e))
    return sorted(expos, key=grlex_key)


def gl_basis(ring, k):
    """Basis of the grade-k piece: for each component a and each monomial
    of degree k+1, the field u^expo d_a.  Ordered by (a, grlex)."""
    n = ring.active
    out = []
    for a in range(n):
        for e in gl_monomials(n, k):
            comps = [TruncPoly.zero(ring)] * n
            comps = list(comps)
            ee = list(e) + [0] * (ring.nvars - n)
            comps[a] = TruncPoly.monomial(ring, ee, 1)
            out.append(VFJet(ring, comps))
    return out


def gl_dim(n, k):
    from math import comb
    return n * comb(n + k, k + 1)


def vf_coords(X, k):
    """Coordinates of the grade-k part of X in the gl_basis order."""
    n = X.ring.active
    pad = X.ring.nvars - n
    out = []
    for a in range(n):
        for e in gl_monomials(n, k):
            out.append(X.comps[a].coeff(tuple(e) + (0,) * pad))
    return out


def vf_coords_poly(X, k):
    """Like vf_coords, but each coordinate keeps its parameter dependence:
    the coefficient of the active monomial is returned as a parameter-only
    TruncPoly."""
    n = X.ring.active
    out = []
    for a in range(n):
        for e in gl_monomials(n, k):
            terms = {}
            for full, c in X.comps[a].terms.items():
                if full[:n] == e:
                    terms[(0,) * n + full[n:]] = c
            out.append(TruncPoly(X.ring, terms))
    return out
