"""Polynomial map germs.

A ``PolyMap`` is a germ of a map at a rational source point ``src``: each
component is a truncated polynomial in the active variables u (the deviation
from ``src``), with absolute values — the constant part of component i is
the i-th coordinate of the image of the source point.  Constant parts may
carry nilpotent parameter contributions (path parameters, symbolic chart
offsets); only the rational part has to match up under composition.

A germ may additionally carry a nilpotent ``anchor``: its series then lives
in the deviation from ``src + anchor`` rather than from ``src``.  Inverting
a germ whose value has a nilpotent constant part produces an anchored germ;
expanding such an offset through the truncated series instead would feed
discarded high-degree terms back into low degrees and is not sound when the
offset admits powers beyond degree one.  Composition expands only the small
mismatch between the inner value and the outer anchor.

Jets of diffeomorphisms, group elements of jet groups, and frames are all
``PolyMap`` instances; the group-specific structure lives in ``jet_group``.
"""

from fractions import Fraction

from .errors import (RingMismatch, DimensionMismatch, GermMismatch,
                     SingularJet)
from .poly import TruncPoly, mat_inverse


class PolyMap:
    __slots__ = ("ring", "src", "comps", "anchor")

    def __init__(self, ring, src, comps, anchor=None):
        n = ring.active
        comps = tuple(comps)
        if len(comps) != n or len(src) != n:
            raise DimensionMismatch("need one component per active variable")
        for c in comps:
            if c.ring != ring:
                raise RingMismatch("component outside the map's ring")
        if anchor is not None:
            anchor = tuple(anchor)
            if len(anchor) != n:
                raise DimensionMismatch("need one anchor entry per component")
            if all(a.is_zero() for a in anchor):
                anchor = None
            else:
                for a in anchor:
                    if a.ring != ring:
                        raise RingMismatch("anchor outside the map's ring")
                    if a.active_degree() > 0 or a.coeff((0,) * ring.nvars):
                        raise GermMismatch(
                            "anchor must be a nilpotent constant")
        self.ring = ring
        self.src = tuple(Fraction(s) for s in src)
        self.comps = comps
        self.anchor = anchor

    @staticmethod
    def identity(ring, point=None):
        n = ring.active
        if point is None:
            point = (Fraction(0),) * n
        comps = [TruncPoly.var(ring, i) + Fraction(point[i]) for i in range(n)]
        return PolyMap(ring, point, comps)

    # -- structure ---------------------------------------------------------

    def value(self):
        """Image of the source point: list of constant-in-u parts (may
        contain nilpotent parameter terms)."""
        return [c.active_part(0) for c in self.comps]

    def value_rational(self):
        n = self.ring.active
        zero = (0,) * self.ring.nvars
        return tuple(self.comps[i].coeff(zero) for i in range(n))

    def displacement(self):
        """Components minus the image of the source point: the origin-based
        formal part of the germ."""
        return [c - c.active_part(0) for c in self.comps]

    def linear_matrix(self):
        n = self.ring.active
        return [[self.comps[i].diff(a).active_part(0) for a in range(n)]
                for i in range(n)]

    def __eq__(self, other):
        return (isinstance(other, PolyMap) and self.ring == other.ring
                and self.src == other.src and self.comps == other.comps
                and self.anchor == other.anchor)

    def __hash__(self):
        return hash((self.ring, self.src, self.comps, self.anchor))

    def __repr__(self):
        extra = f", anchor={list(self.anchor)}" if self.anchor else ""
        return f"PolyMap(src={self.src}, comps={list(self.comps)}{extra})"

    # -- composition and inversion -----------------------------------------

    def after(self, g):
        """self o g.  The rational base value of g must equal self.src."""
        if self.ring != g.ring:
            raise RingMismatch("composition across rings")
        n = self.ring.active
        if g.value_rational() != self.src:
            raise GermMismatch(
                f"g maps {g.src} to {g.value_rational()}, germ of outer "
                f"map sits at {self.src}")
        if self.anchor is None:
            args = {a: g.comps[a] - self.src[a] for a in range(n)}
        else:
            args = {a: g.comps[a] - self.src[a] - self.anchor[a]
                    for a in range(n)}
        return PolyMap(g.ring, g.src,
                       [c.subs(args) for c in self.comps],
                       anchor=g.anchor)

    def inverse(self):
        """Inverse germ.

        Newton-type iteration on the zero-constant formal part; exact in the
        truncation ring.  If the value carries a nilpotent constant part the
        result is anchored there, so the series is never asked to absorb the
        offset.  The source anchor, if any, becomes part of the value.
        """
        ring = self.ring
        n = ring.active
        v = self.value()
        v_rat = self.value_rational()
        # strictly formal problem: S(u) = comps - value, solve S(G) = u
        S = [self.comps[i] - v[i] for i in range(n)]
        L = [[S[i].diff(a).active_part(0) for a in range(n)] for i in range(n)]
        try:
            M = mat_inverse(L)
        except SingularJet:
            raise SingularJet("linear part of jet is not invertible")
        u = [TruncPoly.var(ring, a) for a in range(n)]
        G = [sum((M[a][b] * u[b] for b in range(n)), TruncPoly.zero(ring))
             for a in range(n)]
        limit = sum(cap for _, cap in ring.caps) + 2
        for _ in range(limit):
            SG = [S[i].subs({a: G[a] for a in range(n)}) for i in range(n)]
            err = [SG[i] - u[i] for i in range(n)]
            if all(e.is_zero() for e in err):
                src_off = (self.anchor if self.anchor is not None
                           else (TruncPoly.zero(ring),) * n)
                comps = [G[a] + self.src[a] + src_off[a] for a in range(n)]
                return PolyMap(ring, v_rat, comps,
                               anchor=[v[a] - v_rat[a] for a in range(n)])
            corr = [sum((M[a][b] * err[b] for b in range(n)),
                        TruncPoly.zero(ring)) for a in range(n)]
            G = [G[a] - corr[a] for a in range(n)]
        raise SingularJet("inversion did not converge")

    # -- ring plumbing -----------------------------------------------------

    def convert(self, ring, var_map=None):
        anchor = (None if self.anchor is None else
                  [a.convert(ring, var_map) for a in self.anchor])
        return PolyMap(ring, self.src,
                       [c.convert(ring, var_map) for c in self.comps],
                       anchor=anchor)

    def project(self, order):
        """Truncate the jet to a lower active order."""
        r = self.ring.with_order(order)
        return self.convert(r)

    def subs_param(self, j, value):
        """Fix the j-th parameter variable to a rational value (the
        variable stays in the ring, unused)."""
        i = self.ring.param_index(j)
        fix = {i: Fraction(value)}
        anchor = (None if self.anchor is None else
                  [a.subs(fix).convert(self.ring) for a in self.anchor])
        return PolyMap(self.ring, self.src,
                       [c.subs(fix).convert(self.ring)
                        for c in self.comps], anchor=anchor)

    def dparam(self, j):
        """Component-wise derivative along the j-th parameter variable."""
        i = self.ring.param_index(j)
        return [c.diff(i) for c in self.comps]
