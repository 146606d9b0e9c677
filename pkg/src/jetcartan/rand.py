"""Seeded generators for property tests and CLI suites.

All randomness flows through one ``random.Random`` instance per generator,
so identical seeds give identical objects.  Coefficients are rationals with
bounded numerator and denominator.

Base diffeomorphisms are generated as compositions of triangular shears
(x_i += polynomial in the other coordinates) and unimodular linear maps;
these have polynomial inverses and constant Jacobian determinant, which
keeps every derived object an exact polynomial rather than a truncated
series.
"""

import random
from fractions import Fraction
from itertools import combinations, product

from .rings import Ring
from .poly import TruncPoly
from .maps import PolyMap
from .vf import VFJet, gl_monomials
from .spencer import SpencerCochain


class Gen:
    def __init__(self, seed=0):
        self.rng = random.Random(seed)

    def frac(self, num=4, den=3):
        return Fraction(self.rng.randint(-num, num),
                        self.rng.randint(1, den))

    def nonzero_frac(self, num=4, den=3):
        while True:
            f = self.frac(num, den)
            if f:
                return f

    def point(self, n, num=2, den=3):
        return tuple(self.frac(num, den) for _ in range(n))

    def poly(self, ring, max_active=None, max_param=0, density=0.5,
             min_active=0):
        """Random polynomial with active degree in [min_active, max_active]
        and parameter degree <= max_param."""
        n = ring.active
        if max_active is None:
            max_active = ring.order
        terms = {}
        pvars = list(range(n, ring.nvars))
        for e in self._expos(ring, n, max_active, min_active, pvars,
                             max_param):
            if self.rng.random() < density:
                c = self.frac()
                if c:
                    terms[e] = c
        return TruncPoly(ring, terms)

    def _expos(self, ring, n, max_active, min_active, pvars, max_param):
        active_es = [e for e in product(range(max_active + 1), repeat=n)
                     if min_active <= sum(e) <= max_active]
        if max_param and pvars:
            param_es = [e for e in product(range(max_param + 1),
                                           repeat=len(pvars))
                        if sum(e) <= max_param]
        else:
            param_es = [(0,) * len(pvars)]
        out = []
        for ae in active_es:
            for pe in param_es:
                e = list(ae) + [0] * (ring.nvars - n)
                for v, k in zip(pvars, pe):
                    e[v] = k
                if ring.admits(tuple(e)):
                    out.append(tuple(e))
        return out

    def vf(self, ring, lo=-1, hi=None, max_param=0, density=0.5):
        if hi is None:
            hi = ring.order - 1
        comps = [self.poly(ring, max_active=hi + 1, min_active=lo + 1,
                           max_param=max_param, density=density)
                 for _ in range(ring.active)]
        return VFJet(ring, comps)

    def vf_graded(self, ring, k, density=0.8):
        """Random element concentrated in grade k."""
        return self.vf(ring, lo=k, hi=k, density=density)

    def group_elt(self, ring, unipotent=False):
        """Random jet-group element: invertible triangular-plus-identity
        linear part (orientation-preserving), random higher terms."""
        n = ring.active
        comps = []
        for a in range(n):
            p = TruncPoly.var(ring, a)
            if not unipotent:
                for b in range(n):
                    if b < a:
                        p = p + self.frac(2, 2) * TruncPoly.var(ring, b)
                p = p * self.nonzero_frac(3, 2) ** 2  # positive scale
            high = self.poly(ring, min_active=2, density=0.5)
            comps.append(p + high)
        return PolyMap(ring, (0,) * n, comps)

    def cochain(self, ring, k, l, max_param=0, density=0.6):
        n = ring.active
        vals = {}
        for idx in combinations(range(n), l):
            vals[idx] = self.vf(ring, lo=k, hi=k, max_param=max_param,
                                density=density)
        return SpencerCochain(ring, l, vals)

    def mixed_cochain(self, ring, lo, hi, l, max_param=0, density=0.5):
        n = ring.active
        vals = {}
        for idx in combinations(range(n), l):
            vals[idx] = self.vf(ring, lo=lo, hi=hi, max_param=max_param,
                                density=density)
        return SpencerCochain(ring, l, vals)

    def frame_family(self, ring, density=0.4):
        """Random polynomial frame family: guaranteed invertible at
        parameter zero (unipotent-triangular linear part there), free
        elsewhere — parameter-dependent terms are unconstrained."""
        n = ring.active
        comps = []
        for a in range(n):
            p = TruncPoly.var(ring, a) + self.frac(2, 3)
            for b in range(a):
                p = p + self.frac(2, 2) * TruncPoly.var(ring, b)
            if ring.order >= 2:
                p = p + self.poly(ring, min_active=2, density=density)
            q = self.poly(ring, max_param=2, density=density)
            p = p + q - TruncPoly(ring, {e: c for e, c in q.terms.items()
                                         if not any(e[n:])})
            comps.append(p)
        return PolyMap(ring, (0,) * n, comps)


    # -- chart-level generators (unimodular regime) ------------------------

    def base_diffeo(self, ctx, nshears=2, deg=2):
        """Composition of triangular shears and unimodular triangular
        linear maps: polynomially invertible, constant Jacobian."""
        from .ops import BaseDiffeo
        ring = ctx.base_ring
        b = BaseDiffeo.identity(ring)
        for _ in range(nshears):
            i = self.rng.randrange(ctx.n)
            p = self.poly(ring, max_active=deg, density=0.5)
            p = TruncPoly(ring, {e: c for e, c in p.terms.items()
                                 if e[i] == 0})
            b = b.compose(BaseDiffeo.shear(ring, i, p))
        if ctx.n >= 2 and self.rng.random() < 0.5:
            M = [[Fraction(1 if r == c else 0) for c in range(ctx.n)]
                 for r in range(ctx.n)]
            M[1][0] = self.frac(2, 2)
            b = b.compose(BaseDiffeo.linear(ring, M))
        return b

    def gauge_section(self, ctx, xdeg=1, density=0.4):
        """Polynomial gauge section with unit-determinant linear part:
        unipotent lower-triangular in the jet variables, chart-dependent
        coefficients, free higher-order terms."""
        ring = ctx.R
        n = ctx.n
        comps = []
        for a in range(n):
            p = TruncPoly.var(ring, a)
            for bvar in range(a):
                coef = self.poly(ring, max_active=0, max_param=xdeg,
                                 density=0.7)
                p = p + coef * TruncPoly.var(ring, bvar)
            high = self.poly(ring, min_active=2, max_param=xdeg,
                             density=density)
            comps.append(p + high)
        return PolyMap(ring, (0,) * n, comps)

    def automorphism(self, ctx, nshears=2, deg=2, xdeg=1):
        from .ops import BundleAutomorphism
        return BundleAutomorphism(ctx, self.base_diffeo(ctx, nshears, deg),
                                  self.gauge_section(ctx, xdeg))

    def deformation(self, ctx, xdeg=1, density=0.5):
        """Random deformation whose grade -1 part is strictly
        lower-triangular (so 1 + mu_{-1} is unimodular)."""
        from .ops import Deformation
        ring = ctx.R
        n, k = ctx.n, ctx.k
        vals = {}
        for i in range(n):
            comps = []
            for a in range(n):
                c = self.poly(ring, max_active=k + 1, min_active=1,
                              max_param=xdeg, density=density)
                if a > i:
                    c = c + self.poly(ring, max_active=0, max_param=xdeg,
                                      density=0.7)
                comps.append(c)
            vals[(i,)] = VFJet(ring, comps)
        return Deformation(ctx, SpencerCochain(ring, 1, vals))

    def dual_density(self, ctx, xdeg=1, density=0.6):
        from .ops import DualDensity
        coeffs = {}
        n, k = ctx.n, ctx.k
        for g in range(-1, k):
            for a in range(n):
                for e in gl_monomials(n, g):
                    if self.rng.random() < density:
                        coeffs[(a, e)] = self.poly(
                            ctx.R, max_active=0, max_param=xdeg, density=0.8)
        return DualDensity(ctx, coeffs)


def sample_points(n, count, seed, num=2, den=3):
    rng = random.Random(seed)
    return [tuple(Fraction(rng.randint(-num, num), rng.randint(1, den))
                  for _ in range(n)) for _ in range(count)]
