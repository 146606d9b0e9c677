"""Nonlinear field theory over a single chart.

Everything here lives in the flat trivialization of the jet-frame bundle by
translation frames sigma(x): u -> x + u.  Chart coordinates are carried as
truncated parameter variables in the rings, so all sections are symbolic
polynomials over the chart and every identity is checked as an exact
polynomial identity (or exactly at rational sample points after
substituting the coordinates).

Main cast:

* ``OpsContext`` fixes (n, k, chart truncation) and builds the rings.
* ``BaseDiffeo`` — polynomial diffeomorphism of the chart with an exact
  polynomial inverse (compositions of shears and invertible linear maps).
* ``BundleAutomorphism`` — pair (base, gauge section), acting on frames by
  e -> jet(base) o (e . gauge(e)).
* ``Deformation`` — a 1-form with vector-field-jet values in grades
  -1..k, pointwise invertible in grade -1; group law mu.nu = mu+nu+i_nu mu.
* The operators: D_theta on automorphisms (by frame paths), d_theta and
  D_theta on cochains/deformations (coordinate formulas), projected
  versions, development (Taylor integration of D_theta f = mu), Cech
  cocycles from developments, and the top-degree pairing density.
"""

from fractions import Fraction
from itertools import combinations, product

from .errors import (DimensionMismatch, RingMismatch, GradeError,
                     NotIntegrable, NotInSubgroup, SaturatedTruncation,
                     SingularJet)
from .rings import Ring
from .poly import TruncPoly, mat_inverse, mat_det
from .maps import PolyMap
from .vf import VFJet, bracket, gl_basis, gl_monomials, vf_coords_poly
from .spencer import SpencerCochain, partial, partial_matrix
from . import adjoint
from .frames import frame_form


class OpsContext:
    """Fixed (n, k) with a chart truncation order for the coordinate
    variables.  Jet variables are truncated at k+2 (one order above the
    deformations, as the frame-path computations need)."""

    def __init__(self, n, k, xord=10):
        self.n = n
        self.k = k
        self.xord = xord
        self.uord = k + 2
        self.base_ring = Ring.jet(n, xord)
        self.R = Ring.jet(n, self.uord).with_params(n, cap=xord, joint=True)
        self.Rt = self.R.with_params(1, cap=1)

    def xvar(self, j, ring=None):
        return TruncPoly.var(ring or self.R, self.n + j)

    def sigma(self, ring=None):
        """The translation frame field u -> x + u, x symbolic."""
        ring = ring or self.R
        n = self.n
        return PolyMap(ring, (0,) * n,
                       [TruncPoly.var(ring, a) + TruncPoly.var(ring, n + a)
                        for a in range(n)])

    def sigma_path(self, i):
        """Frame path t -> sigma(x + t e_i) in the t-extended ring."""
        n = self.n
        t = TruncPoly.var(self.Rt, self.Rt.param_index(n))
        comps = []
        for a in range(n):
            c = TruncPoly.var(self.Rt, a) + TruncPoly.var(self.Rt, n + a)
            if a == i:
                c = c + t
            comps.append(c)
        return PolyMap(self.Rt, (0,) * n, comps)


# -- base diffeomorphisms ---------------------------------------------------


class BaseDiffeo:
    """Chart diffeomorphism with exact polynomial inverse."""

    __slots__ = ("ring", "fwd", "inv")

    def __init__(self, ring, fwd, inv, check=True):
        self.ring = ring
        self.fwd = tuple(fwd)
        self.inv = tuple(inv)
        if check:
            sub = {j: self.inv[j] for j in range(ring.active)}
            for i in range(ring.active):
                if self.fwd[i].subs(sub) != TruncPoly.var(ring, i):
                    raise NotInSubgroup("supplied inverse is not exact")

    @staticmethod
    def identity(ring):
        v = [TruncPoly.var(ring, i) for i in range(ring.active)]
        return BaseDiffeo(ring, v, v, check=False)

    @staticmethod
    def shear(ring, i, p):
        """x_i += p(x_others); p must not involve x_i."""
        if p.diff(i) != TruncPoly.zero(ring):
            raise DimensionMismatch("shear polynomial depends on sheared "
                                    "variable")
        fwd = [TruncPoly.var(ring, j) for j in range(ring.active)]
        inv = list(fwd)
        fwd[i] = fwd[i] + p
        inv[i] = inv[i] - p
        return BaseDiffeo(ring, fwd, inv, check=False)

    @staticmethod
    def linear(ring, M):
        det = _det_frac(M)
        if det == 0:
            raise SingularJet("singular linear base map")
        Minv = adjoint.rational_mat_inverse(M)
        n = ring.active
        fwd = [sum((Fraction(M[i][j]) * TruncPoly.var(ring, j)
                    for j in range(n)), TruncPoly.zero(ring))
               for i in range(n)]
        inv = [sum((Minv[i][j] * TruncPoly.var(ring, j)
                    for j in range(n)), TruncPoly.zero(ring))
               for i in range(n)]
        return BaseDiffeo(ring, fwd, inv, check=False)

    def compose(self, other):
        """self o other."""
        n = self.ring.active
        fwd = [c.subs({j: other.fwd[j] for j in range(n)})
               for c in self.fwd]
        inv = [c.subs({j: self.inv[j] for j in range(n)})
               for c in other.inv]
        return BaseDiffeo(self.ring, fwd, inv, check=False)

    def inverse(self):
        return BaseDiffeo(self.ring, self.inv, self.fwd, check=False)

    def apply(self, point):
        return tuple(c.eval(list(point) + [0] * 0) for c in self.fwd)

    def __eq__(self, other):
        return (isinstance(other, BaseDiffeo) and self.fwd == other.fwd)


def _det_frac(M):
    n = len(M)
    if n == 1:
        return Fraction(M[0][0])
    tot = Fraction(0)
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        tot += (-1) ** j * Fraction(M[0][j]) * _det_frac(minor)
    return tot


# -- automorphisms ----------------------------------------------------------


class BundleAutomorphism:
    """(base, gauge): acts on a frame e with value p by first moving the
    formal part through the gauge at p, then prolonging the base map."""

    __slots__ = ("ctx", "base", "gauge")

    def __init__(self, ctx, base, gauge):
        self.ctx = ctx
        self.base = base
        self.gauge = gauge  # PolyMap in ctx.R, origin germ for each x

    @staticmethod
    def identity(ctx):
        return BundleAutomorphism(ctx, BaseDiffeo.identity(ctx.base_ring),
                                  PolyMap.identity(ctx.R))

    def __eq__(self, other):
        return (isinstance(other, BundleAutomorphism)
                and self.base == other.base and self.gauge == other.gauge)


def prolong_diffeo(ctx, b):
    return BundleAutomorphism(ctx, b, PolyMap.identity(ctx.R))


def gauge_automorphism(ctx, gauge):
    return BundleAutomorphism(ctx, BaseDiffeo.identity(ctx.base_ring), gauge)


def is_prolongation(f):
    """True iff the gauge part is trivial, i.e. f is the prolongation of
    its base diffeomorphism (equivalently D_theta f = 0)."""
    ctx = f.ctx
    return all(f.gauge.comps[a] == TruncPoly.var(ctx.R, a)
               for a in range(ctx.n))


def auto_apply(f, e):
    """Apply an automorphism to a frame (PolyMap with chart-valued
    constant parts, in any ring whose first 2n variables are the jet and
    chart variables of the context)."""
    ctx = f.ctx
    n = ctx.n
    ring = e.ring
    p = [c.active_part(0) for c in e.comps]
    h = PolyMap(ring, (0,) * n, [e.comps[a] - p[a] for a in range(n)])
    xsub = {n + j: p[j] for j in range(n)}
    gauge_at = [c.subs(xsub) for c in f.gauge.comps]
    gp = PolyMap(ring, (0,) * n, gauge_at)
    inner = gp.after(h)
    w = [p[i] + inner.comps[i] for i in range(n)]
    out = [f.base.fwd[i].subs({j: w[j] for j in range(n)})
           for i in range(n)]
    return PolyMap(ring, e.src, out)


def _centered_germ(ring, polys):
    """Germ v -> F(x+v) - F(x) for chart polynomials F, with x the chart
    variables of `ring` and v the jet variables."""
    n = ring.active
    sub = {j: TruncPoly.var(ring, j) + TruncPoly.var(ring, n + j)
           for j in range(n)}
    comps = []
    for q in polys:
        s = q.subs(sub)
        comps.append(s - s.active_part(0))
    return PolyMap(ring, (0,) * n, comps)


def auto_mul(f, g):
    """Composition f o g in the automorphism group."""
    ctx = f.ctx
    n = ctx.n
    base = f.base.compose(g.base)
    F = auto_apply(f, auto_apply(g, ctx.sigma()))
    T = _centered_germ(ctx.R, base.fwd)
    Tfull = PolyMap(ctx.R, (0,) * n,
                    [T.comps[i] + _chart_value(ctx, base.fwd[i])
                     for i in range(n)])
    H = Tfull.inverse().after(F)
    return BundleAutomorphism(ctx, base, H)


def _chart_value(ctx, q):
    """A chart polynomial q(x) as an element of ctx.R (x the params)."""
    n = ctx.n
    return q.subs({j: TruncPoly.var(ctx.R, n + j) for j in range(n)})


def auto_inverse(f):
    ctx = f.ctx
    n = ctx.n
    base = f.base.inverse()
    qexpr = [_chart_value(ctx, base.fwd[j]) for j in range(n)]  # b^{-1}(x)
    T1 = _centered_germ_at(ctx, f.base.inv,
                           [TruncPoly.var(ctx.R, n + j) for j in range(n)])
    Gq = PolyMap(ctx.R, (0,) * n,
                 [c.subs({n + j: qexpr[j] for j in range(n)})
                  for c in f.gauge.comps])
    T2 = _centered_germ_at(ctx, f.base.fwd, qexpr)
    comp = T2.after(Gq.after(T1))
    H = comp.inverse()
    return BundleAutomorphism(ctx, base, H)


def _centered_germ_at(ctx, polys, at_exprs):
    """Germ v -> F(a + v) - F(a) with a given by chart expressions."""
    n = ctx.n
    sub = {j: TruncPoly.var(ctx.R, j) + at_exprs[j] for j in range(n)}
    comps = []
    for q in polys:
        s = q.subs(sub)
        comps.append(s - s.active_part(0))
    return PolyMap(ctx.R, (0,) * n, comps)


# -- deformations -----------------------------------------------------------


class Deformation:
    """1-form with values in grades -1..k, polynomial over the chart."""

    __slots__ = ("ctx", "cochain")

    def __init__(self, ctx, cochain):
        if cochain.l != 1:
            raise DimensionMismatch("deformations are 1-forms")
        self.ctx = ctx
        self.cochain = cochain.map_values(
            lambda v: v.truncate_grades(-1, ctx.k))

    @staticmethod
    def zero(ctx):
        return Deformation(ctx, SpencerCochain.zero(ctx.R, 1))

    def value(self, i):
        return self.cochain.value((i,))

    def minus1_matrix(self):
        """Matrix of mu-tilde restricted to grade -1: entry [a][i] is the
        a-component of mu(e_i)'s constant part (a chart polynomial)."""
        n = self.ctx.n
        return [[self.value(i).comps[a].active_part(0) for i in range(n)]
                for a in range(n)]

    def one_plus_minus1(self):
        n = self.ctx.n
        M = self.minus1_matrix()
        return [[M[a][i] + (1 if a == i else 0) for i in range(n)]
                for a in range(n)]

    def tilde_apply(self, vec):
        """mu-tilde on a grade-(-1) value given by chart-polynomial
        components."""
        n = self.ctx.n
        out = VFJet.zero(self.ctx.R)
        for a in range(n):
            if vec[a]:
                out = out + self.value(a) * vec[a]
        return out

    def __eq__(self, other):
        return (isinstance(other, Deformation)
                and self.cochain == other.cochain)

    def __add__(self, other):
        return Deformation(self.ctx, self.cochain + other.cochain)

    def __sub__(self, other):
        return Deformation(self.ctx, self.cochain - other.cochain)

    def is_zero(self):
        return self.cochain.is_zero()


def def_compose(mu, nu):
    """Group law mu . nu = mu + nu + (mu-tilde through nu's grade -1)."""
    ctx = mu.ctx
    n = ctx.n
    Nm1 = nu.minus1_matrix()
    vals = {}
    for i in range(n):
        v = mu.value(i) + nu.value(i) + mu.tilde_apply(
            [Nm1[a][i] for a in range(n)])
        vals[(i,)] = v
    return Deformation(ctx, SpencerCochain(ctx.R, 1, vals))


def def_inverse(mu):
    """Inverse for the group law: nu(e_i) = -mu-tilde((1+mu_{-1})^{-1}e_i).
    """
    ctx = mu.ctx
    n = ctx.n
    W = mat_inverse(mu.one_plus_minus1())
    vals = {}
    for i in range(n):
        v = -mu.tilde_apply([W[a][i] for a in range(n)])
        vals[(i,)] = v
    return Deformation(ctx, SpencerCochain(ctx.R, 1, vals))


# -- the Spencer operators --------------------------------------------------


def _L(ctx, i, X, ring=None):
    """The flat covariant slot operator: chart derivative plus bracket
    with the constant field in direction i."""
    ring = ring or ctx.R
    n = ctx.n
    d = VFJet(ring, [c.diff(n + i) for c in X.comps])
    return d + bracket(VFJet.coordinate(ring, i), X)


def linear_d_theta(ctx, a, top_grade=None):
    """Linear Spencer operator on an l-cochain: (l+1)-cochain with values
    truncated to grades <= k-1 by default."""
    n = ctx.n
    if top_grade is None:
        top_grade = ctx.k - 1
    vals = {}
    for idx in combinations(range(n), a.l + 1):
        total = VFJet.zero(a.ring)
        for j, i in enumerate(idx):
            term = _L(ctx, i, a.value(idx[:j] + idx[j + 1:]), a.ring)
            total = total + (term if j % 2 == 0 else -term)
        total = total.truncate_grades(-1, top_grade)
        if not total.is_zero():
            vals[idx] = total
    return SpencerCochain(a.ring, a.l + 1, vals)


def D_theta_def(mu, top_grade=None):
    """Nonlinear operator on deformations: the 2-form
    L_i mu_j - L_j mu_i + [mu_i, mu_j], grades <= k-1."""
    ctx = mu.ctx
    n = ctx.n
    if top_grade is None:
        top_grade = ctx.k - 1
    vals = {}
    for (i, j) in combinations(range(n), 2):
        v = (_L(ctx, i, mu.value(j)) - _L(ctx, j, mu.value(i))
             + bracket(mu.value(i), mu.value(j)))
        v = v.truncate_grades(-1, top_grade)
        if not v.is_zero():
            vals[(i, j)] = v
    return SpencerCochain(ctx.R, 2, vals)


def D_omega_def(nu, mu, top_grade=None):
    """Curvature of mu relative to the deformed gauge omega = theta + nu:
    d_omega(mu) + (1/2)[mu, mu], expanded slot by slot."""
    ctx = mu.ctx
    n = ctx.n
    if top_grade is None:
        top_grade = ctx.k - 1
    vals = {}
    for (i, j) in combinations(range(n), 2):
        mi, mj = mu.value(i), mu.value(j)
        v = (_L(ctx, i, mj) - _L(ctx, j, mi)
             + bracket(nu.value(i), mj) - bracket(nu.value(j), mi)
             + bracket(mi, mj))
        v = v.truncate_grades(-1, top_grade)
        if not v.is_zero():
            vals[(i, j)] = v
    return SpencerCochain(ctx.R, 2, vals)


def def_sum(mu, nu):
    return Deformation(mu.ctx, mu.cochain + nu.cochain)


def twisted_d(mu, tau, top_grade):
    """d_{theta+mu} on an l-cochain tau: slot operators L_i + ad(mu_i)."""
    ctx = mu.ctx
    n = ctx.n
    vals = {}
    for idx in combinations(range(n), tau.l + 1):
        total = VFJet.zero(tau.ring)
        for j, i in enumerate(idx):
            rest = tau.value(idx[:j] + idx[j + 1:])
            term = _L(ctx, i, rest) + bracket(mu.value(i), rest)
            total = total + (term if j % 2 == 0 else -term)
        total = total.truncate_grades(-1, top_grade)
        if not total.is_zero():
            vals[idx] = total
    return SpencerCochain(tau.ring, tau.l + 1, vals)


def pointwise_partial(c):
    """Spencer differential applied pointwise over the chart (the chart
    variables ride along in the coefficients)."""
    return partial(c)


def slot_twist(c, W):
    """Compose the slots of a cochain with the chart-polynomial matrix W
    (column i is the image of direction i)."""
    n = len(W)
    vals = {}
    for idx in combinations(range(n), c.l):
        total = VFJet.zero(c.ring)
        for cols in product(range(n), repeat=c.l):
            coeff = None
            for s, i in enumerate(idx):
                f = W[cols[s]][i]
                coeff = f if coeff is None else coeff * f
            v = c.antisym_value(cols)
            if v.is_zero():
                continue
            if coeff is not None:
                v = v * coeff
            total = total + v
        if not total.is_zero():
            vals[idx] = total
    return SpencerCochain(c.ring, c.l, vals)


# -- D_theta on automorphisms and the field actions -------------------------


def D_theta_auto(f):
    """First Spencer operator: f*theta - theta, computed on the frame
    paths t -> sigma(x + t e_i); a Deformation (grades -1..k)."""
    ctx = f.ctx
    n = ctx.n
    vals = {}
    for i in range(n):
        path = ctx.sigma_path(i)
        Fp = auto_apply(f, path)
        th = frame_form(Fp, n)  # parameter n is the path parameter t
        mu_i = (th - VFJet.coordinate(ctx.Rt, i)).truncate_grades(-1, ctx.k)
        vals[(i,)] = mu_i.convert(ctx.R)
    return Deformation(ctx, SpencerCochain(ctx.R, 1, vals))


def _gauge_part(f):
    """c(x): the formal germ of f(sigma(x)) above the moved base point,
    plus the chart expressions of the moved base point."""
    ctx = f.ctx
    n = ctx.n
    F = auto_apply(f, ctx.sigma())
    B = [c.active_part(0) for c in F.comps]
    c_germ = PolyMap(ctx.R, (0,) * n, [F.comps[a] - B[a] for a in range(n)])
    return c_germ, B


def field_pullback(f, a, top_grade=None):
    """Action of an automorphism on an l-cochain: values move through
    ad of the inverse gauge germ, slots through the linear gauge part
    composed with 1 + (D_theta f at grade -1); coefficients are composed
    with the base map."""
    ctx = f.ctx
    n = ctx.n
    if top_grade is None:
        top_grade = ctx.k
    c_germ, B = _gauge_part(f)
    ci = c_germ.inverse()
    Df = D_theta_auto(f)
    M1 = Df.one_plus_minus1()
    C0 = c_germ.linear_matrix()
    W = [[sum((C0[a][b] * M1[b][i] for b in range(n)),
              TruncPoly.zero(ctx.R)) for i in range(n)] for a in range(n)]
    moved = a.map_values(lambda v: VFJet(
        ctx.R, [c.subs({n + j: B[j] for j in range(n)}) for c in v.comps]))
    twisted = slot_twist(moved, W)
    out = twisted.map_values(
        lambda v: adjoint.ad(ci, v).truncate_grades(-1, top_grade))
    return out


def auto_act_on_def(f, mu):
    """mu -> f*mu + D_theta f (the affine action on deformations)."""
    ctx = f.ctx
    Df = D_theta_auto(f)
    fp = field_pullback(f, mu.cochain, top_grade=ctx.k)
    return Deformation(ctx, Df.cochain + fp)


def semidirect_mul(p, q):
    """(mu, f) . (mu', f') = (mu . (f mu'), f' o f)."""
    mu, f = p
    mup, fp = q
    return (def_compose(mu, auto_act_on_def(f, mup)), auto_mul(fp, f))


# -- projected (bar) operators ---------------------------------------------


def _echelon_columns(mat):
    """Column-echelon basis of the column space with pivot rows."""
    if not mat:
        return []
    rows = len(mat)
    cols = len(mat[0])
    basis = []  # list of (pivot_row, column vector)
    for j in range(cols):
        v = [mat[i][j] for i in range(rows)]
        for (p, b) in basis:
            if v[p]:
                f = v[p] / b[p]
                v = [x - f * y for x, y in zip(v, b)]
        piv = next((i for i in range(rows) if v[i]), None)
        if piv is not None:
            basis.append((piv, v))
    return basis


def _reduce_mod_columns(vec, basis):
    """Canonical representative of vec modulo the span of the echelon
    columns: eliminate the pivot coordinates."""
    v = list(vec)
    for (p, b) in basis:
        c = v[p]
        if c:
            f = c / b[p]
            v = [x - f * y for x, y in zip(v, b)]
    return v


class BarClass:
    """Canonical representative of a deformation (or 2-form) modulo the
    relevant Spencer-exact shifts: untouched lower grades plus reduced
    top-grade coordinates."""

    __slots__ = ("lower", "top")

    def __init__(self, lower, top):
        self.lower = lower
        self.top = tuple(top)

    def __eq__(self, other):
        return (isinstance(other, BarClass) and self.lower == other.lower
                and self.top == other.top)

    def is_zero(self):
        return self.lower.is_zero() and all(t.is_zero() if
                                            isinstance(t, TruncPoly) else
                                            not t for t in self.top)


def project_bar(mu):
    """Class of a deformation modulo changes of the top-order lift: the
    twisted top grade beta = mu_k o (1+mu_{-1})^{-1} is reduced modulo the
    image of the Spencer differential from one grade up."""
    ctx = mu.ctx
    n, k = ctx.n, ctx.k
    Winv = mat_inverse(mu.one_plus_minus1())
    beta_vals = {}
    for i in range(n):
        v = VFJet.zero(ctx.R)
        for a in range(n):
            v = v + Winv[a][i] * mu.value(a).truncate_grades(k, k)
        beta_vals[(i,)] = v
    beta = SpencerCochain(ctx.R, 1, beta_vals)
    coords = []
    for i in range(n):
        coords.extend(vf_coords_poly(beta.value((i,)), k))
    basis = _echelon_columns(partial_matrix(n, k + 1, 0))
    reduced = _reduce_mod_columns(coords, basis)
    lower = mu.cochain.map_values(lambda v: v.truncate_grades(-1, k - 1))
    return BarClass(lower, reduced)


def reduce_2form_mod_exact(ctx, tau):
    """Canonical representative of a grade-(k-1)-topped 2-form modulo the
    pointwise image of the Spencer differential on grade-k 1-forms."""
    n, k = ctx.n, ctx.k
    top = tau.map_values(lambda v: v.truncate_grades(k - 1, k - 1))
    coords = []
    for idx in combinations(range(n), 2):
        coords.extend(vf_coords_poly(top.value(idx), k - 1))
    basis = _echelon_columns(partial_matrix(n, k, 1))
    reduced = _reduce_mod_columns(coords, basis)
    lower = tau.map_values(lambda v: v.truncate_grades(-1, k - 2))
    return BarClass(lower, reduced)


def Dbar_theta_auto(f):
    return project_bar(D_theta_auto(f))


def Dbar_theta_def(mu):
    return reduce_2form_mod_exact(mu.ctx, D_theta_def(mu))


# -- development ------------------------------------------------------------


class DevelopedAutomorphism:
    """Solution germ of D_theta f = mu at a base point: the frame field
    Phi with Phi(base) = sigma(base), as Taylor data in recentered chart
    coordinates (x = 0 is the base point)."""

    __slots__ = ("ctx", "base_point", "xord", "phi")

    def __init__(self, ctx, base_point, xord, phi):
        self.ctx = ctx
        self.base_point = tuple(base_point)
        self.xord = xord
        self.phi = phi

    def base_taylor(self):
        """Chart expression of the moved base point."""
        return [c.active_part(0) for c in self.phi.comps]

    def is_polynomial(self):
        """True when the Taylor series visibly terminated (top two chart
        degrees vanish), so phi is the exact polynomial solution."""
        n = self.ctx.n
        for c in self.phi.comps:
            for e in c.terms:
                if sum(e[n:2 * n]) >= self.xord - 1:
                    return False
        return True


class Development:
    """develop() output: an automorphism whose Taylor data solves
    D_theta f = mu through chart order `order` - 1 around the base point,
    normalized so that f fixes the base point and the gauge value at the
    base is the one the deformation forces.  `exact` reports whether the
    final residual vanished identically, i.e. the corrector terminated on
    an exact polynomial solution.

    `auto` lives in the centered chart: the base point sits at chart
    coordinate 0.  `global_auto()` conjugates back to the original chart
    by the translation; this is a faithful operation only when the stored
    Taylor data is genuinely polynomial of chart degree <= xord, which is
    guaranteed only for exact developments of small enough degree (a
    translation spreads any truncated top-degree tail into every lower
    degree)."""

    __slots__ = ("ctx", "base_point", "order", "auto", "exact")

    def __init__(self, ctx, base_point, order, auto, exact):
        self.ctx = ctx
        self.base_point = tuple(base_point)
        self.order = order
        self.auto = auto
        self.exact = exact

    def global_auto(self):
        """The development expressed in the original chart (see above for
        when this is faithful)."""
        return _translate_auto(self.ctx, self.auto, self.base_point)


def _recenter_def(mu, base_point):
    """The deformation with chart coordinates recentered at a point
    (x -> base + x); exact when the chart degrees are genuine."""
    ctx = mu.ctx
    n = ctx.n
    sub = {n + j: TruncPoly.var(ctx.R, n + j) + Fraction(base_point[j])
           for j in range(n)}
    vals = {}
    for i in range(n):
        v = VFJet(ctx.R, [c.subs(sub) for c in mu.value(i).comps])
        if not v.is_zero():
            vals[(i,)] = v
    return Deformation(ctx, SpencerCochain(ctx.R, 1, vals))


def _grade_monomials(n, d):
    """All (component, u-exponent) pairs with |exponent| = d."""
    return [(b, e) for b in range(n)
            for e in product(range(d + 1), repeat=n) if sum(e) == d]


def _solve_linear(rows, rhs):
    """Gaussian elimination over the rationals; returns the canonical
    solution (free variables zero) or None when inconsistent."""
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    aug = [list(rows[i]) + [rhs[i]] for i in range(m)]
    pivots = []
    rank = 0
    for j in range(ncols):
        piv = next((i for i in range(rank, m) if aug[i][j]), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        pv = aug[rank][j]
        aug[rank] = [x / pv for x in aug[rank]]
        for i in range(m):
            if i != rank and aug[i][j]:
                f = aug[i][j]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[rank])]
        pivots.append(j)
        rank += 1
        if rank == m:
            break
    for i in range(rank, m):
        if aug[i][ncols]:
            return None
    sol = [Fraction(0)] * ncols
    for i, j in enumerate(pivots):
        sol[j] = aug[i][ncols]
    return sol


def _weight(e, n):
    """Homogeneity weight of a vector-field-jet term: chart degree plus
    grade (= jet degree - 1)."""
    return sum(e[n:2 * n]) + sum(e[:n]) - 1


def _development_step(ctx, f, DfD, rho, w):
    """One corrector step: the section delta (grades -1..k+1, monomials of
    weight w+1) whose right-composition onto the current automorphism
    kills the weight-w slice of the residual rho = D_theta f - mu.

    The filtration is by weight (chart degree + grade), which the exact
    update respects: a weight-(w+1) correction moves the residual only in
    weights >= w, linearly at weight w, so the slices already killed stay
    killed and each step is a finite linear solve.  The columns of the
    linear system are assembled from exact probe updates through the
    cocycle law f*(D g) + D f, so no separately derived linearization
    enters.  An inconsistent system raises NotIntegrable: the deformation
    is not flat at this weight."""
    n, k = ctx.n, ctx.k
    R = ctx.R
    # highest grade first: the solver then prefers gauge corrections and
    # touches base-map (grade -1) corrections only when forced, which
    # keeps the solution from sprawling into high chart degrees through
    # the prolongation jets of base shifts
    unknowns = []
    for g in range(k + 1, -2, -1):
        d = (w + 1) - g
        if d < 0 or d > ctx.xord:
            continue
        for gamma in product(range(d + 1), repeat=n):
            if sum(gamma) != d:
                continue
            for (b, eu) in _grade_monomials(n, g + 1):
                unknowns.append((gamma, b, eu))
    target = {}
    support = set()
    for i in range(n):
        for b in range(n):
            for e, c in rho[i].comps[b].terms.items():
                if _weight(e, n) == w:
                    target[(i, b, e)] = -c
                    support.add((i, b, e))
    # The update by a single weight-(w+1) monomial probe raises weight in
    # exact multiples of w + 1, so its weight-w slice sees only the
    # weight-(-1) part of the deformation (the constant base matrix).
    # Feeding the probes that slim deformation gives the same columns at a
    # fraction of the cost.
    zero_e = (0,) * R.nvars
    slim_vals = {}
    for i in range(n):
        comps = []
        for b in range(n):
            c = DfD.value(i).comps[b].terms.get(zero_e)
            comps.append(TruncPoly(R, {zero_e: c} if c else {}))
        v = VFJet(R, comps)
        if not v.is_zero():
            slim_vals[(i,)] = v
    slim = Deformation(ctx, SpencerCochain(R, 1, slim_vals))
    cols = []
    for (gamma, b, eu) in unknowns:
        comps = [TruncPoly.zero(R)] * n
        comps[b] = TruncPoly(R, {eu + gamma: Fraction(1)})
        g1 = _near_identity(ctx, VFJet(R, comps))
        upd = auto_act_on_def(g1, slim)
        col = {}
        for i in range(n):
            dv = upd.value(i) - slim.value(i)
            for bb in range(n):
                for e, c in dv.comps[bb].terms.items():
                    if _weight(e, n) == w:
                        col[(i, bb, e)] = c
                        support.add((i, bb, e))
        cols.append(col)
    if not support:
        return None
    rows_list = sorted(support)
    ridx = {key: i for i, key in enumerate(rows_list)}
    mat = [[Fraction(0)] * len(unknowns) for _ in rows_list]
    for j, col in enumerate(cols):
        for key, c in col.items():
            mat[ridx[key]][j] = c
    rhs = [target.get(key, Fraction(0)) for key in rows_list]
    sol = _solve_linear(mat, rhs)
    if sol is None:
        raise NotIntegrable(
            w + 1, "inconsistent linear step: the deformation is not flat")
    dterms = [dict() for _ in range(n)]
    for (gamma, b, eu), c in zip(unknowns, sol):
        if c:
            e = eu + gamma
            dterms[b][e] = dterms[b].get(e, Fraction(0)) + c
    delta = VFJet(R, [TruncPoly(R, dterms[b]) for b in range(n)])
    return None if delta.is_zero() else delta


def _chart_to_base(ctx, p):
    """A chart polynomial (parameter part of ctx.R) as an element of the
    plain chart ring."""
    n = ctx.n
    terms = {}
    for e, c in p.terms.items():
        terms[e[n:2 * n]] = c
    return TruncPoly(ctx.base_ring, terms)


def _near_identity(ctx, delta):
    """The automorphism 1 + delta: base map shifted by the grade -1 part,
    gauge germ shifted by the positive grades."""
    n = ctx.n
    fwd = [TruncPoly.var(ctx.base_ring, a)
           + _chart_to_base(ctx, delta.comps[a].active_part(0))
           for a in range(n)]
    inv = PolyMap(ctx.base_ring, (0,) * n, fwd).inverse().comps
    base = BaseDiffeo(ctx.base_ring, fwd, inv, check=False)
    gauge = PolyMap(ctx.R, (0,) * n,
                    [TruncPoly.var(ctx.R, a)
                     + (delta.comps[a] - delta.comps[a].active_part(0))
                     for a in range(n)])
    return BundleAutomorphism(ctx, base, gauge)


def _translate_auto(ctx, f, base_point):
    """Conjugate an automorphism solved in recentered coordinates back to
    the plain chart, by the translation prolongation."""
    n = ctx.n
    fwd = [TruncPoly.var(ctx.base_ring, a) + Fraction(base_point[a])
           for a in range(n)]
    inv = [TruncPoly.var(ctx.base_ring, a) - Fraction(base_point[a])
           for a in range(n)]
    T = prolong_diffeo(ctx, BaseDiffeo(ctx.base_ring, fwd, inv, check=False))
    Ti = prolong_diffeo(ctx, T.base.inverse())
    return auto_mul(T, auto_mul(f, Ti))


def _check_killed(rho, n, w):
    for v in rho:
        for c in v.comps:
            for e in c.terms:
                if _weight(e, n) < w:
                    raise ArithmeticError(
                        "internal: development corrector left a residual "
                        f"below weight {w}")


def develop(mu, base_point, order=4):
    """Taylor-integrate D_theta f = mu at base_point: the returned
    automorphism solves the equation through chart order `order` - 1 in
    every grade (and beyond in the lower grades).  The corrector sweeps
    the weight filtration, recomputing the exact residual each step; see
    _development_step.  Raises NotIntegrable at the first inconsistent
    step (the deformation is not flat)."""
    ctx = mu.ctx
    n, k = ctx.n, ctx.k
    mu_c = _recenter_def(mu, base_point)
    f = BundleAutomorphism.identity(ctx)
    Dfm = D_theta_auto(f)
    wmax = order - 1 + k
    for w in range(-1, wmax + 1):
        rho = [Dfm.value(i) - mu_c.value(i) for i in range(n)]
        _check_killed(rho, n, w)
        delta = _development_step(ctx, f, Dfm, rho, w)
        if delta is not None:
            f = auto_mul(f, _near_identity(ctx, delta))
            # recompute the residual from scratch: propagating it by the
            # cocycle law would be cheaper but drags the top-chart-degree
            # truncation artifacts of the intermediate (saturated) factors
            # through every later step
            Dfm = D_theta_auto(f)
    rho = [Dfm.value(i) - mu_c.value(i) for i in range(n)]
    _check_killed(rho, n, wmax + 1)
    exact = all(v.is_zero() for v in rho)
    return Development(ctx, base_point, order, f, exact)


def normalized_frame_field(f, base_point, xord=None):
    """The frame field of an automorphism, left-normalized so its germ at
    the base point is the translation frame.  A normal form useful for
    inspecting Taylor data; note it is *not* invariant under the
    j(f')-left-composition ambiguity of the development problem (a
    left-composed prolongation acts by a germ that varies along the
    chart, which a normalization at one point cannot absorb) — round-trip
    comparisons should instead check that dev o f0^{-1} is a
    prolongation."""
    ctx = f.ctx
    n = ctx.n
    if xord is None:
        xord = ctx.xord
    cap = max(xord, ctx.xord)
    ring = Ring.jet(n, ctx.uord).with_params(n, cap=cap, joint=True)
    sigma_c = PolyMap(ring, (0,) * n,
                      [TruncPoly.var(ring, a) + TruncPoly.var(ring, n + a)
                       + Fraction(base_point[a]) for a in range(n)])
    Phi = auto_apply(f, sigma_c)
    at0 = PolyMap(ring, (0,) * n,
                  [c.subs({n + j: Fraction(0) for j in range(n)})
                   .convert(ring) for c in Phi.comps])
    Ainv = at0.inverse()
    mid = Ainv.after(Phi)
    sb = PolyMap(ring, (0,) * n,
                 [TruncPoly.var(ring, a) + Fraction(base_point[a])
                  for a in range(n)])
    out = sb.after(mid)
    # keep only the Taylor degrees actually requested, and drop to jet
    # order uord-1 — the order a grade-(-1..k) deformation determines —
    # for comparability with a development solved to the same order
    red = Ring.jet(n, ctx.uord - 1).with_params(n, cap=cap, joint=True)
    sliced = [TruncPoly(ring, {e: c for e, c in comp.terms.items()
                               if sum(e[n:2 * n]) <= xord}).convert(red)
              for comp in out.comps]
    return DevelopedAutomorphism(ctx, base_point, xord,
                                 PolyMap(red, (0,) * n, sliced))


# -- Cech cocycles ----------------------------------------------------------


class CechCocycle:
    """Developments on boxes plus the overlap automorphisms
    f_ij = f_i o f_j^{-1}, each verified to be the prolongation of its
    base diffeomorphism (the D_theta f_ij = 0 certificate)."""

    __slots__ = ("ctx", "centers", "devs", "overlaps")

    def __init__(self, ctx, centers, devs, overlaps):
        self.ctx = ctx
        self.centers = centers
        self.devs = devs
        self.overlaps = overlaps  # dict (i,j) -> BundleAutomorphism


def cech_from_deformation(mu, centers, samples, order=4):
    """Develop mu at each box center; for each ordered overlap (i, j)
    form f_ij = f_i o f_j^{-1} and *verify* that it is the prolongation
    of its base diffeomorphism, i.e. its gauge part is trivial at the
    overlap sample point q = samples[(i,j)] (so D_theta f_ij = 0 there).

    The developments must terminate exactly (otherwise the overlap
    comparisons carry Taylor tails and SaturatedTruncation is raised)."""
    ctx = mu.ctx
    n = ctx.n
    devs = [develop(mu, c, order) for c in centers]
    for d in devs:
        if not d.exact:
            raise SaturatedTruncation(
                "development did not terminate; raise the order")
    globals_ = [d.global_auto() for d in devs]
    overlaps = {}
    for (i, j), q in samples.items():
        fij = auto_mul(globals_[i], auto_inverse(globals_[j]))
        sub = {n + jj: Fraction(q[jj]) for jj in range(n)}
        for a in range(n):
            germ_comp = fij.gauge.comps[a].subs(sub)
            if germ_comp != TruncPoly.var(ctx.R, a):
                raise NotInSubgroup(
                    f"overlap ({i},{j}): gauge part is nontrivial at the "
                    "sample point")
        overlaps[(i, j)] = fij
    return CechCocycle(ctx, list(centers), devs, overlaps)


# -- the pairing density ----------------------------------------------------


class DualDensity:
    """Dual functional on grade -1..k-1 vector-field jets (n = 2: a
    0-form), stored as coefficients on the monomial basis: (component a,
    exponent tuple) -> chart polynomial."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.coeffs = dict(coeffs)


def pair_value(ctx, beta, X, point):
    """<beta, X> at a chart point: sum over basis monomials of
    (dual coefficient) * (coordinate of X), both evaluated at the point."""
    n = ctx.n
    total = Fraction(0)
    pt = [Fraction(0)] * ctx.R.nvars
    for j in range(n):
        pt[n + j] = Fraction(point[j])
    for (a, e), beta_c in beta.coeffs.items():
        terms = {}
        for full, c in X.comps[a].terms.items():
            if full[:n] == tuple(e):
                terms[(0,) * n + full[n:]] = c
        coord_poly = TruncPoly(ctx.R, terms)
        total += beta_c.eval(pt) * coord_poly.eval(pt)
    return total


def lagrangian_density(beta, mu, point):
    """Top-form coefficient of the pairing of beta with D_theta(mu) at a
    chart point (n = 2: beta is a 0-form dual functional)."""
    ctx = mu.ctx
    if ctx.n != 2:
        raise DimensionMismatch("density implemented for n = 2")
    D = D_theta_def(mu)
    X = D.value((0, 1))
    return pair_value(ctx, beta, X, point)
