"""Spencer complex of truncated vector-field jets.

An l-cochain assigns a vector-field jet to each increasing l-tuple of
coordinate directions (the slots range over the constant fields d_i).  The
differential is

    (dc)(X_0,..,X_l) = sum_i (-1)^i [X_i, c(..omit i..)]

with the sign-reversed bracket, so each bracket term is an honest partial
derivative: [d_i, Y] = -dY/du_i.  On 0-cochains this embeds the grade-(k+1)
algebra into grade-k-valued 1-forms; iterating gives zero, and the
resulting complexes

    gl_{k+1} -> gl_k (x) L^1 -> gl_{k-1} (x) L^2 -> ... -> 0

are exact, which ``complex_certificate`` verifies by exact rank
computations over Q.
"""

from fractions import Fraction
from itertools import combinations

from .errors import RingMismatch, DimensionMismatch, NotClosed
from .rings import Ring
from .vf import (VFJet, bracket, gl_basis, gl_dim, gl_monomials, vf_coords,
                 vf_coords_poly)


class SpencerCochain:
    """l-form on constant fields with vector-field-jet values."""

    __slots__ = ("ring", "l", "values")

    def __init__(self, ring, l, values):
        self.ring = ring
        self.l = l
        clean = {}
        for idx, v in values.items():
            idx = tuple(idx)
            if len(idx) != l or list(idx) != sorted(set(idx)):
                raise DimensionMismatch("indices must be strictly increasing "
                                        f"{l}-tuples, got {idx}")
            if v.ring != ring:
                raise RingMismatch("cochain value outside the ring")
            if not v.is_zero():
                clean[idx] = v
        self.values = clean

    @staticmethod
    def zero(ring, l):
        return SpencerCochain(ring, l, {})

    def value(self, idx):
        return self.values.get(tuple(idx), VFJet.zero(self.ring))

    def antisym_value(self, cols):
        """Value on an arbitrary tuple of slot indices, with the sign of
        the sorting permutation; zero on repeats."""
        if len(set(cols)) != len(cols):
            return VFJet.zero(self.ring)
        order = sorted(range(len(cols)), key=lambda j: cols[j])
        sign = 1
        perm = list(order)
        for i in range(len(perm)):
            while perm[i] != i:
                j = perm[i]
                perm[i], perm[j] = perm[j], perm[i]
                sign = -sign
        v = self.value(tuple(sorted(cols)))
        return v if sign == 1 else -v

    def __eq__(self, other):
        return (isinstance(other, SpencerCochain) and self.ring == other.ring
                and self.l == other.l and self.values == other.values)

    def __add__(self, other):
        vals = dict(self.values)
        for idx, v in other.values.items():
            vals[idx] = vals[idx] + v if idx in vals else v
        return SpencerCochain(self.ring, self.l, vals)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return SpencerCochain(self.ring, self.l,
                              {i: -v for i, v in self.values.items()})

    def __mul__(self, scalar):
        return SpencerCochain(self.ring, self.l,
                              {i: v * scalar for i, v in self.values.items()})

    __rmul__ = __mul__

    def is_zero(self):
        return not self.values

    def map_values(self, fn):
        return SpencerCochain(self.ring, self.l,
                              {i: fn(v) for i, v in self.values.items()})

    def __repr__(self):
        return f"SpencerCochain(l={self.l}, values={self.values})"


def from_vf(X):
    """A vector-field jet as a 0-cochain."""
    return SpencerCochain(X.ring, 0, {(): X})


def partial(c):
    """Spencer differential (see module docstring)."""
    n = c.ring.active
    vals = {}
    for idx in combinations(range(n), c.l + 1):
        total = VFJet.zero(c.ring)
        for j, i in enumerate(idx):
            sub = idx[:j] + idx[j + 1:]
            term = bracket(VFJet.coordinate(c.ring, i), c.value(sub))
            total = total + (term if j % 2 == 0 else -term)
        if not total.is_zero():
            vals[idx] = total
    return SpencerCochain(c.ring, c.l + 1, vals)


# -- bases and exact linear algebra over Q ---------------------------------


def cochain_basis_meta(n, k, l):
    """Index/basis-element labels for grade-k-valued l-cochains."""
    idxs = list(combinations(range(n), l))
    monos = gl_monomials(n, k)
    return [(idx, a, e) for idx in idxs for a in range(n) for e in monos]


def cochain_to_coords(c, k):
    """Coordinates of a single-grade cochain in the cochain_basis_meta
    order (the grade-k part of each value)."""
    n = c.ring.active
    out = []
    for idx in combinations(range(n), c.l):
        out.extend(vf_coords(c.value(idx), k))
    return out


def cochain_from_coords(ring, k, l, coords):
    n = ring.active
    basis = gl_basis(ring, k)
    vals = {}
    per = len(basis)
    for pos, idx in enumerate(combinations(range(n), l)):
        chunk = coords[pos * per:(pos + 1) * per]
        v = VFJet.zero(ring)
        for c0, b in zip(chunk, basis):
            if c0:
                v = v + c0 * b
        vals[idx] = v
    return SpencerCochain(ring, l, vals)


def rank(mat):
    """Exact rank by Gaussian elimination over Q."""
    m = [row[:] for row in mat]
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    r = 0
    for col in range(cols):
        piv = next((i for i in range(r, rows) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        d = m[r][col]
        m[r] = [x / d for x in m[r]]
        for i in range(rows):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def partial_matrix(n, k, l):
    """Matrix of the differential from grade-(k)-valued l-cochains to
    grade-(k-1)-valued (l+1)-cochains, columns in cochain_basis_meta
    order."""
    ring = Ring.jet(n, k + 1)
    cols = []
    basis = gl_basis(ring, k)
    idxs = list(combinations(range(n), l))
    for idx in idxs:
        for b in basis:
            c = SpencerCochain(ring, l, {idx: b})
            cols.append(cochain_to_coords(partial(c), k - 1))
    # transpose: rows indexed by target basis
    if not cols:
        return []
    return [[cols[j][i] for j in range(len(cols))]
            for i in range(len(cols[0]))]


def complex_certificate(n, k):
    """Dimensions and ranks certifying exactness of the complex starting
    at grade k+1 0-cochains.  Returns a dict with 'dims', 'ranks',
    'exact'."""
    from math import comb
    dims = []
    for l in range(n + 1):
        g = k + 1 - l
        dims.append(gl_dim(n, g) * comb(n, l) if g >= -1 else 0)
    ranks = []
    for l in range(n):
        g = k + 1 - l
        if g - 1 < -1 or dims[l] == 0:
            ranks.append(0)
            continue
        ranks.append(rank(partial_matrix(n, g, l)))
    # exactness: injective at the start, and rank(d_{l-1}) + rank(d_l) = dim_l
    ok = ranks[0] == dims[0] if dims[0] else True
    for l in range(1, n):
        ok = ok and (ranks[l - 1] + ranks[l] == dims[l])
    if n >= 1 and dims[n]:
        ok = ok and ranks[n - 1] == dims[n]
    return {"dims": dims, "ranks": ranks, "exact": ok}


def solve_preimage(target, k):
    """Canonical preimage of a grade-(k-1)-valued (l)-cochain under the
    differential from grade-k-valued (l-1)-cochains: Gaussian solve with
    free variables set to zero.  Raises NotClosed when no preimage exists.
    """
    from .errors import GradeError
    for v in target.values.values():
        if any(g != k - 1 for g in v.grades()):
            raise GradeError("preimage target must be concentrated in "
                             f"grade {k - 1}")
    n = target.ring.active
    l = target.l
    mat = partial_matrix(n, k, l - 1)
    rhs = []
    for idx in combinations(range(n), l):
        rhs.extend(vf_coords_poly(target.value(idx), k - 1))
    ncols = len(mat[0]) if mat else 0
    aug = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    rows = len(aug)
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, rows) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        d = aug[r][col]
        aug[r] = [x / d for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    for i in range(r, rows):
        if aug[i][ncols]:
            raise NotClosed("target is not in the image of the differential")
    sol = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        sol[col] = aug[i][ncols]
    return cochain_from_coords(target.ring, k, l - 1, sol)
