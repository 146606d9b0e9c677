"""Truncated multivariate polynomials over Q.

``TruncPoly`` is a dict from exponent tuples to ``Fraction``, normalized so
that no zero coefficients and no monomials beyond the ring's truncation caps
are ever stored.  Equality is therefore plain structural equality, and
"this identity holds exactly" means the difference normalizes to the empty
dict.

The multiplication kernel is selected at import time: a compiled Cython
version when present, the pure-Python twin otherwise.
"""

from fractions import Fraction

from .errors import RingMismatch, SingularJet, SaturatedTruncation
from .rings import Ring

try:
    from ._kernel_c import mul_terms
    KERNEL = "compiled"
except ImportError:
    from ._kernel_py import mul_terms
    KERNEL = "python"

__all__ = ["TruncPoly", "KERNEL", "grlex_key", "mat_mul", "mat_vec",
           "mat_det", "mat_inverse"]


def grlex_key(expo):
    """Graded lexicographic sort key: total degree first, then exponents."""
    return (sum(expo), expo)


class TruncPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        clean = {}
        for e, c in terms.items():
            if not isinstance(c, Fraction):
                c = Fraction(c)
            if c and ring.admits(e):
                clean[e] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(ring):
        return TruncPoly(ring, {})

    @staticmethod
    def const(ring, c):
        return TruncPoly(ring, {(0,) * ring.nvars: Fraction(c)})

    @staticmethod
    def var(ring, i, c=1):
        e = [0] * ring.nvars
        e[i] = 1
        return TruncPoly(ring, {tuple(e): Fraction(c)})

    @staticmethod
    def monomial(ring, expo, c):
        return TruncPoly(ring, {tuple(expo): Fraction(c)})

    # -- predicates and access ---------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, expo):
        return self.terms.get(tuple(expo), Fraction(0))

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def items_sorted(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]))

    def active_degree(self):
        """Largest total degree in the active (jet) variables; -1 if zero."""
        n = self.ring.active
        return max((sum(e[:n]) for e in self.terms), default=-1)

    def param_degree(self):
        n = self.ring.active
        return max((sum(e[n:]) for e in self.terms), default=-1)

    def active_part(self, d):
        """Terms of exact total degree d in the active variables."""
        n = self.ring.active
        return TruncPoly(self.ring,
                         {e: c for e, c in self.terms.items()
                          if sum(e[:n]) == d})

    def __eq__(self, other):
        return (isinstance(other, TruncPoly) and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        if not isinstance(other, TruncPoly):
            other = TruncPoly.const(self.ring, other)
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, Fraction(0)) + c
        return TruncPoly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return TruncPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, TruncPoly)
                       else TruncPoly.const(self.ring, -Fraction(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncPoly):
            try:
                c = Fraction(other)
            except TypeError:
                return NotImplemented
            return TruncPoly(self.ring,
                             {e: a * c for e, a in self.terms.items()})
        self._check(other)
        return TruncPoly(self.ring,
                         mul_terms(self.terms, other.terms, self.ring.caps))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (Fraction(1) / Fraction(scalar))

    def __pow__(self, k):
        out = TruncPoly.const(self.ring, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    # -- calculus ----------------------------------------------------------

    def diff(self, i):
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                t[tuple(e2)] = c * e[i]
        return TruncPoly(self.ring, t)

    def subs(self, mapping):
        """Substitute variables: mapping maps var index -> TruncPoly | scalar.

        All polynomial values must share one ring; that becomes the result
        ring, and unsubstituted variables are carried over by index.
        """
        target = None
        vals = {}
        for i, v in mapping.items():
            if isinstance(v, TruncPoly):
                if target is None:
                    target = v.ring
                elif v.ring != target:
                    raise RingMismatch("substitution values in mixed rings")
                vals[i] = v
            else:
                vals[i] = Fraction(v)
        if target is None:
            target = self.ring
        nt = target.nvars
        pow_cache = {}

        def power(i, k):
            got = pow_cache.get((i, k))
            if got is None:
                got = vals[i] ** k
                pow_cache[(i, k)] = got
            return got

        # Group terms by the exponents of polynomial-valued variables, so
        # each distinct pattern costs one big multiplication rather than one
        # per term.
        groups = {}
        for expo, c in self.terms.items():
            rest = [0] * nt
            pat = []
            for i, k in enumerate(expo):
                if not k:
                    continue
                v = vals.get(i)
                if v is None:
                    if i >= nt:
                        raise RingMismatch("unsubstituted variable "
                                           "missing from target ring")
                    rest[i] += k
                elif isinstance(v, TruncPoly):
                    pat.append((i, k))
                else:
                    c = c * v ** k
            key = tuple(pat)
            g = groups.setdefault(key, {})
            rk = tuple(rest)
            nc = g.get(rk, Fraction(0)) + c
            if nc:
                g[rk] = nc
            elif rk in g:
                del g[rk]
        out = TruncPoly.zero(target)
        for pat, g in groups.items():
            acc = TruncPoly(target, g)
            for i, k in pat:
                acc = acc * power(i, k)
            out = out + acc
        return out

    def convert(self, ring, var_map=None):
        """Reinterpret in another ring.  var_map[i] gives the new index of
        old variable i (identity by default); caps of the new ring apply."""
        t = {}
        for e, c in self.terms.items():
            e2 = [0] * ring.nvars
            for i, k in enumerate(e):
                if k:
                    j = var_map[i] if var_map else i
                    e2[j] += k
            key = tuple(e2)
            t[key] = t.get(key, Fraction(0)) + c
        return TruncPoly(ring, t)

    def eval(self, point):
        """Full evaluation at a rational point (one value per variable)."""
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    v *= Fraction(point[i]) ** k
            total += v
        return total

    def unit_inverse(self):
        """Multiplicative inverse of a polynomial with nonzero constant
        term, as a truncated geometric series.  Exact in the quotient ring;
        raises SingularJet when the constant term vanishes."""
        c = self.constant_term()
        if not c:
            raise SingularJet("no constant term to invert")
        u = self / c - 1
        limit = sum(cap for _, cap in self.ring.caps) + 1
        out = TruncPoly.const(self.ring, 1)
        p = u
        sign = -1
        for _ in range(limit):
            if p.is_zero():
                return out / c
            out = out + sign * p
            p = p * u
            sign = -sign
        raise SaturatedTruncation("geometric series did not terminate")

    def __repr__(self):
        if not self.terms:
            return "TruncPoly(0)"
        bits = []
        for e, c in self.items_sorted():
            mono = "*".join(f"v{i}^{k}" if k > 1 else f"v{i}"
                            for i, k in enumerate(e) if k)
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return "TruncPoly(" + " + ".join(bits) + ")"


# -- small exact linear algebra over TruncPoly entries ---------------------


def mat_vec(m, v):
    return [sum((m[i][j] * v[j] for j in range(len(v))),
                TruncPoly.zero(m[0][0].ring)) for i in range(len(m))]


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    z = TruncPoly.zero(a[0][0].ring)
    return [[sum((a[i][t] * b[t][j] for t in range(m)), z)
             for j in range(p)] for i in range(n)]


def mat_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    z = TruncPoly.zero(m[0][0].ring)
    det = z
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * mat_det(minor)
        det = det + (term if j % 2 == 0 else -term)
    return det


def mat_inverse(m):
    """Inverse via adjugate and a unit inverse of the determinant."""
    n = len(m)
    det = mat_det(m)
    dinv = det.unit_inverse()
    if n == 1:
        return [[dinv]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[m[r][c] for c in range(n) if c != j]
                     for r in range(n) if r != i]
            cof = mat_det(minor)
            adj[j][i] = (cof if (i + j) % 2 == 0 else -cof) * dinv
    return adj
