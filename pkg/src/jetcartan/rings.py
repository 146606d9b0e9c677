"""Truncation rings.

A ``Ring`` names a polynomial ring Q[v_0..v_{m-1}] together with a family of
truncation groups: each group is a set of variable indices and a cap on the
total degree those variables may jointly reach.  Monomials violating any cap
are identically zero.  The first ``active`` variables are the jet variables
(the formal coordinates u^a near the origin of a frame); the rest are
bookkeeping parameters: chart coordinates, path parameters, deformation
parameters.  Path/deformation parameters typically get a cap of 1, which
makes them square-zero and turns differentiation along a path into exact
linear algebra.
"""

from dataclasses import dataclass

from .errors import DimensionMismatch


@dataclass(frozen=True)
class Ring:
    nvars: int
    active: int
    caps: tuple  # tuple of (tuple_of_var_indices, cap)

    def __post_init__(self):
        seen = set()
        for idxs, cap in self.caps:
            if cap < 0:
                raise ValueError("negative truncation cap")
            for i in idxs:
                if not 0 <= i < self.nvars:
                    raise ValueError("cap group index out of range")
                if i in seen:
                    raise ValueError("variable appears in two cap groups")
                seen.add(i)
        if self.active and (not self.caps or
                            self.caps[0][0] != tuple(range(self.active))):
            raise ValueError("first cap group must cover the active variables")

    @property
    def order(self):
        """Truncation order of the active (jet) variables."""
        return self.caps[0][1]

    def admits(self, expo):
        for idxs, cap in self.caps:
            if sum(expo[i] for i in idxs) > cap:
                return False
        return True

    def with_order(self, m):
        """Same ring with the active truncation order changed to m."""
        return Ring(self.nvars, self.active,
                    ((self.caps[0][0], m),) + self.caps[1:])

    @staticmethod
    def jet(n, order):
        """Plain jet ring: n active variables truncated at total degree `order`."""
        return Ring(n, n, ((tuple(range(n)), order),))

    def with_params(self, count, cap=1, joint=False):
        """Extend by `count` extra parameter variables.

        joint=True puts them in one shared total-degree group (chart
        coordinates); otherwise each is capped individually (path/deformation
        parameters, square-zero when cap=1).
        """
        base = self.nvars
        if joint:
            extra = ((tuple(range(base, base + count)), cap),)
        else:
            extra = tuple(((base + j,), cap) for j in range(count))
        return Ring(base + count, self.active, self.caps + extra)

    def param_index(self, j):
        """Absolute index of the j-th variable beyond the active block."""
        if self.active + j >= self.nvars:
            raise DimensionMismatch("parameter index out of range")
        return self.active + j
