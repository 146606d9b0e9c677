"""Exception types shared across the package."""


class JetError(Exception):
    """Base class for all package-specific errors."""


class RingMismatch(JetError):
    """Operands live in different truncation rings."""


class DimensionMismatch(JetError):
    """Vector/matrix/map dimensions are incompatible."""


class GermMismatch(JetError):
    """Composition of maps whose base points do not line up."""


class SingularJet(JetError):
    """Linear part is not invertible, so the jet has no inverse."""


class GradeError(JetError):
    """A graded object received a component outside its grade range."""


class NotClosed(JetError):
    """An element expected in the kernel of an operator is not."""


class NotInSubgroup(JetError):
    """A group element lies outside the subgroup required by the operation."""


class NotIntegrable(JetError):
    """Cross-derivative consistency failed while solving a flatness PDE."""

    def __init__(self, order, detail=""):
        self.order = order
        super().__init__(f"integrability failure at Taylor order {order}" +
                         (f": {detail}" if detail else ""))


class SaturatedTruncation(JetError):
    """A computation touched the top truncation degree, so the result
    can no longer be certified as an exact polynomial."""


class SerializationError(JetError):
    """Malformed serialized input."""


class UnknownSuite(JetError):
    """Requested verification suite does not exist."""
