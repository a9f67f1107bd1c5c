"""Exception hierarchy shared across the package."""


class KnotboundsError(Exception):
    """Base class for all package-specific errors."""


# --- diagram parsing / validation ---

class MalformedCode(KnotboundsError):
    """PD-code text could not be tokenized."""


class InconsistentArcs(KnotboundsError):
    """An arc label does not appear exactly twice."""


class NonrealizableOrientation(KnotboundsError):
    """Arc traversal admits no consistent orientation."""


class UnknownComponent(KnotboundsError):
    """A component id is not present in the diagram."""


class NotAKnot(KnotboundsError):
    """Operation requires a one-component diagram."""


# --- polynomial arithmetic ---

class RingMismatch(KnotboundsError):
    """Operands live in different coefficient rings."""


class ZeroPolynomial(KnotboundsError):
    """Operation undefined for the zero polynomial."""


class InexactDivision(KnotboundsError):
    """Division by a monomial left a remainder."""


# --- skein engines ---

class ResourceLimit(KnotboundsError):
    """Configured recursion-node or crossing budget exceeded."""


# --- lattice geometry ---

class NotUnitStep(KnotboundsError):
    """Consecutive lattice vertices are not one unit apart."""


class NotClosed(KnotboundsError):
    """Lattice walk does not return to its start."""


class SelfIntersection(KnotboundsError):
    """Lattice polygon or link touches itself."""


class ComponentsCollide(KnotboundsError):
    """Two lattice components share a point."""


class DegenerateProjection(KnotboundsError):
    """No generic projection direction found within the retry budget."""


# --- pipeline ---

class EmbeddingMismatch(KnotboundsError):
    """Lattice embedding does not realize the claimed knot type."""


class OddExtremeExponent(KnotboundsError):
    """Extreme v-exponent expected to be even is odd."""


class UnexpectedParity(KnotboundsError):
    """Polynomial v-breadth has the wrong parity."""


# --- corpus ---

class ManifestError(KnotboundsError):
    """Corpus manifest is missing or malformed."""


class ValidationError(KnotboundsError):
    """A corpus entry failed its consistency checks."""
