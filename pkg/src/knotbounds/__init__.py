"""Knot diagram invariants, reverse-parallel satellites, cubic-lattice
constructions, and the braid-index bound pipeline built on them."""

from .diagrams import LinkDiagram, parse_pd
from .laurent import LaurentPoly2, homfly_unlink, kauffman_unlink
from .moves import simplify
from .satellite import blackboard_framing, reverse_parallel
from .skein import SkeinEngine, cache_stats, homfly, kauffman

__version__ = "0.1.0"

__all__ = [
    "LinkDiagram",
    "parse_pd",
    "LaurentPoly2",
    "homfly_unlink",
    "kauffman_unlink",
    "simplify",
    "reverse_parallel",
    "blackboard_framing",
    "SkeinEngine",
    "homfly",
    "kauffman",
    "cache_stats",
    "__version__",
]
